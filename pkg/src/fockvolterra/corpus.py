"""Fixed test corpora (deterministic: seeded generator, fixed ordering)."""

from __future__ import annotations

import numpy as np

from .funcrep import ComplexPolynomial, Poly, exp_poly

CORPUS_SEED = 20231
ALPHAS = (0.0, 0.1, 0.25, 0.4, 0.45)
BETAS = (1.0, 2 + 1j)


def random_polynomials(count: int = 20, max_degree: int = 8, seed: int = CORPUS_SEED):
    """Polynomials of degree <= ``max_degree`` with coefficients uniform in the unit disk."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        d = int(rng.integers(0, max_degree + 1))
        rad = np.sqrt(rng.random(d + 1))
        ang = 2 * np.pi * rng.random(d + 1)
        out.append((f"rand{i:02d}_deg{d}", Poly(ComplexPolynomial(rad * np.exp(1j * ang)))))
    return out


def norm_corpus(seed: int = CORPUS_SEED):
    """Functions with finite growth norms for every m (51 entries)."""
    out = [(f"z^{n}", Poly(ComplexPolynomial.monomial(n))) for n in range(13)]
    out += random_polynomials(seed=seed)
    out += [(f"exp({a:g} z^2)", exp_poly([1.0], [0, 0, a])) for a in ALPHAS]
    out += [(f"exp(({b}) z)", exp_poly([1.0], [0, b])) for b in BETAS]
    out += [
        ("z exp(0.25 z^2)", exp_poly([0, 1.0], [0, 0, 0.25])),
        ("z^2 exp(0.25 z^2)", exp_poly([0, 0, 1.0], [0, 0, 0.25])),
        ("z^3 exp(0.25 z^2)", exp_poly([0, 0, 0, 1.0], [0, 0, 0.25])),
        ("(1+z) exp(z)", exp_poly([1.0, 1.0], [0, 1.0])),
        ("z^2 exp((1-i) z)", exp_poly([0, 0, 1.0], [0, 1 - 1j])),
        ("exp(0.3i z^2)", exp_poly([1.0], [0, 0, 0.3j])),
        ("exp(0.2 z^2 + z)", exp_poly([1.0], [0, 1.0, 0.2])),
        ("exp(-0.4 z^2)", exp_poly([1.0], [0, 0, -0.4])),
        ("(2-i) exp(0.1 z^2 - z)", exp_poly([2 - 1j], [0, -1.0, 0.1])),
        ("1 + z + z^2/2", Poly([1.0, 1.0, 0.5])),
        ("z^4 exp(0.4 z^2)", exp_poly([0, 0, 0, 0, 1.0], [0, 0, 0.4])),
    ]
    return out


def lemma2_corpus(seed: int = CORPUS_SEED):
    """Polynomials and pure exponentials ``e^{beta z}`` (growth below the boundary
    for every exponent ``z^2/lambda`` with ``|lambda| > 2``)."""
    out = [(f"z^{n}", Poly(ComplexPolynomial.monomial(n))) for n in range(6)]
    out += random_polynomials(8, 6, seed)
    out += [(f"exp(({b}) z)", exp_poly([1.0], [0, b])) for b in BETAS]
    return out
