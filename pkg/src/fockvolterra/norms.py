"""Direct and Littlewood-Paley norms on the Fock-Sobolev spaces.

``norm_sup`` / ``norm_p`` evaluate the defining expressions;
``norm_sup_lp`` / ``norm_p_lp`` go through the derivative, divided by the
normalizer ``D_m``. Finiteness is always decided from the symbolic growth
data before any numerics run.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import weight as wt
from ._backend import core
from .config import DEFAULT, QuadConfig
from .funcrep import EntireFunction, exp_poly, as_poly, multiply
from .planequad import NormResult, integrate_plane, sup_search


@dataclass(frozen=True)
class EquivalenceReport:
    lhs: float
    rhs: float
    ratio: float
    function_id: str
    m: int
    p: float

    def to_dict(self):
        return asdict(self)


def _weight(m, cfg):
    return wt.Weight(int(m), cfg.normalizer)


def norm_sup(f: EntireFunction, m: int, cfg: QuadConfig = DEFAULT) -> NormResult:
    """``sup |f(z)| e^{-psi_m(z)}``."""
    return sup_search(f, _weight(m, cfg), cfg)


def norm_sup_lp(f: EntireFunction, m: int, cfg: QuadConfig = DEFAULT) -> NormResult:
    """``|f(0)| + sup |f'(z)| e^{-psi_m(z)} / D_m(z)``."""
    d = sup_search(f.derivative(), _weight(m, cfg), cfg, k=1)
    if not d.finite:
        return d
    f0 = abs(f.at_zero())
    return NormResult.of(f0 + d.value, d.argmax, d.err_estimate, d.flag)


def _weighted_power_integral(f: EntireFunction, w: wt.Weight, p: float, k: int, cfg):
    """``int |f|^p e^{-p psi_m} D^{-kp} dA`` with its certified tail."""
    info = f.growth_info(w.m)
    fast = f.exp_form()
    if fast is not None:
        pc, qc = fast

        def F(z):
            z = np.asarray(z)
            return np.exp(p * core.logmod_points(pc, qc, w.m, k, w.mode, np.abs(z), np.angle(z)))
    else:

        def F(z):
            r = np.abs(z)
            phi = np.asarray(f.logabs(z, cfg)) - wt.psi(w, r)
            if k:
                phi = phi - k * np.log(wt.normalizer(w, r))
            return np.exp(p * phi)

    def bound(r):
        r = np.asarray(r, dtype=float)
        u = info.log_bound(r) - wt.psi(w, r)
        if k:
            u = u - k * np.log(wt.normalizer(w, r))
        return p * u

    return integrate_plane(F, cfg, log_bound=bound, degree=f.angular_degree())


def _lp_infinite(f, m):
    t = f.exp_type()
    return NormResult.infinite(t.direction, f"|f|^p e^(-p psi) not integrable: exponent degree {t.qdeg}, quadratic type {t.quad:.6g}")


def norm_p(f: EntireFunction, m: int, p: float, cfg: QuadConfig = DEFAULT) -> NormResult:
    """``(int |f|^p e^{-p psi_m} dA)^{1/p}`` for finite ``p > 0``."""
    if not (0 < p < math.inf):
        raise ValueError("norm_p needs 0 < p < inf")
    if not f.lp_finite(m):
        return _lp_infinite(f, m)
    val, err = _weighted_power_integral(f, _weight(m, cfg), p, 0, cfg)
    val = max(val.real if isinstance(val, complex) else val, 0.0)
    out = val ** (1 / p)
    return NormResult.of(out, None, out * err / (p * val) if val > 0 else err ** (1 / p))


def norm_p_lp(f: EntireFunction, m: int, p: float, cfg: QuadConfig = DEFAULT) -> NormResult:
    """``(|f(0)|^p + int |f'|^p e^{-p psi_m} D_m^{-p} dA)^{1/p}``."""
    if not (0 < p < math.inf):
        raise ValueError("norm_p_lp needs 0 < p < inf")
    d = f.derivative()
    if not d.lp_finite(m):
        return _lp_infinite(d, m)
    val, err = _weighted_power_integral(d, _weight(m, cfg), p, 1, cfg)
    val = max(val.real if isinstance(val, complex) else val, 0.0)
    total = abs(f.at_zero()) ** p + val
    out = total ** (1 / p)
    return NormResult.of(out, None, out * err / (p * total) if total > 0 else 0.0)


def norm(f: EntireFunction, m: int, p: float = math.inf, form: str = "direct",
         cfg: QuadConfig = DEFAULT) -> NormResult:
    """Dispatch on exponent and form (``direct`` or ``paley``)."""
    if form not in ("direct", "paley"):
        raise ValueError(f"unknown form {form!r}")
    if p == math.inf:
        return norm_sup(f, m, cfg) if form == "direct" else norm_sup_lp(f, m, cfg)
    return norm_p(f, m, p, cfg) if form == "direct" else norm_p_lp(f, m, p, cfg)


def equivalence(f: EntireFunction, m: int, p: float = math.inf, cfg: QuadConfig = DEFAULT,
                function_id: str = "") -> EquivalenceReport:
    """Direct norm over its Littlewood-Paley counterpart."""
    a = norm(f, m, p, "direct", cfg)
    b = norm(f, m, p, "paley", cfg)
    if not (a.finite and b.finite):
        raise ValueError(f"equivalence needs finite norms ({a.kind}, {b.kind})")
    return EquivalenceReport(a.value, b.value, a.value / b.value, function_id, int(m), p)


def lemma2_check(g, lam: complex, f: EntireFunction, m: int, cfg: QuadConfig = DEFAULT,
                 function_id: str = "") -> EquivalenceReport:
    """Compare ``sup |e^{g/lam} f| e^{-psi}`` with
    ``|f(0)| + sup |e^{g/lam} f'| e^{-psi} / D``.

    Requires ``deg g <= 2`` and ``|lam| > 2|a|`` with ``a`` the quadratic
    coefficient of ``g``; ``f`` must be a polynomial or exp-polynomial.
    """
    g = as_poly(g)
    lam = complex(lam)
    if g.degree > 2:
        raise ValueError("lemma2_check needs deg g <= 2")
    a = g.coef(2)
    if not abs(lam) > 2 * abs(a):
        raise ValueError(f"|lambda| = {abs(lam):g} must exceed 2|a| = {2 * abs(a):g}")
    E = exp_poly([1.0], g / lam)
    w = _weight(m, cfg)
    lhs = sup_search(multiply(E, f), w, cfg)
    rhs_sup = sup_search(multiply(E, f.derivative()), w, cfg, k=1)
    if not (lhs.finite and rhs_sup.finite):
        raise ValueError("lemma2_check: a side is infinite for this f; choose f of lower growth")
    rhs = abs(f.at_zero()) + rhs_sup.value
    return EquivalenceReport(lhs.value, rhs, lhs.value / rhs if rhs > 0 else math.inf,
                             function_id, int(m), math.inf)
