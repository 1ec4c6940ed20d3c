"""Boundedness and compactness verdicts for ``V_g`` with numeric witnesses.

The verdicts are decided from the degree of the polynomial symbol alone;
everything numeric in this module (ring suprema of ``|g'|/D_m``, truncated
integrals, the Gaussian-localized transform, kernel test functions) is a
witness that is reported next to the verdict, never used to decide it.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import weight as wt
from .config import DEFAULT, QuadConfig
from .funcrep import ComplexPolynomial, EntireFunction, Poly, as_poly, exp_poly, multiply
from .planequad import integrate_plane, sup_search

PROBE_RADII = tuple(2.0 ** k for k in range(8))  # 1, 2, 4, ..., 128
PROBE_DIRECTIONS = 16
FIT_MIN_RADIUS = 8.0
LIMIT_RADIUS = 100.0
DISK_RADII = (5.0, 10.0, 20.0, 40.0, 100.0, 200.0)


@dataclass(frozen=True)
class ClassifierVerdict:
    direction: str  # "into-sup" | "from-sup"
    bounded: bool
    compact: bool
    reason: str
    witness: dict = field(default_factory=dict)
    m: int = 0
    p: float = math.inf

    def __post_init__(self):
        if self.compact and not self.bounded:
            raise ValueError("a compact operator is bounded")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p"] = "inf" if self.p == math.inf else self.p
        return d


def _weight(m, normalizer="canonical"):
    return wt.Weight(int(m), normalizer)


def symbol_ratio(g, m: int, w, normalizer: str = "canonical"):
    """``|g'(w)| / D_m(|w|)``; vectorized over ``w``."""
    gp = as_poly(g).derivative()
    w = np.asarray(w, dtype=complex)
    out = np.abs(gp(w)) / wt.normalizer(_weight(m, normalizer), np.abs(w))
    return float(out) if out.ndim == 0 else out


def _loglog_slope(x, y):
    lx, ly = np.log(np.asarray(x, float)), np.log(np.asarray(y, float))
    return float(np.polyfit(lx, ly, 1)[0])


def ring_suprema(g, m: int, radii=PROBE_RADII, directions: int = PROBE_DIRECTIONS,
                 normalizer: str = "canonical") -> np.ndarray:
    """Maximum of :func:`symbol_ratio` over ``directions`` points per ring."""
    th = 2 * math.pi * np.arange(directions) / directions
    w = np.asarray(radii, float)[:, None] * np.exp(1j * th)[None, :]
    return np.asarray(symbol_ratio(g, m, w, normalizer)).max(axis=1)


def into_sup_witness(g, m: int, normalizer: str = "canonical") -> dict:
    g = as_poly(g)
    rings = ring_suprema(g, m, normalizer=normalizer)
    radii = np.array(PROBE_RADII)
    inside = radii <= LIMIT_RADIUS
    fit = radii >= FIT_MIN_RADIUS
    limit = float(ring_suprema(g, m, [LIMIT_RADIUS], normalizer=normalizer)[0])
    exponent = None
    if np.all(rings[fit] > 0):
        exponent = _loglog_slope(radii[fit], rings[fit])
    return {
        "radii": radii.tolist(),
        "ring_sup": rings.tolist(),
        "sup_B": float(rings[inside].max()),
        "growth_exponent": exponent,
        "expected_exponent": g.derivative().degree - 1 if g.degree >= 1 else None,
        "limit_B": limit,
        "limit_radius": LIMIT_RADIUS,
    }


def classify_into_sup(g, m: int = 0, p: float = math.inf, normalizer: str = "canonical") -> ClassifierVerdict:
    """``V_g`` into the growth space: bounded iff deg g <= 2, compact iff deg g <= 1.

    The verdict does not depend on ``m`` or on ``p``.
    """
    g = as_poly(g)
    d = max(g.degree, 0)
    bounded, compact = d <= 2, d <= 1
    if d == 0:
        reason = "g constant: V_g = 0"
    elif d == 1:
        reason = "deg g = 1: |g'|/D_m -> 0, bounded and compact"
    elif d == 2:
        reason = "deg g = 2: |g'|/D_m -> 2|a| > 0, bounded but not compact"
    else:
        reason = f"deg g = {d} > 2: |g'|/D_m grows like |w|^{d - 2}, unbounded"
    wit = into_sup_witness(g, m, normalizer)
    wit["sup_B_divergent"] = not bounded
    return ClassifierVerdict("into-sup", bounded, compact, reason, wit, int(m), float(p))


def truncated_integrals(g, m: int, p: float, radii=DISK_RADII, cfg: QuadConfig = DEFAULT) -> list:
    """``int_{|z|<R} (|g'(z)|/D_m(|z|))^p dA`` for each ``R`` (cumulative over annuli)."""
    gp = as_poly(g).derivative()
    w = _weight(m, cfg.normalizer)
    out, total, prev = [], 0.0, 0.0
    for R in sorted(radii):
        if gp.is_zero():
            out.append(0.0)
            continue

        def F(z, prev=prev):
            r = np.abs(z)
            v = (np.abs(gp(z)) / wt.normalizer(w, r)) ** p
            return np.where(r >= prev, v, 0.0)

        val, _ = integrate_plane(F, cfg, radius=R, degree=gp.degree, breakpoints=(prev,) if prev else ())
        total += val
        out.append(total)
        prev = R
    return out


def integral_fit(radii, values) -> dict:
    """Growth of truncated integrals: increments against ``ln R`` and ``ln I`` against ``ln R``."""
    R = np.asarray(radii, float)
    I = np.asarray(values, float)
    if np.all(I == 0):
        return {"log_slope": 0.0, "power_slope": 0.0}
    lR = np.log(R)
    return {
        "log_slope": float(np.polyfit(lR, I, 1)[0]),
        "power_slope": float(np.polyfit(lR, np.log(I), 1)[0]),
        "last_increment": float(I[-1] - I[-2]) if len(I) > 1 else float(I[-1]),
    }


def classify_from_sup(g, m: int, p: float, cfg: QuadConfig = DEFAULT, radii=DISK_RADII,
                      fit_from: float = 20.0) -> ClassifierVerdict:
    """``V_g`` from the growth space into ``F^p``: bounded iff compact iff
    (deg g <= 1 and p > 2) or g constant."""
    if not (0 < p < math.inf):
        raise ValueError("classify_from_sup needs 0 < p < inf")
    g = as_poly(g)
    d = max(g.degree, 0)
    if d == 0:
        ok, reason = True, "g constant: V_g = 0"
    elif d == 1:
        ok = p > 2
        reason = ("deg g = 1: (1+r)^{-p} is integrable on the plane iff p > 2"
                  + ("" if ok else f"; fails for p = {p:g}"))
    else:
        ok, reason = False, f"deg g = {d} >= 2: |g'|/D_m does not decay, not integrable"
    vals = truncated_integrals(g, m, p, radii, cfg)
    sel = [i for i, R in enumerate(sorted(radii)) if R >= fit_from]
    fit = integral_fit([sorted(radii)[i] for i in sel], [vals[i] for i in sel])
    wit = {
        "radii": sorted(float(r) for r in radii),
        "truncated_integrals": vals,
        "fit_radii_from": fit_from,
        **fit,
        "flag": "convergent" if ok else "divergent",
    }
    return ClassifierVerdict("from-sup", ok, ok, reason, wit, int(m), float(p))


def carleson_density(g, p: float, m: int, z, normalizer: str = "canonical"):
    """``|g'(z)|^p (1+|z|)^{mp} / D_m(|z|)^p``."""
    gp = as_poly(g).derivative()
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    out = np.abs(gp(z)) ** p * (1 + r) ** (m * p) / wt.normalizer(_weight(m, normalizer), r) ** p
    return float(out) if out.ndim == 0 else out


def berezin_tilde(g, p: float, m: int, t: float, w: complex, cfg: QuadConfig = DEFAULT) -> float:
    """``int e^{-(t/2)|z-w|^2} (1+|z|)^{-mp} d mu_{(g,p)}(z)`` on the disk where
    the Gaussian factor exceeds ``abs_tol``."""
    if not t > 0:
        raise ValueError("t must be positive")
    gp = as_poly(g).derivative()
    if gp.is_zero():
        return 0.0
    w = complex(w)
    wg = _weight(m, cfg.normalizer)
    radius = math.sqrt(2 * math.log(1 / cfg.abs_tol) / t)

    def F(z):
        r = np.abs(z)
        return np.exp(-0.5 * t * np.abs(z - w) ** 2) * (np.abs(gp(z)) / wt.normalizer(wg, r)) ** p

    val, _ = integrate_plane(F, cfg, radius=radius, center=w, degree=gp.degree + 4)
    return float(val)


def berezin_constant_band(c: complex, p: float, m: int, t: float = 1.0, radii=None,
                          cfg: QuadConfig = DEFAULT) -> dict:
    """For ``g' = c``: ratio of the transform to ``|c|^p / D_m(|w|)^p`` over ``radii``."""
    if radii is None:
        radii = np.linspace(0.0, 20.0, 11)
    g = ComplexPolynomial([0, c])
    wg = _weight(m, cfg.normalizer)
    ratios = []
    for r in radii:
        val = berezin_tilde(g, p, m, t, complex(r), cfg)
        ratios.append(val / (abs(c) ** p / float(wt.normalizer(wg, float(r))) ** p))
    ratios = np.array(ratios)
    return {"radii": [float(r) for r in radii], "ratios": ratios.tolist(),
            "min": float(ratios.min()), "max": float(ratios.max()),
            "band": float(ratios.max() / ratios.min())}


def exact_kernel0(w: complex) -> EntireFunction:
    """``xi_{(w,0)}(z) = e^{-|w|^2/2} e^{conj(w) z}`` (exact for m = 0)."""
    w = complex(w)
    return exp_poly([math.exp(-abs(w) ** 2 / 2)], [0, w.conjugate()])


def kernel_test_sequence(g, m: int, radii, model=None, cfg: QuadConfig = DEFAULT) -> dict:
    """``||V_g xi_w||_{(m,inf)}`` through the Littlewood-Paley form.

    ``V_g xi_w`` vanishes at 0 and has derivative ``xi_w g'``, so the norm is
    the sup of ``|xi_w g'| e^{-psi_m} / D_m``; no quadrature is involved.
    For ``m = 0`` the exact kernel is used; otherwise ``model`` (a
    :class:`~fockvolterra.kernels.KernelModel`) supplies ``xi_w``.
    """
    from .kernels import normalized_kernel  # local: kernels imports norms

    gp = as_poly(g).derivative()
    rows = []
    for r in radii:
        w = complex(r)
        xi = exact_kernel0(w) if (model is None and m == 0) else normalized_kernel(model, w)
        res = _lp_sup(xi, gp, m, cfg)
        rows.append({"w": float(r), "value": res.value if res.finite else math.inf,
                     "argmax": None if res.argmax is None else [res.argmax.real, res.argmax.imag]})
    return {"m": int(m), "g_prime": [[c.real, c.imag] for c in gp.coeffs], "rows": rows}


def _lp_sup(xi, gp, m, cfg):
    # |V_g xi (0)| = 0, so the norm is the derivative term alone
    prod = multiply(xi, Poly(gp))
    return sup_search(prod, _weight(m, cfg.normalizer), cfg, k=1)
