"""Reproducing kernels of the Hilbert space F^2_{psi_m} built from radial moments.

Monomials are orthogonal for the radial weight ``e^{-2 psi_m}``, so with

    rho_n = 2 int_0^inf r^{2n+1} e^{-r^2} (1+r)^{2m} dr

(the inner product uses the normalized area ``dA/pi``) the kernel is

    K(z, w) = sum_n (z conj(w))^n / rho_n .

For m = 0 this gives rho_n = n! and K(z, w) = e^{conj(w) z} exactly.
Moments are computed twice: with the package's own Gauss-Legendre
quadrature in double precision, and with a fixed composite Gauss-Legendre
rule in extended precision (``np.longdouble``) for scalar kernel
evaluations where the series cancels (Re(z conj(w)) << 0). On platforms
where ``longdouble`` is plain double, mpmath supplies the extended moments.
"""

from __future__ import annotations

import json
import math
import os
from functools import lru_cache
from dataclasses import dataclass
from pathlib import Path

import mpmath as mp
import numpy as np

from . import weight as wt
from .config import DEFAULT, QuadConfig
from .funcrep import ComplexPolynomial, Poly
from .norms import norm_p, norm_sup
from .planequad import integrate_interval, integrate_plane

CACHE_ENV = "FOCKVOLTERRA_CACHE"
HP_DPS = 30
LD = np.longdouble
EXTENDED = np.finfo(LD).eps < 1e-18
TAIL_TOL = 1e-14
N_MAX = 160  # rho_n ~ n! must stay inside double range


class TruncationError(ValueError):
    """Requested point lies outside the validity disk of a truncated kernel."""


@dataclass(frozen=True)
class KernelModel:
    m: int
    N: int
    moments: tuple
    tail_bound: float
    probe_radius: float
    tol: float
    moments_hp: tuple | None = None

    def __post_init__(self):
        if any(not (r > 0) for r in self.moments):
            raise ValueError("moments must be strictly positive")

    @property
    def log_moments(self) -> np.ndarray:
        return _logs(self.moments_hp, self.moments)

    def to_json(self) -> dict:
        d = {"m": self.m, "N": self.N, "tol": self.tol, "moments": list(self.moments)}
        if self.moments_hp is not None:
            d["moments_hp"] = [_ld_str(x) for x in self.moments_hp]
        return d


def _logs(hp, vals) -> np.ndarray:
    if hp is None:
        return np.log(np.array(vals, dtype=float))
    if EXTENDED:
        return np.log(np.array(hp, dtype=LD)).astype(float)
    return np.array([float(mp.log(x)) for x in hp])


def _ld_str(x) -> str:
    if isinstance(x, mp.mpf):
        return mp.nstr(x, HP_DPS)
    return np.format_float_scientific(LD(x), precision=21, unique=False)


def default_truncation(probe_radius: float) -> int:
    return max(60, math.ceil(2 * probe_radius ** 2 + 20))


def _log_integrand(n, m, peak):
    """``log(r^{2n+1} e^{-r^2} (1+r)^{2m})`` minus its value at ``peak``.

    Written in terms of ``r/peak`` so that the large logarithms cancel
    analytically rather than in floating point.
    """
    def f(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            return ((2 * n + 1) * np.log(r / peak) - (r - peak) * (r + peak)
                    + 2 * m * np.log1p((r - peak) / (1 + peak)))

    return f


def moment(m: int, n: int, cfg: QuadConfig = DEFAULT) -> float:
    """``rho_n`` by adaptive Gauss-Legendre, normalized at the peak."""
    # peak of r^{2n+1} e^{-r^2} (near sqrt(n + 1/2)); any nearby point works
    peak = max(math.sqrt(n + 0.5), 0.5)
    L = _log_integrand(n, m, peak)
    Lp = (2 * n + 1) * math.log(peak) - peak * peak + 2 * m * math.log1p(peak)
    hi = peak + 14.0
    val, _ = integrate_interval(lambda r: np.exp(L(r)), 0.0, hi, cfg,
                                breakpoints=(max(peak - 3, 0), peak, peak + 3))
    if Lp > 700.0:
        raise ValueError(f"rho_{n} overflows double precision; truncation degree N must stay <= {N_MAX}")
    return 2.0 * val * math.exp(Lp)


@lru_cache(maxsize=None)
def _gl_extended(order: int):
    """Gauss-Legendre nodes/weights on [0, 1] polished to longdouble by Newton."""
    x = np.polynomial.legendre.leggauss(order)[0].astype(LD)

    def legendre(x):
        p0, p1 = np.ones_like(x), x.copy()
        for k in range(2, order + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        return p1, order * (x * p1 - p0) / (x * x - 1)

    for _ in range(3):
        p, dp = legendre(x)
        x = x - p / dp
    _, dp = legendre(x)
    w = 2 / ((1 - x * x) * dp * dp)
    return (x + 1) / 2, w / 2


def moment_ext(m: int, n: int, order: int = 24, width: float = 0.5):
    """``rho_n`` in extended precision from a fixed composite rule.

    The integrand is analytic and, after normalization at its peak, below
    e^{-40} outside ``[peak - 8, peak + 9]``; panels of width 0.5 with 24
    nodes resolve it to working precision (checked against the closed form
    for m = 0, 1, 2 in the tests).
    """
    if not EXTENDED:
        return moment_hp(m, n)
    X, W = _gl_extended(order)
    peak = math.sqrt(n + 0.5)
    lo, hi = max(0.0, peak - 8.0), peak + 9.0
    edges = np.arange(lo, hi + width, width).astype(LD)
    if lo > 0:
        edges = np.concatenate([np.zeros(1, dtype=LD), edges])
    a, b = edges[:-1, None], edges[1:, None]
    r = a + (b - a) * X[None, :]
    pk = LD(peak)
    with np.errstate(divide="ignore"):
        L = (2 * n + 1) * np.log(r / pk) - (r - pk) * (r + pk) + 2 * m * np.log1p((r - pk) / (1 + pk))
    Lp = (2 * n + 1) * np.log(pk) - pk * pk + 2 * m * np.log1p(pk)
    return LD(2) * np.sum((b - a) * W[None, :] * np.exp(L)) * np.exp(Lp)


def moment_hp(m: int, n: int):
    """``rho_n`` with mpmath (slow; fallback when longdouble is plain double)."""
    with mp.workdps(HP_DPS):
        peak = mp.sqrt(n + mp.mpf(1) / 2)
        f = lambda r: r ** (2 * n + 1) * mp.exp(-r * r) * (1 + r) ** (2 * m)
        pts = [0, max(peak - 4, mp.mpf(0) + peak / 4), peak, peak + 4, mp.inf]
        return 2 * mp.quad(f, pts)


def _tail(model_logs, N, x):
    """Bound on ``sum_{n>N} x^n / rho_n`` from rho_{n+1} >= (n+1) rho_n."""
    if x == 0:
        return 0.0
    q = x / (N + 2)
    if q >= 1:
        return math.inf
    tN = math.exp(N * math.log(x) - model_logs[N])
    return tN * (x / (N + 1)) / (1 - q)


def _cache_path(cache_dir, m, N, tol):
    return Path(cache_dir) / f"moments_m{m}_N{N}_tol{tol:.0e}.json"


def moments(m: int, N: int | None = None, cfg: QuadConfig = DEFAULT, probe_radius: float = 3.0,
            precise: bool = True, cache_dir=None) -> KernelModel:
    """Kernel model of order ``m`` truncated at degree ``N``."""
    if N is None:
        N = default_truncation(probe_radius)
    if N < 1:
        raise ValueError("N must be at least 1")
    if N > N_MAX:
        raise ValueError(f"N = {N} exceeds the supported truncation degree {N_MAX}")
    m = int(m)
    tol = min(cfg.rel_tol, 1e-12)
    qcfg = cfg.with_(rel_tol=tol, abs_tol=1e-300)
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    data = None
    if cache_dir:
        path = _cache_path(cache_dir, m, N, tol)
        if path.exists():
            data = json.loads(path.read_text())
            if precise and "moments_hp" not in data:
                data = None
    if data is None:
        vals = [moment(m, n, qcfg) for n in range(N + 1)]
        hp = [moment_ext(m, n) for n in range(N + 1)] if precise else None
    else:
        vals = data["moments"]
        conv = LD if EXTENDED else mp.mpf
        hp = [conv(s) for s in data["moments_hp"]] if precise else None
    logs = _logs(hp, vals)
    x = probe_radius ** 2
    partial = sum(math.exp(n * math.log(x) - logs[n]) for n in range(N + 1)) if x > 0 else 1 / vals[0]
    model = KernelModel(m, N, tuple(vals), _tail(logs, N, x) if x > 0 else 0.0,
                        probe_radius, tol, tuple(hp) if hp else None)
    if cache_dir and data is None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        _cache_path(cache_dir, m, N, tol).write_text(json.dumps(model.to_json()))
    if model.tail_bound > TAIL_TOL * partial:
        raise TruncationError(f"N={N} too small for probe radius {probe_radius}; increase N")
    return model


def _check_tail(model, x):
    logs = model.log_moments
    tail = _tail(logs, model.N, x)
    head = sum(math.exp(n * math.log(x) - logs[n]) for n in range(model.N + 1)) if x > 0 else 1.0
    if tail > TAIL_TOL * head:
        need = default_truncation(math.sqrt(x))
        raise TruncationError(f"|z||w| = {x:g} beyond truncation N={model.N}; use N >= {need}")


def kernel_eval(model: KernelModel, w: complex, z: complex) -> complex:
    """``K_w(z) = sum_n (z conj(w))^n / rho_n``."""
    w, z = complex(w), complex(z)
    _check_tail(model, abs(z) * abs(w))
    u = z * w.conjugate()
    if model.moments_hp is not None and EXTENDED:
        uu = np.clongdouble(u)
        acc = np.clongdouble(0)
        for rho in reversed(model.moments_hp):
            acc = acc * uu + 1 / rho
        return complex(acc)
    if model.moments_hp is not None:
        with mp.workdps(HP_DPS):
            uu = mp.mpc(u.real, u.imag)
            acc = mp.mpc(0)
            for rho in reversed(model.moments_hp):
                acc = acc * uu + 1 / rho
            return complex(acc)
    coeffs = 1.0 / np.array(model.moments)
    return complex(np.polynomial.polynomial.polyval(u, coeffs))


def kernel_norm_sq(model: KernelModel, w: complex) -> float:
    """``||K_w||^2 = K(w, w)``."""
    return kernel_eval(model, w, w).real


def kernel_poly(model: KernelModel, w: complex, scale_log: float = 0.0) -> ComplexPolynomial:
    """Coefficients ``e^{scale_log} conj(w)^n / rho_n`` formed in log space."""
    w = complex(w)
    logs = model.log_moments
    n = np.arange(model.N + 1)
    if w == 0:
        return ComplexPolynomial([math.exp(scale_log - logs[0])])
    mag = np.exp(n * math.log(abs(w)) - logs + scale_log)
    phase = np.exp(-1j * n * np.angle(w))
    return ComplexPolynomial(mag * phase)


def normalized_kernel(model: KernelModel, w: complex) -> Poly:
    """``xi_w = e^{-psi_m(w)} K_w`` as a degree-N polynomial."""
    _check_tail(model, abs(w) ** 2)
    return Poly(kernel_poly(model, w, -wt.psi(model.m, abs(w))))


def asymptotic_check(model: KernelModel, radii) -> dict:
    """``K(w,w) e^{-2 psi_m(w)}`` on the given radii with its band."""
    ratios = []
    for r in radii:
        k = kernel_norm_sq(model, complex(r))
        ratios.append(k * math.exp(-2 * wt.psi(model.m, float(r))))
    ratios = np.array(ratios)
    return {
        "m": model.m,
        "radii": [float(r) for r in radii],
        "ratios": ratios.tolist(),
        "min": float(ratios.min()),
        "max": float(ratios.max()),
        "band": float(ratios.max() / ratios.min()),
    }


def normb_check(model: KernelModel, points, ps=(1, 2, 4, math.inf), cfg: QuadConfig = DEFAULT) -> dict:
    """``||xi_w||_{(m,p)}`` over the given points and exponents."""
    rows = []
    for w in points:
        xi = normalized_kernel(model, w)
        for p in ps:
            res = norm_sup(xi, model.m, cfg) if p == math.inf else norm_p(xi, model.m, p, cfg)
            rows.append({"w": [complex(w).real, complex(w).imag], "p": p, "value": res.value})
    vals = [r["value"] for r in rows]
    return {"m": model.m, "rows": rows, "max": max(vals), "min": min(vals)}


def forall_check(model: KernelModel, points, ps=(1, 2, 4), cfg: QuadConfig = DEFAULT) -> dict:
    """``||K_w||_{(m,p)} e^{-psi_m(w)}`` (one-sided kernel estimate)."""
    rows = []
    for w in points:
        K = Poly(kernel_poly(model, w))
        for p in ps:
            v = norm_p(K, model.m, p, cfg).value * math.exp(-wt.psi(model.m, abs(w)))
            rows.append({"w": [complex(w).real, complex(w).imag], "p": p, "ratio": v})
    return {"m": model.m, "rows": rows, "max": max(r["ratio"] for r in rows)}


def reproducing_check(model: KernelModel, f: Poly, w: complex, cfg: QuadConfig = DEFAULT) -> dict:
    """``<f, K_w> = int f conj(K_w) e^{-2 psi_m} dA/pi`` against ``f(w)``."""
    K = kernel_poly(model, w)
    m = model.m
    fp = f.p

    def F(z):
        r = np.abs(z)
        return fp(z) * np.conj(K(z)) * np.exp(-2 * wt.psi(m, r)) / math.pi

    def bound(r):
        r = np.asarray(r, dtype=float)
        return fp.log_bound(r) + K.log_bound(r) - 2 * wt.psi(m, r)

    val, err = integrate_plane(F, cfg, log_bound=bound, degree=fp.degree + K.degree)
    target = f(complex(w))
    return {"inner": complex(val), "f_w": complex(target), "abs_err": abs(val - target), "quad_err": err}
