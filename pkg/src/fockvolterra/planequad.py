"""Quadrature over segments, rays and the plane, and the weighted sup-search.

Every routine here is deterministic: node sets are fixed, refinement is
breadth-first, and sums go through :func:`math.fsum`, so repeated calls
with the same inputs give bit-identical results.

Functions consumed by :func:`sup_search` follow a small protocol (see
:mod:`fockvolterra.funcrep`): ``growth_info(m)``, ``logabs(z)`` and
``exp_form()``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate as _sp_integrate

from . import weight as _wt
from ._backend import core
from .config import DEFAULT, NumericalError, QuadConfig

GL_ORDER = 12
GOLDEN_ITERS = 60


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    """Nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _fsum_complex(values) -> complex:
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real.ravel()), math.fsum(values.imag.ravel()))
    return math.fsum(values.ravel())


# --------------------------------------------------------------------------
# results

@dataclass(frozen=True)
class NormResult:
    """Either a finite value with its maximizer, or a divergence certificate."""

    finite: bool
    value: float
    argmax: complex | None = None
    err_estimate: float = 0.0
    direction: float | None = None
    growth_report: str = ""
    flag: str = ""

    @classmethod
    def of(cls, value, argmax=None, err=0.0, flag=""):
        if value < 0 or err < 0:
            raise ValueError("norm values and error estimates are nonnegative")
        return cls(True, float(value), argmax, float(err), flag=flag)

    @classmethod
    def infinite(cls, direction, report):
        return cls(False, math.inf, None, 0.0, direction, report)

    @property
    def kind(self) -> str:
        return "finite" if self.finite else "infinite"

    def scaled(self, c: float) -> "NormResult":
        if not self.finite:
            return self
        return NormResult(True, self.value * c, self.argmax, self.err_estimate * c, flag=self.flag)

    def to_dict(self) -> dict:
        if self.finite:
            am = None if self.argmax is None else [self.argmax.real, self.argmax.imag]
            d = {"kind": "finite", "value": self.value, "argmax": am, "err": self.err_estimate}
            if self.flag:
                d["flag"] = self.flag
            return d
        return {
            "kind": "infinite",
            "value": "infinite",
            "direction": self.direction,
            "growth": self.growth_report,
        }


# --------------------------------------------------------------------------
# segments

def integrate_segment(f, z0: complex, z1: complex, cfg: QuadConfig = DEFAULT) -> complex:
    """Adaptive bisection of ``int_{[z0,z1]} f(w) dw``.

    Each sub-segment is integrated with a fixed Gauss-Legendre rule and
    compared against the sum over its two halves; a sub-segment is accepted
    once the two agree to its share of ``rel_tol*|I| + abs_tol``.
    """
    x, wts = gauss_legendre(GL_ORDER)
    z0, z1 = complex(z0), complex(z1)
    L = z1 - z0
    if L == 0:
        return 0j

    def rule(a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        t = a[:, None] + (b - a)[:, None] * x[None, :]
        vals = np.asarray(f(z0 + t * L), dtype=complex)
        return L * (b - a) * (vals @ wts)

    a = np.array([0.0])
    b = np.array([1.0])
    whole = rule(a, b)
    total_est = abs(whole[0])
    accepted = []
    prev = None
    for _ in range(cfg.max_refinements + 1):
        mid = 0.5 * (a + b)
        halves = rule(np.concatenate([a, mid]), np.concatenate([mid, b]))
        n = len(a)
        fine = halves[:n] + halves[n:]
        total_est = max(total_est, abs(_fsum_complex(fine)) + abs(_fsum_complex(accepted)))
        tol = (cfg.rel_tol * total_est + cfg.abs_tol) * (b - a)
        ok = np.abs(fine - whole) <= tol
        accepted.extend(fine[ok])
        if ok.all():
            return _fsum_complex(accepted)
        prev = _fsum_complex(accepted) + _fsum_complex(fine[~ok])
        a = np.concatenate([a[~ok], mid[~ok]])
        b = np.concatenate([mid[~ok], b[~ok]])
        whole = np.concatenate([halves[:n][~ok], halves[n:][~ok]])
    last = _fsum_complex(accepted) + _fsum_complex(whole)
    raise NumericalError("segment quadrature did not converge", (prev, last))


def segment_scaled(integrand, z0, z1, cfg: QuadConfig = DEFAULT, base_panels: int = 4):
    """Batched ``int_{[z0,z1]} F(w) dw`` for arrays of endpoints.

    ``integrand(w, rows)`` returns ``(v, s)`` with ``F(w) = v * exp(s)``;
    ``rows`` indexes the (flattened) endpoint arrays the rows of ``w`` belong
    to, for integrands that depend on the endpoint. The
    result is returned in the same form ``(I, M)``; panels double until two
    successive levels agree to ``rel_tol*|I| + abs_tol*|z1-z0|`` measured
    in units of ``exp(M)``.
    """
    z0 = np.asarray(z0, dtype=complex)
    z1 = np.asarray(z1, dtype=complex)
    z0, z1 = np.broadcast_arrays(z0, z1)
    shape = z0.shape
    z0 = z0.ravel()
    z1 = z1.ravel()
    L = z1 - z0
    n = len(L)
    x, wts = gauss_legendre(GL_ORDER)

    def level(idx, panels):
        edges = np.arange(panels) / panels
        t = (edges[:, None] + x[None, :] / panels).ravel()
        w = np.tile(wts / panels, panels)
        pts = z0[idx, None] + L[idx, None] * t[None, :]
        v, s = integrand(pts, idx)
        v = np.asarray(v, dtype=complex)
        s = np.broadcast_to(np.asarray(s, dtype=float), v.shape)
        finite_s = np.where(np.isfinite(s), s, -np.inf)
        M = finite_s.max(axis=1)
        M = np.where(np.isfinite(M), M, 0.0)
        with np.errstate(under="ignore"):
            terms = v * np.exp(finite_s - M[:, None])
        terms = np.where(np.isfinite(finite_s), terms, 0.0)
        return L[idx] * (terms @ w), M

    I = np.zeros(n, dtype=complex)
    M = np.zeros(n)
    idx = np.arange(n)
    panels = base_panels
    prev_I, prev_M = level(idx, panels)
    for _ in range(cfg.max_refinements):
        panels *= 2
        cur_I, cur_M = level(idx, panels)
        Mc = np.maximum(prev_M, cur_M)
        a = prev_I * np.exp(prev_M - Mc)
        b = cur_I * np.exp(cur_M - Mc)
        ok = np.abs(a - b) <= cfg.rel_tol * np.abs(b) + cfg.abs_tol * np.abs(L[idx])
        I[idx[ok]] = cur_I[ok]
        M[idx[ok]] = cur_M[ok]
        if ok.all():
            return I.reshape(shape), M.reshape(shape)
        idx = idx[~ok]
        prev_I, prev_M = cur_I[~ok], cur_M[~ok]
    raise NumericalError(
        f"segment quadrature did not converge at {len(idx)} point(s)",
        (complex(a[~ok][0] * np.exp(Mc[~ok][0])), complex(b[~ok][0] * np.exp(Mc[~ok][0]))),
    )


# --------------------------------------------------------------------------
# one-dimensional and plane integrals

def integrate_interval(func, a: float, b: float, cfg: QuadConfig = DEFAULT,
                       panels: int | None = None, breakpoints=()):
    """Adaptive composite Gauss-Legendre on ``[a, b]`` for a vectorized ``func``.

    Returns ``(value, err_estimate)``. Panels are refined breadth-first, each
    accepted when its Gauss value and the sum over its halves agree to its
    length share of ``rel_tol*|I| + abs_tol``.
    """
    x, wts = gauss_legendre(GL_ORDER)
    panels = panels or cfg.radial_panels
    edges = np.unique(np.concatenate([np.linspace(a, b, panels + 1),
                                      [p for p in breakpoints if a < p < b]]))
    lo, hi = edges[:-1], edges[1:]

    def rule(lo, hi):
        pts = lo[:, None] + (hi - lo)[:, None] * x[None, :]
        vals = np.asarray(func(pts.ravel())).reshape(pts.shape)
        return (hi - lo) * (vals @ wts)

    whole = rule(lo, hi)
    accepted, errs = [], []
    total_est = abs(_fsum_complex(whole))
    for _ in range(cfg.max_refinements + 1):
        mid = 0.5 * (lo + hi)
        halves = rule(np.concatenate([lo, mid]), np.concatenate([mid, hi]))
        n = len(lo)
        fine = halves[:n] + halves[n:]
        diff = np.abs(fine - whole)
        total_est = max(abs(_fsum_complex(accepted) + _fsum_complex(fine)), 1e-300)
        tol = (cfg.rel_tol * total_est + cfg.abs_tol) * (hi - lo) / (b - a)
        ok = diff <= tol
        accepted.extend(fine[ok])
        errs.extend(diff[ok])
        if ok.all():
            return _fsum_complex(accepted), math.fsum(errs)
        lo, hi = np.concatenate([lo[~ok], mid[~ok]]), np.concatenate([mid[~ok], hi[~ok]])
        whole = np.concatenate([halves[:n][~ok], halves[n:][~ok]])
    raise NumericalError("radial quadrature did not converge",
                         (_fsum_complex(accepted) + _fsum_complex(whole),))


def tail_radius(log_bound, cfg: QuadConfig = DEFAULT, start: float = 5.0) -> float:
    """Radius beyond which ``2*pi*int_R^inf exp(U(r)) r dr < abs_tol``.

    ``log_bound(r)`` is an upper bound for ``log max_{|z|=r} |F(z)|``.
    """

    def tail(R):
        with np.errstate(over="ignore", under="ignore"):
            val, _ = _sp_integrate.quad(
                lambda r: math.exp(min(float(log_bound(r)), 700.0)) * r, R, math.inf, limit=200
            )
        return 2 * math.pi * val

    if not np.all(np.diff([float(log_bound(r)) for r in (0.5 * cfg.max_radius, cfg.max_radius, 2 * cfg.max_radius)]) < 0):
        raise NumericalError("integrand is not certified to decay; refusing to integrate")
    R = start
    while R <= cfg.max_radius:
        if tail(R) < cfg.abs_tol:
            return R
        R *= 1.25
    raise NumericalError(f"tail above abs_tol even at max_radius={cfg.max_radius}")


def integrate_plane(F, cfg: QuadConfig = DEFAULT, *, log_bound=None, radius=None,
                    center: complex = 0j, degree: int = 0, breakpoints=()):
    """``int F(z) dA(z)`` over the plane (or the disk ``|z-center| < radius``).

    Polar product rule: adaptive Gauss-Legendre panels in ``r`` and the
    periodic trapezoid rule in the angle with at least
    ``max(angular_samples, 4*(degree+1))`` samples, doubled until the
    angular rule is converged. For whole-plane integrals the radius is cut
    where the certified ``log_bound`` tail drops below ``abs_tol``.

    Returns ``(value, err_estimate)``.
    """
    if radius is None:
        if log_bound is None:
            raise ValueError("whole-plane integrals need a decay bound")
        radius = tail_radius(log_bound, cfg)
    radius = float(radius)
    n_theta = max(cfg.angular_samples, 4 * (int(degree) + 1))
    center = complex(center)

    def radial(n):
        th = 2 * math.pi * np.arange(n) / n
        e = np.exp(1j * th)

        def g(r):
            z = center + r[:, None] * e[None, :]
            vals = np.asarray(F(z))
            coarse = vals[:, ::2].mean(axis=1)
            fine = vals.mean(axis=1)
            return 2 * math.pi * r * fine, 2 * math.pi * r * coarse

        return g

    for _ in range(8):
        g = radial(2 * n_theta)
        fine_val, err = integrate_interval(lambda r: g(r)[0], 0.0, radius, cfg, breakpoints=breakpoints)
        coarse_val, _ = integrate_interval(lambda r: g(r)[1], 0.0, radius, cfg, breakpoints=breakpoints)
        ang_err = abs(fine_val - coarse_val)
        if ang_err <= cfg.rel_tol * abs(fine_val) + cfg.abs_tol:
            return fine_val, err + ang_err
        n_theta *= 2
    raise NumericalError("angular rule did not converge", (coarse_val, fine_val))


# --------------------------------------------------------------------------
# sup search

def _objective(f, w: _wt.Weight, k: int, fast, cfg):
    m, mode = w.m, w.mode
    if fast is not None:
        p, q = fast
        return lambda r, t: core.logmod_points(p, q, m, k, mode, r, t)

    def phi(r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        r, t = np.broadcast_arrays(r, t)
        val = np.asarray(f.logabs(r * np.exp(1j * t), cfg), dtype=float)
        val = val - _wt.psi(w, r)
        if k:
            val = val - k * np.log(_wt.normalizer(w, r))
        return val

    return phi


def _golden_lockstep(phi, theta, lo, hi, iters=GOLDEN_ITERS):
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = np.array(lo, float), np.array(hi, float)
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = phi(c, theta), phi(d, theta)
    for _ in range(iters):
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = np.where(left, b - inv * (b - a), d)
        nd = np.where(left, c, a + inv * (b - a))
        fnew = phi(np.where(left, nc, nd), theta)
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = nc, nd
    take = fc >= fd
    return np.where(take, c, d), np.where(take, fc, fd)


def _golden_theta(phi, r, t_lo, t_hi, iters=GOLDEN_ITERS):
    # maximize over the angle at fixed radius by swapping argument roles
    swapped = lambda t, rr: phi(rr, t)
    return _golden_lockstep(swapped, np.atleast_1d(r), [t_lo], [t_hi], iters)


def cutoff_radius(bound, ref: float, cfg: QuadConfig, drop: float = 2.0):
    """Smallest grid radius past which ``bound(r) < ref - drop`` for good."""
    rs = np.concatenate([np.linspace(0.0, 2.0, 21), np.geomspace(2.0, cfg.max_radius, 400)])
    u = np.asarray(bound(rs), dtype=float)
    above = np.nonzero(u >= ref - drop)[0]
    if len(above) and above[-1] == len(rs) - 1:
        return None
    R = rs[above[-1] + 1] if len(above) else 2.0
    return max(float(R), 2.0)


def sup_search(f, m, cfg: QuadConfig = DEFAULT, k: int = 0) -> NormResult:
    """``sup_z |f(z)| e^{-psi_m(|z|)} / D(|z|)^k`` with a divergence certificate.

    Finiteness comes from ``f.growth_info(m)``; the numerics only locate the
    maximum: a polar grid out to a certified cutoff, golden-section along
    every ray, then alternating angle/radius refinement around the best
    candidates.
    """
    w = m if isinstance(m, _wt.Weight) else _wt.Weight(int(m), cfg.normalizer)
    info = f.growth_info(w.m)
    if info.status == "infinite":
        return NormResult.infinite(info.direction, info.report)
    if info.status == "boundary":
        if info.sup_value is not None and k == 0:
            return NormResult.of(info.sup_value, None, 0.0, flag="asymptotic-supremum")
        raise NumericalError(f"boundary growth not resolved: {info.report}")

    fast = f.exp_form()
    phi = _objective(f, w, k, fast, cfg)
    n_theta = int(cfg.angular_samples)
    theta = 2 * math.pi * np.arange(n_theta) / n_theta

    # reference level from a small probe, then the certified cutoff
    probe_r = np.linspace(0.0, 6.0, 25)
    ref = float(np.max(phi(probe_r[None, :], theta[::4, None])))
    if not np.isfinite(ref):
        ref = -745.0

    def bound(r):
        return info.log_bound(r) - _wt.psi(w, r) - (k * np.log(_wt.normalizer(w, r)) if k else 0.0)

    R = cutoff_radius(bound, ref, cfg)
    if R is None:
        return NormResult.of(math.exp(ref), None, math.inf, flag="budget: cutoff beyond max_radius")

    for _attempt in range(6):
        best, argz, err = _search_disk(phi, fast, w, k, R, theta, cfg)
        if info.rigorous:
            break
        # a posteriori check of a heuristic bound: nothing larger further out
        outer_r = np.linspace(R, min(2 * R, cfg.max_radius), 16)
        outer = np.max(phi(outer_r[None, :], theta[:, None]))
        if outer < best - 1.0 or R >= cfg.max_radius:
            break
        R = min(1.5 * R, cfg.max_radius)
    value = math.exp(best)
    return NormResult.of(value, argz, max(err * value, 8 * np.finfo(float).eps * value))


def _search_disk(phi, fast, w, k, R, theta, cfg):
    radii = np.unique(np.concatenate([[0.0], np.geomspace(0.01, R, 48), np.linspace(0.0, R, 161)]))
    if fast is not None:
        grid = core.logmod_grid(fast[0], fast[1], w.m, k, w.mode, radii, theta)
    else:
        grid = phi(radii[None, :], theta[:, None])
    grid = np.where(np.isnan(grid), -np.inf, grid)
    i = np.argmax(grid, axis=1)
    lo = radii[np.maximum(i - 1, 0)]
    hi = radii[np.minimum(i + 1, len(radii) - 1)]
    if fast is not None:
        rb, fb = core.golden_rays(fast[0], fast[1], w.m, k, w.mode, theta, lo, hi, GOLDEN_ITERS)
    else:
        rb, fb = _golden_lockstep(phi, theta, lo, hi)
    grid_best = grid[np.arange(len(theta)), i]
    improved = fb >= grid_best
    rb = np.where(improved, rb, radii[i])
    fb = np.where(improved, fb, grid_best)

    # candidates: local maxima over the angle, best three
    n = len(theta)
    is_peak = (fb >= np.roll(fb, 1)) & (fb >= np.roll(fb, -1))
    cand = np.nonzero(is_peak)[0]
    cand = cand[np.argsort(-fb[cand], kind="stable")][:3]
    dth = 2 * math.pi / n
    best, best_z, best_err = -math.inf, 0j, 0.0
    for j in cand:
        r0, t0, f0 = float(rb[j]), float(theta[j]), float(fb[j])
        prev = f0
        change = math.inf
        for _ in range(8):
            if r0 > 0:
                tt, ft = _golden_theta(phi, r0, t0 - dth, t0 + dth)
                if ft[0] > f0:
                    t0, f0 = float(tt[0]), float(ft[0])
            span = max(R / 160.0, 1e-3)
            rr, fr = _golden_lockstep(phi, np.array([t0]), [max(r0 - span, 0.0)], [min(r0 + span, R)])
            if fr[0] > f0:
                r0, f0 = float(rr[0]), float(fr[0])
            change = f0 - prev
            prev = f0
            if change <= 1e-15:
                break
            dth *= 0.5
        dth = 2 * math.pi / n
        if f0 > best:
            best, best_z, best_err = f0, r0 * complex(math.cos(t0), math.sin(t0)), abs(change)
    if best == -math.inf:
        # identically zero function
        return -math.inf, 0j, 0.0
    return best, best_z, best_err
