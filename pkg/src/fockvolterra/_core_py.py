"""Pure numpy implementations of the hot kernels.

Mirrors ``_fastcore.pyx`` function for function; used when the compiled
extension is unavailable or ``FOCKVOLTERRA_PURE=1`` is set.

The objective shared by the sup-search and the plane integrals is the
weighted log-modulus of ``F = p * exp(q)``::

    phi(r, t) = log|p(z)| + Re q(z) - psi_m(r) - k * log D(r),   z = r e^{it}

where ``D`` is the normalizer selected by ``mode`` (0: 1+r, 1: clamped).
"""

import numpy as np

CLAMP_EPS = 0.25
INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def horner(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _log_norm(r, m, mode):
    if mode == 0:
        return np.log1p(r)
    return np.log(np.maximum(CLAMP_EPS, 1.0 + r - m / (1.0 + r)))


def logmod_points(p, q, m, k, mode, r, theta):
    """phi at paired points ``(r[i], theta[i])`` (broadcasting allowed)."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    z = r * np.exp(1j * theta)
    with np.errstate(divide="ignore"):
        out = np.log(np.abs(horner(p, z)))
    if len(q):
        out = out + horner(q, z).real
    out = out - (0.5 * r * r - m * np.log1p(r))
    if k:
        out = out - k * _log_norm(r, m, mode)
    return out


def logmod_grid(p, q, m, k, mode, r, theta):
    """phi on the tensor grid, shape ``(len(theta), len(r))``."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return logmod_points(p, q, m, k, mode, r[None, :], theta[:, None])


def golden_rays(p, q, m, k, mode, theta, lo, hi, iters):
    """Maximize phi along each ray ``theta[j]`` over ``[lo[j], hi[j]]``.

    All rays advance in lockstep for a fixed number of iterations so the
    result does not depend on evaluation order. Returns ``(r_best, phi_best)``.
    """
    theta = np.asarray(theta, dtype=float)
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = logmod_points(p, q, m, k, mode, c, theta)
    fd = logmod_points(p, q, m, k, mode, d, theta)
    for _ in range(int(iters)):
        left = fc >= fd
        # maximum lies in [a, d] where fc >= fd, else in [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = np.where(left, b - INV_PHI * (b - a), d)
        nd = np.where(left, c, a + INV_PHI * (b - a))
        fnew = logmod_points(p, q, m, k, mode, np.where(left, nc, nd), theta)
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = nc, nd
    take_c = fc >= fd
    return np.where(take_c, c, d), np.where(take_c, fc, fd)
