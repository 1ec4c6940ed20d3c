# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_core_py``; same signatures."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, log1p, fabs, sqrt, cos, sin, INFINITY

cnp.import_array()

cdef double CLAMP_EPS = 0.25
cdef double INV_PHI = (sqrt(5.0) - 1.0) / 2.0


cdef inline double _radial(int m, int k, int mode, double r) noexcept nogil:
    """``-psi_m(r) - k log D(r)``."""
    cdef double l1 = log1p(r)
    cdef double out = m * l1 - 0.5 * r * r
    cdef double dn
    if k:
        if mode == 0:
            out -= k * l1
        else:
            dn = 1.0 + r - m / (1.0 + r)
            if dn < CLAMP_EPS:
                dn = CLAMP_EPS
            out -= k * log(dn)
    return out


cdef inline double _logmod_xy(const double complex[:] p, const double complex[:] q,
                              double x, double y) noexcept nogil:
    """``log|p(z)| + Re q(z)`` with Horner in real arithmetic on ``z = x + iy``."""
    cdef Py_ssize_t i
    cdef double ar = 0.0, ai = 0.0, tr
    for i in range(p.shape[0] - 1, -1, -1):
        tr = ar * x - ai * y + p[i].real
        ai = ar * y + ai * x + p[i].imag
        ar = tr
    cdef double a2 = ar * ar + ai * ai
    cdef double out
    if a2 == 0.0:
        return -INFINITY
    out = 0.5 * log(a2)
    if q.shape[0] > 0:
        ar = 0.0
        ai = 0.0
        for i in range(q.shape[0] - 1, -1, -1):
            tr = ar * x - ai * y + q[i].real
            ai = ar * y + ai * x + q[i].imag
            ar = tr
        out += ar
    return out


cdef inline double _phi(const double complex[:] p, const double complex[:] q,
                        int m, int k, int mode, double r, double t) noexcept nogil:
    return _logmod_xy(p, q, r * cos(t), r * sin(t)) + _radial(m, k, mode, r)


def horner(coeffs, z):
    cdef const double complex[:] c = np.ascontiguousarray(coeffs, dtype=complex)
    zz = np.ascontiguousarray(z, dtype=complex)
    flat = zz.reshape(-1)
    out = np.empty_like(flat)
    cdef const double complex[:] zv = flat
    cdef double[:, :] ov = out.view(np.float64).reshape(-1, 2)
    cdef const double[:, :] zr = flat.view(np.float64).reshape(-1, 2)
    cdef const double[:, :] cr = np.asarray(c).view(np.float64).reshape(-1, 2)
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n = cr.shape[0]
    cdef double x, y, ar, ai, tr
    with nogil:
        for i in range(zr.shape[0]):
            x = zr[i, 0]
            y = zr[i, 1]
            ar = 0.0
            ai = 0.0
            for j in range(n - 1, -1, -1):
                tr = ar * x - ai * y + cr[j, 0]
                ai = ar * y + ai * x + cr[j, 1]
                ar = tr
            ov[i, 0] = ar
            ov[i, 1] = ai
    return out.reshape(zz.shape)


def logmod_points(p, q, int m, int k, int mode, r, theta):
    cdef const double complex[:] pv = np.ascontiguousarray(p, dtype=complex)
    cdef const double complex[:] qv = np.ascontiguousarray(q, dtype=complex)
    rr, tt = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    shape = rr.shape
    rf = np.ascontiguousarray(rr).reshape(-1)
    tf = np.ascontiguousarray(tt).reshape(-1)
    cdef const double[:] rv = rf
    cdef const double[:] tv = tf
    out = np.empty(rf.shape[0])
    cdef double[:] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(rv.shape[0]):
            ov[i] = _phi(pv, qv, m, k, mode, rv[i], tv[i])
    return out.reshape(shape)


def logmod_grid(p, q, int m, int k, int mode, r, theta):
    cdef const double complex[:] pv = np.ascontiguousarray(p, dtype=complex)
    cdef const double complex[:] qv = np.ascontiguousarray(q, dtype=complex)
    cdef const double[:] rv = np.ascontiguousarray(r, dtype=float)
    cdef const double[:] tv = np.ascontiguousarray(theta, dtype=float)
    out = np.empty((tv.shape[0], rv.shape[0]))
    cdef double[:, :] ov = out
    cdef Py_ssize_t i, j
    cdef double c, sn
    rad = np.empty(rv.shape[0])
    cdef double[:] radv = rad
    with nogil:
        for j in range(rv.shape[0]):
            radv[j] = _radial(m, k, mode, rv[j])
        for i in range(tv.shape[0]):
            c = cos(tv[i])
            sn = sin(tv[i])
            for j in range(rv.shape[0]):
                ov[i, j] = _logmod_xy(pv, qv, rv[j] * c, rv[j] * sn) + radv[j]
    return out


def golden_rays(p, q, int m, int k, int mode, theta, lo, hi, int iters):
    cdef const double complex[:] pv = np.ascontiguousarray(p, dtype=complex)
    cdef const double complex[:] qv = np.ascontiguousarray(q, dtype=complex)
    cdef const double[:] tv = np.ascontiguousarray(theta, dtype=float)
    cdef const double[:] lov = np.ascontiguousarray(lo, dtype=float)
    cdef const double[:] hiv = np.ascontiguousarray(hi, dtype=float)
    cdef Py_ssize_t n = tv.shape[0]
    rbest = np.empty(n)
    fbest = np.empty(n)
    cdef double[:] rb = rbest
    cdef double[:] fb = fbest
    cdef Py_ssize_t j
    cdef int it
    cdef double a, b, c, d, fc, fd, t
    with nogil:
        for j in range(n):
            t = tv[j]
            a = lov[j]
            b = hiv[j]
            c = b - INV_PHI * (b - a)
            d = a + INV_PHI * (b - a)
            fc = _phi(pv, qv, m, k, mode, c, t)
            fd = _phi(pv, qv, m, k, mode, d, t)
            for it in range(iters):
                if fc >= fd:
                    b = d
                    d = c
                    fd = fc
                    c = b - INV_PHI * (b - a)
                    fc = _phi(pv, qv, m, k, mode, c, t)
                else:
                    a = c
                    c = d
                    fc = fd
                    d = a + INV_PHI * (b - a)
                    fd = _phi(pv, qv, m, k, mode, d, t)
            if fc >= fd:
                rb[j] = c
                fb[j] = fc
            else:
                rb[j] = d
                fb[j] = fd
    return rbest, fbest
