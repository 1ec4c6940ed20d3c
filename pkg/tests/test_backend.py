"""The compiled kernels and the numpy fallback must agree."""

import importlib

import numpy as np
import pytest

from fockvolterra import _backend, _core_py

fast = pytest.importorskip("fockvolterra._fastcore")

rng = np.random.default_rng(17)
P = rng.normal(size=6) + 1j * rng.normal(size=6)
Q = np.array([0, 0.3 - 0.1j, 0.2 + 0.1j])


def test_fallback_selected_by_environment(monkeypatch):
    monkeypatch.setenv("FOCKVOLTERRA_PURE", "1")
    mod = importlib.reload(_backend)
    try:
        assert mod.NAME == "numpy" and mod.core is _core_py
    finally:
        monkeypatch.delenv("FOCKVOLTERRA_PURE")
        importlib.reload(_backend)
    assert _backend.COMPILED


def test_horner_agrees():
    z = rng.normal(size=50) + 1j * rng.normal(size=50)
    assert np.allclose(fast.horner(P, z), _core_py.horner(P, z), rtol=1e-14, atol=1e-14)


@pytest.mark.parametrize("m,k,mode", [(0, 0, 0), (1, 1, 0), (2, 1, 1), (3, 2, 0)])
def test_logmod_agrees(m, k, mode):
    r = np.linspace(0, 12, 37)
    th = np.linspace(0, 2 * np.pi, 19)
    a = fast.logmod_grid(P, Q, m, k, mode, r, th)
    b = _core_py.logmod_grid(P, Q, m, k, mode, r, th)
    assert a.shape == b.shape == (19, 37)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)
    rr, tt = np.broadcast_arrays(r[None, :], th[:, None])
    assert np.allclose(fast.logmod_points(P, Q, m, k, mode, rr.ravel().copy(), tt.ravel().copy()),
                       b.ravel(), rtol=1e-12, atol=1e-12)


def test_golden_rays_agree():
    th = np.linspace(0, 2 * np.pi, 16, endpoint=False)
    lo, hi = np.zeros(16), np.full(16, 8.0)
    ra, fa = fast.golden_rays(P, Q, 1, 0, 0, th, lo, hi, 60)
    rb, fb = _core_py.golden_rays(P, Q, 1, 0, 0, th, lo, hi, 60)
    assert np.allclose(fa, fb, rtol=1e-12, atol=1e-12)
    assert np.allclose(ra, rb, atol=1e-6)
