import math

import numpy as np
import pytest
from scipy import integrate, optimize

from fockvolterra.config import DEFAULT, NumericalError, QuadConfig
from fockvolterra.funcrep import ExpPoly, Poly
from fockvolterra.planequad import (
    NormResult,
    integrate_interval,
    integrate_plane,
    integrate_segment,
    sup_search,
)
from fockvolterra import weight as wt

TIGHT = DEFAULT.with_(rel_tol=1e-12, abs_tol=1e-14)


def radial_oracle(g):
    """2 pi int_0^inf g(r) r dr by scipy."""
    return 2 * math.pi * integrate.quad(lambda r: g(r) * r, 0, np.inf, epsabs=1e-14, epsrel=1e-13)[0]


def gaussian_bound(k=0):
    return lambda r: -np.asarray(r) ** 2 + k * np.log1p(r)


# -- config -------------------------------------------------------------------

def test_config_validation_and_round_trip():
    with pytest.raises(ValueError):
        QuadConfig(rel_tol=0)
    with pytest.raises(ValueError):
        QuadConfig(max_radius=5)
    with pytest.raises(ValueError):
        QuadConfig(angular_samples=4)
    with pytest.raises(ValueError):
        QuadConfig(abs_tol=float("inf"))
    with pytest.raises(ValueError):
        QuadConfig.from_dict({"rel_tol": 1e-6, "bogus": 1})
    cfg = QuadConfig(rel_tol=1e-6, normalizer="clamped")
    assert QuadConfig.from_dict(cfg.to_dict()) == cfg


# -- plane integrals ------------------------------------------------------------

def test_gaussian_integral():
    val, err = integrate_plane(lambda z: np.exp(-np.abs(z) ** 2), TIGHT, log_bound=gaussian_bound())
    assert val == pytest.approx(math.pi, rel=1e-10)
    assert err <= 1e-8


def test_second_moment_integral():
    val, _ = integrate_plane(lambda z: np.abs(z) ** 2 * np.exp(-np.abs(z) ** 2), TIGHT,
                             log_bound=gaussian_bound(2))
    assert val == pytest.approx(math.pi, rel=1e-10)


def test_weight_m1_integral_matches_radial_oracle():
    F = lambda z: np.exp(-2 * wt.psi(1, np.abs(z)))
    oracle = radial_oracle(lambda r: math.exp(-r * r) * (1 + r) ** 2)
    # closed form from Gamma values: pi (2 + sqrt(pi)) = 2 pi (1/2 + sqrt(pi)/2 + 1/2)
    assert oracle == pytest.approx(math.pi * (2 + math.sqrt(math.pi)), rel=1e-12)
    val, _ = integrate_plane(F, TIGHT, log_bound=gaussian_bound(2))
    assert val == pytest.approx(oracle, rel=1e-9)


@pytest.mark.parametrize("m,n", [(0, 3), (1, 0), (2, 5)])
def test_radial_integrands_match_oracle(m, n):
    g = lambda r: r ** (2 * n) * math.exp(-2 * wt.psi(m, r))
    val, _ = integrate_plane(lambda z: np.abs(z) ** (2 * n) * np.exp(-2 * wt.psi(m, np.abs(z))),
                             TIGHT, log_bound=gaussian_bound(2 * n + 2 * m))
    assert val == pytest.approx(radial_oracle(g), rel=1e-9)


def test_nonradial_integrand_and_offcenter_disk():
    # |1 + z|^2 e^{-|z|^2}: angular cross terms vanish, result pi + pi
    val, _ = integrate_plane(lambda z: np.abs(1 + z) ** 2 * np.exp(-np.abs(z) ** 2), TIGHT,
                             log_bound=gaussian_bound(2), degree=1)
    assert val == pytest.approx(2 * math.pi, rel=1e-10)
    val, _ = integrate_plane(lambda z: np.ones(np.shape(z)), TIGHT, radius=2.0, center=3 - 1j)
    assert val == pytest.approx(4 * math.pi, rel=1e-12)


def test_plane_requires_bound_for_whole_plane():
    with pytest.raises(ValueError):
        integrate_plane(lambda z: np.exp(-np.abs(z) ** 2))


# -- segments -------------------------------------------------------------------

def test_segment_examples():
    one = lambda w: np.ones_like(w)
    assert integrate_segment(one, 0, 1 + 1j) == pytest.approx(1 + 1j, rel=1e-14)
    assert integrate_segment(lambda w: 2 * w, 0, 3) == pytest.approx(9, rel=1e-14)
    val = integrate_segment(lambda w: np.exp(-w * w), 0, 2, TIGHT)
    assert val.real == pytest.approx(math.sqrt(math.pi) / 2 * math.erf(2), rel=1e-10)
    assert val.real == pytest.approx(0.882081, abs=1e-6)


def test_segment_is_deterministic():
    f = lambda w: np.exp(1j * 5 * w) * w ** 3
    a = integrate_segment(f, 0, 2 + 1j, TIGHT)
    b = integrate_segment(f, 0, 2 + 1j, TIGHT)
    assert a == b


def test_segment_non_convergence_reports_estimates():
    cfg = DEFAULT.with_(max_refinements=1, rel_tol=1e-15, abs_tol=1e-300)
    with pytest.raises(NumericalError) as exc:
        integrate_segment(lambda w: np.exp(50j * w), 0, 10, cfg)
    assert len(exc.value.estimates) == 2


def test_interval_against_scipy():
    f = lambda r: np.exp(-r) * np.cos(3 * r)
    val, err = integrate_interval(f, 0.0, 10.0, TIGHT)
    ref = integrate.quad(lambda r: math.exp(-r) * math.cos(3 * r), 0, 10, epsabs=1e-14)[0]
    assert val == pytest.approx(ref, rel=1e-11)


# -- sup search -----------------------------------------------------------------

def radial_max(fun, hi=20.0):
    res = optimize.minimize_scalar(lambda r: -fun(r), bounds=(0, hi), method="bounded",
                                   options={"xatol": 1e-12})
    return -res.fun, res.x


def test_sup_of_one_m0():
    res = sup_search(Poly([1.0]), 0)
    assert res.finite and res.value == pytest.approx(1.0, rel=1e-12)
    assert abs(res.argmax) < 1e-6


def test_sup_of_identity_m0():
    res = sup_search(Poly([0, 1.0]), 0)
    assert res.value == pytest.approx(math.exp(-0.5), rel=1e-10)
    assert abs(res.argmax) == pytest.approx(1.0, abs=1e-4)


def test_sup_of_one_m1():
    oracle, r = radial_max(lambda r: (1 + r) * math.exp(-r * r / 2))
    assert r == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-6)
    res = sup_search(Poly([1.0]), 1)
    assert res.value == pytest.approx(oracle, rel=1e-10)
    assert res.value == pytest.approx(1.33674, abs=1e-5)


def test_sup_nonradial_against_dense_grid():
    f = Poly([1.0, 2 - 1j, 0.5j, 0.3])
    res = sup_search(f, 1)
    r = np.linspace(0, 8, 1601)
    th = np.linspace(0, 2 * np.pi, 2048, endpoint=False)
    z = r[None, :] * np.exp(1j * th[:, None])
    grid = np.abs(np.polyval([0.3, 0.5j, 2 - 1j, 1.0], z)) * np.exp(-wt.psi(1, r))[None, :]
    assert res.value >= grid.max() * (1 - 1e-12)
    assert res.value == pytest.approx(grid.max(), rel=1e-4)


def test_sup_divergent_has_certificate():
    res = sup_search(ExpPoly([1], [0, 0, 1.0]), 0)
    assert not res.finite and res.kind == "infinite"
    assert res.direction is not None and "1/2" in res.growth_report


def test_sup_monotone_under_domination():
    small = Poly([0, 0.5])
    big = Poly([1.0, 0.5])  # |z/2| <= |1 + z/2| on Re z >= -1 only; use |z|/2 <= 1/2 + |z|/2 instead
    dom = sup_search(Poly([0.5, 0, 0]), 0)  # constant
    a = sup_search(small, 0)
    b = sup_search(Poly([0, 1.0]), 0)
    assert a.value <= b.value * (1 + 1e-12)
    assert dom.value <= sup_search(Poly([1.0]), 0).value * (1 + 1e-12)
    assert sup_search(big, 2).value >= 0


def test_sup_is_deterministic():
    f = ExpPoly([1, 1j], [0, 0.3 - 0.2j, 0.2j])
    assert sup_search(f, 2) == sup_search(f, 2)


def test_normresult_contract():
    with pytest.raises(ValueError):
        NormResult.of(-1.0)
    r = NormResult.of(2.0, 1j, 0.1)
    assert r.scaled(3).value == 6.0 and r.to_dict()["argmax"] == [0.0, 1.0]
    inf = NormResult.infinite(0.3, "grows")
    assert inf.to_dict()["value"] == "infinite"
