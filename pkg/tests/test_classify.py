import math

import numpy as np
import pytest
from scipy import integrate, optimize

from fockvolterra import classify as cl
from fockvolterra.config import DEFAULT


def test_symbol_ratio_examples():
    assert cl.symbol_ratio([0, 0, 1.0], 0, 10) == pytest.approx(20 / 11, rel=1e-15)
    assert cl.symbol_ratio([0, 1.0], 0, 0) == pytest.approx(1.0)
    assert cl.symbol_ratio([0, 0, 0, 1.0], 2, 10) == pytest.approx(300 / 11, rel=1e-15)
    v = cl.symbol_ratio([0, 0, 1.0], 1, np.array([1, 2j]))
    assert np.allclose(v, [1.0, 4 / 3])


@pytest.mark.parametrize("g,bounded,compact", [
    ([3.0], True, True), ([1, 2 - 1j], True, True), ([0, 1, 0.5j], True, False),
    ([0, 0, 0, 1.0], False, False), ([1, 0, 0, 0, 0, 2.0], False, False),
])
def test_into_sup_verdicts(g, bounded, compact):
    for m in (0, 1, 2):
        for p in (1.0, 2.0, math.inf):
            v = cl.classify_into_sup(g, m, p)
            assert (v.bounded, v.compact) == (bounded, compact)
            assert v.witness["sup_B_divergent"] == (not bounded)


@pytest.mark.parametrize("deg", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_growth_exponent_matches_degree(deg, m):
    g = [0.3] + [0.0] * (deg - 1) + [1.0]
    w = cl.into_sup_witness(g, m)
    assert w["expected_exponent"] == deg - 2
    assert w["growth_exponent"] == pytest.approx(deg - 2, abs=0.1)


def test_limit_of_quadratic_is_twice_leading_coefficient():
    w = cl.into_sup_witness([0, 1.0, 0.5 + 0.5j], 1)
    # 2|a| |w| / (1 + |w|) at |w| = 100, plus the linear coefficient's effect
    assert w["limit_B"] == pytest.approx(2 * abs(0.5 + 0.5j), rel=0.02)


def test_verdict_rejects_compact_unbounded():
    with pytest.raises(ValueError):
        cl.ClassifierVerdict("into-sup", False, True, "x")


@pytest.mark.parametrize("g,p,ok", [
    ([1.0], 1.0, True), ([0, 1.0], 3.0, True), ([0, 1.0], 2.0, False),
    ([0, 1.0], 1.0, False), ([0, 0, 1.0], 4.0, False),
])
def test_from_sup_verdicts(g, p, ok):
    v = cl.classify_from_sup(g, 0, p, radii=(5.0, 10.0, 20.0, 40.0))
    assert v.bounded == v.compact == ok
    assert v.witness["flag"] == ("convergent" if ok else "divergent")


def test_truncated_integrals_against_scipy():
    vals = cl.truncated_integrals([0, 1.0], 0, 3.0, radii=(5.0, 10.0))
    for R, v in zip((5.0, 10.0), vals):
        ref = 2 * math.pi * integrate.quad(lambda r: r / (1 + r) ** 3, 0, R, epsabs=1e-14)[0]
        assert v == pytest.approx(ref, rel=1e-9)
    assert cl.truncated_integrals([2.0], 0, 1.0, radii=(5.0,)) == [0.0]


def test_p2_linear_symbol_grows_logarithmically():
    v = cl.classify_from_sup([0, 1.0], 0, 2.0, radii=(20.0, 40.0, 100.0, 200.0))
    assert v.witness["log_slope"] / (2 * math.pi) == pytest.approx(1.0, abs=0.05)


def test_carleson_density_examples():
    assert cl.carleson_density([0, 1.0], 1.0, 0, 3.0) == pytest.approx(0.25)
    assert cl.carleson_density([0, 0, 1.0], 2.0, 1, 1.0) == pytest.approx(4 * 4 / 4)


def test_berezin_examples():
    assert cl.berezin_tilde([5.0], 1.0, 0, 1.0, 2.0) == 0.0
    ref = 2 * math.pi * integrate.quad(lambda r: r * math.exp(-r * r / 2) / (1 + r), 0, np.inf)[0]
    assert cl.berezin_tilde([0, 1.0], 1.0, 0, 1.0, 0.0) == pytest.approx(ref, rel=1e-8)
    with pytest.raises(ValueError):
        cl.berezin_tilde([0, 1.0], 1.0, 0, 0.0, 0.0)


def test_berezin_constant_band_is_bounded():
    out = cl.berezin_constant_band(1.0, 2.0, 1, radii=[0, 5, 10, 20])
    assert 0 < out["min"] <= out["max"] and out["band"] < 10


def test_kernel_test_sequence_against_real_axis_oracle():
    # V_g xi_w for g = z^2, m = 0: sup over z of 2|z| e^{-|w|^2/2 + Re(w z) - |z|^2/2}/(1+|z|),
    # maximised on the positive real axis for real w > 0
    out = cl.kernel_test_sequence([0, 0, 1.0], 0, [1.0, 4.0])
    for row in out["rows"]:
        w = row["w"]
        f = lambda x: -2 * x * math.exp(-(x - w) ** 2 / 2) / (1 + x)
        ref = -optimize.minimize_scalar(f, bounds=(0, w + 10), method="bounded", options={"xatol": 1e-12}).fun
        assert row["value"] == pytest.approx(ref, rel=1e-9)


def test_exact_kernel0_values():
    xi = cl.exact_kernel0(1 + 1j)
    z = 0.3 - 2j
    assert xi(z) == pytest.approx(math.exp(-1) * np.exp((1 - 1j) * z), rel=1e-14)


def test_verdict_serialises():
    d = cl.classify_into_sup([0, 0, 1.0], 1, math.inf).to_dict()
    assert d["p"] == "inf" and d["direction"] == "into-sup"
