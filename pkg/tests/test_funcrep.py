import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockvolterra.config import DEFAULT, NumericalError
from fockvolterra.funcrep import (
    ComplexPolynomial as P,
    ExpPoly,
    Poly,
    PolyCombination,
    ResolventImage,
    VolterraImage,
    differentiate,
    evaluate,
    exp_poly,
    exp_poly_membership,
    multiply,
    resolvent_apply,
    volterra_apply,
)
from fockvolterra import weight as wt

TIGHT = DEFAULT.with_(rel_tol=1e-12, abs_tol=1e-15)


# -- ComplexPolynomial ------------------------------------------------------

def test_polynomial_trimming_and_degree():
    assert P([1, 2, 0, 0]).degree == 1
    assert P([]).degree == -1 and P([0, 0]).is_zero()
    with pytest.raises(ValueError):
        P([1, float("nan")])


def test_polynomial_arithmetic_matches_numpy():
    rng = np.random.default_rng(3)
    a = rng.normal(size=5) + 1j * rng.normal(size=5)
    b = rng.normal(size=3) + 1j * rng.normal(size=3)
    z = 0.7 - 1.3j
    pa, pb = P(a), P(b)
    ev = lambda c: np.polynomial.polynomial.polyval(z, c)
    assert (pa * pb)(z) == pytest.approx(ev(np.polynomial.polynomial.polymul(a, b)), rel=1e-13)
    assert (pa + pb)(z) == pytest.approx(ev(a) + ev(b), rel=1e-13)
    assert pa.derivative()(z) == pytest.approx(ev(np.polynomial.polynomial.polyder(a)), rel=1e-13)


# -- evaluate ---------------------------------------------------------------

def test_evaluate_identity():
    assert evaluate(Poly([0, 1]), 2 + 1j) == 2 + 1j


def test_evaluate_exp_square():
    assert evaluate(ExpPoly([1], [0, 0, 1]), 1.0) == pytest.approx(math.e, rel=1e-15)


def test_evaluate_volterra_image_matches_closed_form():
    # V with g' = 2z applied to 1, forced through quadrature
    f = VolterraImage(exp_poly([1.0], [0.0]), P([0, 2]))
    assert f.evaluate(3.0, TIGHT) == pytest.approx(9.0, rel=1e-10)
    assert f.evaluate(0.0) == 0


def test_volterra_image_of_gaussian_matches_erf():
    f = VolterraImage(ExpPoly([1], [0, 0, -1]), P([1]))
    assert f.evaluate(2.0, TIGHT).real == pytest.approx(math.sqrt(math.pi) / 2 * math.erf(2.0), rel=1e-10)


def test_resolvent_image_at_zero():
    h = Poly([2.0, 1.0, 3.0])
    f = ResolventImage(P([0, 0, 1]), 3.0, h)
    assert f.evaluate(0.0) == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert f.at_zero() == pytest.approx(2.0 / 3.0)


# -- differentiate ----------------------------------------------------------

def test_differentiate_examples():
    assert differentiate(Poly([0, 0, 1])).p == P([0, 2])
    assert differentiate(VolterraImage(Poly([0, 1]), P([1]))).evaluate(1.7) == pytest.approx(1.7)
    a = 0.3 - 0.1j
    d = differentiate(ExpPoly([1], [0, 0, a]))
    assert isinstance(d, ExpPoly)
    assert d.p.allclose(P([0, 2 * a])) and d.q.allclose(P([0, 0, a]))


def test_resolvent_derivative_from_ode_matches_finite_difference():
    f = ResolventImage(P([0, 0.5, 1]), 3 + 1j, Poly([1, 2, 0.5]))
    d = f.derivative()
    z, h = 0.8 + 0.6j, 1e-5
    fd = (f.evaluate(z + h, TIGHT) - f.evaluate(z - h, TIGHT)) / (2 * h)
    assert d.evaluate(z, TIGHT) == pytest.approx(fd, rel=1e-7)


def test_combination_derivative_product_rule():
    f = PolyCombination(((P([1, 1]), ExpPoly([1], [0, 1])),))
    z = 0.4 - 0.2j
    # d/dz (1+z) e^z = (2+z) e^z
    assert f.derivative().evaluate(z) == pytest.approx((2 + z) * cmath.exp(z), rel=1e-14)


# -- volterra_apply ---------------------------------------------------------

def test_volterra_apply_examples():
    assert volterra_apply(P([0, 0, 1]), Poly([1])).p.allclose(P([0, 0, 1]))
    for n in range(6):
        out = volterra_apply(P([0, 1]), Poly(P.monomial(n)))
        assert out.p.allclose(P.monomial(n + 1, 1 / (n + 1)))
    # term-wise oracle: int_0^z w^2 * 3 w^2 dw = 3/5 z^5
    assert volterra_apply(P([0, 0, 0, 1]), Poly([0, 0, 1])).p.allclose(P.monomial(5, 0.6))


def test_volterra_apply_lazy_for_exponentials():
    out = volterra_apply(P([0, 0, 1]), ExpPoly([1], [0, 1]))
    assert isinstance(out, VolterraImage)
    assert out.evaluate(0.0) == 0
    z = 1.2 + 0.5j
    # int_0^z 2w e^w dw = 2[(w-1)e^w]_0^z
    assert out.evaluate(z, TIGHT) == pytest.approx(2 * ((z - 1) * cmath.exp(z) + 1), rel=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1, max_size=6),
       st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1, max_size=5))
def test_round_trip_derivative_of_volterra(fc, gc):
    f, g = Poly(fc), P(gc)
    out = volterra_apply(g, f)
    assert out.evaluate(0.0) == 0
    assert out.derivative().p.allclose(f.p * g.derivative(), rtol=1e-12, atol=1e-12)


# -- resolvent_apply --------------------------------------------------------

def test_resolvent_of_one_is_exponential():
    a, lam = 0.7 + 0.2j, 2.5
    f = resolvent_apply(P([0, 0, a]), lam, Poly([1]))
    assert isinstance(f, ExpPoly)
    z = 0.9 - 0.4j
    assert f.evaluate(z) == pytest.approx(cmath.exp(a * z * z / lam) / lam, rel=1e-14)


def test_resolvent_zero_symbol_is_division():
    f = resolvent_apply(P([0]), 2.0, Poly([0, 1]))
    assert f.p.allclose(P([0, 0.5]))


def test_resolvent_lambda_zero_rejected():
    with pytest.raises(ValueError):
        resolvent_apply(P([0, 0, 1]), 0.0, Poly([1]))


def _defect(g1, lam, h, f, z, cfg=TIGHT):
    vf = VolterraImage(f, g1.derivative()).evaluate(z, cfg) if g1.degree >= 1 else 0
    return abs(lam * f.evaluate(z, cfg) - vf - h.evaluate(z, cfg))


@pytest.mark.parametrize("z", [1.0, 1j, 1 + 1j])
def test_resolvent_defect_examples(z):
    g1, lam, h = P([0, 0, 1]), 3.0, Poly([0, 1])
    f = resolvent_apply(g1, lam, h)
    assert _defect(g1, lam, h, f, z) <= 1e-8


def test_resolvent_constant_term_of_symbol_is_irrelevant():
    h = Poly([1.0, -0.5])
    a = resolvent_apply(P([5.0, 0, 1]), 3.0, h)
    b = resolvent_apply(P([0, 0, 1]), 3.0, h)
    for z in (0.5, 1 + 1j, -2j):
        assert a.evaluate(z) == pytest.approx(b.evaluate(z), rel=1e-12)
    c = resolvent_apply(P([4.0, 0, 1]), 3.0, Poly([2.0]))
    assert c.evaluate(0.0) == pytest.approx(2.0 / 3.0)


def test_resolvent_defect_random_property():
    rng = np.random.default_rng(11)
    for _ in range(6):
        g1 = P(rng.normal(size=3) + 1j * rng.normal(size=3))
        a = abs(g1.coef(2))
        lam = (2 * a + 1 + rng.random()) * cmath.exp(2j * math.pi * rng.random())
        h = Poly(rng.normal(size=int(rng.integers(1, 8))) + 1j * rng.normal(size=1))
        f = resolvent_apply(g1, lam, h)
        for _ in range(20):
            z = 3 * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
            hz = h.evaluate(z)
            assert _defect(g1, lam, h, f, z) <= 1e-8 * (1 + abs(hz) + abs(lam * f.evaluate(z, TIGHT)))


# -- membership -------------------------------------------------------------

def test_membership_examples():
    for m in (0, 1, 2):
        assert exp_poly_membership([1], [0, 0, 0.4], m).status == "member"
    assert exp_poly_membership([1], [0, 0, 0.5], 1).status == "nonmember"
    res = exp_poly_membership([1], [0, 0, 0.5], 0)
    assert res.status == "member" and res.report["sup"] == pytest.approx(1.0)
    assert exp_poly_membership([1], [0, 0, 0, 0.01], 0).status == "nonmember"
    assert exp_poly_membership([1, 2, 3], [0, 5], 2).status == "member"


def test_membership_boundary_subleading_rules():
    # positive drift along a flat ray
    assert exp_poly_membership([1], [0, 1.0, 0.5], 0).status == "nonmember"
    # polynomial prefactor on the flat ray for m = 0
    assert exp_poly_membership([0, 1], [0, 0, 0.5], 0).status == "nonmember"
    # linear term perpendicular to the flat rays
    assert exp_poly_membership([1], [0, 1j, 0.5], 0).status == "boundary-directional"


def _radial_oracle_divergent(p, q, m):
    """Compare the angular max of log|p e^q| - psi at r = 15 and r = 30."""
    th = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    vals = []
    for r in (15.0, 30.0):
        z = r * np.exp(1j * th)
        with np.errstate(divide="ignore"):
            phi = np.log(np.abs(np.polyval(p[::-1], z))) + np.polyval(q[::-1], z).real - wt.psi(m, r)
        vals.append(phi.max())
    return vals[1] > vals[0]


def test_membership_agrees_with_radial_oracle_on_corpus():
    rng = np.random.default_rng(5)
    cases = 0
    while cases < 50:
        deg = int(rng.integers(1, 4))
        q = list(rng.normal(size=deg + 1) * 0.3 + 1j * rng.normal(size=deg + 1) * 0.3)
        q[0] = 0
        if deg == 2:
            mag = rng.choice([rng.uniform(0, 0.45), rng.uniform(0.55, 1.0)])
            q[2] = mag * cmath.exp(2j * math.pi * rng.random())
            q[1] = q[1] / max(1, abs(q[1]))
        if deg == 3:
            q[3] = 0.05 + abs(q[3])
        p = list(rng.normal(size=int(rng.integers(1, 4))) + 0j)
        m = int(rng.integers(0, 3))
        verdict = exp_poly_membership(p, q, m)
        assert verdict.status != "boundary-directional"
        assert (verdict.status == "nonmember") == _radial_oracle_divergent(np.array(p), np.array(q), m)
        cases += 1


def test_exp_poly_normalizes_constant_exponent():
    f = exp_poly([2.0], [1.0])
    assert isinstance(f, Poly) and f.p.allclose(P([2 * math.e]))
    g = multiply(exp_poly([1], [0, 1]), exp_poly([1], [0, -1]))
    assert isinstance(g, Poly) and g.p.allclose(P([1]))


def test_quadrature_failure_carries_estimates():
    cfg = DEFAULT.with_(max_refinements=1, rel_tol=1e-14, abs_tol=1e-300)
    f = VolterraImage(ExpPoly([1], [0, 40j]), P([1]))
    with pytest.raises(NumericalError) as exc:
        f.evaluate(10.0, cfg)
    assert len(exc.value.estimates) >= 1
