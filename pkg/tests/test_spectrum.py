import math

import numpy as np
import pytest
from scipy import optimize

from fockvolterra import spectrum as sp
from fockvolterra.funcrep import Poly


def test_spectrum_of_examples():
    assert sp.spectrum_of([1, 2, 3.0]).radius == pytest.approx(6.0)
    assert sp.spectrum_of([1, 2.0]).radius == 0.0
    assert sp.spectrum_of([0, 0, 1j]).radius == pytest.approx(2.0)
    assert sp.spectrum_of([5.0]).degree == 0
    with pytest.raises(sp.DomainError):
        sp.spectrum_of([0, 0, 0, 1.0])


@pytest.mark.parametrize("lam,status", [
    (0, "in-spectrum"), (1.0, "in-spectrum"), (2.0, "boundary"), (-2j, "boundary"),
    (2.5, "resolvent"), (1j, "in-spectrum"), (10.0, "resolvent"),
])
def test_in_spectrum_examples(lam, status):
    pt = sp.in_spectrum([0, 0, 1.0], 0, lam)
    assert pt.status == status
    assert pt.consistent
    assert pt.closure_in_spectrum == (status != "resolvent")


def test_in_spectrum_linear_symbol():
    pt = sp.in_spectrum([0, 3.0], 1, 0.01)
    assert pt.status == "resolvent" and pt.consistent


def resolvent_one_oracle(lam, m):
    """||R_lam 1||_(m,inf) for g = z^2: (1/lam) sup_r e^{(1/lam - 1/2) r^2} (1+r)^m."""
    f = lambda r: -math.exp((1 / lam - 0.5) * r * r) * (1 + r) ** m
    res = optimize.minimize_scalar(f, bounds=(0, 40), method="bounded", options={"xatol": 1e-12})
    return max(-res.fun, 1.0) / lam


@pytest.mark.parametrize("lam,m", [(3.0, 1), (2.5, 2), (10.0, 0)])
def test_direct_scan_against_radial_oracle(lam, m):
    scan = sp.resolvent_norm_scan([0, 0, 1.0], m, [lam], [("1", Poly([1.0]))], form="direct")
    row = scan.rows[0]
    entry = row["per_function"][0]
    assert entry["norm_R_h"] == pytest.approx(resolvent_one_oracle(lam, m), rel=1e-8)
    assert row["defect"] < 1e-10


def test_lambda_ten_closed_form():
    scan = sp.resolvent_norm_scan([0, 0, 1.0], 0, [10.0], [("1", Poly([1.0]))], form="direct")
    assert scan.rows[0]["lower_bound"] == pytest.approx(0.1, rel=1e-10)


def test_zero_symbol_gives_h_over_lambda():
    scan = sp.resolvent_norm_scan([0.0], 1, [2.0], form="direct")
    row = scan.rows[0]
    assert row["lower_bound"] == pytest.approx(0.5, rel=1e-9)
    for e in row["per_function"]:
        assert e["ratio"] == pytest.approx(0.5, rel=1e-9)


def test_scan_inside_disk_is_infinite():
    scan = sp.resolvent_norm_scan([0, 0, 1.0], 0, [1.0, 2.0, 0.0])
    assert [r["status"] for r in scan.rows] == ["in-spectrum", "boundary", "in-spectrum"]
    assert all(r["lower_bound"] == math.inf for r in scan.rows)


def test_lower_bound_decreases_outside_disk():
    scan = sp.resolvent_norm_scan([0, 0, 1.0], 0, sp.radial_lambdas(2.5, 10, 4))
    lbs = [r["lower_bound"] for r in scan.rows]
    assert all(a > b for a, b in zip(lbs, lbs[1:]))
    assert all(r["defect"] < 1e-8 for r in scan.rows)


def test_disk_invariant_under_lower_order_terms():
    base = sp.spectrum_of([0, 0, 1.5 - 0.5j]).radius
    assert sp.spectrum_of([4, -2j, 1.5 - 0.5j]).radius == pytest.approx(base)


def test_scaling_covariance():
    # R_{c g}(c lam) = R_g(lam) / c
    c = 2.0
    h = [("z", Poly([0, 1.0]))]
    a = sp.resolvent_norm_scan([0, 0.5, 1.0], 0, [3.0], h, form="direct").rows[0]["lower_bound"]
    b = sp.resolvent_norm_scan([0, c * 0.5, c * 1.0], 0, [c * 3.0], h, form="direct").rows[0]["lower_bound"]
    assert b == pytest.approx(a / c, rel=1e-8)


def test_threaded_scan_is_deterministic():
    lams = sp.radial_lambdas(1.0, 6.0, 4, angle=0.3)
    ts = sp.default_testset()[:4]
    a = sp.resolvent_norm_scan([0, 0, 1.0], 1, lams, ts)
    b = sp.resolvent_norm_scan([0, 0, 1.0], 1, lams, ts, threads=4)
    assert a.to_dict() == b.to_dict()


def test_csv_rows_and_radial_lambdas():
    scan = sp.resolvent_norm_scan([0, 0, 1.0], 0, [1.0, 4.0])
    rows = list(scan.csv_rows())
    assert rows[0] == ("lambda_re", "lambda_im", "status", "lower_bound")
    assert rows[1][3] == "inf" and isinstance(rows[2][3], float)
    lams = sp.radial_lambdas(1, 3, 3, angle=math.pi / 2)
    assert np.allclose([abs(l) for l in lams], [1, 2, 3])
    with pytest.raises(ValueError):
        sp.radial_lambdas(1, 2, 0)


def test_default_testset_contents():
    ids = [i for i, _ in sp.default_testset()]
    assert ids[:3] == ["1", "z", "z^2"] and len(ids) == 7
    _, xi = sp.default_testset()[3]
    assert xi(0.0) == pytest.approx(math.exp(-0.5))


def test_deg3_scan_rejected():
    with pytest.raises(sp.DomainError):
        sp.resolvent_norm_scan([0, 0, 0, 1.0], 0, [5.0])
