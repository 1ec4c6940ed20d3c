"""Spectrum of ``V_g`` for quadratic symbols and resolvent-norm scans.

For ``g = a z^2 + b z + c`` the spectrum on the growth space is the closed
disk ``|lambda| <= 2|a|``. Points are classified by that comparison; the
membership predicate for ``e^{g/lambda}`` is evaluated alongside as an
independent cross-check, and on the boundary circle its raw outcome is
reported while the closure puts the point in the spectrum.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .config import DEFAULT, NumericalError, QuadConfig
from .funcrep import (
    EntireFunction,
    Poly,
    VolterraImage,
    as_poly,
    exp_poly,
    exp_poly_membership,
    resolvent_apply,
)
from .norms import norm

BOUNDARY_RTOL = 1e-12
CLOSURE_NOTE = (
    "sigma(V_g) = {0} u closure{lambda != 0 : e^(g/lambda) not in the growth space}; "
    "the closure adds the circle |lambda| = 2|a|"
)


class DomainError(ValueError):
    """Operation undefined for the given symbol (e.g. unbounded V_g)."""


@dataclass(frozen=True)
class SpectrumDescription:
    a: complex
    radius: float
    characterization_note: str
    degree: int

    def to_dict(self) -> dict:
        return {"a": [self.a.real, self.a.imag], "radius": self.radius,
                "characterization_note": self.characterization_note, "degree": self.degree}


@dataclass(frozen=True)
class SpectrumPoint:
    lam: complex
    status: str  # "in-spectrum" | "resolvent" | "boundary"
    predicate: str | None  # raw membership of e^{g/lambda}; None for lambda = 0
    consistent: bool
    closure_in_spectrum: bool
    report: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lam"] = [self.lam.real, self.lam.imag]
        return d


def _check_degree(g):
    g = as_poly(g)
    if g.degree >= 3:
        raise DomainError(
            f"deg g = {g.degree} >= 3: V_g is unbounded on the growth space "
            "(bounded only for g = a z^2 + b z + c), so no spectrum is defined here"
        )
    return g


def spectrum_of(g, m: int = 0) -> SpectrumDescription:
    """The disk ``|lambda| <= 2|a|`` (``{0}`` when deg g <= 1)."""
    g = _check_degree(g)
    a = complex(g.coef(2))
    note = CLOSURE_NOTE if g.degree == 2 else "V_g is compact, so sigma(V_g) = {0}"
    return SpectrumDescription(a, 2 * abs(a), note, max(g.degree, 0))


def in_spectrum(g, m: int, lam: complex) -> SpectrumPoint:
    """Locate ``lam`` relative to the spectral disk and cross-check with membership."""
    g = _check_degree(g)
    lam = complex(lam)
    radius = 2 * abs(g.coef(2))
    if lam == 0:
        return SpectrumPoint(lam, "in-spectrum", None, True, True,
                             {"reason": "lambda = 0 is always in the spectrum"})
    mem = exp_poly_membership([1.0], g / lam, m)
    if radius > 0 and abs(abs(lam) - radius) <= BOUNDARY_RTOL * radius:
        status = "boundary"
        consistent = True  # the closure decides on the circle, any raw outcome is admissible
    elif abs(lam) < radius:
        status = "in-spectrum"
        consistent = mem.status == "nonmember"
    else:
        status = "resolvent"
        consistent = mem.status == "member"
    return SpectrumPoint(lam, status, mem.status, consistent, status != "resolvent",
                         {"radius": radius, "reason": mem.reason, **{k: v for k, v in mem.report.items()
                                                                      if k in ("alpha", "sup", "growth")}})


# --------------------------------------------------------------------------
# resolvent scans

@dataclass(frozen=True)
class ResolventScan:
    g: list
    m: int
    rows: list  # dicts: lam, status, lower_bound, per_function, defect

    def to_dict(self) -> dict:
        return asdict(self)

    def csv_rows(self):
        yield ("lambda_re", "lambda_im", "status", "lower_bound")
        for r in self.rows:
            lb = r["lower_bound"]
            yield (r["lam"][0], r["lam"][1], r["status"], "inf" if lb == math.inf else lb)


def default_testset() -> list:
    """``h`` in {1, z, z^2, xi_(w,0) for w = 1, 2, 3, e^{0.2 z^2}} as (id, function)."""
    out = [("1", Poly([1.0])), ("z", Poly([0, 1.0])), ("z^2", Poly([0, 0, 1.0]))]
    for w in (1.0, 2.0, 3.0):
        out.append((f"xi_({w:g},0)", exp_poly([math.exp(-w * w / 2)], [0, w])))
    out.append(("exp(0.2 z^2)", exp_poly([1.0], [0, 0, 0.2])))
    return out


def defect_check(g, lam: complex, h: EntireFunction, f: EntireFunction, points,
                 cfg: QuadConfig = DEFAULT) -> float:
    """``max |lam f - V_g f - h| / (1 + |h| + |lam f|)`` over ``points``.

    ``V_g f`` is evaluated independently by segment quadrature of ``f g'``.
    """
    g = as_poly(g)
    z = np.asarray(points, dtype=complex)
    fz = np.asarray(f.evaluate(z, cfg))
    vf = np.asarray(VolterraImage(f, g.derivative()).evaluate(z, cfg)) if g.degree >= 1 else 0.0
    hz = np.asarray(h.evaluate(z, cfg))
    lam = complex(lam)
    res = np.abs(lam * fz - vf - hz) / (1 + np.abs(hz) + np.abs(lam * fz))
    return float(np.max(res))


DEFECT_POINTS = tuple(r * np.exp(1j * t) for r in (0.5, 1.5, 3.0) for t in (0.0, 1.0, 2.5))


def resolvent_norm_scan(g, m: int, lambdas, testset=None, cfg: QuadConfig = DEFAULT,
                        form: str = "paley", defect_points=DEFECT_POINTS, threads: int = 0) -> ResolventScan:
    """Lower bounds ``max_h ||R_lam h|| / ||h||`` over a finite test set.

    Norms use the Littlewood-Paley form by default (the derivative of a
    resolvent image comes from the ODE, no nested quadrature). Inside the
    spectral disk the outputs are reported infinite by the membership
    predicate; failures of individual test functions are recorded and the
    scan continues. With ``threads > 0`` the scan points run on a thread
    pool; rows keep the input order.
    """
    g = _check_degree(g)
    testset = default_testset() if testset is None else list(testset)
    testset = [(t if isinstance(t, tuple) else (repr(t), t)) for t in testset]

    def point(lam):
        lam = complex(lam)
        pt = in_spectrum(g, m, lam)
        row = {"lam": [lam.real, lam.imag], "status": pt.status, "predicate": pt.predicate,
               "lower_bound": math.inf, "per_function": [], "defect": None, "errors": []}
        if pt.status != "resolvent":
            return row
        best, worst_defect = 0.0, 0.0
        for fid, h in testset:
            try:
                f = resolvent_apply(g, lam, h)
                num = norm(f, m, math.inf, form, cfg)
                den = norm(h, m, math.inf, form, cfg)
                ratio = num.value / den.value if (num.finite and den.finite and den.value > 0) else math.inf
                entry = {"id": fid, "norm_R_h": num.value if num.finite else math.inf,
                         "norm_h": den.value if den.finite else math.inf, "ratio": ratio}
                if defect_points:
                    d = defect_check(g, lam, h, f, defect_points, cfg)
                    entry["defect"] = d
                    worst_defect = max(worst_defect, d)
                row["per_function"].append(entry)
                if den.finite:
                    best = max(best, ratio)
            except (NumericalError, ValueError) as exc:
                row["errors"].append({"id": fid, "error": str(exc)})
        row["lower_bound"] = best
        row["defect"] = worst_defect if defect_points else None
        return row

    rows = parallel_map(point, list(lambdas), threads)
    return ResolventScan([[c.real, c.imag] for c in g.coeffs], int(m), rows)


def parallel_map(fn, items, threads: int = 0) -> list:
    """``[fn(x) for x in items]``, optionally on a thread pool (order preserved)."""
    if threads and threads > 0 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def radial_lambdas(rmin: float, rmax: float, steps: int, angle: float = 0.0) -> list:
    """``steps`` values of ``|lambda|`` from ``rmin`` to ``rmax`` along one ray."""
    if steps < 1:
        raise ValueError("steps must be positive")
    rs = np.linspace(rmin, rmax, steps) if steps > 1 else np.array([rmin])
    return [complex(r * math.cos(angle), r * math.sin(angle)) for r in rs]
