"""The acceptance suite: ten numbered criteria, each with a time budget.

Every check returns ``(passed, details)``; :func:`run` times it and fails
it when the budget is exceeded. Shared by ``fockvolterra verify`` and the
test-suite. Tolerances and budgets are those stated for each criterion and
are not adjusted here; recorded constants are pinned at ``C_PIN``.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import classify as cl
from . import kernels as kn
from . import spectrum as sp
from .config import DEFAULT, QuadConfig
from .corpus import lemma2_corpus, norm_corpus
from .funcrep import ComplexPolynomial, Poly, exp_poly_membership
from .norms import lemma2_check, norm, norm_sup

C_PIN = 100.0


@dataclass
class CriterionResult:
    id: int
    title: str
    passed: bool
    elapsed: float
    budget: float
    details: dict

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        summary = self.details.get("summary", "")
        return f"[{tag}] criterion {self.id:2d} {self.title} ({self.elapsed:.1f} s / {self.budget:g} s) {summary}"

    def to_dict(self) -> dict:
        return asdict(self)


def _grid(radius, step):
    g = np.arange(-radius, radius + 1e-12, step)
    return [complex(a, b) for a in g for b in g if abs(complex(a, b)) <= radius + 1e-12]


# --------------------------------------------------------------------------

def c1_kernel_anchor(cfg: QuadConfig):
    model = kn.moments(0, 60, cfg, probe_radius=3.0)
    pts = _grid(3.0, 0.5)
    worst_k = worst_n = 0.0
    for w in pts:
        for z in pts:
            ex = cmath.exp(w.conjugate() * z)
            worst_k = max(worst_k, abs(kn.kernel_eval(model, w, z) - ex) / abs(ex))
        ex = math.exp(abs(w) ** 2)
        worst_n = max(worst_n, abs(kn.kernel_norm_sq(model, w) - ex) / ex)
    ok = worst_k < 1e-9 and worst_n < 1e-9
    return ok, {"N": model.N, "points": len(pts), "worst_rel_kernel": worst_k, "worst_rel_norm_sq": worst_n,
                "summary": f"worst rel err kernel {worst_k:.2e}, norm^2 {worst_n:.2e} (tol 1e-9)"}


def c2_asymptotics(cfg: QuadConfig):
    radii = np.arange(0.0, 6.0 + 1e-9, 0.5)
    out, ok = {}, True
    for m in (0, 1, 2):
        model = kn.moments(m, None, cfg, probe_radius=6.0)
        rep = kn.asymptotic_check(model, radii)
        good = rep["band"] <= 10
        if m == 0:
            good = good and max(abs(r - 1) for r in rep["ratios"]) <= 1e-9
        out[f"m={m}"] = {"band": rep["band"], "min": rep["min"], "max": rep["max"], "pass": good}
        ok = ok and good
    bands = ", ".join(f"m={m}: {out[f'm={m}']['band']:.3g}" for m in (0, 1, 2))
    out["summary"] = f"bands max/min {bands} (limit 10)"
    return ok, out


def c3_littlewood_paley(cfg: QuadConfig):
    corpus = norm_corpus()
    worst = {"inf": 1.0, "2": 1.0}
    mono_ok, mono_worst = True, 0.0
    for fid, f in corpus:
        prev = None
        for m in (0, 1, 2):
            for p, key in ((math.inf, "inf"), (2.0, "2")):
                a = norm(f, m, p, "direct", cfg)
                b = norm(f, m, p, "paley", cfg)
                r = a.value / b.value
                worst[key] = max(worst[key], r, 1 / r)
                if p == math.inf:
                    if prev is not None and a.value < prev * (1 - 1e-10):
                        mono_ok = False
                        mono_worst = max(mono_worst, (prev - a.value) / prev)
                    prev = a.value
    # homogeneity of all four functionals on a subset
    c = 2.5 - 1.5j
    hom = 0.0
    for fid, f in corpus[::7]:
        for m in (0, 1):
            for p in (math.inf, 2.0):
                for form in ("direct", "paley"):
                    a = norm(f, m, p, form, cfg).value
                    b = norm(f.scale(c), m, p, form, cfg).value
                    hom = max(hom, abs(b - abs(c) * a) / (abs(c) * a))
    ok = max(worst.values()) <= C_PIN and mono_ok and hom <= 1e-10
    return ok, {"corpus_size": len(corpus), "C_inf": worst["inf"], "C_2": worst["2"],
                "homogeneity_worst_rel": hom, "m_monotone": mono_ok, "m_monotone_worst": mono_worst,
                "summary": f"{len(corpus)} functions; C_inf={worst['inf']:.3g}, C_2={worst['2']:.3g} "
                           f"(pin {C_PIN:g}); homogeneity {hom:.1e}; m-monotone {mono_ok}"}


C4_SYMBOLS = {
    "1": ([1.0], True, True),
    "z": ([0, 1.0], True, True),
    "z^2": ([0, 0, 1.0], True, False),
    "z^3": ([0, 0, 0, 1.0], False, False),
    "z^4": ([0, 0, 0, 0, 1.0], False, False),
    "3z^2+z+7": ([7.0, 1.0, 3.0], True, False),
    "iz^2": ([0, 0, 1j], True, False),
}


def c4_classifier(cfg: QuadConfig):
    ok = True
    rows = {}
    for name, (coeffs, bnd, cpt) in C4_SYMBOLS.items():
        g = ComplexPolynomial(coeffs)
        verdicts = [cl.classify_into_sup(g, m, p, cfg.normalizer) for m in (0, 1, 2) for p in (1, 2, math.inf)]
        same = all((v.bounded, v.compact) == (bnd, cpt) for v in verdicts)
        exps = [v.witness["growth_exponent"] for v in verdicts[::3]]
        expected = g.derivative().degree - 1 if g.degree >= 1 else None
        exp_ok = expected is None or all(abs(e - expected) <= 0.1 for e in exps)
        rows[name] = {"verdict_ok": same, "exponents": exps, "expected": expected, "exponent_ok": exp_ok}
        ok = ok and same and exp_ok
    b2 = cl.classify_into_sup(ComplexPolynomial([0, 0, 1.0]), 0).witness["limit_B"]
    b1 = cl.classify_into_sup(ComplexPolynomial([0, 1.0]), 0).witness["limit_B"]
    ok = ok and abs(b2 - 2) <= 0.05 * 2 and b1 < 0.02
    rows.update(limit_B_z2=b2, limit_B_z=b1,
                summary=f"verdicts/exponents {'ok' if all(r['verdict_ok'] and r['exponent_ok'] for r in rows.values() if isinstance(r, dict)) else 'MISMATCH'}; "
                        f"B_z2(100)={b2:.4f}, B_z(100)={b1:.4f}")
    return ok, rows


def c5_kernel_test(cfg: QuadConfig):
    s3 = cl.kernel_test_sequence(ComplexPolynomial([0, 0, 0, 1.0]), 0, [2.0, 8.0], cfg=cfg)
    s1 = cl.kernel_test_sequence(ComplexPolynomial([0, 1.0]), 0, [2.0, 4.0, 8.0], cfg=cfg)
    v2, v8 = s3["rows"][0]["value"], s3["rows"][1]["value"]
    z8 = s1["rows"][-1]["value"]
    seq = [r["value"] for r in s1["rows"]]
    ok3 = v8 > 10 * v2
    ok1 = z8 < 0.05 and all(a > b for a, b in zip(seq, seq[1:]))
    return ok3 and ok1, {"z3": {"w2": v2, "w8": v8, "ratio": v8 / v2, "pass": ok3},
                         "z": {"values": seq, "pass": ok1},
                         "summary": f"z^3: |w|=8 / |w|=2 = {v8 / v2:.3g} (need > 10); "
                                    f"z: value at |w|=8 = {z8:.4g} (need < 0.05)"}


def c6_integrability(cfg: QuadConfig):
    v3 = cl.classify_from_sup(ComplexPolynomial([0, 1.0]), 0, 3.0, cfg)
    radii = v3.witness["radii"]
    I100 = v3.witness["truncated_integrals"][radii.index(100.0)]
    rel = abs(I100 - math.pi) / math.pi
    v2 = cl.classify_from_sup(ComplexPolynomial([0, 1.0]), 0, 2.0, cfg)
    slope = v2.witness["log_slope"] / (2 * math.pi)
    ok3 = rel <= 0.01 and v3.bounded
    ok2 = abs(slope - 1) <= 0.05 and v2.witness["flag"] == "divergent" and not v2.bounded
    return ok3 and ok2, {"p3": {"I_100": I100, "rel_err_vs_pi": rel, "pass": ok3},
                         "p2": {"slope_over_2pi": slope, "flag": v2.witness["flag"], "pass": ok2},
                         "summary": f"p=3: I(100)={I100:.5f}, |I-pi|/pi={rel:.3%} (need <= 1%); "
                                    f"p=2: slope/2pi={slope:.4f} (need within 5%), {v2.witness['flag']}"}


def c7_spectrum(cfg: QuadConfig):
    g = ComplexPolynomial([0, 0, 1.0])
    radius = sp.spectrum_of(g).radius
    ok = radius == 2.0
    rows = []
    for m in (0, 1):
        for lam in (0.5, 1.0, 1.5, 2.5, 3.0, 10.0):
            pt = sp.in_spectrum(g, m, lam)
            expect = "nonmember" if lam < 2 else "member"
            good = pt.consistent and pt.predicate == expect and \
                exp_poly_membership([1.0], g / lam, m).status == expect
            rows.append({"m": m, "lam": lam, "status": pt.status, "predicate": pt.predicate, "pass": good})
            ok = ok and good
    b = sp.in_spectrum(g, 0, 2.0)
    bok = b.status == "boundary" and b.predicate == "member" and b.closure_in_spectrum
    ok = ok and bok
    return ok, {"radius": radius, "rows": rows, "boundary": b.to_dict(),
                "summary": f"radius {radius}; {sum(r['pass'] for r in rows)}/{len(rows)} points agree; "
                           f"boundary raw {b.predicate}, closure in spectrum {b.closure_in_spectrum}"}


def c8_resolvent(cfg: QuadConfig):
    g = ComplexPolynomial([0, 0, 1.0])
    eps = [0.5, 0.25, 0.125, 0.0625]
    scan = sp.resolvent_norm_scan(g, 1, [2 + e for e in eps], [("1", Poly([1.0]))], cfg)
    vals = [r["lower_bound"] for r in scan.rows]
    ratios = [b / a for a, b in zip(vals, vals[1:])]
    ok_blow = all(r >= 1.2 for r in ratios)
    far = sp.resolvent_norm_scan(g, 1, [10.0, 20.0], None, cfg)
    lb10, lb20 = far.rows[0]["lower_bound"], far.rows[1]["lower_bound"]
    ok_decay = lb10 <= 1.5 * 2 * lb20
    defects = [r["defect"] for r in scan.rows + far.rows]
    errors = [e for r in scan.rows + far.rows for e in r["errors"]]
    ok_def = all(d is not None and d <= 1e-8 for d in defects) and not errors
    return ok_blow and ok_decay and ok_def, {
        "eps": eps, "norms": vals, "ratios": ratios, "lb10": lb10, "lb20": lb20,
        "defects": defects, "errors": errors,
        "summary": f"ratios {', '.join(f'{r:.3f}' for r in ratios)} (need >= 1.2); "
                   f"LB(10)/(2 LB(20)) = {lb10 / (2 * lb20):.3f} (need <= 1.5); max defect {max(defects):.1e}"}


def c9_normb(cfg: QuadConfig):
    worst, rows = 0.0, []
    pts = [complex(r) for r in range(7)] + [4.5 * cmath.exp(0.7j)]
    for m in (0, 1, 2):
        model = kn.moments(m, None, cfg, probe_radius=6.0)
        rep = kn.normb_check(model, pts, (1, 2, 4, math.inf), cfg)
        rows.append({"m": m, "max": rep["max"], "min": rep["min"]})
        worst = max(worst, rep["max"])
    return worst <= C_PIN, {"rows": rows, "C": worst,
                            "summary": f"sup ||xi_w|| over |w|<=6, p in {{1,2,4,inf}}, m in {{0,1,2}} = {worst:.4g} (pin {C_PIN:g})"}


def c10_lemma2(cfg: QuadConfig):
    g = ComplexPolynomial([0, 0, 1.0])
    worst, n = 0.0, 0
    for lam in (2.5, 3.0, 10.0):
        for m in (0, 1, 2):
            for fid, f in lemma2_corpus():
                rep = lemma2_check(g, lam, f, m, cfg, fid)
                worst = max(worst, rep.ratio)
                n += 1
    return worst <= C_PIN, {"cases": n, "C": worst,
                            "summary": f"{n} cases, max lhs/rhs = {worst:.4g} (pin {C_PIN:g})"}


CRITERIA = [
    (1, "exact m=0 kernel anchor", 5, c1_kernel_anchor),
    (2, "kernel asymptotics band", 30, c2_asymptotics),
    (3, "Littlewood-Paley equivalence", 120, c3_littlewood_paley),
    (4, "into-sup classifier", 30, c4_classifier),
    (5, "kernel-test unboundedness", 60, c5_kernel_test),
    (6, "from-sup integrability", 10, c6_integrability),
    (7, "spectral disk", 30, c7_spectrum),
    (8, "resolvent blow-up and decay", 120, c8_resolvent),
    (9, "normalized kernel norms", 120, c9_normb),
    (10, "smoothness lemma constant", 60, c10_lemma2),
]


def run_one(cid: int, cfg: QuadConfig = DEFAULT) -> CriterionResult:
    for i, title, budget, fn in CRITERIA:
        if i == cid:
            t = time.perf_counter()
            try:
                ok, details = fn(cfg)
            except Exception as exc:  # a crash is a failure, reported not raised
                ok, details = False, {"summary": f"error: {type(exc).__name__}: {exc}"}
            el = time.perf_counter() - t
            if el > budget:
                ok = False
                details["summary"] = details.get("summary", "") + f" [over budget {budget:g} s]"
            return CriterionResult(i, title, bool(ok), el, budget, details)
    raise ValueError(f"unknown criterion {cid}")


def run(ids=None, cfg: QuadConfig = DEFAULT, echo=None) -> list:
    ids = [c[0] for c in CRITERIA] if ids is None else list(ids)
    out = []
    for cid in ids:
        res = run_one(cid, cfg)
        if echo:
            echo(res.line())
        out.append(res)
    return out
