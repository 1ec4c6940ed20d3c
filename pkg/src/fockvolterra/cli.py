"""Command-line front end.

Every subcommand prints a JSON report (and writes it to ``--out`` when
given). Reports carry the command, the effective numerical configuration,
the results and, separately, wall-clock timings, so report bodies are
reproducible. Exit status: 0 success, 1 domain error (bad input, invalid
operation, failed acceptance criteria), 2 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from . import __version__
from . import acceptance
from . import classify as cl
from . import fileio
from . import kernels as kn
from . import spectrum as sp
from ._backend import NAME as BACKEND
from .config import DEFAULT, NumericalError, QuadConfig
from .funcrep import Poly, resolvent_apply, volterra_apply
from .norms import norm

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2


def _complex(text: str) -> complex:
    """``RE,IM`` or a bare real."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")


def _exponent(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive number or 'inf', got {text!r}") from None
    if not (p > 0 and math.isfinite(p)):
        raise argparse.ArgumentTypeError("p must be positive")
    return p


def _scan(text: str):
    try:
        lo, hi, steps = text.split(":")
        return float(lo), float(hi), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RMIN:RMAX:STEPS, got {text!r}") from None


def effective_config(args) -> QuadConfig:
    """Flags > config file > defaults."""
    data = DEFAULT.to_dict()
    if getattr(args, "config", None):
        data.update(fileio.loads_json(Path(args.config).read_text()))
    for key in ("rel_tol", "abs_tol", "max_radius", "angular_samples", "normalizer"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    return QuadConfig.from_dict(data)


def _norm_dict(res) -> dict:
    return res.to_dict()


# --------------------------------------------------------------------------
# subcommands: each returns (results, extra_files)

def cmd_norm(args, cfg):
    f = fileio.load_function(args.func)
    res = norm(f, args.m, args.p, "direct" if args.lp == "direct" else "paley", cfg)
    return {"m": args.m, "p": args.p, "form": args.lp, **_norm_dict(res)}


def cmd_apply(args, cfg):
    g = fileio.load_polynomial(args.g)
    f = fileio.load_function(args.func)
    out = volterra_apply(g, f)
    res = {"kind": out.kind}
    try:
        res["function"] = fileio.function_to_json(out)
    except TypeError:
        res["function"] = None
    if args.at:
        res["values"] = [{"z": z, "value": out.evaluate(z, cfg)} for z in args.at]
    if args.m is not None:
        res["norm_sup_paley"] = _norm_dict(norm(out, args.m, math.inf, "paley", cfg))
    return res


def cmd_classify(args, cfg):
    g = fileio.load_polynomial(args.g)
    if args.direction == "into-sup":
        v = cl.classify_into_sup(g, args.m, args.p, cfg.normalizer)
    else:
        if args.p == math.inf:
            raise ValueError("--direction from-sup needs a finite --p")
        v = cl.classify_from_sup(g, args.m, args.p, cfg)
    return v.to_dict()


def cmd_kernel(args, cfg):
    N = args.N
    probe = max(abs(args.w), max((abs(z) for z in args.z), default=0.0), 3.0)
    if args.check in ("asymptotic", "normb"):
        probe = max(probe, 6.0)
    model = kn.moments(args.m, N, cfg, probe_radius=probe)
    res = {"m": args.m, "N": model.N, "tail_bound": model.tail_bound, "w": args.w,
           "norm_sq": kn.kernel_norm_sq(model, args.w),
           "values": [{"z": z, "K": kn.kernel_eval(model, args.w, z)} for z in args.z]}
    if args.check == "asymptotic":
        res["check"] = kn.asymptotic_check(model, [0.5 * k for k in range(13)])
    elif args.check == "normb":
        res["check"] = kn.normb_check(model, [complex(r) for r in range(7)], (1, 2, 4, math.inf), cfg)
    elif args.check == "reproducing":
        f = Poly([1.0, 0.5, -0.25j, 0.125])
        res["check"] = kn.reproducing_check(model, f, args.w, cfg)
    return res


def cmd_spectrum(args, cfg):
    g = fileio.load_polynomial(args.g)
    desc = sp.spectrum_of(g, args.m)
    res = {**desc.to_dict(), "m": args.m}
    csv_rows = None
    if args.scan:
        lo, hi, steps = args.scan
        lams = sp.radial_lambdas(lo, hi, steps, args.angle)
        testset = sp.default_testset()
        if args.testset != "default":
            testset = [("h", fileio.load_function(args.testset))]
        scan = sp.resolvent_norm_scan(g, args.m, lams, testset, cfg, threads=args.threads)
        res["scan"] = scan.to_dict()
        csv_rows = list(scan.csv_rows())
    return res, csv_rows


def cmd_resolvent(args, cfg):
    g = fileio.load_polynomial(args.g)
    h = fileio.load_function(args.func) if args.func else Poly([1.0])
    pt = sp.in_spectrum(g, args.m, args.lam) if g.degree <= 2 else None
    if pt is not None and pt.status != "resolvent":
        raise ValueError(f"lambda = {args.lam} is in the spectrum ({pt.status}); no bounded resolvent")
    f = resolvent_apply(g, args.lam, h)
    res = {"lambda": args.lam, "m": args.m, "kind": f.kind,
           "norm_sup_paley": _norm_dict(norm(f, args.m, math.inf, "paley", cfg)),
           "defect": sp.defect_check(g, args.lam, h, f, sp.DEFECT_POINTS, cfg)}
    try:
        res["function"] = fileio.function_to_json(f)
    except TypeError:
        res["function"] = None
    if args.at:
        res["values"] = [{"z": z, "value": f.evaluate(z, cfg)} for z in args.at]
    return res


def cmd_verify(args, cfg):
    ids = None if args.suite == "all" else [int(s) for s in args.suite.split(",")]
    results = acceptance.run(ids, cfg, echo=lambda line: print(line, file=sys.stderr))
    return {"criteria": [r.to_dict() for r in results],
            "passed": sum(r.passed for r in results), "total": len(results),
            "all_passed": all(r.passed for r in results)}


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this file")
    common.add_argument("--config", help="JSON file with QuadConfig fields")
    common.add_argument("--threads", type=int, default=0, help="worker threads (0 = sequential)")
    common.add_argument("--rel-tol", dest="rel_tol", type=float)
    common.add_argument("--abs-tol", dest="abs_tol", type=float)
    common.add_argument("--max-radius", dest="max_radius", type=float)
    common.add_argument("--angular-samples", dest="angular_samples", type=int)
    common.add_argument("--normalizer", choices=("canonical", "clamped"))

    ap = argparse.ArgumentParser(prog="fockvolterra", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="weighted norm of a function")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=_exponent, default=math.inf)
    p.add_argument("--lp", choices=("direct", "paley"), default="direct")
    p.add_argument("--func", required=True)

    p = sub.add_parser("apply", parents=[common], help="apply V_g to a function")
    p.add_argument("--g", required=True)
    p.add_argument("--func", required=True)
    p.add_argument("--at", type=_complex, nargs="*", default=[])
    p.add_argument("--m", type=int)

    p = sub.add_parser("classify", parents=[common], help="boundedness/compactness of V_g")
    p.add_argument("--g", required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--p", type=_exponent, default=math.inf)
    p.add_argument("--direction", choices=("into-sup", "from-sup"), default="into-sup")

    p = sub.add_parser("kernel", parents=[common], help="reproducing kernel evaluation and checks")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--w", type=_complex, required=True)
    p.add_argument("--z", type=_complex, nargs="*", default=[])
    p.add_argument("--N", type=int)
    p.add_argument("--check", choices=("asymptotic", "normb", "reproducing"))

    p = sub.add_parser("spectrum", parents=[common], help="spectral disk and resolvent scan")
    p.add_argument("--g", required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--scan", type=_scan, help="RMIN:RMAX:STEPS along a ray")
    p.add_argument("--angle", type=float, default=0.0, help="ray angle for --scan")
    p.add_argument("--testset", default="default", help="'default' or a function file")
    p.add_argument("--csv", help="write the lambda grid as CSV")

    p = sub.add_parser("resolvent", parents=[common], help="apply the resolvent of V_g")
    p.add_argument("--g", required=True)
    p.add_argument("--lam", type=_complex, required=True)
    p.add_argument("--func", help="right-hand side h (default 1)")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--at", type=_complex, nargs="*", default=[])

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--suite", default="all", help="'all' or comma-separated criterion numbers")
    return ap


COMMANDS = {
    "norm": cmd_norm, "apply": cmd_apply, "classify": cmd_classify, "kernel": cmd_kernel,
    "spectrum": cmd_spectrum, "resolvent": cmd_resolvent, "verify": cmd_verify,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    report = {"command": ["fockvolterra", *(sys.argv[1:] if argv is None else argv)],
              "backend": BACKEND}
    status = EXIT_OK
    try:
        cfg = effective_config(args)
        report["config"] = cfg.to_dict()
        out = COMMANDS[args.command](args, cfg)
        csv_rows = None
        if isinstance(out, tuple):
            out, csv_rows = out
        report["results"] = out
        if args.command == "verify" and not out["all_passed"]:
            status = EXIT_DOMAIN
        if csv_rows is not None and getattr(args, "csv", None):
            fileio.write_csv(csv_rows, args.csv)
    except NumericalError as exc:
        report["error"] = {"type": "numerical", "message": str(exc), "estimates": list(exc.estimates)}
        status = EXIT_NUMERIC
    except (ValueError, TypeError, OSError) as exc:
        report["error"] = {"type": "domain", "message": str(exc)}
        status = EXIT_DOMAIN
    report["timings"] = {"wall_seconds": time.perf_counter() - t0}
    text = fileio.write_json(report, args.out)
    print(text)
    if "error" in report:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return status


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
