"""Compare the compiled kernels with the numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Times the hot kernels on identical inputs under both backends, checks that
they agree, and runs one end-to-end sup-norm search per backend in a fresh
interpreter (the backend is chosen at import time).
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from fockvolterra import _core_py

try:
    from fockvolterra import _fastcore
except ImportError:  # extension not built
    _fastcore = None

END_TO_END = (
    "import time; from fockvolterra import Poly, norm_sup; "
    "f = Poly([1, 0.5j, -0.25, 0.1, 0.05j, 0.01]); t = time.perf_counter(); "
    "[norm_sup(f, m) for m in (0, 1, 2) for _ in range(5)]; print(time.perf_counter() - t)"
)


def inputs(seed=0):
    rng = np.random.default_rng(seed)
    p = rng.normal(size=9) + 1j * rng.normal(size=9)
    q = np.array([0, 0.3 - 0.1j, 0.2 + 0.1j])
    r = np.linspace(0, 15, 400)
    th = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    z = rng.normal(size=20000) + 1j * rng.normal(size=20000)
    return p, q, r, th, z


def cases(mod, p, q, r, th, z):
    lo, hi = np.zeros(th.size), np.full(th.size, 12.0)
    return {
        "horner (20k points)": lambda: mod.horner(p, z),
        "logmod_grid (256x400)": lambda: mod.logmod_grid(p, q, 1, 1, 0, r, th),
        "golden_rays (256 rays)": lambda: mod.golden_rays(p, q, 1, 0, 0, th, lo, hi, 60),
    }


def outputs_agree(a, b) -> bool:
    a = a if isinstance(a, tuple) else (a,)
    b = b if isinstance(b, tuple) else (b,)
    return all(np.allclose(x, y, rtol=1e-10, atol=1e-6) for x, y in zip(a, b))


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    env["FOCKVOLTERRA_PURE"] = "1" if pure else "0"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write timings to this file")
    args = ap.parse_args(argv)

    if _fastcore is None:
        print("compiled extension not available; only the numpy fallback can be timed")
    data = inputs()
    results = []
    py_cases = cases(_core_py, *data)
    fast_cases = cases(_fastcore, *data) if _fastcore else {}
    print(f"{'kernel':26s} {'numpy [ms]':>11s} {'cython [ms]':>12s} {'speedup':>8s}  agree")
    for name, fn in py_cases.items():
        t_py = best_time(fn, args.repeat)
        row = {"kernel": name, "numpy_s": t_py}
        if name in fast_cases:
            t_c = best_time(fast_cases[name], args.repeat)
            agree = outputs_agree(fn(), fast_cases[name]())
            row.update(cython_s=t_c, speedup=t_py / t_c, agree=bool(agree))
            print(f"{name:26s} {1e3 * t_py:11.2f} {1e3 * t_c:12.2f} {t_py / t_c:8.1f}  {agree}")
        else:
            print(f"{name:26s} {1e3 * t_py:11.2f} {'-':>12s}")
        results.append(row)

    e_py = end_to_end(pure=True)
    row = {"kernel": "norm_sup end-to-end", "numpy_s": e_py}
    if _fastcore:
        e_c = end_to_end(pure=False)
        row.update(cython_s=e_c, speedup=e_py / e_c)
        print(f"{'norm_sup end-to-end':26s} {1e3 * e_py:11.2f} {1e3 * e_c:12.2f} {e_py / e_c:8.1f}")
    results.append(row)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
