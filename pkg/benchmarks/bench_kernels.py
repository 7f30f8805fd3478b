#!/usr/bin/env python3
"""Compare the compiled and the numpy recurrence kernels on the hot paths.

Usage: python3 benchmarks/bench_kernels.py [--n 200] [--repeat 3]
"""

import argparse
import time

import numpy as np

from crr import _kernels
from crr.core import ParamB, recurrence_arrays
from crr.zeros import extreme_bounds, sturm_zeros


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n):
    b = ParamB(0.75, 15.0)
    a, c, d = recurrence_arrays(n, 0, b)
    eb = extreme_bounds(n, b)
    zs = sturm_zeros(n, 0, b)
    # brackets one ulp-ish wide around each zero, widened to force full bisection
    lo = np.concatenate(([eb.lower], zs[:-1] + 1e-9 * np.abs(zs[:-1]) + 1e-12))
    hi = np.concatenate((zs[1:] - 1e-9 * np.abs(zs[1:]) - 1e-12, [eb.upper]))
    pts = np.linspace(eb.lower, eb.upper, 2000)
    return {
        "eval_scaled x2000": lambda k: [k.eval_scaled(a, c, d, True, float(x), 2) for x in pts],
        "sign_values 2000 pts": lambda k: k.sign_values(a, c, d, True, pts),
        "sturm_counts 2000 pts": lambda k: k.sturm_counts(a, c, d, True, pts),
        f"bisect_roots {n} brackets": lambda k: k.bisect_roots(a, c, d, True, lo, hi, 1e-13),
        f"sturm_roots n={n}": lambda k: k.sturm_roots(a, c, d, True, eb.lower, eb.upper, 1e-13),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200, help="polynomial degree")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = {"python": _kernels.backend_module("python")}
    try:
        backends["cython"] = _kernels.backend_module("cython")
    except ImportError:
        print("compiled kernels not built; timing the numpy fallback only")

    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, fn in cases(args.n).items():
        t = {name: best_of(lambda k=k: fn(k), args.repeat) for name, k in backends.items()}
        speed = f"{t['python'] / t['cython']:9.1f}x" if "cython" in t else ""
        print(f"{label:<28}" + "".join(f"{t[name]:11.4f}s" for name in backends) + speed)


if __name__ == "__main__":
    main()
