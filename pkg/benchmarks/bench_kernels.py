"""Benchmark the compiled kernels against the pure-numpy fallback.

Run as: python benchmarks/bench_kernels.py [--n 200000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from curvdeg import _kernels_py
from curvdeg.backend import BACKEND

try:
    from curvdeg import _kernels
except ImportError:
    _kernels = None


def _timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200_000, help="points per call")
    parser.add_argument("--terms", type=int, default=40, help="polynomial terms")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    powers = rng.integers(0, 5, size=(args.terms, 4)).astype(np.int64)
    coeffs = rng.standard_normal(args.terms)
    pts4 = rng.standard_normal((args.n, 4))
    basis = np.linalg.qr(rng.standard_normal((4, 4)))[0]
    pts3 = rng.standard_normal((args.n, 3))

    print(f"active backend: {BACKEND}; n = {args.n}, terms = {args.terms}")
    rows = [("python", _kernels_py)]
    if _kernels is not None:
        rows.append(("cython", _kernels))
    else:
        print("compiled extension unavailable; benchmarking the fallback only")

    results = {}
    for name, mod in rows:
        t_eval = _timeit(lambda: mod.eval_poly(powers, coeffs, pts4), args.repeats)
        t_chart = _timeit(lambda: mod.chart_points(basis, pts3), args.repeats)
        results[name] = (t_eval, t_chart)
        print(f"{name:8s} eval_poly {t_eval * 1e3:8.2f} ms   "
              f"chart_points {t_chart * 1e3:8.2f} ms")

    if len(results) == 2:
        e_py, c_py = results["python"]
        e_cy, c_cy = results["cython"]
        print(f"speedup  eval_poly {e_py / e_cy:8.2f} x   "
              f"chart_points {c_py / c_cy:8.2f} x")
        ref = _kernels_py.eval_poly(powers, coeffs, pts4)
        alt = _kernels.eval_poly(powers, coeffs, pts4)
        print(f"max backend disagreement: {np.max(np.abs(ref - alt)):.2e}")


if __name__ == "__main__":
    main()
