#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

The backend is fixed at import time by WASSMEAN_BACKEND, so each backend is
timed in its own subprocess; the parent prints a comparison table. JIT
compilation happens before timing starts (one warm-up pass per workload).

    python benchmarks/bench_backends.py            # both backends, table
    python benchmarks/bench_backends.py --json     # machine-readable output
"""

import argparse
import json
import os
import subprocess
import sys
import time


def run_workloads(repeats):
    import wassmean as wm
    from wassmean.checks import random_ensemble

    def time_workload(fn, warmup=1):
        for _ in range(warmup):
            fn()
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - start)
        return best

    ensembles = {
        (m, n): [random_ensemble(m, n, seed) for seed in range(50)]
        for m, n in ((2, 3), (5, 5), (8, 4))
    }
    pairs = [
        (wm.random_spd(m, seed=s, eig_lo=0.5, eig_hi=2.0),
         wm.random_spd(m, seed=s + 100, eig_lo=0.5, eig_hi=2.0))
        for m in (3, 8) for s in range(100)
    ]

    results = {"backend": wm.BACKEND}

    def solve_batch(key):
        def run():
            for e in ensembles[key]:
                report = wm.wasserstein_mean(e)
                assert report.converged
        return run

    for key in ensembles:
        m, n = key
        results[f"barycenter_50_solves_m{m}_n{n}"] = time_workload(solve_batch(key))

    def geometric_means():
        for a, b in pairs:
            wm.geometric_mean(a, b)

    results["geometric_mean_200_pairs"] = time_workload(geometric_means)

    def distances():
        for a, b in pairs:
            wm.bw_distance(a, b)

    results["distance_200_pairs"] = time_workload(distances)

    def residuals():
        for e in ensembles[(5, 5)]:
            wm.residual(e.matrices[0], e)
    results["residual_50_evals_m5_n5"] = time_workload(residuals)

    return results


def run_backend(backend, repeats):
    env = dict(os.environ, WASSMEAN_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--repeats", str(repeats)],
        env=env, capture_output=True, text=True,
    )
    if out.returncode != 0:
        raise RuntimeError(f"{backend} worker failed:\n{out.stderr}")
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per workload (best is kept)")
    parser.add_argument("--json", action="store_true",
                        help="print raw results as JSON")
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(run_workloads(args.repeats)))
        return 0

    numba_res = run_backend("numba", args.repeats)
    numpy_res = run_backend("numpy", args.repeats)
    if args.json:
        print(json.dumps({"numba": numba_res, "numpy": numpy_res}, indent=2))
        return 0

    keys = [k for k in numba_res if k != "backend"]
    width = max(len(k) for k in keys)
    print(f"{'workload':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for key in keys:
        tj, tn = numba_res[key], numpy_res[key]
        print(f"{key:<{width}}  {tj * 1e3:>8.2f}ms  {tn * 1e3:>8.2f}ms  "
              f"{tn / tj:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
