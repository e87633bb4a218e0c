#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy/Python fallback.

Runs each workload in a subprocess per backend (the backend is fixed at
import time by GADGETFORGE_BACKEND) and prints a comparison table.

    python benchmarks/bench_backends.py [--trials 20000] [--q 13]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import gadgetforge as gf
from gadgetforge._backend import backend_name
from gadgetforge._jacobi import symmetric_eigenvalues

q = int(sys.argv[1])
trials = int(sys.argv[2])

g = gf.build_ap(q)
c = gf.build_sqr_coloring(q)
mat = g.adjacency_matrix()

# warm-up compiles the kernels on the numba path
symmetric_eigenvalues(mat[:10, :10].copy())
dist = gf.build_expander_distribution(g, c, 1, listing="sampler")
gf.test_hitting_mc(dist, 4, 4, 10, rng_seed=0)

t0 = time.perf_counter()
evs = symmetric_eigenvalues(mat)
t_jacobi = time.perf_counter() - t0

t0 = time.perf_counter()
rep = gf.test_hitting_mc(dist, max(1, g.m // 4), max(1, g.m // 4),
                         trials, rng_seed=42)
t_mc = time.perf_counter() - t0

poly = gf.build_expander_distribution(g, c, 1, mode="POLY10WISE")
t0 = time.perf_counter()
rep_poly = gf.test_hitting_mc(poly, max(1, g.m // 4), max(1, g.m // 4),
                              trials, rng_seed=42)
t_poly = time.perf_counter() - t0

print(json.dumps({
    "backend": backend_name(),
    "jacobi_s": t_jacobi,
    "mc_s": t_mc,
    "mc_poly_s": t_poly,
    "hits": rep.hits,
    "hits_poly": rep_poly.hits,
    "gamma_hat": float(abs(evs[:-1]).max() / q),
}))
"""


def run_backend(backend, q, trials):
    env = dict(os.environ, GADGETFORGE_BACKEND=backend)
    result = subprocess.run([sys.executable, "-c", WORKLOAD, str(q), str(trials)],
                            env=env, capture_output=True, text=True)
    if result.returncode != 0:
        sys.stderr.write(result.stderr)
        raise SystemExit(1)
    return json.loads(result.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=13, help="AP_q size (m = q^2)")
    ap.add_argument("--trials", type=int, default=20000)
    args = ap.parse_args()

    rows = [run_backend(b, args.q, args.trials) for b in ("numba", "numpy")]
    if rows[0]["hits"] != rows[1]["hits"] or rows[0]["hits_poly"] != rows[1]["hits_poly"]:
        print("WARNING: hit counts differ across backends (should be identical)")

    print(f"\nAP_{args.q} (m={args.q ** 2}), {args.trials} MC trials")
    print(f"{'workload':<28}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for key, label in (("jacobi_s", "jacobi eigensolve"),
                       ("mc_s", "MC hitting (FULL_INDEP)"),
                       ("mc_poly_s", "MC hitting (POLY10WISE)")):
        a, b = rows[0][key], rows[1][key]
        print(f"{label:<28}{a:>11.3f}s{b:>11.3f}s{b / a:>9.1f}x")
    print(f"\nidentical hit counts: {rows[0]['hits']} / {rows[0]['hits_poly']}; "
          f"gamma_hat = {rows[0]['gamma_hat']:.6f}")


if __name__ == "__main__":
    main()
