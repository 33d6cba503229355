#!/usr/bin/env python3
"""Time the numba and numpy kernel backends against each other.

Runs the three hot loops (secant counting over all lines, slope-histogram
scans, exhaustive codeword weights) on representative field sizes and
prints per-backend timings with the speedup factor.

Usage: python benchmarks/kernel_bench.py [--q 9 16 25] [--repeat 5]
"""

import argparse
import time

import numpy as np

from regsets import kernels
from regsets.classify import enumerate_intersections
from regsets.codes import code_from_set
from regsets.constructions import gamma_a
from regsets.suites import gamma_field, gamma_trace_values


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_q(q, repeat):
    F = gamma_field(q)
    X = gamma_a(F, 1)
    grid = X.affine_grid()
    add_t, mul_t, sub_t = F.add_table(), F.mul_table(), F.sub_table()
    e = F.n // 2
    tr = np.ascontiguousarray(F.trace_vector(e), dtype=np.int32)
    g = np.ascontiguousarray(F.sub_v(F.norm_vector(e), gamma_trace_values(F, 1)),
                             dtype=np.int32)
    q2 = F.order

    jobs = {
        "secant counts": lambda ns: ns.affine_secant_counts(grid, add_t, mul_t, 0, q2),
        "slope hists": lambda ns: ns.slope_value_hists(g, tr, mul_t, sub_t, 0, q2),
    }
    if q2**3 <= 1 << 20:
        G = code_from_set(X)
        c0, c1, c2 = (np.ascontiguousarray(r, dtype=np.int32) for r in G.rows)
        jobs["codeword weights"] = lambda ns: ns.codeword_weight_hist(c0, c1, c2, add_t, mul_t)

    print(f"\nplane over GF({q2})  (q = {q}, {q2*q2 + q2 + 1} lines)")
    for name, job in jobs.items():
        row = {}
        for backend in ("numpy", "numba"):
            ns = kernels.BACKENDS.get(backend)
            if ns is None:
                continue
            job(ns)  # warm up (and JIT-compile the numba twin)
            row[backend] = best_of(lambda: job(ns), repeat)
        line = f"  {name:<18}"
        for backend, t in row.items():
            line += f" {backend}: {t * 1e3:9.2f} ms "
        if len(row) == 2:
            line += f"  speedup x{row['numpy'] / row['numba']:.1f}"
        print(line)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="*", default=[4, 9, 16, 25])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.BACKENDS["numba"] is None:
        print("numba backend unavailable; timing numpy only")
    for q in args.q:
        bench_q(q, args.repeat)


if __name__ == "__main__":
    main()
