#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Runs the hot loops of the package (batch sphere/ball products, distance
tables, a full hyperbolicity scan, and one end-to-end truncated-operator
norm) on representative workloads and prints per-backend timings with the
speedup factor.  The two backends are also cross-checked for identical
output on every workload.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import sys
import time

import numpy as np

from hypnorm._kernels import pure

try:
    from hypnorm._kernels import _ck as compiled
except ImportError:
    compiled = None

from hypnorm.functions import random_sphere_function
from hypnorm.groups import parse_group
from hypnorm.operators import truncated_lambda
from hypnorm.spectral import operator_norm


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _workloads():
    F2 = parse_group("free:2")
    Z34 = parse_group("zfp:3,4")
    s3 = F2.enumerate_sphere(3).words()
    s5 = F2.enumerate_sphere(5).words()
    s6 = F2.enumerate_sphere(6).words()
    b7 = F2.enumerate_ball(7).words()
    b4 = F2.enumerate_ball(4).words()
    z2 = Z34.enumerate_sphere(2).words()
    z5 = Z34.enumerate_sphere(5).words()
    return [
        ("free:2  S3 x S5 -> S6 hits", lambda K: K.product_sphere_hits(F2.kernel_spec, s3, s5, 6)),
        ("free:2  S3 x S6 -> S5 hits", lambda K: K.product_sphere_hits(F2.kernel_spec, s3, s6, 5)),
        ("free:2  S3 x B7 ball hits", lambda K: K.product_ball_hits(F2.kernel_spec, s3, b7, 7)),
        ("free:2  B4 distance table", lambda K: K.distance_table(F2.kernel_spec, b4)),
        ("zfp:3,4 S2 x S5 -> S5 hits", lambda K: K.product_sphere_hits(Z34.kernel_spec, z2, z5, 5)),
        ("zfp:3,4 S5 quotient lengths", lambda K: K.left_quotient_lengths(Z34.kernel_spec, z5, z2[3])),
    ]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if compiled is None:
        print("compiled backend not built; timing the pure backend only", file=sys.stderr)

    width = max(len(name) for name, _ in _workloads())
    print(f"{'workload'.ljust(width)}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, fn in _workloads():
        t_pure, out_pure = _time(lambda: fn(pure), args.repeat)
        if compiled is not None:
            t_comp, out_comp = _time(lambda: fn(compiled), args.repeat)
            for a, b in zip(out_pure, out_comp) if isinstance(out_pure, tuple) else [(out_pure, out_comp)]:
                assert np.array_equal(a, b), f"backend mismatch in {name}"
            print(f"{name.ljust(width)}  {t_pure * 1e3:9.2f}ms  {t_comp * 1e3:9.2f}ms  {t_pure / t_comp:7.1f}x")
        else:
            print(f"{name.ljust(width)}  {t_pure * 1e3:9.2f}ms  {'-':>10}  {'-':>8}")

    # end-to-end: norm of a truncated operator, k=3 support on B_7
    F2 = parse_group("free:2")
    f = random_sphere_function(F2, 3, 1, 1.0, seed=5)
    t0 = time.perf_counter()
    top = truncated_lambda(f, 7)
    norm = operator_norm(top.matrix, 1e-6, exact_threshold=64)
    t1 = time.perf_counter()
    backend = "compiled" if compiled is not None else "pure"
    print(
        f"\nend-to-end truncated norm (k=3, R=7, {top.matrix.shape[0]}^2 sparse, "
        f"selected backend): {norm.value:.6f} in {(t1 - t0) * 1e3:.1f}ms"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
