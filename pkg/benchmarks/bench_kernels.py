#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-Python fallback.

Runs the hot paths on representative workloads and prints a table with
the speedup of jcforge._fastkernels over jcforge._purekernels.  The
centralizer workloads are the dominant cost of the acceptance suite, so
this is also a quick way to judge whether the compiled extension built
correctly.

Usage: python benchmarks/bench_kernels.py [--heavy]
"""

import argparse
import random
import time

import jcforge as jf
from jcforge import _backend
from jcforge.linalg import Mat
from jcforge.partitions import Partition


def rand_invertible(spec, n, rng):
    while True:
        m = Mat.from_rows(spec, [[spec.from_int(rng.randrange(spec.p))
                                  for _ in range(n)] for _ in range(n)])
        if jf.rank(m) == n:
            return m


def timed(fn, min_repeat=1):
    best = None
    for _ in range(min_repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def workloads(heavy):
    rng = random.Random(1234)

    def poly_gcd_grid():
        impl = _backend.impl
        p = 3
        acc = 0
        for _ in range(300):
            a = tuple(rng.randrange(p) for _ in range(40)) + (1,)
            b = tuple(rng.randrange(p) for _ in range(35)) + (1,)
            acc += len(impl.gfp_gcd(p, impl.gfp_mul(p, a, b), b))
        return acc

    yield "GF(3)[t] mul+gcd, degree ~40, 300 reps", poly_gcd_grid, 3

    spec2 = jf.rational_functions(2)
    f2 = jf.parse_poly_text("T^2 - t", spec2)
    j2, _, _ = jf.build_J(f2, Partition([2, 1]))
    r2 = rand_invertible(spec2, j2.rows, rng)
    x2 = r2 @ j2 @ jf.mat_inverse(r2)

    yield "centralizer dim, 6x6 over GF(2)(t) (36 unknowns)", \
        (lambda: jf.commutant_dim([x2])), 3

    e2 = jf.validate_primary(spec2, f2, x2)

    def roundtrip2():
        dec = jf.decompose(e2, Partition([2, 1]))
        return jf.typ_of(e2, dec.s, dec.n)

    yield "decompose + typ, 6x6 over GF(2)(t)", roundtrip2, 3

    if heavy:
        spec3 = jf.rational_functions(3)
        f3 = jf.parse_poly_text("T^3 - t", spec3)
        j3, _, _ = jf.build_J(f3, Partition([2, 1, 1]))
        r3 = rand_invertible(spec3, j3.rows, rng)
        x3 = r3 @ j3 @ jf.mat_inverse(r3)

        yield "centralizer dim, 12x12 over GF(3)(t) (144 unknowns)", \
            (lambda: jf.commutant_dim([x3])), 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--heavy", action="store_true",
                    help="include the 144-unknown centralizer system "
                         "(minutes on the pure backend)")
    args = ap.parse_args()

    if not _backend.HAVE_FAST:
        raise SystemExit("compiled kernels unavailable; build the package "
                         "first (pip install -e . --no-build-isolation)")

    print(f"{'workload':55s} {'fast':>9s} {'pure':>9s} {'speedup':>8s}")
    print("-" * 86)
    for name, fn, reps in workloads(args.heavy):
        _backend.select("fast")
        tf, rf = timed(fn, reps)
        _backend.select("pure")
        tp, rp = timed(fn, reps)
        _backend.select("auto")
        assert rf == rp, f"backend results differ on {name!r}"
        print(f"{name:55s} {tf:8.3f}s {tp:8.3f}s {tp / tf:7.1f}x")


if __name__ == "__main__":
    main()
