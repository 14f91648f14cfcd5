"""Compare the compiled and pure Python pivoting kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  Each case reduces random
integer matrices with both backends, checks the results agree and prints the
median time per call.
"""
import argparse
import random
import statistics
import time

from inscribed import _pykernels

try:
    from inscribed import _ckernels
except ImportError:
    _ckernels = None


def random_matrix(rng, m, n, bound):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def timed(fn, mats, ncols, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        for M in mats:
            fn(M, ncols)
        samples.append((time.perf_counter() - t0) / len(mats))
    return statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--count", type=int, default=20, help="matrices per case")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    cases = [(6, 8, 5), (12, 16, 5), (20, 30, 3), (24, 48, 2), (12, 16, 10**12)]
    print(f"{'shape':>10} {'bound':>8} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for m, n, bound in cases:
        shape = f"{m}x{n}"
        mats = [random_matrix(rng, m, n, bound) for _ in range(args.count)]
        py = timed(_pykernels.rref, mats, n, args.repeats)
        if _ckernels is None:
            print(f"{shape:>10} {bound:>8.0e} {py * 1e3:12.3f} {'n/a':>12} {'n/a':>8}")
            continue
        for M in mats:
            a, b = _pykernels.rref(M, n), _ckernels.rref(M, n)
            assert (a[1], a[2]) == (b[1], b[2]) and [list(r) for r in a[0]] == [list(r) for r in b[0]]
        cy = timed(_ckernels.rref, mats, n, args.repeats)
        print(f"{shape:>10} {bound:>8.0e} {py * 1e3:12.3f} {cy * 1e3:12.3f} {py / cy:8.1f}")


if __name__ == "__main__":
    main()
