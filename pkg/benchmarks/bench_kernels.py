"""Compare the compiled and pure-Python kernels on representative inputs.

    python benchmarks/bench_kernels.py [--repeat 3]

Prints one line per case with the best wall time of each backend.
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction
from functools import reduce
from math import lcm

from gwmax import kernels, linalg
from gwmax.polynomial import build_wn, exponent_matrix


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1000


def closure_case(rows):
    """Digit-vector generators for the columns of an inverse submatrix."""
    inv = linalg.inverse(rows)
    n = len(rows)
    cols = [[inv[r][c] % 1 for r in range(n)] for c in range(n)]
    D = reduce(lcm, (Fraction(x).denominator for col in cols for x in col), 1)
    gens = [[int(x * D) for x in col] for col in cols]
    return n, gens, D


def oracle_case(A):
    n = len(A[0])
    inv = linalg.inverse(A[:n])
    radices = [reduce(lcm, (x.denominator for x in row), 1) for row in inv]
    return A, radices, reduce(lcm, radices, 1)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if kernels._ckernels is None:
        print("compiled kernels are not built; nothing to compare")
        return 1

    w4 = exponent_matrix(build_wn(4)).to_list()
    w6 = exponent_matrix(build_wn(6)).to_list()
    cases = [
        ("closure W4 rows 1-4", "closure", closure_case(w4[:4])),
        ("closure W4 rows 1,5,6,7", "closure", closure_case(w4[:1] + w4[4:7])),
        ("closure W6 rows 1-6", "closure", closure_case(w6[:6])),
        ("oracle_scan W4", "oracle", oracle_case(w4)),
        ("oracle_scan diag(12,12,12)", "oracle", oracle_case([[12, 0, 0], [0, 12, 0], [0, 0, 12]])),
    ]
    print(f"{'case':<30}{'cython ms':>12}{'python ms':>12}{'speedup':>10}")
    for name, kind, data in cases:
        if kind == "closure":
            n, gens, D = data
            def run(b, n=n, gens=gens, D=D):
                return kernels.closure(n, gens, D, cap=10**7, backend=b)
        else:
            A, radices, D = data
            def run(b, A=A, radices=radices, D=D):
                return kernels.oracle_scan(A, radices, D, backend=b)
        assert (run("cython") == run("python")).all()
        fast = _best(lambda: run("cython"), args.repeat)
        slow = _best(lambda: run("python"), args.repeat)
        print(f"{name:<30}{fast:>12.2f}{slow:>12.2f}{slow / fast:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
