"""Runtime comparison of the submatrix and Smith form algorithms on W_n."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from typing import IO, Iterable, List, Optional, Union

from .errors import CapExceededError, InvalidParameterError, OracleTooLargeError, SubmatrixTimeoutError
from .gmax import brute_force_gmax, gmax_smith, gmax_submatrix
from .polynomial import build_wn, exponent_matrix

CSV_COLUMNS = [
    "n",
    "m",
    "norm_a",
    "t_submatrix_ms",
    "t_smith_ms",
    "submatrices_visited",
    "group_order",
    "early_exit",
]

DEFAULT_BENCH_CAP = 10**7


@dataclass
class BenchRow:
    n: int
    m: int
    norm_a: int
    t_submatrix_ms: Union[float, str]
    t_smith_ms: float
    submatrices_visited: int
    group_order: int
    early_exit: Optional[bool]
    oracle_checked: bool = False

    def as_csv(self) -> list:
        t_sub = self.t_submatrix_ms
        return [
            self.n,
            self.m,
            self.norm_a,
            t_sub if isinstance(t_sub, str) else f"{t_sub:.3f}",
            f"{self.t_smith_ms:.3f}",
            self.submatrices_visited,
            self.group_order,
            "" if self.early_exit is None else str(self.early_exit).lower(),
        ]


def bench_one(
    n: int,
    timeout: float = 30.0,
    cap: int = DEFAULT_BENCH_CAP,
    oracle_cap: int = 10**6,
) -> BenchRow:
    A = exponent_matrix(build_wn(n))

    t0 = time.perf_counter()
    smith = gmax_smith(A)
    t_smith = (time.perf_counter() - t0) * 1000

    early = None
    t0 = time.perf_counter()
    try:
        sub = gmax_submatrix(A, cap=cap, timeout=timeout)
    except SubmatrixTimeoutError as exc:
        t_sub: Union[float, str] = "timeout"
        visited = exc.visited
    except CapExceededError as exc:
        t_sub = "cap"
        visited = getattr(exc, "visited", 0)
    else:
        t_sub = (time.perf_counter() - t0) * 1000
        visited = sub.submatrices_visited
        early = sub.early_exit
        if sub.order != smith.order:
            raise AssertionError(f"W_{n}: submatrix order {sub.order} != smith order {smith.order}")

    checked = False
    try:
        oracle = brute_force_gmax(A, cap=oracle_cap)
    except OracleTooLargeError:
        pass
    else:
        if len(oracle) != smith.order:
            raise AssertionError(f"W_{n}: oracle order {len(oracle)} != smith order {smith.order}")
        checked = True

    return BenchRow(
        n=n,
        m=A.m,
        norm_a=A.norm,
        t_submatrix_ms=t_sub,
        t_smith_ms=t_smith,
        submatrices_visited=visited,
        group_order=smith.order,
        early_exit=early,
        oracle_checked=checked,
    )


def run_bench(
    ns: Iterable[int], timeout: float = 30.0, cap: int = DEFAULT_BENCH_CAP
) -> List[BenchRow]:
    ns = list(ns)
    bad = [n for n in ns if n < 4 or n % 2]
    if not ns or bad:
        raise InvalidParameterError(f"bench sizes must be even integers >= 4, got {bad or ns}")
    return [bench_one(n, timeout=timeout, cap=cap) for n in ns]


def write_csv(rows: Iterable[BenchRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv())
