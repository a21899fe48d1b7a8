"""The maximal diagonal symmetry group {g in (Q/Z)^n : A g in Z^m}.

Three routes to the same group:

* :func:`gmax_submatrix` intersects the groups generated by the columns of
  ``A_i^{-1}`` over all invertible n-row submatrices ``A_i``, stopping early
  once the running intersection is as small as the weight subgroup.
* :func:`gmax_smith` reads generators off the Smith form ``S = P A Q``: column
  ``i`` of ``Q`` divided by the invariant factor ``a_i``.
* :func:`brute_force_gmax` scans a finite grid that must contain the group;
  it shares no code with the other two and serves as the test oracle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm, prod
from typing import List, Optional, Tuple

from . import kernels, linalg
from .errors import (
    GroupTooLargeError,
    InvalidDimensionError,
    NotAdmissibleError,
    OracleTooLargeError,
    RankDeficientError,
    SubmatrixTimeoutError,
)
from .polynomial import WeightSystem, _rows, weights
from .qz_group import (
    DEFAULT_GROUP_CAP,
    FiniteSubgroup,
    GroupElement,
    canonicalize,
    element_order,
    generate,
    intersect,
    small_generating_set,
)
from .snf import SmithDecomposition, smith_normal_form

DEFAULT_ORACLE_CAP = 10**6


@dataclass
class GmaxResult:
    algorithm: str
    dimension: int
    generators: Tuple[GroupElement, ...]
    order: int
    invariant_factors: Optional[Tuple[int, ...]] = None
    group: Optional[FiniteSubgroup] = None
    smith: Optional[SmithDecomposition] = None
    submatrices_visited: Optional[int] = None
    invertible_visited: Optional[int] = None
    early_exit: Optional[bool] = None

    @property
    def elements(self) -> Optional[Tuple[GroupElement, ...]]:
        return None if self.group is None else self.group.elements

    def to_group(self, cap: int = DEFAULT_GROUP_CAP) -> FiniteSubgroup:
        if self.group is None:
            self.group = generate(self.dimension, self.generators, cap=cap)
        return self.group


def is_member(A, g: GroupElement) -> bool:
    rows = _rows(A)
    g = canonicalize(g)
    if any(len(r) != g.dimension for r in rows):
        raise InvalidDimensionError(
            f"element has dimension {g.dimension}, matrix has {len(rows[0])} columns"
        )
    return all(
        sum((a * p for a, p in zip(row, g.phases)), Fraction(0)).denominator == 1
        for row in rows
    )


def weight_group_order(q) -> int:
    qs = q.q if isinstance(q, WeightSystem) else q
    return element_order(canonicalize(qs))


def _first_invertible(rows: List[List[int]], n: int):
    for combo in combinations(range(len(rows)), n):
        sub = [rows[i] for i in combo]
        if linalg.det(sub) != 0:
            return combo, sub
    raise RankDeficientError(f"no invertible {n}x{n} submatrix; rank < {n}")


def brute_force_gmax(A, cap: int = DEFAULT_ORACLE_CAP, backend: str | None = None) -> FiniteSubgroup:
    """Exhaustive membership scan over a grid known to contain the group.

    If ``A_1`` is any invertible n-row submatrix then every member satisfies
    ``g = A_1^{-1} z`` with ``z`` integral, so coordinate ``j`` lies in
    ``(1/e_j) Z`` where ``e_j`` clears the denominators of row ``j`` of
    ``A_1^{-1}``. Every grid point is tested against all rows of ``A``.
    """
    rows = _rows(A)
    n = len(rows[0])
    _, sub = _first_invertible(rows, n)
    inv = linalg.inverse(sub)
    radices = [reduce(lcm, (x.denominator for x in row), 1) for row in inv]
    size = prod(radices)
    if size > cap:
        raise OracleTooLargeError(
            f"oracle grid has {size} points (cap {cap})", size=size, cap=cap
        )
    modulus = reduce(lcm, radices, 1)
    codes = kernels.oracle_scan(rows, radices, modulus, backend=backend)
    return FiniteSubgroup(n, None, modulus, codes)


def submatrix_groups(A, cap: int = DEFAULT_GROUP_CAP):
    """Yield ``(row_indices, submatrix, group)`` for every n-row subset.

    Subsets come in lexicographic order; ``group`` is ``<cols of A_i^{-1}>``
    or ``None`` when the submatrix is singular. The group is only built when
    the consumer asks for the next item.
    """
    rows = _rows(A)
    m, n = len(rows), len(rows[0])
    visited = 0
    for combo in combinations(range(m), n):
        visited += 1
        sub = [rows[i] for i in combo]
        if linalg.det(sub) == 0:
            yield combo, sub, None
            continue
        inv = linalg.inverse(sub)
        cols = [canonicalize([inv[r][c] for r in range(n)]) for c in range(n)]
        try:
            G = generate(n, cols, cap=cap)
        except GroupTooLargeError as exc:
            err = GroupTooLargeError(
                f"group of submatrix rows {[i + 1 for i in combo]} {sub} exceeds "
                f"the cap of {cap} elements",
                size=exc.size,
                cap=cap,
            )
            err.visited = visited
            raise err from exc
        yield combo, sub, G


def gmax_submatrix(
    A,
    cap: int = DEFAULT_GROUP_CAP,
    timeout: float | None = None,
    q: WeightSystem | None = None,
    early_exit: bool = True,
) -> GmaxResult:
    """Intersect ``<cols of A_i^{-1}>`` over invertible submatrices ``A_i``.

    Row subsets are visited in lexicographic order. The running intersection
    starts at the first invertible submatrix's group. The loop stops as soon
    as its order equals the order of the weight element. ``timeout`` (seconds)
    is checked between submatrices.
    """
    rows = _rows(A)
    n = len(rows[0])
    if q is None:
        try:
            q = weights(rows)
        except NotAdmissibleError:
            q = None
    target = weight_group_order(q) if (q is not None and early_exit) else None
    start = time.perf_counter()

    H: Optional[FiniteSubgroup] = None
    visited = 0
    invertible = 0
    exited = False
    subsets = submatrix_groups(rows, cap=cap)
    while True:
        if timeout is not None and time.perf_counter() - start > timeout:
            raise SubmatrixTimeoutError(
                f"submatrix algorithm timed out after {visited} submatrices", visited
            )
        try:
            _, _, G = next(subsets)
        except StopIteration:
            break
        visited += 1
        if G is None:
            continue
        invertible += 1
        H = G if H is None else intersect(H, G)
        if target is not None and len(H) == target:
            assert canonicalize(q.q) in H
            exited = True
            break

    if H is None:
        raise RankDeficientError(f"no invertible {n}x{n} submatrix; rank < {n}")
    return GmaxResult(
        algorithm="submatrix",
        dimension=n,
        generators=small_generating_set(H),
        order=len(H),
        group=H,
        submatrices_visited=visited,
        invertible_visited=invertible,
        early_exit=exited,
    )


def gmax_smith(A, enumerate_group: bool = False, cap: int = DEFAULT_GROUP_CAP) -> GmaxResult:
    """Generators from the Smith form: column i of Q scaled by 1/a_i."""
    rows = _rows(A)
    n = len(rows[0])
    D = smith_normal_form(rows)
    gens = []
    for i, a in enumerate(D.invariant_factors):
        if a == 1:
            continue
        g = canonicalize([Fraction(D.Q[r][i], a) for r in range(n)])
        if not g.is_identity():
            gens.append(g)
    result = GmaxResult(
        algorithm="smith",
        dimension=n,
        generators=tuple(gens),
        order=prod(D.invariant_factors),
        invariant_factors=tuple(a for a in D.invariant_factors if a > 1),
        smith=D,
    )
    if enumerate_group:
        result.to_group(cap)
    return result


def gmax_oracle(A, cap: int = DEFAULT_ORACLE_CAP) -> GmaxResult:
    G = brute_force_gmax(A, cap=cap)
    return GmaxResult(
        algorithm="oracle",
        dimension=G.dimension,
        generators=small_generating_set(G),
        order=len(G),
        group=G,
    )


ALGORITHMS = {
    "smith": gmax_smith,
    "submatrix": gmax_submatrix,
    "oracle": gmax_oracle,
}
