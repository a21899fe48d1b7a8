"""Smith normal form of integer matrices with unimodular witnesses.

Classical elimination: bring the smallest nonzero entry of the remaining block
to the pivot, clear its row and column by Euclidean steps, and repair any
divisibility failure by adding the offending row into the pivot row. Every
row operation is mirrored on ``P`` and every column operation on ``Q`` so that
``S == P @ A @ Q`` holds throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from . import linalg
from .errors import RankDeficientError

Matrix = List[List[int]]


@dataclass(frozen=True)
class SmithDecomposition:
    S: Tuple[Tuple[int, ...], ...]
    P: Tuple[Tuple[int, ...], ...]
    Q: Tuple[Tuple[int, ...], ...]
    invariant_factors: Tuple[int, ...]

    def product(self) -> int:
        out = 1
        for a in self.invariant_factors:
            out *= a
        return out


def _freeze(M: Matrix) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(r) for r in M)


def smith_normal_form(A) -> SmithDecomposition:
    """Return ``(S, P, Q)`` with ``S = P A Q`` for a full-column-rank ``A``.

    >>> smith_normal_form([[2, 1], [1, 2]]).invariant_factors
    (1, 3)
    """
    rows = [list(map(int, r)) for r in (A.rows if hasattr(A, "rows") else A)]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        raise ValueError("matrix must be nonempty")
    if m < n:
        raise RankDeficientError(f"{m}x{n} matrix cannot have rank {n}")
    S = rows
    P = linalg.identity(m)
    Q = linalg.identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            S[i], S[j] = S[j], S[i]
            P[i], P[j] = P[j], P[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for M in (S, Q):
                for r in M:
                    r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, k: int) -> None:
        # row dst += k * row src
        for M in (S, P):
            rd, rs = M[dst], M[src]
            for c in range(len(rd)):
                rd[c] += k * rs[c]

    def add_col(dst: int, src: int, k: int) -> None:
        for M in (S, Q):
            for r in M:
                r[dst] += k * r[src]

    for t in range(n):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    v = abs(row[j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                raise RankDeficientError(f"matrix has rank {t} < {n}")
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = S[t][t]

            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // piv))
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // piv))
                    if S[t][j]:
                        clean = False
            if not clean:
                continue

            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)

        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            P[t] = [-x for x in P[t]]

    factors = tuple(S[i][i] for i in range(n))
    return SmithDecomposition(_freeze(S), _freeze(P), _freeze(Q), factors)


def verify(A, D: SmithDecomposition) -> bool:
    """Independent check of every Smith form property for ``D`` against ``A``."""
    rows = [list(map(int, r)) for r in (A.rows if hasattr(A, "rows") else A)]
    m = len(rows)
    n = len(rows[0]) if m else 0
    S = [list(r) for r in D.S]
    P = [list(r) for r in D.P]
    Q = [list(r) for r in D.Q]
    if linalg.shape(S) != (m, n) or linalg.shape(P) != (m, m) or linalg.shape(Q) != (n, n):
        return False
    if linalg.matmul(linalg.matmul(P, rows), Q) != S:
        return False
    if abs(linalg.det(P)) != 1 or abs(linalg.det(Q)) != 1:
        return False
    for i in range(m):
        for j in range(n):
            if i != j and S[i][j] != 0:
                return False
    diag = [S[i][i] for i in range(n)]
    if any(a <= 0 for a in diag):
        return False
    if any(diag[i] % diag[i - 1] for i in range(1, n)):
        return False
    return tuple(diag) == tuple(D.invariant_factors)
