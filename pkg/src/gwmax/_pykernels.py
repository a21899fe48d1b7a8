"""Pure-Python kernels; the reference behaviour for ``_ckernels``.

Group elements with common denominator ``modulus`` are digit tuples
``(c_1, ..., c_n)`` with ``0 <= c_i < modulus`` standing for
``(c_1/modulus, ..., c_n/modulus)``. They are packed into a single integer
code with the first coordinate most significant, so sorting codes sorts
elements lexicographically by phase.
"""

from __future__ import annotations

from itertools import product
from typing import List, Sequence

from .errors import GroupTooLargeError


def encode(digits: Sequence[int], modulus: int) -> int:
    code = 0
    for d in digits:
        code = code * modulus + d
    return code


def decode(code: int, n: int, modulus: int) -> tuple:
    out = [0] * n
    for j in range(n - 1, -1, -1):
        code, out[j] = divmod(code, modulus)
    return tuple(out)


def closure(n: int, gens: Sequence[Sequence[int]], modulus: int, cap: int) -> List[int]:
    """Sorted codes of the subgroup generated by ``gens``.

    The group is grown one generator at a time: if ``s`` is the least positive
    multiple of ``g`` already in ``H``, then ``H + <g>`` is the disjoint union
    of the cosets ``H + k*g`` for ``0 <= k < s``.
    """
    zero = (0,) * n
    elems = [zero]
    seen = {zero}
    for g in gens:
        g = tuple(int(x) % modulus for x in g)
        t = g
        s = 1
        while t not in seen:
            t = tuple((a + b) % modulus for a, b in zip(t, g))
            s += 1
        if s == 1:
            continue
        if len(elems) * s > cap:
            raise GroupTooLargeError(
                f"subgroup closure reached {len(elems) * s} elements (cap {cap})",
                size=len(elems) * s,
                cap=cap,
            )
        base = elems
        grown = list(base)
        shift = g
        for _ in range(1, s):
            grown.extend(tuple((a + b) % modulus for a, b in zip(h, shift)) for h in base)
            shift = tuple((a + b) % modulus for a, b in zip(shift, g))
        elems = grown
        seen = set(grown)
    return sorted(encode(e, modulus) for e in elems)


def oracle_scan(
    A: Sequence[Sequence[int]], radices: Sequence[int], modulus: int
) -> List[int]:
    """Codes of every ``g`` with ``g_j in (1/radices[j]) Z`` and ``A g`` integral.

    Each radix must divide ``modulus``. Output is sorted.
    """
    steps = [modulus // r for r in radices]
    rows = [[a % modulus for a in row] for row in A]
    out = []
    for ks in product(*(range(r) for r in radices)):
        digits = [k * s for k, s in zip(ks, steps)]
        if all(sum(a * d for a, d in zip(row, digits)) % modulus == 0 for row in rows):
            out.append(encode(digits, modulus))
    return out
