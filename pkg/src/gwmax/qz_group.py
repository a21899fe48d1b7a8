"""Finite subgroups of (Q/Z)^n with exact rational phases.

A :class:`GroupElement` is a vector of phases, each a reduced
:class:`~fractions.Fraction` in ``[0, 1)``. A :class:`FiniteSubgroup`
stores its elements compactly: all of them share a common denominator
(the group exponent), so each element is a digit vector packed into one
integer code, and the codes are kept sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence, Tuple

import numpy as np

from . import kernels
from .errors import InvalidDimensionError

DEFAULT_GROUP_CAP = 10**6

Phase = Fraction


def _phase(x) -> Fraction:
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


def format_phase(p: Fraction) -> str:
    return str(p)


@dataclass(frozen=True, order=True)
class GroupElement:
    """A point of (Q/Z)^n, stored in canonical form."""

    phases: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(_phase(p) for p in self.phases))

    @property
    def dimension(self) -> int:
        return len(self.phases)

    def is_identity(self) -> bool:
        return not any(self.phases)

    def __add__(self, other: GroupElement) -> GroupElement:
        _check_dims(self.dimension, other.dimension)
        return GroupElement(tuple(a + b for a, b in zip(self.phases, other.phases)))

    def __neg__(self) -> GroupElement:
        return GroupElement(tuple(-a for a in self.phases))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement(tuple(k * a for a in self.phases))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "(" + ", ".join(format_phase(p) for p in self.phases) + ")"

    def to_strings(self) -> list:
        return [format_phase(p) for p in self.phases]

    def digits(self, modulus: int) -> tuple:
        """Numerators over ``modulus``; the modulus must clear all denominators."""
        out = []
        for p in self.phases:
            q, r = divmod(modulus, p.denominator)
            if r:
                raise ValueError(f"{modulus} is not a multiple of denominator {p.denominator}")
            out.append(p.numerator * q)
        return tuple(out)


def _trusted(phases: Tuple[Fraction, ...]) -> GroupElement:
    # phases already reduced into [0, 1)
    g = object.__new__(GroupElement)
    object.__setattr__(g, "phases", phases)
    return g


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise InvalidDimensionError(f"dimension mismatch: {a} != {b}")


def canonicalize(raw: Sequence) -> GroupElement:
    """Reduce each coordinate of ``raw`` modulo Z into ``[0, 1)``.

    >>> str(canonicalize([Fraction(1, 3), Fraction(-2, 3)]))
    '(1/3, 1/3)'
    """
    if isinstance(raw, GroupElement):
        return raw
    raw = list(raw)
    if not raw:
        raise InvalidDimensionError("group elements need dimension >= 1")
    return GroupElement(tuple(raw))


def parse_element(text: str) -> GroupElement:
    """Inverse of ``str(GroupElement)``: ``"(1/3, 1/3)"`` -> element."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    return canonicalize([Fraction(part.strip()) for part in body.split(",")])


def identity(n: int) -> GroupElement:
    if n < 1:
        raise InvalidDimensionError("group elements need dimension >= 1")
    return GroupElement((Fraction(0),) * n)


def element_order(g: GroupElement) -> int:
    return reduce(lcm, (p.denominator for p in g.phases), 1)


# -- code arrays -------------------------------------------------------------


def _decode(codes: np.ndarray, n: int, modulus: int) -> np.ndarray:
    digits = np.empty((len(codes), n), dtype=codes.dtype)
    rest = codes.copy()
    for j in range(n - 1, -1, -1):
        digits[:, j] = rest % modulus
        rest = rest // modulus
    return digits


def _encode(digits: np.ndarray, modulus: int) -> np.ndarray:
    n = digits.shape[1]
    codes = np.zeros(len(digits), dtype=digits.dtype)
    for j in range(n):
        codes = codes * modulus + digits[:, j]
    return codes


def _restrict(codes: np.ndarray, n: int, modulus: int, target: int) -> np.ndarray:
    """Keep elements lying in (1/target)Z^n and re-encode them over ``target``."""
    if target == modulus:
        return codes
    step = modulus // target
    digits = _decode(codes, n, modulus)
    keep = np.all(digits % step == 0, axis=1)
    digits = digits[keep] // step
    out = _encode(digits, target)
    return kernels.as_code_array(out, n, target)


def _exponent(codes: np.ndarray, n: int, modulus: int) -> int:
    if modulus == 1 or len(codes) == 0:
        return 1
    digits = _decode(codes, n, modulus)
    if digits.dtype == object:
        g = reduce(gcd, (int(x) for x in digits.ravel()), modulus)
    else:
        g = int(np.gcd.reduce(np.append(digits.ravel(), modulus)))
    return modulus // g


class FiniteSubgroup:
    """A finite subgroup of (Q/Z)^n held as generators plus its element set."""

    __slots__ = ("dimension", "_generators", "modulus", "codes", "_elements")

    def __init__(
        self, dimension: int, generators, modulus: int, codes: np.ndarray, exact: bool = False
    ):
        # ``exact`` asserts that ``modulus`` already equals the group exponent
        if dimension < 1:
            raise InvalidDimensionError("group elements need dimension >= 1")
        self.dimension = dimension
        self._generators = None if generators is None else tuple(generators)
        if not exact:
            e = _exponent(codes, dimension, modulus)
            codes = _restrict(codes, dimension, modulus, e)
            modulus = e
        self.modulus = modulus
        self.codes = codes
        self._elements = None

    @classmethod
    def trivial(cls, n: int) -> FiniteSubgroup:
        return cls(n, (), 1, kernels.as_code_array([0], n, 1))

    @property
    def generators(self) -> Tuple[GroupElement, ...]:
        if self._generators is None:
            return self.elements
        return self._generators

    @property
    def elements(self) -> Tuple[GroupElement, ...]:
        """All elements in lexicographic phase order."""
        if self._elements is None:
            D = self.modulus
            digits = _decode(self.codes, self.dimension, D)
            self._elements = tuple(
                _trusted(tuple(Fraction(int(d), D) for d in row)) for row in digits
            )
        return self._elements

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        if g.dimension != self.dimension:
            return False
        D = self.modulus
        if D % element_order(g):
            return False
        code = 0
        for d in g.digits(D):
            code = code * D + d
        i = int(np.searchsorted(self.codes, code))
        return i < len(self.codes) and self.codes[i] == code

    def issubset(self, other: FiniteSubgroup) -> bool:
        if self.dimension != other.dimension or other.modulus % self.modulus:
            return False
        return len(intersect(self, other)) == len(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSubgroup):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.modulus == other.modulus
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self) -> int:
        return hash((self.dimension, self.modulus, tuple(int(c) for c in self.codes)))

    def __repr__(self) -> str:
        return f"FiniteSubgroup(dimension={self.dimension}, order={self.order})"


def generate(
    dimension: int,
    gens: Iterable[GroupElement],
    cap: int = DEFAULT_GROUP_CAP,
    backend: str | None = None,
) -> FiniteSubgroup:
    """Closure of ``gens`` under addition mod Z.

    Raises :class:`~gwmax.errors.GroupTooLargeError` once the closure would
    exceed ``cap`` elements.
    """
    if dimension < 1:
        raise InvalidDimensionError("group elements need dimension >= 1")
    gens = [canonicalize(g) for g in gens]
    for g in gens:
        _check_dims(dimension, g.dimension)
    D = reduce(lcm, (element_order(g) for g in gens), 1)
    digit_rows = [g.digits(D) for g in gens if not g.is_identity()]
    codes = kernels.closure(dimension, digit_rows, D, cap, backend=backend)
    # the lcm of generator orders is the exponent of an abelian group
    return FiniteSubgroup(dimension, gens, D, codes, exact=True)


def _lift(codes: np.ndarray, n: int, modulus: int, target: int) -> np.ndarray:
    """Re-encode codes over a multiple ``target`` of ``modulus``."""
    if target == modulus:
        return codes
    digits = _decode(codes, n, modulus) * (target // modulus)
    return kernels.as_code_array(_encode(digits, target), n, target)


def _lookup(sorted_codes: np.ndarray, probe: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(sorted_codes, probe)
    idx_c = np.minimum(idx, len(sorted_codes) - 1)
    return (idx < len(sorted_codes)) & (sorted_codes[idx_c] == probe)


def intersect(G1: FiniteSubgroup, G2: FiniteSubgroup) -> FiniteSubgroup:
    """Common elements of two subgroups.

    Only the smaller group is decoded: its elements that fit the common
    denominator are looked up in the larger group's sorted code array.
    """
    _check_dims(G1.dimension, G2.dimension)
    n = G1.dimension
    small, big = (G1, G2) if len(G1) <= len(G2) else (G2, G1)
    target = gcd(small.modulus, big.modulus)
    cand = _restrict(small.codes, n, small.modulus, target)
    hit = _lookup(big.codes, _lift(cand, n, target, big.modulus))
    return FiniteSubgroup(n, None, target, kernels.as_code_array(cand[hit], n, target))


def order(G: FiniteSubgroup) -> int:
    return G.order


def from_elements(dimension: int, elements: Iterable[GroupElement]) -> FiniteSubgroup:
    """Wrap an element set already known to be a subgroup."""
    elements = [canonicalize(g) for g in elements]
    D = reduce(lcm, (element_order(g) for g in elements), 1)
    codes = sorted(_pack(g.digits(D), D) for g in elements)
    return FiniteSubgroup(
        dimension, None, D, kernels.as_code_array(codes, dimension, D)
    )


def _pack(digits, modulus: int) -> int:
    code = 0
    for d in digits:
        code = code * modulus + d
    return code


def small_generating_set(G: FiniteSubgroup) -> Tuple[GroupElement, ...]:
    """A short generating set, picked greedily from high-order elements."""
    n, D = G.dimension, G.modulus
    if len(G) == 1:
        return ()
    digits = _decode(G.codes, n, D)
    if digits.dtype == object:
        orders = np.array([D // reduce(gcd, map(int, row), D) for row in digits])
    else:
        orders = D // np.gcd.reduce(np.concatenate([digits, np.full((len(digits), 1), D)], axis=1), axis=1)
    ranked = np.argsort(-orders, kind="stable")
    gens: list = []
    current = FiniteSubgroup.trivial(n)
    while len(current) < len(G):
        inside = _contains_codes(current, G.codes[ranked], D)
        pick = int(ranked[np.argmin(inside)])
        gens.append(_trusted(tuple(Fraction(int(d), D) for d in digits[pick])))
        current = generate(n, gens, cap=len(G))
    return tuple(gens)


def _contains_codes(H: FiniteSubgroup, codes: np.ndarray, modulus: int) -> np.ndarray:
    """Membership in ``H`` of elements given as codes over ``modulus``."""
    n = H.dimension
    digits = _decode(codes, n, modulus)
    target = gcd(H.modulus, modulus)
    step = modulus // target
    fits = np.all(digits % step == 0, axis=1)
    lifted = _encode((digits // step) * (H.modulus // target), H.modulus)
    lifted = kernels.as_code_array(lifted, n, H.modulus)
    return fits & _lookup(H.codes, lifted)
