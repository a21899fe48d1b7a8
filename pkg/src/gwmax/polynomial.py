"""Polynomials, exponent matrices, weight systems and atomic types."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    InvalidParameterError,
    NotAdmissibleError,
    NotDecomposableError,
    NotQuasihomogeneousError,
    ParseError,
    TooManyMonomialsError,
    WeightsNotUniqueError,
)

DEFAULT_MONOMIAL_CAP = 10**5
NAMED_VARIABLES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Monomial:
    coefficient: Fraction
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("monomial coefficient must be nonzero")
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")
        if not any(self.exponents):
            raise ValueError("constant monomials are not allowed")


@dataclass(frozen=True)
class Polynomial:
    variables: Tuple[str, ...]
    monomials: Tuple[Monomial, ...]

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.monomials)

    @classmethod
    def from_matrix(cls, A, variables: Optional[Sequence[str]] = None) -> Polynomial:
        rows = _rows(A)
        n = len(rows[0]) if rows else 0
        if variables is None:
            variables = [f"x{i + 1}" for i in range(n)]
        monos = tuple(Monomial(Fraction(1), tuple(r)) for r in rows)
        return cls(tuple(variables), monos)

    def __str__(self) -> str:
        parts = []
        for mono in self.monomials:
            factors = []
            for name, e in zip(self.variables, mono.exponents):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            c = mono.coefficient
            sign = "-" if c < 0 else "+"
            c = abs(c)
            text = body if c == 1 else f"{c}*{body}"
            parts.append((sign, text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ivar>x_?\d+)|(?P<var>[a-zA-Z_]\w*)|(?P<op>\*\*|[-+*/^]))"
)


def _tokenize(source: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(source):
        if source[pos:].strip() == "":
            break
        mt = _TOKEN.match(source, pos)
        if mt is None or mt.end() == pos:
            at = pos + len(source[pos:]) - len(source[pos:].lstrip())
            raise ParseError(f"unexpected character {source[at]!r}", at)
        kind = mt.lastgroup
        text = mt.group(kind)
        start = mt.start(kind)
        if kind == "var" and text not in NAMED_VARIABLES:
            raise ParseError(f"unknown variable {text!r}", start)
        if text == "**":
            text = "^"
        tokens.append((kind, text, start))
        pos = mt.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_number(self, what: str) -> int:
        kind, text, pos = self.take()
        if kind != "num":
            raise ParseError(f"expected {what}, found {text or 'end of input'!r}", pos)
        return int(text)

    def polynomial(self):
        terms = []
        sign = 1
        kind, text, pos = self.peek()
        if kind == "op" and text in "+-":
            self.take()
            sign = -1 if text == "-" else 1
        terms.append(self.term(sign))
        while True:
            kind, text, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and text in "+-":
                self.take()
                terms.append(self.term(-1 if text == "-" else 1))
            else:
                raise ParseError(f"expected '+' or '-', found {text!r}", pos)
        return terms

    def term(self, sign: int):
        kind, text, pos = self.peek()
        coeff = Fraction(sign)
        factors: List[Tuple[str, int, int]] = []
        if kind == "num":
            self.take()
            num = int(text)
            den = 1
            k2, t2, p2 = self.peek()
            if k2 == "op" and t2 == "/":
                self.take()
                den = self.expect_number("denominator")
                if den == 0:
                    raise ParseError("zero denominator", p2)
            coeff *= Fraction(num, den)
            k2, t2, p2 = self.peek()
            if not (k2 == "op" and t2 == "*"):
                raise ParseError("constant terms are not allowed", pos)
            self.take()
        factors.append(self.factor())
        while self.peek()[:2] == ("op", "*"):
            self.take()
            factors.append(self.factor())
        return coeff, factors, pos

    def factor(self):
        kind, text, pos = self.take()
        if kind not in ("var", "ivar"):
            raise ParseError(f"expected a variable, found {text or 'end of input'!r}", pos)
        exp = 1
        k2, t2, p2 = self.peek()
        if k2 == "op" and t2 == "^":
            self.take()
            k3, t3, p3 = self.peek()
            if k3 == "op" and t3 == "-":
                raise ParseError("negative exponent", p3)
            exp = self.expect_number("exponent")
        return kind, text, exp, pos


def parse(source: str) -> Polynomial:
    """Parse ``"x^3 + y^3 + x^2*y"`` style input into a :class:`Polynomial`.

    Like terms are merged, zero terms dropped. Named variables (x, y, z, w)
    are ordered by first appearance, indexed ones (``x1`` or ``x_1``) by index.
    """
    terms = _Parser(source).polynomial()

    kinds = {f[0] for _, factors, _ in terms for f in factors}
    if kinds == {"var", "ivar"}:
        pos = next(f[3] for _, fs, _ in terms for f in fs if f[0] == "ivar")
        raise ParseError("cannot mix named (x, y, z, w) and indexed (x1, x2, ...) variables", pos)

    order: Dict[str, object] = {}
    names: Dict[object, str] = {}
    for _, factors, _ in terms:
        for kind, text, _, _ in factors:
            key = int(text.lstrip("x_")) if kind == "ivar" else text
            if key not in order:
                order[key] = len(order)
                names[key] = text
    keys = sorted(order, key=lambda k: k if isinstance(k, int) else order[k])
    index = {k: j for j, k in enumerate(keys)}
    variables = tuple(names[k] for k in keys)

    merged: Dict[Tuple[int, ...], Fraction] = {}
    for coeff, factors, term_pos in terms:
        exps = [0] * len(keys)
        for kind, text, e, _ in factors:
            key = int(text.lstrip("x_")) if kind == "ivar" else text
            exps[index[key]] += e
        if not any(exps):
            raise ParseError("constant terms are not allowed", term_pos)
        t = tuple(exps)
        merged[t] = merged.get(t, Fraction(0)) + coeff

    monos = tuple(Monomial(c, e) for e, c in merged.items() if c != 0)
    if not monos:
        raise ParseError("polynomial is empty after combining like terms")
    for j, name in enumerate(variables):
        if not any(mono.exponents[j] for mono in monos):
            raise ParseError(
                f"variable {name!r} appears only in terms with zero coefficient or exponent"
            )
    return Polynomial(variables, monos)


# -- exponent matrices -------------------------------------------------------


def _rows(A) -> List[List[int]]:
    if isinstance(A, ExponentMatrix):
        return [list(r) for r in A.rows]
    return [[int(x) for x in row] for row in A]


@dataclass(frozen=True)
class ExponentMatrix:
    """An m x n matrix of nonnegative integer exponents, one row per monomial."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise ValueError("exponent matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("exponent matrix rows have different lengths")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def norm(self) -> int:
        return max(max(r) for r in self.rows)

    def to_list(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def rank(self) -> int:
        return linalg.rank(self.rows)


def exponent_matrix(P: Polynomial) -> ExponentMatrix:
    """Rows are monomial exponent vectors in parse order; coefficients are dropped."""
    A = ExponentMatrix(tuple(mono.exponents for mono in P.monomials))
    if A.m < A.n:
        raise NotAdmissibleError(f"fewer monomials ({A.m}) than variables ({A.n})")
    if A.rank() < A.n:
        raise NotAdmissibleError(f"exponent matrix has rank {A.rank()} < {A.n}; weights are not unique")
    return A


def parse_matrix(text: str, nonnegative: bool = True) -> List[List[int]]:
    """Read the ``m n`` header format followed by ``m`` rows of ``n`` integers."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError("first line must be 'm n'")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError("first line must be 'm n'") from None
    if m < 1 or n < 1:
        raise ParseError("matrix dimensions must be positive")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} rows, found {len(body)}")
    rows = []
    for k, line in enumerate(body, start=2):
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError(f"non-integer entry on line {k}") from None
        if len(row) != n:
            raise ParseError(f"line {k} has {len(row)} entries, expected {n}")
        if nonnegative and any(x < 0 for x in row):
            raise ParseError(f"negative entry on line {k}")
        rows.append(row)
    return rows


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    m = len(rows)
    n = len(rows[0]) if m else 0
    return "\n".join([f"{m} {n}"] + [" ".join(str(x) for x in r) for r in rows]) + "\n"


# -- weights -----------------------------------------------------------------


@dataclass(frozen=True)
class WeightSystem:
    q: Tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.q)

    def warnings(self) -> List[str]:
        return [
            f"weight q{i + 1} = {w} exceeds 1/2"
            for i, w in enumerate(self.q)
            if w > Fraction(1, 2)
        ]

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.q) + ")"


def weights(A) -> WeightSystem:
    """Solve ``A q = 1`` exactly for the quasihomogeneous weights."""
    rows = _rows(A)
    n = len(rows[0])
    R, pivots = linalg.rref([r + [1] for r in rows])
    if n in pivots:
        raise NotQuasihomogeneousError("no weights satisfy A q = 1")
    if len(pivots) < n:
        raise WeightsNotUniqueError(f"exponent matrix has rank {len(pivots)} < {n}")
    q = tuple(R[i][n] for i in range(n))
    bad = [i for i, w in enumerate(q) if w <= 0]
    if bad:
        raise NotAdmissibleError(
            "weights must be positive; got " + ", ".join(f"q{i + 1} = {q[i]}" for i in bad)
        )
    return WeightSystem(q)


def is_cross_term(row: Sequence[int]) -> bool:
    return sorted(row)[-2:] == [1, 1] and sum(row) == 2


@dataclass
class AdmissibilityReport:
    conditions: Dict[str, str]
    details: Dict[str, str] = field(default_factory=dict)
    weights: Optional[WeightSystem] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v == "pass" for k, v in self.conditions.items() if k != "nondegenerate")

    def __str__(self) -> str:
        lines = []
        for key, status in self.conditions.items():
            extra = self.details.get(key)
            lines.append(f"{key}: {status}" + (f" ({extra})" if extra else ""))
        lines.extend(f"warning: {w}" for w in self.warnings)
        return "\n".join(lines)


def check_admissible(P: Polynomial) -> AdmissibilityReport:
    """Check every admissibility condition except nondegeneracy."""
    rows = [list(mono.exponents) for mono in P.monomials]
    m, n = len(rows), P.n
    conditions: Dict[str, str] = {}
    details: Dict[str, str] = {}
    report = AdmissibilityReport(conditions, details)

    conditions["monomials_ge_variables"] = "pass" if m >= n else "fail"
    if m < n:
        details["monomials_ge_variables"] = f"{m} monomials < {n} variables"

    try:
        report.weights = weights(rows)
        conditions["unique_positive_weights"] = "pass"
        report.warnings.extend(report.weights.warnings())
    except NotAdmissibleError as exc:
        conditions["unique_positive_weights"] = "fail"
        details["unique_positive_weights"] = str(exc)

    crosses = [i for i, r in enumerate(rows) if is_cross_term(r)]
    conditions["no_cross_terms"] = "fail" if crosses else "pass"
    if crosses:
        details["no_cross_terms"] = "cross-term monomial(s) in row(s) " + ", ".join(
            str(i + 1) for i in crosses
        )

    conditions["nondegenerate"] = "not checked"
    return report


def norm_bound(q: WeightSystem) -> int:
    """Upper bound on the largest exponent of any monomial of weight 1."""
    return floor(max(1 / w for w in q.q))


# -- monomial enumeration ----------------------------------------------------


def enumerate_monomials(
    q, max_count: int = DEFAULT_MONOMIAL_CAP
) -> List[Tuple[int, ...]]:
    """All nonnegative exponent vectors ``a`` with ``a . q == 1``, in lexicographic order."""
    qs = [Fraction(w) for w in (q.q if isinstance(q, WeightSystem) else q)]
    if not qs:
        raise InvalidParameterError("need at least one weight")
    if any(w <= 0 for w in qs):
        raise InvalidParameterError("weights must be positive")
    n = len(qs)
    out: List[Tuple[int, ...]] = []
    prefix = [0] * n

    def rec(j: int, remaining: Fraction) -> None:
        w = qs[j]
        if j == n - 1:
            k = remaining / w
            if k.denominator == 1:
                prefix[j] = int(k)
                out.append(tuple(prefix))
                if len(out) > max_count:
                    raise TooManyMonomialsError(
                        f"more than {max_count} monomials (found {len(out)} so far)",
                        found=len(out),
                        cap=max_count,
                    )
            return
        for k in range(int(remaining / w) + 1):
            prefix[j] = k
            rec(j + 1, remaining - k * w)
        prefix[j] = 0

    rec(0, Fraction(1))
    return out


# -- atomic types --------------------------------------------------------------

FERMAT, LOOP, CHAIN = "Fermat", "Loop", "Chain"


@dataclass(frozen=True)
class AtomicBlock:
    """One atomic summand.

    ``variables`` are listed in atomic order: for a chain ``x1^a1*x2 + ... +
    xk^ak`` the head of each monomial in turn; a loop starts at its smallest
    variable index.
    """

    variables: Tuple[int, ...]
    kind: str
    exponents: Tuple[int, ...]

    def rows(self, n: int) -> List[List[int]]:
        k = len(self.variables)
        out = []
        for t, (v, a) in enumerate(zip(self.variables, self.exponents)):
            row = [0] * n
            row[v] = a
            if self.kind == LOOP:
                row[self.variables[(t + 1) % k]] = 1
            elif self.kind == CHAIN and t + 1 < k:
                row[self.variables[t + 1]] = 1
            out.append(row)
        return out


@dataclass(frozen=True)
class AtomicDecomposition:
    n: int
    blocks: Tuple[AtomicBlock, ...]

    def to_matrix(self) -> List[List[int]]:
        return [row for b in self.blocks for row in b.rows(self.n)]

    def describe(self, variables: Optional[Sequence[str]] = None) -> str:
        names = variables or [f"x{i + 1}" for i in range(self.n)]
        parts = []
        for b in self.blocks:
            vs = ",".join(names[v] for v in b.variables)
            es = ",".join(str(a) for a in b.exponents)
            parts.append(f"{b.kind}[{vs}]({es})")
        return " + ".join(parts)


def classify_invertible(A) -> AtomicDecomposition:
    """Split a square exponent matrix into Fermat, loop and chain blocks."""
    rows = _rows(A)
    m = len(rows)
    n = len(rows[0]) if rows else 0
    if m != n:
        raise NotDecomposableError(f"not square: {m} monomials, {n} variables")
    head_row: Dict[int, int] = {}
    succ: Dict[int, Optional[int]] = {}
    exps: Dict[int, int] = {}
    for r, row in enumerate(rows):
        nz = [(j, a) for j, a in enumerate(row) if a]
        if len(nz) == 1:
            (h, a), s = nz[0], None
        elif len(nz) == 2:
            (i, u), (j, v) = nz
            if u == 1 and v == 1:
                raise NotDecomposableError(f"row {r + 1} is a cross term; exponents must be >= 2")
            if v == 1:
                h, a, s = i, u, j
            elif u == 1:
                h, a, s = j, v, i
            else:
                raise NotDecomposableError(f"row {r + 1} has no exponent-1 link")
        else:
            raise NotDecomposableError(f"row {r + 1} has {len(nz)} nonzero entries")
        if a < 2:
            raise NotDecomposableError(f"row {r + 1}: exponent {a} < 2")
        if h in head_row:
            raise NotDecomposableError(
                f"variable {h + 1} leads rows {head_row[h] + 1} and {r + 1}"
            )
        head_row[h], succ[h], exps[h] = r, s, a
    if len(head_row) != n:
        missing = sorted(set(range(n)) - set(head_row))
        raise NotDecomposableError(f"variable {missing[0] + 1} leads no monomial")
    preds: Dict[int, int] = {}
    for h, s in succ.items():
        if s is not None:
            if s in preds:
                raise NotDecomposableError(f"variable {s + 1} is linked from two monomials")
            preds[s] = h

    blocks = []
    seen = set()
    for start in range(n):
        if start in preds:
            continue
        path = [start]
        while succ[path[-1]] is not None:
            path.append(succ[path[-1]])
        seen.update(path)
        kind = FERMAT if len(path) == 1 else CHAIN
        blocks.append(AtomicBlock(tuple(path), kind, tuple(exps[v] for v in path)))
    for start in range(n):
        if start in seen:
            continue
        path = [start]
        while succ[path[-1]] != start:
            path.append(succ[path[-1]])
        seen.update(path)
        blocks.append(AtomicBlock(tuple(path), LOOP, tuple(exps[v] for v in path)))
    blocks.sort(key=lambda b: min(b.variables))
    if linalg.det(rows) == 0:
        raise NotDecomposableError("exponent matrix is singular")
    return AtomicDecomposition(n, tuple(blocks))


# -- the W_n family ------------------------------------------------------------


def build_wn(n: int) -> Polynomial:
    """x1^(2n) + ... + xn^(2n) + x1^n*x2^n + ... + xn^n*x1^n for even n >= 4."""
    if not isinstance(n, int) or n < 4 or n % 2:
        raise InvalidParameterError(f"W_n needs an even n >= 4, got {n}")
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = 2 * n
        rows.append(row)
    for i in range(n):
        row = [0] * n
        row[i] = n
        row[(i + 1) % n] = n
        rows.append(row)
    return Polynomial.from_matrix(rows)
