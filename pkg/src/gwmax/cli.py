"""``gwmax`` command line: compute | snf | bench | monomials | classify."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import List, Optional

from . import __version__
from .bench import DEFAULT_BENCH_CAP, run_bench, write_csv
from .errors import (
    CapExceededError,
    GwmaxError,
    InvalidParameterError,
    NotAdmissibleError,
    NotDecomposableError,
    ParseError,
    RankDeficientError,
    SubmatrixTimeoutError,
)
from .gmax import DEFAULT_ORACLE_CAP, gmax_oracle, gmax_smith, gmax_submatrix
from .polynomial import (
    DEFAULT_MONOMIAL_CAP,
    Polynomial,
    check_admissible,
    classify_invertible,
    enumerate_monomials,
    parse,
    parse_matrix,
)
from .qz_group import DEFAULT_GROUP_CAP, parse_element
from .snf import smith_normal_form, verify

EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_TIMEOUT = 4


@dataclass
class RunReport:
    input: str
    algorithm: str
    generators: list
    order: int
    invariant_factors: Optional[List[int]] = None
    elements: Optional[list] = None
    timing_ms: float = 0.0
    submatrices_visited: Optional[int] = None
    early_exit: Optional[bool] = None
    weights: Optional[List[str]] = None
    warnings: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "input": self.input,
            "algorithm": self.algorithm,
            "generators": [g.to_strings() for g in self.generators],
            "invariant_factors": self.invariant_factors,
            "order": self.order,
            "timing_ms": round(self.timing_ms, 3),
        }
        if self.elements is not None:
            out["elements"] = [g.to_strings() for g in self.elements]
        if self.submatrices_visited is not None:
            out["submatrices_visited"] = self.submatrices_visited
            out["early_exit"] = self.early_exit
        if self.weights is not None:
            out["weights"] = self.weights
        if self.warnings:
            out["warnings"] = self.warnings
        return out

    def to_text(self) -> str:
        lines = [f"input: {self.input}", f"algorithm: {self.algorithm}"]
        if self.weights is not None:
            lines.append("weights: (" + ", ".join(self.weights) + ")")
        lines.append(f"order: {self.order}")
        if self.invariant_factors is not None:
            lines.append(
                "invariant factors: " + (" ".join(map(str, self.invariant_factors)) or "(none)")
            )
        lines.append("generators: " + (", ".join(map(str, self.generators)) or "(none)"))
        if self.elements is not None:
            lines.append("elements: " + ", ".join(map(str, self.elements)))
        if self.submatrices_visited is not None:
            lines.append(f"submatrices visited: {self.submatrices_visited}")
            lines.append(f"early exit: {str(self.early_exit).lower()}")
        lines.extend(f"warning: {w}" for w in self.warnings)
        lines.append(f"time: {self.timing_ms:.3f} ms")
        return "\n".join(lines)


def _fail(message: str, code: int) -> int:
    print(f"gwmax: error: {message}", file=sys.stderr)
    return code


def _load_input(args) -> tuple:
    if args.matrix:
        text = sys.stdin.read() if args.matrix == "-" else Path(args.matrix).read_text()
        rows = parse_matrix(text)
        return Polynomial.from_matrix(rows), f"matrix {args.matrix}"
    if args.polynomial is None:
        raise ParseError("give a polynomial or --matrix FILE")
    P = parse(args.polynomial)
    return P, args.polynomial


def cmd_compute(args) -> int:
    P, descriptor = _load_input(args)
    report = check_admissible(P)
    if not report.passed and not args.force:
        failed = [f"{k}: {report.details.get(k, 'fail')}" for k, v in report.conditions.items() if v == "fail"]
        return _fail("not admissible (use --force to override): " + "; ".join(failed), EXIT_INPUT)
    rows = [list(mono.exponents) for mono in P.monomials]

    t0 = time.perf_counter()
    if args.algorithm == "smith":
        result = gmax_smith(rows, enumerate_group=args.enumerate, cap=args.cap_group)
    elif args.algorithm == "submatrix":
        result = gmax_submatrix(rows, cap=args.cap_group, timeout=args.timeout, q=report.weights)
    else:
        result = gmax_oracle(rows, cap=args.cap_oracle)
    elapsed = (time.perf_counter() - t0) * 1000

    run = RunReport(
        input=descriptor,
        algorithm=result.algorithm,
        generators=list(result.generators),
        order=result.order,
        invariant_factors=None if result.invariant_factors is None else list(result.invariant_factors),
        elements=list(result.elements) if (result.group is not None and (args.enumerate or args.algorithm != "smith")) else None,
        timing_ms=elapsed,
        submatrices_visited=result.submatrices_visited,
        early_exit=result.early_exit,
        weights=None if report.weights is None else [str(w) for w in report.weights.q],
        warnings=list(report.warnings),
    )
    print(json.dumps(run.to_json(), indent=2) if args.json else run.to_text())
    return 0


def _format_matrix(name: str, M) -> str:
    width = max((len(str(x)) for r in M for x in r), default=1)
    body = "\n".join("  [" + " ".join(str(x).rjust(width) for x in r) + "]" for r in M)
    return f"{name} =\n{body}"


def cmd_snf(args) -> int:
    text = sys.stdin.read() if args.matrix == "-" else Path(args.matrix).read_text()
    rows = parse_matrix(text, nonnegative=False)
    D = smith_normal_form(rows)
    ok = verify(rows, D) if args.verify else None
    if args.json:
        out = {
            "S": [list(r) for r in D.S],
            "P": [list(r) for r in D.P],
            "Q": [list(r) for r in D.Q],
            "invariant_factors": list(D.invariant_factors),
        }
        if ok is not None:
            out["verified"] = ok
        print(json.dumps(out, indent=2))
    else:
        print(_format_matrix("S", D.S))
        print(_format_matrix("P", D.P))
        print(_format_matrix("Q", D.Q))
        print("invariant factors: " + " ".join(map(str, D.invariant_factors)))
        if ok is not None:
            print("verify: " + ("pass" if ok else "FAIL"))
    return 0 if ok in (None, True) else 1


def cmd_bench(args) -> int:
    rows = run_bench(args.n, timeout=args.timeout, cap=args.cap_group)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


def _parse_weights(items: List[str]) -> List[Fraction]:
    out = []
    for item in items:
        for part in item.replace(",", " ").split():
            part = part.strip("()")
            if part:
                try:
                    out.append(Fraction(part))
                except ValueError:
                    raise ParseError(f"bad weight {part!r}") from None
    return out


def cmd_monomials(args) -> int:
    q = _parse_weights(args.weights)
    vectors = enumerate_monomials(q, max_count=args.cap_monomials)
    for v in vectors:
        print("(" + ", ".join(map(str, v)) + ")")
    print(f"count: {len(vectors)}")
    if args.formula:
        if len(set(q)) == 1 and q[0].numerator == 1:
            a, n = q[0].denominator, len(q)
            expected = comb(a + n - 1, a)
            status = "match" if expected == len(vectors) else "MISMATCH"
            print(f"formula C({a + n - 1}, {a}) = {expected}: {status}")
            if expected != len(vectors):
                return 1
        else:
            print("formula: only defined for weights (1/a, ..., 1/a)")
    return 0


def cmd_classify(args) -> int:
    P = parse(args.polynomial)
    if P.m != P.n:
        return _fail(
            f"noninvertible polynomial: {P.m} monomials, {P.n} variables (m != n)", EXIT_INPUT
        )
    dec = classify_invertible([list(mono.exponents) for mono in P.monomials])
    for block in dec.blocks:
        names = ", ".join(P.variables[v] for v in block.variables)
        exps = ", ".join(map(str, block.exponents))
        print(f"{block.kind}: variables ({names}) exponents ({exps})")
    print("decomposition: " + dec.describe(P.variables))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gwmax",
        description="Maximal diagonal symmetry groups of quasihomogeneous polynomials.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute G_W^max for a polynomial or matrix")
    p.add_argument("polynomial", nargs="?", help='e.g. "x^3 + y^3 + x^2*y"')
    p.add_argument("--matrix", metavar="FILE", help="exponent matrix file ('-' for stdin)")
    p.add_argument("--algorithm", choices=["smith", "submatrix", "oracle"], default="smith")
    p.add_argument("--enumerate", action="store_true", help="list every group element")
    p.add_argument("--json", action="store_true")
    p.add_argument("--force", action="store_true", help="skip the admissibility gate")
    p.add_argument("--timeout", type=float, default=None, help="seconds (submatrix only)")
    p.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP)
    p.add_argument("--cap-oracle", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    p.add_argument("matrix", help="matrix file ('-' for stdin)")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("bench", help="time both algorithms on the W_n family, CSV out")
    p.add_argument("--n", type=int, nargs="+", default=[4, 6, 8, 10, 12])
    p.add_argument("--timeout", type=float, default=30.0, help="seconds per submatrix run")
    p.add_argument("--cap-group", type=int, default=DEFAULT_BENCH_CAP)
    p.add_argument("--output", "-o", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("monomials", help="all monomials of weight 1 for given weights")
    p.add_argument("weights", nargs="+", help="e.g. 1/3 1/3")
    p.add_argument("--formula", action="store_true", help="compare with C(a+n-1, a)")
    p.add_argument("--cap-monomials", type=int, default=DEFAULT_MONOMIAL_CAP)
    p.set_defaults(func=cmd_monomials)

    p = sub.add_parser("classify", help="atomic-type decomposition of an invertible polynomial")
    p.add_argument("polynomial")
    p.set_defaults(func=cmd_classify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        return _fail(f"{exc}; raise the limit with {exc.flag}", EXIT_CAP)
    except SubmatrixTimeoutError as exc:
        return _fail(f"{exc}; raise --timeout", EXIT_TIMEOUT)
    except (
        ParseError,
        InvalidParameterError,
        NotAdmissibleError,
        NotDecomposableError,
        RankDeficientError,
    ) as exc:
        return _fail(str(exc), EXIT_INPUT)
    except GwmaxError as exc:
        return _fail(str(exc), 1)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
