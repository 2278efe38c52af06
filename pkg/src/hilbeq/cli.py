"""Command line front end.

    hilbeq gotzmann --p 2 --n 2
    hilbeq equations --family blmr-t1 --p 2 --n 2 --out t1.json
    hilbeq verify point.csv t1.json

Exit codes: 0 success, 1 an equation does not vanish, 2 bad input,
3 budget exhausted (partial output written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import equations as eqs
from .errors import HilbEqError
from .hilbpoly import HilbertPolynomialContext, gotzmann_decompose, parse_polynomial
from .monom import basis, parse_monomial
from .plucker import DeltaPolynomial
from .verify import (
    RationalSubspace,
    block_ranks,
    delta_from_matrix,
    evaluate,
    in_open_U,
    is_hilb_point,
    persistence_rank,
)

log = logging.getLogger("hilbeq")

EXIT_OK, EXIT_NONZERO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FAMILY_TAGS = {
    "ik": "IK",
    "bayer": "BAYER",
    "blmr-t1": "BLMR_LOCAL_T1",
    "blmr-t2": "BLMR_LOCAL_T2",
    "blmr-full": "BLMR_FULL",
}

DEFAULT_IK_BUDGET = 1000


class UsageError(Exception):
    pass


def threads() -> int:
    raw = os.environ.get("HILBEQ_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"HILBEQ_THREADS must be an integer, got {raw!r}")


def make_ctx(p: str, n: int) -> HilbertPolynomialContext:
    return gotzmann_decompose(parse_polynomial(p), n)


# -- selectors ------------------------------------------------------------


def parse_variable(token: str, n: int) -> int:
    t = token.strip()
    if t.startswith("x"):
        t = t[1:]
    try:
        i = int(t)
    except ValueError:
        raise UsageError(f"bad variable {token!r}; use x0..x{n} or an index")
    if not 0 <= i <= n:
        raise UsageError(f"variable {token!r} outside x0..x{n}")
    return i


def parse_index_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad index list {text!r}")


def parse_ik_row(text: str, n: int) -> tuple[int, tuple[int, ...]]:
    """``x2:1,2,6`` -> (2, (1, 2, 6))."""
    var, sep, J = text.partition(":")
    if not sep:
        raise UsageError(f"IK row {text!r} must look like x2:1,2,6")
    return parse_variable(var, n), parse_index_list(J)


def parse_bayer_tuple(text: str, n: int):
    """``x2:4:1,2,3,4,5,6;x1:2:1,3,4,6;x0:3:2,3,4,5,6``."""
    out = []
    for factor in text.split(";"):
        parts = factor.split(":")
        if len(parts) != 3:
            raise UsageError(f"tuple factor {factor!r} must look like x2:4:1,2,3,4")
        try:
            m = int(parts[1])
        except ValueError:
            raise UsageError(f"bad step in {factor!r}")
        out.append((parse_variable(parts[0], n), m, parse_index_list(parts[2])))
    return tuple(out)


# -- equation files -------------------------------------------------------


def header(es: eqs.EquationSet) -> dict:
    ctx = es.ctx
    return {
        "family": es.family,
        "n": ctx.n,
        "p_coeffs": [str(c) for c in ctx.p_coeffs],
        "r": ctx.r,
        "delta_degree": es.delta_degree,
        "count": len(es),
        "complete": es.complete,
    }


def dumps(es: eqs.EquationSet, fmt: str) -> str:
    head = header(es)
    if fmt == "json":
        head["polynomials"] = [p.to_json() for p in es]
        return json.dumps(head, indent=1) + "\n"
    lines = [f"# {k}: {json.dumps(v) if isinstance(v, list) else v}" for k, v in head.items()]
    lines += [p.to_text() for p in es]
    return "\n".join(lines) + "\n"


def loads(text: str) -> tuple[dict, list[DeltaPolynomial]]:
    """Parse an equation file in either format; returns (header, polynomials)."""
    stripped = text.strip()
    if not stripped:
        return {}, []
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON equation file: {exc}")
        polys = [DeltaPolynomial.from_json(p) for p in data.pop("polynomials", [])]
        return data, polys
    head: dict = {}
    polys = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            value = value.strip()
            try:
                head[key.strip()] = json.loads(value)
            except json.JSONDecodeError:
                head[key.strip()] = value
            continue
        polys.append(DeltaPolynomial.parse(line))
    return head, polys


def ctx_from_header(head: dict) -> HilbertPolynomialContext | None:
    if "n" not in head or "p_coeffs" not in head:
        return None
    coeffs = head["p_coeffs"]
    if isinstance(coeffs, str):
        coeffs = json.loads(coeffs)
    return gotzmann_decompose([Fraction(c) for c in coeffs], int(head["n"]))


# -- point files ----------------------------------------------------------


def load_point(text: str, ctx: HilbertPolynomialContext) -> RationalSubspace:
    """CSV with a header of degree-r monomial labels, or a monomial list."""
    b = basis(ctx.n, ctx.r)
    labels = b.labels()
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise UsageError("empty point file")
    head = [c.strip() for c in rows[0]]
    if head == labels:
        try:
            mat = [[Fraction(c.strip()) for c in r] for r in rows[1:]]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational in point file: {exc}")
        return RationalSubspace(ctx, mat)
    tokens = [t for r in rows for c in r for t in c.split()]
    try:
        monos = [parse_monomial(t, ctx.n) for t in tokens]
    except ValueError as exc:
        raise UsageError(f"point file is neither a labelled CSV nor a monomial list: {exc}")
    if any(sum(m) != ctx.r for m in monos):
        raise UsageError(f"monomials must have degree r = {ctx.r}")
    return RationalSubspace.from_monomials(ctx, monos)


def dump_point(M: RationalSubspace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(basis(M.ctx.n, M.ctx.r).labels())
    for row in M.matrix:
        w.writerow([str(x) for x in row])
    return buf.getvalue()


# -- commands -------------------------------------------------------------


def cmd_gotzmann(args, out) -> int:
    ctx = make_ctx(args.p, args.n)
    info = ctx.describe()
    for k, v in info.items():
        print(f"{k}: {v}", file=out)
    return EXIT_OK


def build_equations(args) -> eqs.EquationSet:
    ctx = make_ctx(args.p, args.n)
    fam = args.family
    if fam == "ik":
        return _ik(ctx, args)
    if fam == "bayer":
        if args.tuple:
            tuples = [parse_bayer_tuple(t, ctx.n) for t in args.tuple]
            for t in tuples:
                eqs.check_bayer_tuple(ctx, t)
            return eqs.bayer_equations(ctx, tuples, dedup=args.dedup)
        return eqs.bayer_equations(ctx, "all", budget=args.budget, dedup=args.dedup)
    if fam == "blmr-t1":
        return eqs.blmr_t1(ctx, dedup=args.dedup)
    if fam == "blmr-t2":
        return eqs.blmr_t2(ctx, dedup=args.dedup)
    if fam == "blmr-full":
        if args.poly:
            polys = [DeltaPolynomial.parse(p) for p in args.poly]
        else:
            polys = eqs.blmr_t1(ctx).distinct() + eqs.blmr_t2(ctx).distinct()
        return eqs.blmr_full_many(ctx, polys, workers=threads(), dedup=args.dedup)
    raise UsageError(f"unknown family {fam!r}")


def _ik(ctx, args) -> eqs.EquationSet:
    k = ctx.q(ctx.r + 1) + 1
    if args.row:
        sel = [parse_ik_row(r, ctx.n) for r in args.row]
        for _, J in sel:
            if len(J) != ctx.p_r + 1:
                raise UsageError(f"IK row index sets need {ctx.p_r + 1} entries")
        if len(sel) != k:
            raise UsageError(f"IK minors need exactly {k} rows, got {len(sel)}")
        matrix = eqs.ik_matrix(ctx, sel)
        colsets = [parse_index_list(c) for c in args.cols] if args.cols else None
        if colsets is None:
            colsets = combinations(range(1, matrix.ncols + 1), k)
        polys = []
        complete = True
        for count, cols in enumerate(colsets):
            if args.budget is not None and count >= args.budget:
                complete = False
                break
            polys.append(eqs.ik_minors(matrix, range(len(sel)), cols))
        return eqs._equation_set("IK", ctx, polys, complete, dedup=args.dedup)
    budget = args.budget if args.budget is not None else DEFAULT_IK_BUDGET
    return eqs.ik_equations(ctx, budget, dedup=args.dedup)


def cmd_equations(args, out) -> int:
    es = build_equations(args)
    text = dumps(es, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"{es.family}: {len(es)} polynomials -> {args.out}", file=out)
    else:
        out.write(text)
    if not es.complete:
        print("budget exhausted; output is partial", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args, out) -> int:
    with open(args.equations, encoding="utf-8") as fh:
        head, polys = loads(fh.read())
    ctx = ctx_from_header(head)
    if args.p is not None:
        ctx = make_ctx(args.p, args.n)
    if ctx is None:
        if polys:
            raise UsageError("equation file has no n/p_coeffs header; pass --p and --n")
        print("equations: 0 (vacuous pass)", file=out)
        return EXIT_OK
    with open(args.point, encoding="utf-8") as fh:
        M = load_point(fh.read(), ctx)
    rk = persistence_rank(M)
    print(f"persistence_rank: {rk} (q(r+1) = {ctx.q(ctx.r + 1)})", file=out)
    print(f"hilbert_point: {is_hilb_point(M)}", file=out)
    if ctx.d < ctx.n:
        d1, d = block_ranks(M)
        print(f"in_U: {in_open_U(M)}", file=out)
        print(f"rank_D1: {d1}  rank_D: {d}  q'(r+1): {ctx.qprime(ctx.r + 1)}", file=out)
    coords = delta_from_matrix(M)
    zero = 0
    witness = None
    for k, E in enumerate(polys):
        v = evaluate(E, coords)
        if v:
            if witness is None:
                witness = (k, E, v)
        else:
            zero += 1
    print(f"equations: {len(polys)}  vanishing: {zero}  nonzero: {len(polys) - zero}", file=out)
    if witness is not None:
        k, E, v = witness
        print(f"first_nonzero: #{k} {E.to_text()} = {v}", file=out)
        return EXIT_NONZERO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hilbeq", description="Equations of Hilbert schemes in Plücker coordinates.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gotzmann", help="Gotzmann decomposition and derived numbers")
    g.add_argument("--p", required=True, help="Hilbert polynomial, e.g. 2, 3t+1, or coefficients 1,3")
    g.add_argument("--n", required=True, type=int)
    g.set_defaults(func=cmd_gotzmann)

    e = sub.add_parser("equations", help="emit an equation family")
    e.add_argument("--family", required=True, choices=sorted(FAMILY_TAGS))
    e.add_argument("--p", required=True)
    e.add_argument("--n", required=True, type=int)
    e.add_argument("--poly", action="append", help="blmr-full: local equation P (repeatable)")
    e.add_argument("--tuple", action="append", help="bayer: x2:4:1,2,3,4,5,6;x1:2:1,3,4,6;... (repeatable)")
    e.add_argument("--row", action="append", help="ik: row x2:1,2,6 (repeatable)")
    e.add_argument("--cols", action="append", help="ik: column set 1,2,...  (repeatable)")
    e.add_argument("--budget", type=int, help="cap on enumerated selections or tuples")
    e.add_argument("--dedup", action="store_true", help="collapse equal normalized polynomials")
    e.add_argument("--out")
    e.add_argument("--format", choices=("json", "text"), default="json")
    e.set_defaults(func=cmd_equations)

    v = sub.add_parser("verify", help="evaluate an equation file at a point")
    v.add_argument("point")
    v.add_argument("equations")
    v.add_argument("--p")
    v.add_argument("--n", type=int)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if getattr(args, "p", None) is not None and getattr(args, "n", None) is None:
        print("error: --p needs --n", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, HilbEqError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
