"""Command-line front end: ``hrvir check`` runs checks, ``hrvir compute`` is a calculator.

Exit status: 0 when every selected check passes, 1 when any check fails
or is undecidable, 2 on usage errors (unknown id, bad operand) and on an
unwritable report path.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .algebra import LieElement, bracket
from .arith import Scalar, parse_scalar
from .errors import ParseError, PreconditionError
from .families import INFINITY, FamilySpec, ModuleVector, act
from .lattice import LatticeBasis, LatticeVector, basis_lemma21, basis_lemma23, parse_coords
from .registry import CheckConfig
from .report import report_document

DEFAULT_OUTPUT = "hrvir-report.json"


class UsageError(Exception):
    pass


# --- operands --------------------------------------------------------------------------

def parse_generator(text: str, rank: Optional[int] = None) -> tuple:
    """``[SCALAR*]L COORDS`` or ``[SCALAR*]c``; returns ``(coefficient, coords or None)``."""
    src = text.strip()
    coeff = Scalar.coerce(1)
    offset = len(text) - len(text.lstrip())
    star = src.rfind("*")
    if star >= 0:
        try:
            coeff = parse_scalar(src[:star])
        except ParseError as exc:
            raise ParseError(f"bad coefficient: {exc}", text, offset + exc.position) from None
        offset += star + 1
        src = src[star + 1:]
        offset += len(src) - len(src.lstrip())
        src = src.strip()
    if src == "c":
        return coeff, None
    if not src.startswith("L"):
        raise ParseError("expected 'L COORDS' or 'c'", text, offset)
    body = src[1:]
    try:
        return coeff, parse_coords(body, rank)
    except ParseError as exc:
        raise ParseError(str(exc).split(" at position")[0], text, offset + 1 + exc.position) from None


def _vector(text: str, rank: Optional[int] = None) -> LatticeVector:
    coords = parse_coords(text, rank)
    return LatticeBasis.standard(len(coords)).vector(*coords)


def _element(text: str, rank: Optional[int]) -> tuple:
    coeff, coords = parse_generator(text, rank)
    return coeff, coords


def _param(text: str):
    if text.strip().lower() in ("inf", "∞", "infinity"):
        return INFINITY
    return parse_scalar(text)


# --- compute ---------------------------------------------------------------------------

def compute_bracket(x: str, y: str, rank: Optional[int] = None) -> str:
    (kx, cx), (ky, cy) = _element(x, rank), _element(y, rank)
    dims = {len(c) for c in (cx, cy) if c is not None}
    if len(dims) > 1:
        raise UsageError("operands have different ranks")
    n = dims.pop() if dims else (rank or 2)
    B = LatticeBasis.standard(n)
    ex = LieElement.c(B, kx) if cx is None else LieElement.L(B.vector(*cx), kx)
    ey = LieElement.c(B, ky) if cy is None else LieElement.L(B.vector(*cy), ky)
    return bracket(ex, ey).to_text()


def compute_act(family: str, mu: str, nu: str, a: str = "0", b: str = "0", aprime: str = "0") -> str:
    m = _vector(mu)
    n = _vector(nu, m.basis.rank)
    if family == "Aab":
        spec = FamilySpec.Aab(parse_scalar(a), parse_scalar(b))
    elif family == "Aprime":
        spec = FamilySpec.Aprime(_param(aprime))
    else:
        spec = FamilySpec.Bprime(_param(aprime))
    return act(spec, m, ModuleVector.basis_vector(n)).to_text()


def compute_lemma21(rank: int, k: int) -> str:
    ch = basis_lemma21(rank, k)
    return f"rows {ch.rows_text()}; det={ch.determinant}"


def compute_lemma23(mu: str) -> str:
    res = basis_lemma23(_vector(mu))
    flips = ",".join(str(i + 1) for i in res.flips) or "none"
    return (f"case {res.case}; flips {flips}; rows {res.change.rows_text()}; "
            f"det={res.change.determinant}")


def compute_deg(mu: str) -> str:
    return str(_vector(mu).deg)


# --- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hrvir", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run verification checks")
    c.add_argument("ids", nargs="*", default=["all"], help='check ids, or "all"')
    c.add_argument("--rank", type=int, default=2)
    c.add_argument("--box", type=int, default=3, help="box radius for exhaustive scans")
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--output", default=DEFAULT_OUTPUT, help="report path ('-' for none)")
    c.add_argument("--timing", action="store_true", help="keep elapsed times in the report file")
    c.add_argument("--list", action="store_true", help="list check ids and exit")
    c.add_argument("-q", "--quiet", action="store_true")

    k = sub.add_parser("compute", help="exact calculator")
    ks = k.add_subparsers(dest="op", required=True)
    b = ks.add_parser("bracket", help="[x, y] for x, y of the form '[k*]L COORDS' or '[k*]c'")
    b.add_argument("x")
    b.add_argument("y")
    b.add_argument("--rank", type=int)
    a = ks.add_parser("act", help="L_μ x_ν in a module of the intermediate series")
    a.add_argument("--family", choices=("Aab", "Aprime", "Bprime"), default="Aab")
    a.add_argument("--a", default="0")
    a.add_argument("--b", default="0")
    a.add_argument("--aprime", default="0", help="a′, or 'inf'")
    a.add_argument("--mu", required=True)
    a.add_argument("--nu", required=True)
    l1 = ks.add_parser("basis-lemma21", help="generators with every coordinate ≥ k")
    l1.add_argument("--rank", type=int, required=True)
    l1.add_argument("-k", type=int, required=True)
    l3 = ks.add_parser("basis-lemma23", help="basis adapted to a lattice point")
    l3.add_argument("--mu", required=True)
    d = ks.add_parser("deg", help="degree (coordinate sum) of a lattice point")
    d.add_argument("--mu", required=True)
    return p


def _run_check(args, out, err) -> int:
    from .suite import check_ids, run_suite

    if args.list:
        for i in check_ids():
            print(i, file=out)
        return 0
    ids = None if args.ids == ["all"] else args.ids
    if ids is not None and "all" in ids:
        raise UsageError('"all" cannot be combined with other ids')
    known = set(check_ids())
    missing = [i for i in (ids or []) if i not in known]
    if missing:
        raise UsageError(f"unknown check id: {', '.join(missing)}")
    config = CheckConfig(rank=args.rank, radius=args.box, samples=args.samples, seed=args.seed)
    target = None if args.output == "-" else Path(args.output)
    if target is not None and not target.parent.is_dir():
        raise UsageError(f"cannot write report: directory {str(target.parent)!r} does not exist")
    reports = run_suite(ids, config)
    doc = report_document(reports, config.to_dict(), include_timing=args.timing)
    if target is not None:
        try:
            target.write_text(doc, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write report: {exc}") from None
    if not args.quiet:
        for r in sorted(reports, key=lambda r: r.id):
            print(r.line(), file=out)
            if r.witness:
                print(f"    witness: {r.witness}", file=out)
    counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "undecidable")}
    print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['undecidable']} undecidable"
          + (f"; report written to {target}" if target else ""), file=out)
    return 0 if counts["pass"] == len(reports) else 1


def _run_compute(args) -> str:
    if args.op == "bracket":
        return compute_bracket(args.x, args.y, args.rank)
    if args.op == "act":
        return compute_act(args.family, args.mu, args.nu, args.a, args.b, args.aprime)
    if args.op == "basis-lemma21":
        return compute_lemma21(args.rank, args.k)
    if args.op == "basis-lemma23":
        return compute_lemma23(args.mu)
    return compute_deg(args.mu)


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        if args.command == "check":
            return _run_check(args, out, err)
        print(_run_compute(args), file=out)
        return 0
    except (UsageError, ParseError, PreconditionError, ValueError) as exc:
        print(f"hrvir: error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
