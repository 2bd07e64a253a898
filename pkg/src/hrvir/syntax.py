"""Text syntax for lattice vectors and operator expressions.

Lattice expressions are integer combinations of generator labels::

    mu+mu'      2*mu-d      1+d      -mu      0      1,0,0

A bare integer ``k`` means ``k`` times the generator labelled ``1``
(or, in rank one, ``k`` times the only generator).  A comma-separated list
gives raw coordinates.

Operator expressions use a prefix form::

    op := "(" "L" LATTICE ")" | "(" "c" ")"
        | "(" "+" op+ ")" | "(" "prod" op+ ")"
        | "(" "comm" op op ")" | "(" "scale" SCALAR op ")"

``SCALAR`` is one token (no spaces) or a double-quoted scalar expression.
"""
from __future__ import annotations

import re
from typing import List, Tuple

from .algebra import CGen, Comm, LGen, OperatorExpr, Prod, Scale, Sum
from .arith.parse import canonical_name, parse_scalar
from .errors import ParseError
from .lattice import LatticeBasis, LatticeVector, parse_coords

_TERM = re.compile(r"\s*([+\-−]?)\s*(\d*)\s*\*?\s*([^\W\d_][^\W_]*̄?(?:''|'|′′|′|″)?)?\s*")


def parse_lattice(text: str, basis: LatticeBasis) -> LatticeVector:
    src = text.strip()
    if "," in src:
        return basis.vector(parse_coords(src, basis.rank))
    labels = {canonical_name(l): i for i, l in enumerate(basis.labels)}
    unit = labels.get("1")
    if unit is None and basis.rank == 1:
        unit = 0
    coords = [0] * basis.rank
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        sign, num, name = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or (not num and not name):
            raise ParseError("expected a lattice term", text, pos)
        if not first and not sign:
            raise ParseError("expected '+' or '-'", text, pos)
        k = int(num) if num else 1
        if sign in ("-", "−"):
            k = -k
        if name is None:
            if unit is None:
                raise ParseError("bare integer but the basis has no unit generator", text, pos)
            idx = unit
        else:
            cname = canonical_name(name)
            if cname not in labels:
                raise ParseError(f"unknown generator {name!r}", text, m.start(3))
            idx = labels[cname]
        coords[idx] += k
        pos = m.end()
        first = False
    if first:
        raise ParseError("empty lattice expression", text, 0)
    return basis.vector(coords)


def _tokens(text: str) -> List[Tuple[str, int]]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            out.append((ch, i))
            i += 1
        elif ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", text, i)
            out.append((text[i:j + 1], i))
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append((text[i:j], i))
            i = j
    return out


def parse_operator(text: str, basis: LatticeBasis) -> OperatorExpr:
    toks = _tokens(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else ("", len(text))

    def take():
        t = peek()
        if not t[0]:
            raise ParseError("unexpected end of input", text, len(text))
        pos[0] += 1
        return t

    def node() -> OperatorExpr:
        tok, at = take()
        if tok != "(":
            raise ParseError(f"expected '(' but found {tok!r}", text, at)
        head, at = take()
        if head == "L":
            arg, a_at = take()
            try:
                mu = parse_lattice(arg, basis)
            except ParseError as e:
                raise ParseError(str(e).split(" at position")[0], text, a_at + e.position) from None
            out: OperatorExpr = LGen(mu)
        elif head == "c":
            out = CGen()
        elif head in ("+", "prod"):
            items = []
            while peek()[0] == "(":
                items.append(node())
            if not items:
                raise ParseError(f"'{head}' needs at least one operand", text, peek()[1])
            out = Sum(items) if head == "+" else Prod(items)
        elif head == "comm":
            a = node()
            b = node()
            out = Comm(a, b)
        elif head == "scale":
            arg, a_at = take()
            src = arg[1:-1] if arg.startswith('"') else arg
            try:
                k = parse_scalar(src)
            except ParseError as e:
                raise ParseError(str(e).split(" at position")[0], text,
                                 a_at + (1 if arg.startswith('"') else 0) + e.position) from None
            out = Scale(k, node())
        else:
            raise ParseError(f"unknown operator {head!r}", text, at)
        tok, at = take()
        if tok != ")":
            raise ParseError(f"expected ')' but found {tok!r}", text, at)
        return out

    result = node()
    if peek()[0]:
        raise ParseError("trailing input", text, peek()[1])
    return result
