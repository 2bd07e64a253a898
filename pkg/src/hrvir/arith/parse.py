"""Infix parser for scalar expressions.

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-" | "−") term)*
    term   := unary (("*" | "·" | "/") unary)*
    unary  := ("-" | "−" | "+") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := INT | NAME ("[" index "]")? | "(" expr ")"
    index  := ints (";" ints)*          e.g. c[1;0]
    ints   := INT ("," INT)*

Multiplication is always explicit, so ``bd`` is a parse error rather than a
silent product.  ASCII spellings are accepted for the Greek names used
throughout the package (``mu``, ``mu'``, ``nubar``, ``b''``, ``beta2``...).
"""
from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from ..errors import ParseError
from .scalar import Scalar
from .symbols import BASIS_VALUE, PARAMETER, Symbol, basis_symbol, symbol, unknown

_PRIMES = {"'": "′", "''": "″", "′": "′", "″": "″", "′′": "″"}

ALIASES: Dict[str, str] = {
    "mu": "μ",
    "nu": "ν",
    "nubar": "ν̄",
    "lambda": "λ",
    "lam": "λ",
}

GENERIC_NAMES = frozenset({"μ", "μ′", "μ″", "ν", "λ"})

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<int>\d+)"
    r"|(?P<name>[^\W\d_][^\W_]*\u0304?(?:''|'|′′|′|″)?)"
    r"|(?P<op>\*\*|[-+*/^()\[\],;·−])"
    r")"
)


def canonical_name(raw: str) -> str:
    """Apply ASCII aliases and prime normalization to an identifier."""
    base, prime = raw, ""
    for p in ("''", "′′", "'", "′", "″"):
        if raw.endswith(p):
            base, prime = raw[: -len(p)], _PRIMES[p]
            break
    m = re.fullmatch(r"beta(\d+)", base)
    if m:
        base = basis_symbol(int(m.group(1))).name
    base = ALIASES.get(base, base)
    return base + prime


def resolve(name: str) -> Symbol:
    """Map a canonical identifier to its symbol."""
    if name.startswith("β") or name in GENERIC_NAMES:
        return symbol(name, BASIS_VALUE)
    return symbol(name, PARAMETER)


def _is_known(name: str, extra: Optional[Dict[str, Symbol]]) -> bool:
    if extra and name in extra:
        return True
    if len(name) == 1 or name.startswith("β") or name in GENERIC_NAMES:
        return True
    # single letter followed by primes or a combining macron
    stem = name.rstrip("′″̄")
    return len(stem) == 1


class _Parser:
    def __init__(self, text: str, names: Optional[Dict[str, Symbol]]):
        self.text = text
        self.names = names
        self.toks: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError("unexpected character", text, pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self, *values):
        kind, val, pos = self.peek()
        if kind == "op" and (not values or val in values):
            self.i += 1
            return val
        return None

    def expect(self, value):
        if self.take(value) is None:
            raise ParseError(f"expected {value!r}", self.text, self.peek()[2])

    def parse(self) -> Scalar:
        if not self.toks:
            raise ParseError("empty expression", self.text, 0)
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", self.text, pos)
        return out

    def expr(self) -> Scalar:
        acc = self.term()
        while True:
            op = self.take("+", "-", "−")
            if op is None:
                return acc
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs

    def term(self) -> Scalar:
        acc = self.unary()
        while True:
            op = self.take("*", "·", "/")
            if op is None:
                return acc
            pos = self.peek()[2]
            rhs = self.unary()
            if op == "/":
                if rhs.is_zero():
                    raise ParseError("division by zero", self.text, pos)
                acc = acc / rhs
            else:
                acc = acc * rhs

    def unary(self) -> Scalar:
        op = self.take("-", "−", "+")
        if op is not None:
            v = self.unary()
            return v if op == "+" else -v
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.take("^", "**") is not None:
            kind, val, pos = self.peek()
            neg = self.take("-", "−") is not None
            kind, val, pos = self.peek()
            if kind != "int":
                raise ParseError("expected an integer exponent", self.text, pos)
            self.i += 1
            n = int(val)
            if neg:
                if base.is_zero():
                    raise ParseError("zero to a negative power", self.text, pos)
                n = -n
            return base ** n
        return base

    def atom(self) -> Scalar:
        kind, val, pos = self.peek()
        if kind == "int":
            self.i += 1
            return Scalar.coerce(int(val))
        if kind == "name":
            self.i += 1
            name = canonical_name(val)
            if self.take("[") is not None:
                index = self.index()
                self.expect("]")
                return Scalar.var(unknown(name, *index))
            if self.names and name in self.names:
                return Scalar.var(self.names[name])
            if not _is_known(name, self.names):
                raise ParseError(f"unknown identifier {val!r} (multiplication must be explicit)",
                                 self.text, pos)
            return Scalar.var(resolve(name))
        if self.take("(") is not None:
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("expected a number, name or '('", self.text, pos)

    def index(self) -> List[Tuple[int, ...]]:
        parts = [self.ints()]
        while self.take(";") is not None:
            parts.append(self.ints())
        return parts

    def ints(self) -> Tuple[int, ...]:
        out = [self.signed_int()]
        while self.take(",") is not None:
            out.append(self.signed_int())
        return tuple(out)

    def signed_int(self) -> int:
        neg = self.take("-", "−") is not None
        kind, val, pos = self.peek()
        if kind != "int":
            raise ParseError("expected an integer", self.text, pos)
        self.i += 1
        return -int(val) if neg else int(val)


def parse_scalar(text: str, names: Optional[Dict[str, Symbol]] = None) -> Scalar:
    """Parse ``text`` into a reduced :class:`Scalar`.

    ``names`` may map extra identifiers (after alias normalization) to
    specific symbols.
    """
    return _Parser(text, names).parse()
