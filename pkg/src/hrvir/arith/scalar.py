"""Reduced rational functions over the symbol table."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .algorithms import cancel
from .polynomial import Polynomial, as_coeff
from .symbols import INDEXED_UNKNOWN, Symbol

_ONE = Polynomial.const(1)


class Scalar:
    """``num / den`` in lowest terms.

    ``den`` is a primitive integer polynomial whose graded-lex leading
    coefficient is positive, which pins down the representation.

    Instances are immutable.  Because the reduced form is unique, equal
    scalars have equal ``(num, den)`` pairs; ``__eq__`` still goes through
    cross-multiplication so it stays correct for hand-built instances.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, *, reduced: bool = False):
        num = Polynomial.coerce(num)
        den = _ONE if den is None else Polynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        if not reduced:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (Polynomial, Symbol)):
            return cls(Polynomial.coerce(x), reduced=True)
        return cls(Polynomial.const(as_coeff(x)), reduced=True)

    @classmethod
    def var(cls, sym: Symbol) -> "Scalar":
        return cls(Polynomial.var(sym), reduced=True)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(self.num.constant_value()) / Fraction(self.den.constant_value())

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} has a nontrivial denominator")
        return self.num

    def symbols(self):
        seen = {s.slot: s for s in self.num.symbols()}
        seen.update({s.slot: s for s in self.den.symbols()})
        return sorted(seen.values(), key=lambda s: s.key)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "Scalar":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            if self.den == _ONE:
                return Scalar(self.num + other.num, reduced=True)
            return Scalar(self.num + other.num, self.den)
        if self.den == _ONE:
            return Scalar(self.num * other.den + other.num, other.den, reduced=True)
        if other.den == _ONE:
            return Scalar(other.num * self.den + self.num, self.den, reduced=True)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "Scalar":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return Scalar(reduced=True)
        if self.den == _ONE and other.den == _ONE:
            return Scalar(self.num * other.num, reduced=True)
        n1, d2 = cancel(self.num, other.den)
        n2, d1 = cancel(other.num, self.den)
        num, den = n1 * n2, d1 * d2
        return Scalar(*_monic_den(num, den), reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(*_monic_den(self.den, self.num), reduced=True)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            raise TypeError("integer powers only")
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.num ** n, self.den ** n, reduced=True)

    # -- equality -------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- substitution and evaluation ------------------------------------
    def substitute(self, bindings: Mapping[Symbol, object]) -> "Scalar":
        """Simultaneous substitution; values may be any scalar-like objects."""
        if not bindings:
            return self
        vals = {s: Scalar.coerce(v) for s, v in bindings.items()}
        if all(v.den == _ONE for v in vals.values()):
            polys = {s: v.num for s, v in vals.items()}
            num = self.num.subs(polys)
            den = self.den.subs(polys)
            if den.is_zero():
                raise ZeroDivisionError(f"substitution makes the denominator of {self} vanish")
            return Scalar(num, den)
        n_poly, n_den = _subs_rational(self.num, vals)
        d_poly, d_den = _subs_rational(self.den, vals)
        if d_poly.is_zero():
            raise ZeroDivisionError(f"substitution makes the denominator of {self} vanish")
        return Scalar(n_poly * d_den, d_poly * n_den)

    def evaluate(self, values: Mapping[Symbol, object]) -> Fraction:
        den = self.den.evaluate(values)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return Fraction(self.num.evaluate(values)) / Fraction(den)

    # -- indexed unknowns -----------------------------------------------
    def unknowns(self):
        return [s for s in self.symbols() if s.kind == INDEXED_UNKNOWN]

    def linear_parts(self) -> Tuple[Dict[Symbol, "Scalar"], "Scalar"]:
        """Split into ``sum(coeff[u] * u) + const`` over the indexed unknowns.

        Raises ``ValueError`` if an unknown occurs nonlinearly or in the
        denominator.
        """
        if any(s.kind == INDEXED_UNKNOWN for s in self.den.symbols()):
            raise ValueError("indexed unknown in a denominator")
        unknowns = [s for s in self.num.symbols() if s.kind == INDEXED_UNKNOWN]
        if not unknowns:
            return {}, self
        parts = self.num.coefficients_over(unknowns)
        coeffs: Dict[Symbol, Scalar] = {}
        const = Scalar(reduced=True)
        for exps, poly in parts.items():
            deg = sum(exps)
            if deg == 0:
                const = Scalar(poly, self.den)
            elif deg == 1:
                u = unknowns[exps.index(1)]
                coeffs[u] = Scalar(poly, self.den)
            else:
                raise ValueError("indexed unknowns occur nonlinearly")
        return coeffs, const

    # -- text -----------------------------------------------------------
    def to_text(self) -> str:
        if self.den == _ONE:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()!r})"


def _coerce_or_none(x) -> Optional[Scalar]:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (Polynomial, Symbol, int, Fraction)) and not isinstance(x, bool):
        return Scalar.coerce(x)
    return None


def _monic_den(num: Polynomial, den: Polynomial):
    """Scale so that ``den`` has integer coefficients, content 1 and a positive leading term."""
    f = den.content()
    if den.leading_coefficient() < 0:
        f = -f
    if f != 1:
        inv = Fraction(1) / Fraction(f)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def _normalize(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return num, _ONE
    num, den = cancel(num, den)
    return _monic_den(num, den)


def _subs_rational(p: Polynomial, vals: Mapping[Symbol, Scalar]):
    """Substitute rational values into ``p``; returns ``(poly, common_den)``."""
    present = {s.slot for s in p.symbols()}
    active = {s: v for s, v in vals.items() if s.slot in present}
    if not active:
        return p, _ONE
    polys = {s: v.num for s, v in active.items()}
    result = Polynomial.const(0)
    common = _ONE
    degs = {s: p.degree(s) for s in active}
    for s in active:
        common = common * active[s].den ** degs[s]
    # homogenize: sum c * prod num_i^e_i * den_i^(k_i - e_i)
    from .polynomial import unpack, BITS
    for m, c in p.terms.items():
        term = Polynomial.const(c)
        free = m
        exps = dict(unpack(m))
        for s, v in active.items():
            e = exps.get(s.slot, 0)
            free -= e << (s.slot * BITS)
            if e:
                term = term * polys[s] ** e
            k = degs[s] - e
            if k:
                term = term * v.den ** k
        result = result + term * Polynomial._raw({free: 1})
    return result, common


def S(x) -> Scalar:
    """Shorthand coercion used throughout the package."""
    return Scalar.coerce(x)


def scalars(*xs: Iterable) -> Tuple[Scalar, ...]:
    return tuple(Scalar.coerce(x) for x in xs)
