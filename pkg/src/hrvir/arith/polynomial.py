"""Sparse multivariate polynomials over the rationals.

Monomials are packed into a single Python int: the exponent of the symbol
in slot ``k`` lives in bits ``[16k, 16k+16)``.  Multiplying monomials is
then integer addition, which keeps the inner loop of ``__mul__`` tight.
The top bit of every field is reserved as a guard so that divisibility can
be tested with one subtraction.

Coefficients are ``int`` whenever they are integral and ``Fraction``
otherwise; mixed arithmetic between the two is exact.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .symbols import TABLE, Symbol

BITS = 16
MASK = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1

Coeff = "int | Fraction"

_unpack_cache: Dict[int, Tuple[Tuple[int, int], ...]] = {}


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def as_coeff(value):
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return _norm(value)
    if isinstance(value, Rational):
        return _norm(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return _norm(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


def unpack(m: int) -> Tuple[Tuple[int, int], ...]:
    """Sparse ``((slot, exponent), ...)`` view of a packed monomial."""
    r = _unpack_cache.get(m)
    if r is not None:
        return r
    out = []
    rest = m
    while rest:
        low = (rest & -rest).bit_length() - 1
        slot = low // BITS
        e = (rest >> (slot * BITS)) & MASK
        out.append((slot, e))
        rest ^= e << (slot * BITS)
    r = tuple(out)
    if len(_unpack_cache) < 1_000_000:
        _unpack_cache[m] = r
    return r


def pack(pairs: Iterable[Tuple[int, int]]) -> int:
    m = 0
    for slot, e in pairs:
        if e < 0:
            raise ValueError("negative exponent")
        if e > MAX_EXP:
            raise OverflowError("exponent too large for packed monomial")
        m += e << (slot * BITS)
    return m


def _guard(nslots: int) -> int:
    g = 0
    top = 1 << (BITS - 1)
    for k in range(nslots):
        g |= top << (k * BITS)
    return g


def mono_divides(t: int, m: int) -> bool:
    """True iff monomial ``t`` divides monomial ``m``."""
    if t == 0:
        return True
    n = max(m.bit_length(), t.bit_length()) // BITS + 1
    g = _guard(n)
    return ((m | g) - t) & g == g


def mono_degree(m: int) -> int:
    return sum(e for _, e in unpack(m))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, object]] = None):
        self.terms: Dict[int, object] = {}
        if terms:
            for m, c in terms.items():
                c = as_coeff(c)
                if c:
                    self.terms[m] = c
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, object]) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "Polynomial":
        c = as_coeff(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, sym: Symbol, exp: int = 1) -> "Polynomial":
        return cls._raw({pack([(sym.slot, exp)]): 1})

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Symbol):
            return cls.var(x)
        return cls.const(x)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def slots(self) -> set:
        out = set()
        for m in self.terms:
            for s, _ in unpack(m):
                out.add(s)
        return out

    def symbols(self) -> List[Symbol]:
        return sorted((TABLE.by_slot(s) for s in self.slots()), key=lambda s: s.key)

    def degree(self, sym: Optional[Symbol] = None) -> int:
        """Total degree, or degree in ``sym``; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if sym is None:
            return max(mono_degree(m) for m in self.terms)
        shift = sym.slot * BITS
        return max((m >> shift) & MASK for m in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- ring operations ------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = _poly_or_none(other)
        if other is None:
            return NotImplemented
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = _norm(v + c)
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _poly_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = _poly_or_none(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: Dict[int, object] = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                v = get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = as_coeff(c)
        if not c:
            return Polynomial._raw({})
        return Polynomial._raw({m: _norm(v * c) for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- ordering -------------------------------------------------------
    def _order_key(self, slots_rank: Dict[int, int], width: int):
        def key(m: int):
            vec = [0] * width
            deg = 0
            for s, e in unpack(m):
                vec[slots_rank[s]] = e
                deg += e
            return (deg, tuple(vec))
        return key

    @staticmethod
    def _rank(slots: Iterable[int]) -> Dict[int, int]:
        # larger symbol keys are more significant, so b″ outranks b and β₂ outranks β₁
        syms = sorted((TABLE.by_slot(s) for s in slots), key=lambda s: s.key, reverse=True)
        return {s.slot: i for i, s in enumerate(syms)}

    def sorted_terms(self) -> List[Tuple[int, object]]:
        """Terms in descending graded-lex order."""
        rank = self._rank(self.slots())
        key = self._order_key(rank, len(rank))
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_term(self) -> Tuple[int, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        rank = self._rank(self.slots())
        key = self._order_key(rank, len(rank))
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.leading_term()[1]

    # -- division -------------------------------------------------------
    def divmod(self, divisor: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        """Multivariate division by a single divisor under graded lex.

        The remainder is zero exactly when ``divisor`` divides ``self``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            return self.scale(Fraction(1) / divisor.constant_value()), Polynomial._raw({})
        rank = self._rank(self.slots() | divisor.slots())
        key = self._order_key(rank, len(rank))

        def heap_key(m):
            deg, vec = key(m)
            return (-deg, tuple(-e for e in vec))

        lt, lc = max(divisor.terms.items(), key=lambda mc: key(mc[0]))
        rest = [(m, c) for m, c in divisor.terms.items() if m != lt]
        rem = dict(self.terms)
        heap = [(heap_key(m), m) for m in rem]
        heapq.heapify(heap)
        quot: Dict[int, object] = {}
        out_rem: Dict[int, object] = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = rem.pop(m, None)
            if c is None:
                continue
            if mono_divides(lt, m):
                qm = m - lt
                if type(c) is int and type(lc) is int and c % lc == 0:
                    qc = c // lc
                else:
                    qc = _norm(Fraction(c) / lc)
                quot[qm] = _norm(quot.get(qm, 0) + qc)
                for dm, dc in rest:
                    t = qm + dm
                    v = rem.get(t)
                    if v is None:
                        rem[t] = _norm(-qc * dc)
                        heapq.heappush(heap, (heap_key(t), t))
                    else:
                        v = _norm(v - qc * dc)
                        if v:
                            rem[t] = v
                        else:
                            del rem[t]
            else:
                out_rem[m] = c
        return (Polynomial._raw({m: c for m, c in quot.items() if c}),
                Polynomial._raw(out_rem))

    def exquo(self, divisor: "Polynomial") -> "Polynomial":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    # -- coefficient views ----------------------------------------------
    def coefficients_in(self, sym: Symbol) -> Dict[int, "Polynomial"]:
        """``{k: coefficient of sym**k}`` with coefficients free of ``sym``."""
        shift = sym.slot * BITS
        out: Dict[int, Dict[int, object]] = {}
        for m, c in self.terms.items():
            k = (m >> shift) & MASK
            out.setdefault(k, {})[m - (k << shift)] = c
        return {k: Polynomial._raw(v) for k, v in out.items()}

    def coefficients_over(self, syms: Iterable[Symbol]) -> Dict[Tuple[int, ...], "Polynomial"]:
        """Coefficients with respect to the monomials in ``syms``."""
        syms = list(syms)
        shifts = [s.slot * BITS for s in syms]
        out: Dict[Tuple[int, ...], Dict[int, object]] = {}
        for m, c in self.terms.items():
            exps = tuple((m >> sh) & MASK for sh in shifts)
            rest = m
            for e, sh in zip(exps, shifts):
                rest -= e << sh
            out.setdefault(exps, {})[rest] = c
        return {k: Polynomial._raw(v) for k, v in out.items()}

    def content(self):
        """Positive rational gcd of the coefficients (0 for the zero polynomial)."""
        from math import gcd as igcd
        num = 0
        den = 1
        for c in self.terms.values():
            f = Fraction(c)
            num = igcd(num, f.numerator)
            den = den * f.denominator // igcd(den, f.denominator)
        return Fraction(num, den) if num else 0

    def primitive(self) -> "Polynomial":
        c = self.content()
        return self.scale(Fraction(1) / c) if c else self

    # -- substitution ---------------------------------------------------
    def subs(self, bindings: Mapping[Symbol, object]) -> "Polynomial":
        """Simultaneous substitution of polynomial values for symbols."""
        if not bindings:
            return self
        bound = {s.slot: Polynomial.coerce(v) for s, v in bindings.items()}
        powers: Dict[Tuple[int, int], Polynomial] = {}
        acc: Dict[int, object] = {}
        for m, c in self.terms.items():
            free = m
            factor = None
            for s, e in unpack(m):
                if s in bound:
                    free -= e << (s * BITS)
                    pw = powers.get((s, e))
                    if pw is None:
                        pw = bound[s] ** e
                        powers[(s, e)] = pw
                    factor = pw if factor is None else factor * pw
            if factor is None:
                acc[m] = acc.get(m, 0) + c
            else:
                for m2, c2 in factor.terms.items():
                    k = m2 + free
                    acc[k] = acc.get(k, 0) + c2 * c
        return Polynomial._raw({m: _norm(c) for m, c in acc.items() if c})

    def evaluate(self, values: Mapping[Symbol, object]):
        """Exact rational value; every symbol present must be bound."""
        vals = {s.slot: as_coeff(v) for s, v in values.items()}
        total = 0
        for m, c in self.terms.items():
            t = c
            for s, e in unpack(m):
                if s not in vals:
                    raise KeyError(f"unbound symbol {TABLE.by_slot(s).display}")
                t = t * vals[s] ** e
            total += t
        return _norm(Fraction(total)) if not isinstance(total, int) else total

    def diff(self, sym: Symbol) -> "Polynomial":
        shift = sym.slot * BITS
        out = {}
        for m, c in self.terms.items():
            k = (m >> shift) & MASK
            if k:
                out[m - (1 << shift)] = _norm(c * k)
        return Polynomial._raw(out)

    # -- text -----------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            factors = []
            for s, e in sorted(unpack(m), key=lambda se: TABLE.by_slot(se[0]).key, reverse=True):
                name = TABLE.by_slot(s).display
                factors.append(name if e == 1 else f"{name}^{e}")
            if m == 0 or a != 1:
                factors.insert(0, str(a))
            body = "·".join(factors)
            if i == 0:
                parts.append(("−" if neg else "") + body)
            else:
                parts.append(("−" if neg else "+") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    def __reduce__(self):
        items = []
        for m, c in self.terms.items():
            mono = tuple((TABLE.by_slot(s), e) for s, e in unpack(m))
            items.append((mono, c))
        return (_rebuild, (items,))


def _rebuild(items) -> Polynomial:
    return Polynomial._raw({pack((sym.slot, e) for sym, e in mono): c for mono, c in items})


def _poly_or_none(x) -> Optional[Polynomial]:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Polynomial.const(x)
    if isinstance(x, Symbol):
        return Polynomial.var(x)
    return None


def iter_monomial(m: int) -> Iterator[Tuple[Symbol, int]]:
    for s, e in unpack(m):
        yield TABLE.by_slot(s), e
