"""Polynomial algorithms: gcd, divisibility, resultants, rational roots."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from .polynomial import Polynomial, pack, unpack
from .symbols import TABLE, Symbol


def _to_sympy(polys: Sequence[Polynomial]):
    import sympy
    from sympy.polys.domains import QQ

    slots = sorted(set().union(*(p.slots() for p in polys)))
    pos = {s: i for i, s in enumerate(slots)}
    gens = sympy.symbols(f"x0:{max(len(slots), 1)}")
    out = []
    for p in polys:
        d = {}
        for m, c in p.terms.items():
            vec = [0] * max(len(slots), 1)
            for s, e in unpack(m):
                vec[pos[s]] = e
            f = Fraction(c)
            d[tuple(vec)] = QQ(f.numerator, f.denominator)
        out.append(sympy.Poly.from_dict(d, *gens, domain=QQ) if d else sympy.Poly(0, *gens, domain=QQ))
    return out, slots


def _from_sympy(P, slots) -> Polynomial:
    terms = {}
    for vec, c in P.terms():
        m = pack((slots[i], e) for i, e in enumerate(vec) if e and i < len(slots))
        terms[m] = Fraction(int(c.numerator), int(c.denominator))
    return Polynomial(terms)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic (under graded lex) greatest common divisor over the rationals."""
    if p.is_zero():
        return _monic(q) if q else q
    if q.is_zero():
        return _monic(p)
    if p.is_constant() or q.is_constant():
        return Polynomial.const(1)
    (P, Q), slots = _to_sympy([p, q])
    return _monic(_from_sympy(P.gcd(Q), slots))


def cancel(p: Polynomial, q: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Remove the common factor of ``p / q``; ``q`` must be nonzero."""
    if q.is_zero():
        raise ZeroDivisionError("zero denominator")
    if p.is_zero():
        return p, Polynomial.const(1)
    if q.is_constant() or p.is_constant():
        return p, q
    g = poly_gcd(p, q)
    if g.is_constant():
        return p, q
    return p.exquo(g), q.exquo(g)


def _monic(p: Polynomial) -> Polynomial:
    lc = p.leading_coefficient()
    return p if lc == 1 else p.scale(Fraction(1) / Fraction(lc))


def poly_divides(p: Polynomial, q: Polynomial) -> Tuple[bool, Polynomial]:
    """Whether ``p`` divides ``q``; the quotient is returned when it does."""
    if p.is_zero():
        raise ZeroDivisionError("the zero polynomial divides nothing")
    quo, rem = q.divmod(p)
    if rem:
        return False, Polynomial.const(0)
    return True, quo


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free Bareiss elimination over the polynomial ring."""
    n = len(matrix)
    if n == 0:
        return Polynomial.const(1)
    a = [[Polynomial.coerce(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = Polynomial.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Polynomial.const(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exquo(prev) if not prev.is_constant() else num.scale(Fraction(1) / Fraction(prev.constant_value()))
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(p: Polynomial, q: Polynomial, x: Symbol) -> List[List[Polynomial]]:
    """Rows of ``p`` first, highest power of ``x`` in the leftmost column."""
    m, n = p.degree(x), q.degree(x)
    if m <= 0 or n <= 0:
        raise ValueError(f"resultant needs positive degree in {x.display}")
    pc, qc = p.coefficients_in(x), q.coefficients_in(x)
    zero = Polynomial.const(0)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in pc.items():
            row[i + m - k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in qc.items():
            row[i + n - k] = c
        rows.append(row)
    return rows


def resultant(p: Polynomial, q: Polynomial, x: Symbol) -> Polynomial:
    """Determinant of the Sylvester matrix with ``p`` in the top rows."""
    return determinant(sylvester_matrix(p, q, x))


def univariate_symbol(p: Polynomial) -> Symbol:
    syms = p.symbols()
    if len(syms) != 1:
        raise ValueError(f"expected a univariate polynomial, got symbols {[s.display for s in syms]}")
    return syms[0]


def univariate_coeffs(p: Polynomial, x: Symbol) -> List[Fraction]:
    """Dense coefficient list, constant term first."""
    out = [Fraction(0)] * (p.degree(x) + 1)
    for k, c in p.coefficients_in(x).items():
        if not c.is_constant():
            raise ValueError("polynomial is not univariate in the requested symbol")
        out[k] = Fraction(c.constant_value())
    return out


def univariate_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Euclid's algorithm for univariate polynomials; result is monic."""
    while q:
        _, r = p.divmod(q)
        p, q = q, r
    return _monic(p) if p else p


def _divisors(n: int) -> List[int]:
    from sympy import divisors
    return divisors(abs(n))


def rational_roots(p: Polynomial) -> List[Fraction]:
    """All rational roots of a univariate polynomial, ascending, without multiplicity."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    if p.is_constant():
        return []
    x = univariate_symbol(p)
    coeffs = univariate_coeffs(p, x)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    roots = set()
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    ints = ints[shift:]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in roots and _horner(ints, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _horner(coeffs_low_first: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs_low_first):
        acc = acc * x + c
    return acc


def strip_linear_factors(p: Polynomial, roots: Sequence[Fraction]) -> Polynomial:
    """Divide out every power of ``(x - r)`` for the given rational roots."""
    x = univariate_symbol(p)
    for r in roots:
        lin = Polynomial.var(x) - Polynomial.const(r)
        while True:
            ok, quo = poly_divides(lin, p)
            if not ok:
                break
            p = quo
            if p.is_constant():
                return p
    return p
