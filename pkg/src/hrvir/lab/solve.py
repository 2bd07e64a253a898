"""Rational common zeros of a polynomial system in two parameters."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

from ..arith import Polynomial, poly_gcd, rational_roots, resultant
from ..arith.algorithms import strip_linear_factors, univariate_gcd
from ..arith.symbols import Symbol


@dataclass
class ZeroSet:
    points: List[Tuple[Fraction, Fraction]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    complete: bool = True  # False when something fell outside the method


def _univariate_gcd_all(polys: Sequence[Polynomial]) -> Polynomial:
    g = Polynomial.const(0)
    for p in polys:
        g = p if g.is_zero() else univariate_gcd(g, p)
        if g.is_constant():
            break
    return g


def common_rational_zeros(polys: Sequence[Polynomial], x: Symbol, y: Symbol) -> ZeroSet:
    """All rational ``(x, y)`` where every polynomial vanishes.

    Pairwise resultants eliminate ``y``; the rational roots of their gcd
    are candidate ``x`` values.  For each candidate the system is
    specialized, the gcd in ``y`` taken, and its rational roots kept.
    Every candidate is substituted back into the whole system.  Factors
    without rational roots are reported, never guessed.
    """
    out = ZeroSet()
    polys = [p for p in polys if not p.is_zero()]
    for p in polys:
        extra = set(p.symbols()) - {x, y}
        if extra:
            raise ValueError(f"unexpected symbols {[s.display for s in extra]}")
    if not polys:
        out.notes.append("empty system: every point is a zero")
        out.complete = False
        return out
    if any(p.is_constant() for p in polys):
        out.notes.append("the system contains a nonzero constant")
        return out
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
    if not g.is_constant():
        out.notes.append(f"common factor {g.to_text()} (a curve of zeros)")
        out.complete = False
        return out

    univ: List[Polynomial] = [p for p in polys if p.degree(y) == 0]
    with_y = [p for p in polys if p.degree(y) > 0]
    for p, q in combinations(with_y, 2):
        r = resultant(p, q, y)
        if not r.is_zero():
            univ.append(r)
        if len(univ) >= 4:
            h = _univariate_gcd_all(univ)
            if h.degree(x) <= 6:
                break
    if not univ:
        out.notes.append("all resultants vanish; the method does not decide this system")
        out.complete = False
        return out
    h = _univariate_gcd_all(univ)
    if h.is_constant():
        return out
    xs = rational_roots(h)
    rest = strip_linear_factors(h, xs)
    if not rest.is_constant():
        out.notes.append(f"irrational candidates for {x.display}: roots of {rest.to_text()}")
        out.complete = False
    for x0 in xs:
        spec = [p.subs({x: x0}) for p in polys]
        spec = [p for p in spec if not p.is_zero()]
        if not spec:
            out.notes.append(f"{x.display} = {x0}: every {y.display} is a zero")
            out.complete = False
            continue
        gy = _univariate_gcd_all(spec)
        if gy.is_constant():
            continue
        ys = rational_roots(gy)
        rest_y = strip_linear_factors(gy, ys)
        if not rest_y.is_constant():
            out.notes.append(f"{x.display} = {x0}: irrational {y.display} from {rest_y.to_text()}")
            out.complete = False
        for y0 in ys:
            if all(p.subs({x: x0, y: y0}).is_zero() for p in polys):
                out.points.append((x0, y0))
    out.points.sort()
    return out
