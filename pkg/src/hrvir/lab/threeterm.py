"""The three-term system in ``a_{ν−μ}, a_ν, a_{ν+μ}`` and its determinant."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from ..arith import Polynomial, Scalar, determinant, parse_scalar, poly_divides, symbol, unknown
from ..layered import NUBAR
from . import transcriptions as T
from .derive import MU, derive_a_relation, specialize
from .relations import proportionality
from .solve import ZeroSet, common_rational_zeros

B, BP, D = symbol("b"), symbol("b′"), symbol("d")
A_UNKNOWNS = [unknown("a", (k, 0)) for k in (-1, 0, 1)]
GENERIC_FACTOR = parse_scalar("(b′-b)*(1+b′-b)*μ^6")


@lru_cache(maxsize=None)
def normalized_rows() -> Tuple[Tuple[Scalar, ...], ...]:
    """Coefficient rows of the three specialized relations, scaled to the printed normalization."""
    rel, _ = derive_a_relation()
    rows = []
    for which in "abc":
        sp = specialize(rel, which)
        k = proportionality(sp, T.get(f"three-term-{which}"))
        if k is None:
            raise AssertionError(f"specialization {which} is not proportional to its printed form")
        coeffs, _ = (sp / k).linear_parts()
        rows.append(tuple(coeffs.get(u, Scalar.coerce(0)) for u in A_UNKNOWNS))
    return tuple(rows)


@lru_cache(maxsize=None)
def determinant_D() -> Polynomial:
    rows = normalized_rows()
    if not all(c.is_polynomial() for r in rows for c in r):
        raise AssertionError("normalized rows are not polynomial")
    return determinant([[c.as_polynomial() for c in r] for r in rows])


def numeric_determinant(point: Dict) -> Fraction:
    """Evaluate every entry first, then expand the 3×3 determinant by cofactors."""
    m = [[c.evaluate(point) for c in r] for r in normalized_rows()]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def reduced_determinant() -> Polynomial:
    """``D`` with the factor ``(b′−b)(1+b′−b)μ⁶`` divided out."""
    ok, q = poly_divides(GENERIC_FACTOR.num, determinant_D())
    if not ok:
        raise AssertionError("the generic factor does not divide the determinant")
    return q


def determinant_zeros() -> ZeroSet:
    """Rational ``(b, b′)`` outside the generic factor where ``D`` vanishes identically."""
    polys = list(reduced_determinant().coefficients_over([NUBAR, MU, D]).values())
    return common_rational_zeros(polys, B, BP)
