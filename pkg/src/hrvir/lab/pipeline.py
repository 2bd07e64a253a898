"""Elimination of the two leakage recurrences down to ``p(ν̄)``, and its analysis."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from ..arith import Polynomial, Scalar, parse_scalar, poly_divides, symbol
from ..layered import NUBAR
from . import transcriptions as T
from .derive import normalized_row, recurrences
from .relations import (EliminationTrace, RecurrenceSystem, eliminate, eliminate_generic,
                        family_member, nubar_shift, shift)
from .solve import ZeroSet, common_rational_zeros

B, BPP, D = symbol("b"), symbol("b″"), symbol("d")

# the multiplier that makes c_{ν−3} cancel; the printed one has −d where +d is needed
CORRECTED_GAMMA = "ν̄-2+d+b″"


@lru_cache(maxsize=None)
def normalized_recurrences() -> Tuple[RecurrenceSystem, RecurrenceSystem]:
    """Derived ``s`` and ``t`` rows rescaled to the printed normalization."""
    _, _, s_raw, t_raw = recurrences("plain")
    s, _ = normalized_row(s_raw, T.get("s-row"))
    t, _ = normalized_row(t_raw, T.get("t-row"))
    return RecurrenceSystem.from_relation("s", s), RecurrenceSystem.from_relation("t", t)


def multipliers(gamma: str = "corrected") -> Tuple[Tuple[Scalar, Scalar], Tuple[Scalar, Scalar]]:
    g = T.get("v-gamma") if gamma == "printed" else parse_scalar(CORRECTED_GAMMA)
    return (T.get("u-alpha"), T.get("u-beta")), (g, T.get("v-delta"))


@lru_cache(maxsize=None)
def elimination(gamma: str = "corrected") -> EliminationTrace:
    s, t = normalized_recurrences()
    um, vm = multipliers(gamma)
    return eliminate(s, t, um, vm)


def stage_relations(trace: EliminationTrace, s: RecurrenceSystem, t: RecurrenceSystem,
                    um, vm) -> List[Tuple[str, Scalar]]:
    """Residuals of each stage rebuilt as a combination of shifted relations.

    Every entry should be zero: e.g. ``α·S − β·T − Σ u_i c_{ν−i}``.
    """
    (alpha, beta), (gamma, delta) = um, vm
    c = lambda i: Scalar.var(family_member("c", 1, -i))
    S, Tt = s.relation(0), t.relation(0)
    U = alpha * S - beta * Tt
    V = gamma * U + delta * s.relation(-1)
    v = lambda i: trace[f"v{i}"]
    W = v(2) * S - s[2] * V
    P = trace["w1"] * shift(V, 1) - nubar_shift(v(2), 1) * W
    return [
        ("u", U - sum((trace[f"u{i}"] * c(i) for i in (1, 2, 3)), Scalar.coerce(0))),
        ("v", V - v(1) * c(1) - v(2) * c(2)),
        ("w", W - trace["w0"] * c(0) - trace["w1"] * c(1)),
        ("p", P - trace.p * c(0)),
    ]


@lru_cache(maxsize=None)
def p_quotient() -> Polynomial:
    """``p`` divided by the listed linear and constant factors."""
    p = elimination().p
    if not p.is_polynomial():
        raise AssertionError("p is not a polynomial")
    ok, q = poly_divides(T.get("p-factors").num, p.as_polynomial())
    if not ok:
        raise AssertionError("the listed factors do not divide p")
    return q


def quotient_coefficients() -> Dict[int, Polynomial]:
    return {k[0]: v for k, v in p_quotient().coefficients_over([NUBAR]).items()}


def p_zeros() -> ZeroSet:
    """Rational ``(b, b″)`` outside the listed factors where ``p`` vanishes identically in ``ν̄, d``."""
    polys = list(p_quotient().coefficients_over([NUBAR, D]).values())
    return common_rational_zeros(polys, B, BPP)


# --- numeric oracle ---------------------------------------------------------------------

def _row_values(rel: Scalar, at: Dict, nubar: Fraction, k: int, width: Sequence[int]) -> Dict[int, Fraction]:
    """Coefficient vector (keyed by offset) of ``rel`` moved to ``ν+k`` at a numeric point."""
    coeffs, _ = rel.linear_parts()
    out = {j: Fraction(0) for j in width}
    for u, cf in coeffs.items():
        j = u.index[1][0] + k
        out[j] += cf.evaluate({**at, NUBAR: nubar + k})
    return out


def _combine(*pairs) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for k, vec in pairs:
        for j, x in vec.items():
            out[j] = out.get(j, Fraction(0)) + k * x
    return out


def _nullspace(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(rows[0])
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][col] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def numeric_oracle(b, bpp, d, nubar) -> Dict[str, object]:
    """Redo the elimination on numbers, straight from the printed rows.

    Five relations (``s`` at ``ν+1, ν, ν−1`` and ``t`` at ``ν+1, ν``) in
    ``c_{ν+1} … c_{ν−3}`` are evaluated at the point and combined with
    the evaluated multipliers, reading every intermediate coefficient off
    the numeric vectors.  The result must be ``p(point)·c_ν``.  The
    null space of the five relations is returned too: when ``p ≠ 0`` at
    the point, every solution has ``c_ν = 0``.
    """
    at = {B: Fraction(b), BPP: Fraction(bpp), D: Fraction(d)}
    n0 = Fraction(nubar)
    width = range(-3, 2)
    S, Tt = T.get("s-row"), T.get("t-row")
    (alpha, beta), (gamma, delta) = multipliers()
    ev = lambda x, k: x.evaluate({**at, NUBAR: n0 + k})
    rows = {("s", k): _row_values(S, at, n0, k, width) for k in (1, 0, -1)}
    rows.update({("t", k): _row_values(Tt, at, n0, k, width) for k in (1, 0)})
    U = {k: _combine((ev(alpha, k), rows["s", k]), (-ev(beta, k), rows["t", k])) for k in (1, 0)}
    V = {k: _combine((ev(gamma, k), U[k]), (ev(delta, k), rows["s", k - 1])) for k in (1, 0)}
    W = _combine((V[0][-2], rows["s", 0]), (-rows["s", 0][-2], V[0]))
    final = _combine((W[-1], V[1]), (-V[1][-1], W))
    matrix = [[rows[key][j] for j in sorted(width, reverse=True)] for key in sorted(rows)]
    return {
        "final": final,
        "p": elimination().p.evaluate({**at, NUBAR: n0}),
        "null": _nullspace(matrix),
        "columns": sorted(width, reverse=True),
    }


# --- the variant with L_d x_ν = (ν̄+bd) y_ν -------------------------------------------------

def variant_p(b, bpp, d) -> Scalar:
    """``p(ν̄)`` of the variant system with ``b, b″, d`` fixed to numbers before eliminating."""
    s, t, _, _ = recurrences("scaled")
    at = {B: Scalar.coerce(Fraction(b)), BPP: Scalar.coerce(Fraction(bpp)), D: Scalar.coerce(Fraction(d))}
    sn = RecurrenceSystem("s", [c.substitute(at) for c in s.coeffs]).primitive()
    tn = RecurrenceSystem("t", [c.substitute(at) for c in t.coeffs]).primitive()
    return eliminate_generic(sn, tn).p
