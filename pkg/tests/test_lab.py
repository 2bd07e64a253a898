"""Identity-lab replays checked against sympy re-derivations and frozen values."""
from fractions import Fraction

import pytest
import sympy as sp

from hrvir.arith import Scalar, parse_scalar, symbol
from hrvir.layered import NUBAR
from hrvir.lab import pipeline as P
from hrvir.lab import threeterm as TT
from hrvir.lab import transcriptions as T
from hrvir.lab.derive import MU, derive_a_relation, specialize
from hrvir.lab.relations import compare, proportionality

from . import oracles as O

B, BP, BPP, D = symbol("b"), symbol("b′"), symbol("b″"), symbol("d")
F = Fraction


def to_sympy(poly, pairs):
    """Polynomial → sympy expression over the given (hrvir symbol, sympy symbol) pairs."""
    syms = [h for h, _ in pairs]
    out = 0
    for exps, c in poly.coefficients_over(syms).items():
        k = F(c.constant_value())
        term = sp.Rational(k.numerator, k.denominator)
        for (_, s), e in zip(pairs, exps):
            term *= s ** e
        out += term
    return sp.expand(out)


DET_PAIRS = [(NUBAR, O.n), (MU, O.mu), (D, O.d), (B, O.b), (BP, O.bp)]
P_PAIRS = [(NUBAR, O.n), (B, O.b), (BPP, O.bpp), (D, O.d)]


# --- the three-term system and its determinant ---------------------------------------------

def test_printed_relation_is_derived():
    rel, _ = derive_a_relation()
    status, _, _ = compare(rel, T.get("a-relation"))
    assert status == "equal"


@pytest.mark.parametrize("which", "abc")
def test_specializations_match_printed_rows(which):
    rel, _ = derive_a_relation()
    assert proportionality(specialize(rel, which), T.get(f"three-term-{which}")) is not None


def test_third_row_minus_reading_is_rejected():
    rel, _ = derive_a_relation()
    minus = parse_scalar(T.TEXT["three-term-c"].replace(" + ((d+2*μ)", " - ((d+2*μ)"))
    assert proportionality(specialize(rel, "c"), minus) is None


def test_determinant_matches_sympy_and_printed_form():
    ours = to_sympy(TT.determinant_D(), DET_PAIRS)
    rows = O.three_term_rows()
    theirs = sp.expand(rows.det(method="berkowitz"))
    # the derived rows differ from the printed ones by nonzero row factors
    ratio = sp.cancel(theirs / ours)
    assert ratio.free_symbols <= {O.mu, O.d} and ratio != 0
    assert sp.expand(ours - sp.expand(O.PRINTED_D)) == 0


def test_numeric_determinant_frozen():
    point = {NUBAR: 1, MU: 2, D: 5, B: 3, BP: 7}
    assert TT.numeric_determinant(point) == -29107200
    assert sp.expand(O.PRINTED_D).subs({O.n: 1, O.mu: 2, O.d: 5, O.b: 3, O.bp: 7}) == -29107200


@pytest.mark.parametrize("b,bp", [("b", "b"), ("b", "b-1"), ("1", "-1"), ("0", "1"), ("2", "0")])
def test_listed_pairs_annihilate_D(b, bp):
    D_ = Scalar(TT.determinant_D())
    assert D_.substitute({B: parse_scalar(b), BP: parse_scalar(bp)}).is_zero()


def test_D_nonzero_off_the_list():
    D_ = TT.determinant_D()
    assert D_.evaluate({B: 0, BP: 2, NUBAR: 1, MU: 1, D: 3}) == 288


def test_no_rational_pair_outside_the_list():
    zs = TT.determinant_zeros()
    assert sorted(zs.points) == [(0, 1), (1, -1), (2, 0)]


def test_ansatz_branches():
    rows = TT.normalized_rows()
    for bp, a_val in (("b", "ν̄+b*d"), ("b-1", "1")):
        for row in rows:
            res = Scalar.coerce(0)
            for k, c in zip((-1, 0, 1), row):
                val = parse_scalar(a_val).substitute({NUBAR: Scalar.var(NUBAR) + Scalar.var(MU) * k})
                res = res + c * val
            assert res.substitute({BP: parse_scalar(bp)}).is_zero()


# --- the elimination to p ---------------------------------------------------------------

def test_p_matches_sympy_elimination():
    ours = to_sympy(P.elimination().p.as_polynomial(), P_PAIRS)
    assert sp.expand(ours - O.p_symbolic()) == 0


def test_printed_gamma_leaves_a_residual():
    residual = dict(P.elimination("printed").identities)["c_{ν−3} cancels in v"]
    assert not residual.is_zero()
    assert dict(P.elimination().identities)["c_{ν−3} cancels in v"].is_zero()


def test_stage_identities_hold():
    s, t = P.normalized_recurrences()
    trace = P.elimination()
    for name, r in P.stage_relations(trace, s, t, *P.multipliers()):
        assert r.is_zero(), name


# frozen from the sympy route: p at (b, b″, d, ν̄)
FROZEN_P = [
    ((0, 2, 3, F(5, 7)), F(-10549440, 2401)),
    ((F(1, 2), F(5, 3), 4, F(2, 11)), F(-14712015500, 10673289)),
    ((-2, F(1, 3), 7, 3), F(-6335522816, 2187)),
]


@pytest.mark.parametrize("point,value", FROZEN_P)
def test_p_frozen_values(point, value):
    b, bpp, d, nb = point
    assert P.elimination().p.evaluate({B: b, BPP: bpp, D: d, NUBAR: nb}) == value
    out = P.numeric_oracle(b, bpp, d, nb)
    assert out["final"].get(0) == value
    assert not out["null"]  # p ≠ 0 forces every c to vanish
    assert O.eliminate_numeric((b, bpp, d), nb).rank() == 5


def test_p_zero_point_leaves_a_free_solution():
    out = P.numeric_oracle(F(1, 2), F(1, 2), 5, F(3, 4))
    assert out["final"].get(0, 0) == 0 and out["null"]


def test_listed_factors_divide_p():
    q = P.p_quotient()
    assert q.degree(NUBAR) == 2


def test_leading_coefficient_is_four_times_printed():
    lead = Scalar(P.quotient_coefficients()[2])
    assert lead == T.get("p0") * 4


def test_zero_set_of_the_quotient():
    assert sorted(P.p_zeros().points) == [(-1, 1), (F(-1, 2), F(3, 2)), (1, -1), (1, 0)]
    # the unlisted pair is a genuine zero in the sympy route too
    q, r = sp.div(O.p_symbolic(), sp.expand(-O.d * (O.d + 1) * (O.bpp - O.b) * (O.bpp - O.b - 1)
                                            * (O.n + O.b) * (O.n + O.d - 1 + O.bpp)), O.n)
    assert r == 0
    assert sp.expand(q.subs({O.b: sp.Rational(-1, 2), O.bpp: sp.Rational(3, 2)})) == 0


def test_b_double_prime_equal_b_kills_p_and_b_plus_two_does_not():
    p = P.elimination().p
    assert p.substitute({BPP: Scalar.var(B)}).is_zero()
    shifted = p.substitute({BPP: Scalar.var(B) + 2})
    assert shifted.evaluate({B: F(1, 3), D: 5, NUBAR: F(2, 7)}) != 0


# --- the b′ = b variant ---------------------------------------------------------------------

def test_variant_p_frozen():
    p = P.variant_p(F(1, 3), F(2, 5), 5)
    poly = p.as_polynomial() if p.is_polynomial() else p.num
    assert poly.degree(NUBAR) == 26
    assert p.evaluate({NUBAR: 1}) == F(9399405809024, 307546875)


def test_variant_p_vanishes_at_special_points():
    # the nonvanishing holds as a polynomial identity but fails at some specializations
    assert P.variant_p(0, 2, 4).is_zero()
