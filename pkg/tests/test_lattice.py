from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hrvir.errors import ParseError, PreconditionError
from hrvir.lattice import (LatticeBasis, basis_lemma21, basis_lemma23, box, cone_membership,
                           parse_coords)
from hrvir.arith import parse_scalar

B2 = LatticeBasis.standard(2)


def test_deg():
    assert B2.vector(0, 0).deg == 0
    assert B2.vector(2, -3).deg == -1


def test_embed():
    assert B2.vector(1, 0).embed() == parse_scalar("β₁")
    B = LatticeBasis(["1", "d"], [1, parse_scalar("d")])
    assert B.vector(1, 1).embed() == parse_scalar("1+d")
    mu, nu = B2.vector(3, -1), B2.vector(-2, 5)
    assert mu.embed() + nu.embed() == (mu + nu).embed()


def test_lemma21_examples():
    ch = basis_lemma21(2, 1)
    assert ch.matrix == ((2, 1), (3, 2)) and ch.determinant == 1
    assert basis_lemma21(1, 0).matrix == ((1,),)
    assert basis_lemma21(3, 2).determinant == 1
    assert basis_lemma21(B2, 1) == ch


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("k", range(5))
def test_lemma21_unimodular_from_rank_two(n, k):
    ch = basis_lemma21(n, k)
    # independent determinant
    assert sympy.Matrix(ch.matrix).det() == 1 == ch.determinant
    assert all(x >= k for row in ch.matrix for x in row)


@pytest.mark.parametrize("k", range(1, 5))
def test_lemma21_rank_one_has_determinant_k_plus_one(k):
    # the single generator is (k+1)b₁, so the construction is not a basis change in rank 1
    assert basis_lemma21(1, k).determinant == k + 1


def test_lemma21_negative_k():
    with pytest.raises(PreconditionError):
        basis_lemma21(2, -1)


def test_lemma21_cone_scan():
    ch = basis_lemma21(2, 2)
    for c in product(range(4), repeat=2):
        if any(c):
            assert cone_membership(B2.vector(*c), 2, ch)
    # the zero multi-index gives L₀, which is outside the k ≥ 1 cone
    assert not cone_membership(B2.vector(0, 0), 2, ch)


def test_cone_membership_examples():
    assert cone_membership(B2.vector(1, 1), 1)
    assert not cone_membership(B2.vector(1, 0), 1)


def test_lemma23_examples():
    r = basis_lemma23(B2.vector(1, 1))
    assert r.case == 1 and r.change.matrix == ((2, 1), (1, 0)) and r.change.determinant == -1
    r = basis_lemma23(B2.vector(0, 3))
    assert r.case == 2 and r.change.matrix == ((1, 3), (1, 4)) and r.change.determinant == 1
    r = basis_lemma23(B2.vector(-1, -1))
    assert r.flips == (0, 1)
    assert r.normalized.matrix == ((2, 1), (1, 0))


def test_lemma23_needs_rank_two():
    with pytest.raises(PreconditionError):
        basis_lemma23(LatticeBasis.standard(1).vector(3))


@pytest.mark.parametrize("n", (2, 3))
def test_lemma23_unimodular_on_box(n):
    Bn = LatticeBasis.standard(n)
    for c in box(n, 4, exclude_zero=True):
        r = basis_lemma23(Bn.vector(*c))
        assert abs(sympy.Matrix(r.change.matrix).det()) == 1


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=4))
def test_deg_is_additive(cs):
    B = LatticeBasis.standard(len(cs))
    mu = B.vector(*cs)
    nu = B.vector(*reversed(cs))
    assert (mu + nu).deg == mu.deg + nu.deg


def test_parse_coords():
    assert parse_coords("1,−2,3") == (1, -2, 3)
    with pytest.raises(ParseError) as e:
        parse_coords("1,x")
    assert e.value.position == 2
    with pytest.raises(ParseError):
        parse_coords("1,2", rank=3)


def test_vectors_over_different_bases_do_not_mix():
    with pytest.raises((PreconditionError, ValueError)):
        B2.vector(1, 0) + LatticeBasis.standard(3).vector(1, 0, 0)
