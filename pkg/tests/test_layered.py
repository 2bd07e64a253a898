import pytest

from hrvir.algebra import Comm, L
from hrvir.arith import Scalar, parse_scalar, unknown
from hrvir.layered import NUBAR, UndefinedGenerator, extract_relation, module_from_config
from hrvir.lab.derive import A_CONFIG, leak_derivation


@pytest.fixture(scope="module")
def amod():
    return module_from_config(A_CONFIG)


def test_l0_is_diagonal(amod):
    v = amod.vector("x", 0, 0)
    assert amod.act(amod.basis.zero(), v) == v.scale(Scalar.var(NUBAR))


def test_transverse_rule(amod):
    v = amod.act(amod.basis.gen("d"), amod.vector("x", 0, 0))
    assert v == amod.vector("y", 0, 0).scale(Scalar.var(unknown("a", (0, 0))))


def test_commutator_on_x_with_leakage():
    ld = leak_derivation()
    v = ld.mod.apply_operator(ld.L1d, ld.mod.vector("x", 0))
    want = ld.mod.vector("y", 1) + ld.mod.vector("z", 1).scale(parse_scalar("c[1;0]/(d-1)"))
    assert v == want


def test_truncated_layer_is_counted(amod):
    chain = dict(A_CONFIG, transverse_rules=A_CONFIG["transverse_rules"] + [
        {"source": "y", "target": "z", "step": 1, "coeff": "1"}])
    mod = module_from_config(chain)
    stats = {}
    d = mod.basis.gen("d")
    assert mod.apply_operator(L(d) * L(d), mod.vector("x", 0, 0), stats).is_zero()
    assert stats == {"z": 1}


def test_leakage_must_go_forward():
    bad = dict(A_CONFIG, leakage=[{"source": "z", "target": "x", "coeff": "1",
                                   "unknown": ["c", "mu", "nu"]}])
    with pytest.raises(ValueError):
        module_from_config(bad)


def test_mixed_generator_is_undefined(amod):
    B = amod.basis
    with pytest.raises(UndefinedGenerator):
        amod.act(B.gen("μ") + B.gen("d"), amod.vector("x", 0, 0))


def test_identical_sides_give_no_relation(amod):
    B = amod.basis
    e = Comm(L(B.gen("μ")), L(B.gen("d")))
    assert extract_relation(amod, e, e, amod.vector("x", 0, 0)) == []


def test_relations_are_linear_in_unknowns():
    ld = leak_derivation()
    for name in ("Ld", "L0y", "L2d", "L1d"):
        for j in (-1, 0, 1):
            rel = ld.relation(name, j)
            coeffs, const = rel.linear_parts()
            assert const.is_zero() and coeffs
