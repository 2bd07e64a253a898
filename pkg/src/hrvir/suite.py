"""The full check suite: foundation checks plus the extension replays."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, List, Optional

from .algebra import (Comm, L, LieElement, Scale, bracket, jacobi_residual,
                      nested_bracket_coefficient, pbw_normal_form, product_formula)
from .arith import Polynomial, Scalar, parse_scalar, poly_divides, poly_gcd, resultant, symbol, unknown
from .families import (INFINITY, FamilySpec, is_simple, iso_witness_Aa1_Aa0, rescale_criterion,
                       verify_module_axiom)
from .lattice import LatticeBasis, basis_lemma21, basis_lemma23, box, cone_membership
from .layered import NUBAR, UndefinedGenerator, extract_relation, module_from_config
from .registry import CHECKS, CheckConfig, check, run_check
from .report import Report
from .lab.derive import A_CONFIG, leak_derivation

JACOBI_RADIUS = 5


def _rand_coeff(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([i for i in range(-9, 10) if i]), rng.randint(1, 4))


def _rand_poly(rng: random.Random, syms, degree: int = 3, terms: int = 4) -> Polynomial:
    p = Polynomial.const(0)
    for _ in range(terms):
        m = Polynomial.const(_rand_coeff(rng))
        for _ in range(rng.randint(0, degree)):
            m = m * Polynomial.var(rng.choice(syms))
        p = p + m
    return p


@check("ARITH-KERNEL", "exact rational and polynomial arithmetic")
def check_arith(chk, cfg):
    rng = random.Random(cfg.seed)
    syms = [symbol(n) for n in ("p", "q", "r", "s")]
    for i in range(cfg.samples):
        f, g, h = (_rand_poly(rng, syms) for _ in range(3))
        chk.require_zero(f * (g + h) - f * g - f * h, f"distributivity #{i}")
        if not g.is_zero():
            chk.require_zero(Scalar(f * g) / Scalar(g) - Scalar(f), f"(fg)/g = f #{i}")
        if not f.is_zero() and not g.is_zero():
            k = poly_gcd(f * h, g * h)
            ok1, _ = poly_divides(k, f * h)
            ok2, _ = poly_divides(h, k) if not h.is_zero() else (True, None)
            chk.require(ok1 and ok2, f"gcd structure #{i}", k)
    x, a, b = symbol("x"), symbol("α"), symbol("β")
    X = Polynomial.var(x)
    r = resultant(X - Polynomial.var(a), X - Polynomial.var(b), x)
    chk.require(r == Polynomial.var(a) - Polynomial.var(b), "resultant of x−α and x−β is α−β", r)
    half = parse_scalar("(x^2-1)/(2*x-2)")
    chk.require(half == parse_scalar("(x+1)/2"), "fractions are kept reduced", half)
    chk.note(f"{cfg.samples} random polynomial triples over 4 symbols")


@check("ALG-BRACKET", "bracket values and grading")
def check_bracket(chk, cfg):
    B2 = LatticeBasis.standard(2)
    r = bracket(LieElement.L(B2.vector(1, 0)), LieElement.L(B2.vector(0, 1)))
    chk.require(r == LieElement.L(B2.vector(1, 1), parse_scalar("β₂-β₁")), "[L(1,0),L(0,1)]", r.to_text())
    mu = B2.vector(2, -1)
    chk.require(bracket(LieElement.L(mu), LieElement.L(mu)).is_zero(), "[L_μ,L_μ] = 0", mu.text())
    B1 = LatticeBasis(["1"], [1])
    r = bracket(LieElement.L(B1.vector(2)), LieElement.L(B1.vector(-2)))
    want = LieElement.L(B1.vector(0), -4) + LieElement.c(B1, Fraction(-1, 2))
    chk.require(r == want, "rank one [L_2,L_{−2}] = −4L_0 − c/2", r.to_text())
    rng = random.Random(cfg.seed)
    for _ in range(cfg.samples):
        m = B2.vector(*(rng.randint(-JACOBI_RADIUS, JACOBI_RADIUS) for _ in range(2)))
        n = B2.vector(*(rng.randint(-JACOBI_RADIUS, JACOBI_RADIUS) for _ in range(2)))
        r = bracket(LieElement.L(m), LieElement.L(n))
        chk.require(all(k == m + n for k in r.terms), "grading [Vir_μ,Vir_ν] ⊂ Vir_{μ+ν}", r.to_text())
        chk.require(not r.central or (m + n).is_zero(), "central term only in degree 0", r.to_text())
    g = LatticeBasis.generic_symbols("μ")
    chk.require(nested_bracket_coefficient(g.unit(0), g.unit(0), 1).is_zero(), "[L_μ,L_μ] nested", "")


def _random_element(rng: random.Random, B: LatticeBasis, central: bool = True) -> LieElement:
    x = LieElement(B)
    for _ in range(rng.randint(1, 3)):
        mu = B.vector(*(rng.randint(-JACOBI_RADIUS, JACOBI_RADIUS) for _ in range(B.rank)))
        x = x + LieElement.L(mu, _rand_coeff(rng))
    if central and rng.random() < 0.5:
        x = x + LieElement.c(B, _rand_coeff(rng))
    return x


@check("ALG-JACOBI", "antisymmetry and Jacobi identity")
def check_jacobi(chk, cfg):
    g = LatticeBasis.generic_symbols("μ", "ν", "λ")
    x, y, z = (LieElement.L(g.unit(i)) for i in range(3))
    chk.require(jacobi_residual(x, y, z).is_zero(), "generic L_μ, L_ν, L_λ", jacobi_residual(x, y, z).to_text())
    z2 = LieElement.L(-(g.unit(0) + g.unit(1)))
    r = jacobi_residual(x, y, z2)
    chk.require(r.is_zero(), "L_μ, L_ν, L_{−μ−ν} (central terms live)", r.to_text())
    one = LatticeBasis(["1"], [1])
    r = jacobi_residual(LieElement.L(one.vector(1)), LieElement.L(one.vector(-1)), LieElement.L(one.vector(0)))
    chk.require(r.is_zero(), "rank one L_1, L_{−1}, L_0", r.to_text())
    rng = random.Random(cfg.seed)
    central_hits = 0
    for rank in (2, 3):
        B = LatticeBasis.standard(rank)
        for i in range(cfg.samples):
            x, y = _random_element(rng, B), _random_element(rng, B)
            z = _random_element(rng, B)
            if i % 2 == 0:
                # force a degree-zero pair so the central term fires
                mu = next(iter(x.terms), None)
                nu = next(iter(y.terms), None)
                if mu is not None and nu is not None:
                    z = z + LieElement.L(-(mu + nu))
            if bracket(bracket(x, y), z).central:
                central_hits += 1
            r = jacobi_residual(x, y, z)
            chk.require(r.is_zero(), f"rank {rank} sample {i}", r.to_text())
            a = bracket(x, y) + bracket(y, x)
            chk.require(a.is_zero(), f"antisymmetry rank {rank} sample {i}", a.to_text())
    chk.note(f"{cfg.samples} random triples at ranks 2 and 3, box radius {JACOBI_RADIUS}; "
             f"{central_hits} had a live central term")


@check("ALG-PBW", "normal form in the enveloping algebra")
def check_pbw(chk, cfg):
    g = LatticeBasis(["1", "d"], [1, symbol("d")], generic=True)
    one, d = g.gen("1"), g.gen("d")
    nf = pbw_normal_form(L(d) * L(one))
    want = pbw_normal_form(L(one) * L(d) + Scale(parse_scalar("1-d"), L(one + d)))
    chk.require(nf == want, "L_d·L_1 = L_1·L_d + (1−d)L_{1+d}", nf)
    chk.require(pbw_normal_form(L(one) * L(d)) == pbw_normal_form(L(one) * L(d)), "ordered word fixpoint", "")
    rng = random.Random(cfg.seed)
    B = LatticeBasis(["1"], [1])
    for i in range(cfg.samples // 4 or 1):
        word = [L(B.vector(rng.randint(-3, 3))) for _ in range(rng.randint(2, 4))]
        e = word[0]
        for w in word[1:]:
            e = e * w
        base = pbw_normal_form(e)
        other = pbw_normal_form(e, random.Random(cfg.seed + i + 1))
        chk.require(base == other, f"rewrite-order independence #{i}", other)
    chk.note("random words normal-formed under random rewrite positions")


@check("LAT-BASIS", "basis constructions and the iterated-bracket product")
def check_lattice(chk, cfg):
    bad = []
    for n in range(1, 6):
        for k in range(5):
            ch = basis_lemma21(n, k)
            if ch.determinant != 1:
                bad.append(f"n={n}, k={k}: {ch.determinant}")
            chk.require(all(x >= k for row in ch.matrix for x in row), f"n={n}, k={k} entries ≥ k",
                        ch.rows_text())
    ch = basis_lemma21(2, 2)
    for c in box(2, 3):
        if any(x < 0 for x in c) or not any(c):
            continue
        v = LatticeBasis.standard(2).vector(*c)
        chk.require(cone_membership(v, 2, ch), f"combination {c} in the k=2 cone", c)
    # rank one gives the single generator (k+1)b₁; the construction is meant for n ≥ 2
    chk.require(not bad, "determinant 1 for n = 1..5, k = 0..4", "; ".join(bad))
    chk.note("determinant 1 for every n = 2..5, k = 0..4")
    chk.note("the zero combination is excluded from the cone scan (L₀ is not in the k ≥ 1 cone)")
    count = 0
    for n in (2, 3):
        Bn = LatticeBasis.standard(n)
        for c in box(n, 4, exclude_zero=True):
            res = basis_lemma23(Bn.vector(*c))
            count += 1
            chk.require(res.change.is_unimodular(), f"μ={c} unimodular", res.change.rows_text())
    chk.note(f"{count} points of [−4,4]^n∖{{0}}, n = 2, 3")
    g = LatticeBasis.generic_symbols("μ", "b₁")
    mu, b1 = g.unit(0), g.unit(1)
    for m2 in range(2, 6):
        nested = nested_bracket_coefficient(mu, mu + b1, m2 - 1)
        chk.require_zero(nested - product_formula(mu, b1, m2 - 1), f"product formula m₂={m2}")


@check("MOD-AXIOM", "representation axiom for the module families")
def check_axiom(chk, cfg):
    def absorb(r: Report, label: str):
        if r.status == "fail":
            chk.require(False, label, r.witness)
        elif r.status == "undecidable":
            chk.undecidable(label)
        chk.notes.extend(f"{label}: {n}" for n in r.notes)

    absorb(verify_module_axiom(FamilySpec.Aab(symbol("a"), symbol("b")), "symbolic"), "A_{a,b} generic")
    for spec, label in ((FamilySpec.Aprime(symbol("a′")), "A(a′)"), (FamilySpec.Aprime(INFINITY), "A(∞)"),
                        (FamilySpec.Bprime(symbol("a′")), "B(a′)"), (FamilySpec.Bprime(INFINITY), "B(∞)")):
        absorb(verify_module_axiom(spec, "box", rank=cfg.rank, radius=cfg.radius), label)


@check("MOD-SIMPLE", "simplicity criterion for A_{a,b}")
def check_simple(chk, cfg):
    B = LatticeBasis.standard(2)
    cases = [(FamilySpec.Aab(symbol("a"), symbol("b"), a_in_M=False), True),
             (FamilySpec.Aab(0, 0, a_in_M=B.zero()), False),
             (FamilySpec.Aab(0, 1, a_in_M=B.zero()), False),
             (FamilySpec.Aab(0, 2, a_in_M=B.zero()), True),
             (FamilySpec.Aab(symbol("a"), 0), None)]
    for spec, want in cases:
        got, reason = is_simple(spec)
        chk.require(got is want, f"a={spec.a.to_text()}, b={spec.b.to_text()}", f"{got} ({reason})")


@check("MOD-ISO", "intertwiner between A_{a,1} and A_{a,0}")
def check_iso(chk, cfg):
    r = iso_witness_Aa1_Aa0(symbol("a"), a_in_M=False)
    chk.require(r.passed, "generic a", r.witness)
    r = iso_witness_Aa1_Aa0(Fraction(1, 2), a_in_M=False, basis=LatticeBasis.standard(2))
    chk.require(r.passed, "a = 1/2 on rank 2", r.witness)
    r = iso_witness_Aa1_Aa0(0, a_in_M=True)
    chk.require(r.status == "undecidable", "a = 0 ∈ M is refused", r.status)


@check("MOD-RESCALE", "isomorphism criterion under lattice rescaling")
def check_rescale(chk, cfg):
    Z, Z2 = LatticeBasis(["1"], [1]), LatticeBasis(["2"], [2])
    chk.require(rescale_criterion(Z, Z2, Fraction(1, 2)).passed, "ℤ = (1/2)·2ℤ", "failed")
    chk.require(rescale_criterion(Z, Z, 1).passed, "M = M′, a = 1", "failed")
    r2 = LatticeBasis(["1", "√2"], [1, symbol("√2")])
    r3 = LatticeBasis(["1", "√3"], [1, symbol("√3")])
    r = rescale_criterion(r2, r3, 1)
    chk.require(r.status == "fail", "ℤ⊕ℤ√2 vs ℤ⊕ℤ√3 must differ", r.status)
    chk.require(rescale_criterion(Z, Z2, 1).status == "fail", "ℤ ≠ 2ℤ at a = 1", "passed")


@check("MOD-LAYERED", "layered extension modules")
def check_layered(chk, cfg):
    amod = module_from_config(A_CONFIG)
    B = amod.basis
    v = amod.act(B.zero(), amod.vector("x", 0, 0))
    chk.require(v == amod.vector("x", 0, 0).scale(Scalar.var(NUBAR)), "L_0 x_ν = ν̄ x_ν", v)
    stats = {}
    v = amod.act(B.gen("d"), amod.vector("x", 0, 0), stats)
    a0 = Scalar.var(unknown("a", (0, 0)))
    chk.require(v == amod.vector("y", 0, 0).scale(a0), "L_d x_ν = a_ν y_ν", v)
    LD = leak_derivation()
    v = LD.mod.apply_operator(LD.L1d, LD.mod.vector("x", 0))
    want = LD.mod.vector("y", 1) + LD.mod.vector("z", 1).scale(parse_scalar("c[1;0]/(d-1)"))
    chk.require(v == want, "(1/(d−1))[L_1,L_d] x_ν", v)
    chain = dict(A_CONFIG, transverse_rules=A_CONFIG["transverse_rules"] + [
        {"source": "y", "target": "z", "step": 1, "coeff": "1"}])
    cmod = module_from_config(chain)
    stats = {}
    v = cmod.apply_operator(L(B.gen("d")) * L(B.gen("d")), cmod.vector("x", 0, 0), stats)
    chk.require(v.is_zero() and stats == {"z": 1}, "only the truncated layer is dropped", stats)
    bad = dict(A_CONFIG, leakage=[{"source": "z", "target": "x", "coeff": "1", "unknown": ["c", "mu", "nu"]}])
    try:
        module_from_config(bad)
        chk.require(False, "leakage to an earlier layer is refused", "accepted")
    except ValueError:
        pass
    try:
        amod.act(B.gen("μ") + B.gen("d"), amod.vector("x", 0, 0))
        chk.require(False, "mixed generator L_{μ+d} is refused", "accepted")
    except UndefinedGenerator:
        pass
    e = Comm(L(B.gen("μ")), L(B.gen("d")))
    chk.require(extract_relation(amod, e, e, amod.vector("x", 0, 0)) == [], "e₁ = e₂ gives no relation", "")


# the extension checks register after the foundation ones, fixing the declaration order
from .lab import checks as _lab_checks  # noqa: E402,F401


def check_ids() -> List[str]:
    return list(CHECKS)


def run_suite(ids: Optional[Iterable[str]] = None, config: CheckConfig = CheckConfig()) -> List[Report]:
    """Run the named checks (all by default) in declaration order."""
    selected = list(CHECKS) if ids is None else list(ids)
    unknown_ids = [i for i in selected if i not in CHECKS]
    if unknown_ids:
        raise KeyError(", ".join(unknown_ids))
    return [run_check(i, config) for i in selected]
