"""The intermediate-series families A_{a,b}, A(a′), B(a′).

Each family has a basis ``{x_ν | ν ∈ M}``, the central element acts as 0,
and

* ``A_{a,b}``: ``L_μ x_ν = (a + ν + μb) x_{μ+ν}``
* ``A(a′)``:   ``L_μ x_ν = (ν + μ) x_{μ+ν}`` for ``ν ≠ 0``, ``L_μ x_0 = μ(1 + (μ+1)a′) x_μ``
* ``B(a′)``:   ``L_μ x_ν = ν x_{μ+ν}`` for ``ν ≠ −μ``, ``L_μ x_{−μ} = −μ(1 + (μ+1)a′) x_0``

with the convention that ``1 + (μ+1)a′`` reads ``μ + 1`` when ``a′ = ∞``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import LieElement, bracket
from .arith import Scalar
from .errors import PreconditionError
from .lattice import LatticeBasis, LatticeVector, box, delta
from .report import CheckBuilder, Report

AAB = "Aab"
APRIME = "Aprime"
BPRIME = "Bprime"
FAMILIES = (AAB, APRIME, BPRIME)


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "∞"

    def __reduce__(self):
        return "INFINITY"


INFINITY = _Infinity()


@dataclass(frozen=True)
class FamilySpec:
    """Family name plus parameters.

    ``a_in_M`` declares whether ``a`` lies in the lattice: ``True``,
    ``False``, a :class:`LatticeVector` (``a`` is that element) or ``None``
    for "not declared".
    """

    family: str
    a: Scalar = field(default_factory=lambda: Scalar.coerce(0))
    b: Scalar = field(default_factory=lambda: Scalar.coerce(0))
    aprime: Union[Scalar, _Infinity] = field(default_factory=lambda: Scalar.coerce(0))
    a_in_M: object = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "a", Scalar.coerce(self.a))
        object.__setattr__(self, "b", Scalar.coerce(self.b))
        if self.aprime is not INFINITY:
            object.__setattr__(self, "aprime", Scalar.coerce(self.aprime))
        if isinstance(self.a_in_M, LatticeVector):
            if self.a_in_M.embed() != self.a:
                raise ValueError("declared lattice element does not embed to a")

    @classmethod
    def Aab(cls, a, b, a_in_M=None) -> "FamilySpec":
        return cls(AAB, a=a, b=b, a_in_M=a_in_M)

    @classmethod
    def Aprime(cls, aprime) -> "FamilySpec":
        return cls(APRIME, aprime=aprime)

    @classmethod
    def Bprime(cls, aprime) -> "FamilySpec":
        return cls(BPRIME, aprime=aprime)

    def special_factor(self, mu: Scalar) -> Scalar:
        """``1 + (μ+1)a′``, or ``μ + 1`` for ``a′ = ∞``."""
        if self.aprime is INFINITY:
            return mu + 1
        return (mu + 1) * self.aprime + 1


def action_coefficient(spec: FamilySpec, mu: LatticeVector, nu: LatticeVector) -> Scalar:
    """Scalar ``k`` with ``L_μ x_ν = k·x_{μ+ν}``."""
    m, n = mu.embed(), nu.embed()
    if spec.family == AAB:
        return spec.a + n + m * spec.b
    if spec.family == APRIME:
        if nu.is_zero():
            return m * spec.special_factor(m)
        return n + m
    if (mu + nu).is_zero():
        return -m * spec.special_factor(m)
    return n


class ModuleVector:
    """Finite sum ``Σ k·layer_λ`` keyed by ``(layer, lattice vector)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[str, LatticeVector], Scalar]] = None):
        self.terms: Dict[Tuple[str, LatticeVector], Scalar] = {}
        for k, v in (terms or {}).items():
            v = Scalar.coerce(v)
            if v:
                self.terms[k] = v

    @classmethod
    def basis_vector(cls, nu: LatticeVector, layer: str = "x", coeff=1) -> "ModuleVector":
        return cls({(layer, nu): coeff})

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return ModuleVector(out)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, k) -> "ModuleVector":
        k = Scalar.coerce(k)
        if not k:
            return ModuleVector()
        return ModuleVector({key: v * k for key, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, layer: str, nu: LatticeVector) -> Scalar:
        return self.terms.get((layer, nu), Scalar.coerce(0))

    def layers(self) -> List[str]:
        return sorted({k[0] for k in self.terms})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_text(self, label=None) -> str:
        if not self.terms:
            return "0"
        label = label or (lambda v: v.text())
        items = sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1].coords))
        return " + ".join(f"({c.to_text()})·{layer}[{label(nu)}]" for (layer, nu), c in items)

    def __str__(self) -> str:
        return self.to_text()


def act(spec: FamilySpec, mu: LatticeVector, v: ModuleVector) -> ModuleVector:
    """``L_μ · v`` in the given family."""
    out: Dict[Tuple[str, LatticeVector], Scalar] = {}
    for (layer, nu), c in v.terms.items():
        k = action_coefficient(spec, mu, nu)
        if k:
            key = (layer, mu + nu)
            out[key] = out[key] + c * k if key in out else c * k
    return ModuleVector(out)


def act_element(spec: FamilySpec, x: LieElement, v: ModuleVector) -> ModuleVector:
    """Action of a Lie element; ``c`` acts as zero."""
    acc = ModuleVector()
    for mu, k in x.terms.items():
        acc = acc + act(spec, mu, v).scale(k)
    return acc


def axiom_residual(spec: FamilySpec, mu: LatticeVector, nu: LatticeVector,
                   lam: LatticeVector) -> ModuleVector:
    """``[L_μ,L_ν]x_λ − (L_μL_ν − L_νL_μ)x_λ``."""
    x = ModuleVector.basis_vector(lam)
    lhs = act_element(spec, bracket(LieElement.L(mu), LieElement.L(nu)), x)
    rhs = act(spec, mu, act(spec, nu, x)) - act(spec, nu, act(spec, mu, x))
    return lhs - rhs


def verify_module_axiom(spec: FamilySpec, mode: str = "symbolic", rank: int = 2, radius: int = 3,
                        check_id: str = "MOD-AXIOM", basis: Optional[LatticeBasis] = None) -> Report:
    """Representation axiom, generically (A_{a,b} only) or exhaustively over a box."""
    anchor = f"representation axiom for {spec.family}"
    chk = CheckBuilder(check_id, anchor)
    if mode == "symbolic":
        if spec.family != AAB:
            raise PreconditionError("the generic statement is piecewise for A(a′) and B(a′); use box mode")
        g = basis or LatticeBasis.generic_symbols("μ", "ν", "λ")
        mu, nu, lam = g.unit(0), g.unit(1), g.unit(2)
        r = axiom_residual(spec, mu, nu, lam)
        chk.require_zero(r, "generic residual")
        chk.note("generic μ, ν, λ; δ_{μ,−ν} = 0 by general position")
        return chk.finish()
    if mode != "box":
        raise ValueError(f"unknown mode {mode!r}")
    B = basis or LatticeBasis.standard(rank)
    points = [B.vector(p) for p in box(B.rank, radius)]
    cache: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Scalar] = {}

    def A(m: LatticeVector, n: LatticeVector) -> Scalar:
        key = (m.coords, n.coords)
        v = cache.get(key)
        if v is None:
            v = action_coefficient(spec, m, n)
            cache[key] = v
        return v

    count = 0
    for i, mu in enumerate(points):
        for nu in points[i + 1:]:
            # the residual is antisymmetric in (μ, ν), so one ordering suffices
            br = nu.embed() - mu.embed()
            s = mu + nu
            for lam in points:
                r = br * A(s, lam) - A(nu, lam) * A(mu, nu + lam) + A(mu, lam) * A(nu, mu + lam)
                count += 1
                if r:
                    chk.require(False, f"residual at μ={mu.text()}, ν={nu.text()}, λ={lam.text()}", r)
                    return chk.finish()
    chk.note(f"{count} ordered triples (μ<ν) in the box [−{radius},{radius}]^{B.rank}")
    return chk.finish()


def is_simple(spec: FamilySpec) -> Tuple[Optional[bool], str]:
    """Simplicity of ``A_{a,b}``: simple iff ``a ∉ M``, or ``a ∈ M`` and ``b ∉ {0, 1}``.

    Returns ``(None, reason)`` when membership of ``a`` or the value of
    ``b`` is not decided by the declared data.
    """
    if spec.family != AAB:
        raise PreconditionError("the criterion applies to A_{a,b}")
    member = spec.a_in_M
    if member is None:
        return None, "membership of a in M is not declared"
    if member is False:
        return True, "a ∉ M"
    if not spec.b.is_constant():
        return None, "a ∈ M and b is symbolic"
    b = spec.b.constant_value()
    if b in (0, 1):
        return False, f"a ∈ M and b = {b}"
    return True, f"a ∈ M and b = {b} ∉ {{0, 1}}"


def iso_witness_Aa1_Aa0(a, a_in_M=False, basis: Optional[LatticeBasis] = None,
                        check_id: str = "MOD-ISO") -> Report:
    """Check that ``x_ν ↦ (a+ν)x′_ν`` intertwines ``A_{a,0}`` with ``A_{a,1}``."""
    chk = CheckBuilder(check_id, "A_{a,1} ≅ A_{a,0} for a ∉ M")
    if a_in_M is not False:
        chk.undecidable("precondition a ∉ M is not met" if a_in_M else "membership of a undeclared")
        return chk.finish()
    a = Scalar.coerce(a)
    src = FamilySpec.Aab(a, 0, a_in_M=False)
    dst = FamilySpec.Aab(a, 1, a_in_M=False)
    g = basis or LatticeBasis.generic_symbols("μ", "ν")
    pairs = [(g.unit(0), g.unit(1))] if basis is None else [
        (g.vector(p), g.vector(q)) for p in box(g.rank, 1) for q in box(g.rank, 1)]
    for mu, nu in pairs:
        phi = lambda n: a + n.embed()
        lhs = action_coefficient(src, mu, nu) * phi(mu + nu)
        rhs = phi(nu) * action_coefficient(dst, mu, nu)
        chk.require_zero(lhs - rhs, f"intertwiner residual at μ={mu.text()}, ν={nu.text()}")
    chk.note("the map is invertible because a + ν ≠ 0 for every ν when a ∉ M")
    return chk.finish()


# -- rescaling of lattices ----------------------------------------------------

def _solve_linear(rows: List[List[Scalar]], rhs: List[Scalar]) -> Optional[List[Scalar]]:
    """Gaussian elimination over the rational function field; ``None`` if inconsistent.

    Free variables (underdetermined systems) are set to zero.
    """
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][col]
        aug[r] = [x / p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n]:
            return None
    sol = [Scalar.coerce(0)] * n
    for i, col in enumerate(piv_cols):
        sol[col] = aug[i][n]
    return sol


def lattice_coordinates(target: Scalar, M: LatticeBasis, rational: Sequence = ()) -> Optional[List[Scalar]]:
    """Solve ``target = Σ n_i·g_i`` over ℚ (or ℚ(rational symbols)).

    Symbols not listed in ``rational`` are treated as ℚ-independent atoms,
    so coefficients are matched monomial by monomial in them.
    """
    rational_slots = {s.slot for s in rational}
    exprs = list(M.values) + [target]
    atoms = sorted({s for e in exprs for s in e.symbols() if s.slot not in rational_slots},
                   key=lambda s: s.key)
    if any(s.slot not in rational_slots for e in exprs for s in e.den.symbols()):
        raise PreconditionError("lattice generators must be polynomial in the atom symbols")
    tables = []
    for e in exprs:
        parts = e.num.coefficients_over(atoms) if atoms else {(): e.num}
        tables.append({k: Scalar(v, e.den) for k, v in parts.items()})
    keys = sorted(set().union(*tables))
    rows = [[tables[i].get(k, Scalar.coerce(0)) for i in range(M.rank)] for k in keys]
    rhs = [tables[-1].get(k, Scalar.coerce(0)) for k in keys]
    return _solve_linear(rows, rhs)


def rescale_criterion(M: LatticeBasis, Mp: LatticeBasis, a, rational: Sequence = (),
                      check_id: str = "MOD-RESCALE") -> Report:
    """Whether ``M = a·M′``, by exact linear algebra on coordinates.

    The report passes iff both inclusions hold; a failure carries the first
    generator that falls outside.
    """
    a = Scalar.coerce(a)
    if a.is_zero():
        raise PreconditionError("a must be nonzero")
    chk = CheckBuilder(check_id, "Vir[M] ≅ Vir[M′] iff M = aM′")
    for direction, src, dst, k in (("a·M′ ⊂ M", Mp, M, a), ("a⁻¹·M ⊂ M′", M, Mp, a.inverse())):
        for g in src.values:
            image = g * k
            sol = lattice_coordinates(image, dst, rational)
            if sol is None:
                chk.require(False, f"{direction}: no rational coordinates", image)
            elif not all(s.is_constant() for s in sol):
                chk.undecidable(f"{direction}: coordinates of {image.to_text()} depend on parameters")
            elif any(s.constant_value().denominator != 1 for s in sol):
                chk.require(False, f"{direction}: non-integral coordinates", image)
    return chk.finish()
