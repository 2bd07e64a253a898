"""Linear relations among indexed unknowns, and their manipulation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..arith import Polynomial, Scalar, unknown
from ..arith.algorithms import poly_gcd
from ..arith.symbols import INDEXED_UNKNOWN, Symbol
from ..layered import NUBAR

Index = Tuple[Tuple[int, ...], ...]


def unknowns_in(s: Scalar) -> List[Symbol]:
    return [x for x in s.symbols() if x.kind == INDEXED_UNKNOWN]


def remap_unknowns(s: Scalar, fn: Callable[[Symbol], object]) -> Scalar:
    """Replace every indexed unknown ``u`` by ``fn(u)`` (a Scalar, a Symbol or ``u`` itself)."""
    binds = {}
    for u in unknowns_in(s):
        v = fn(u)
        if v is not u:
            binds[u] = Scalar.var(v) if isinstance(v, Symbol) else Scalar.coerce(v)
    return s.substitute(binds) if binds else s


def shift(s: Scalar, k: int, nubar_step: Scalar = Scalar.coerce(1)) -> Scalar:
    """Move a relation from ``ν`` to ``ν+k`` along a rank-one ``M₁``.

    ``ν̄`` becomes ``ν̄ + k·nubar_step`` and the last index part of every
    unknown is offset by ``k``.
    """
    if k == 0:
        return s

    def move(u: Symbol):
        *head, last = u.index
        return unknown(u.name, *head, (last[0] + k,) + tuple(last[1:]))

    out = remap_unknowns(s, move)
    return out.substitute({NUBAR: Scalar.var(NUBAR) + nubar_step * k})


def solve_for(rel: Scalar, u: Symbol) -> Scalar:
    """Value of ``u`` forced by ``rel = 0`` (the relation must be linear in ``u``)."""
    coeffs, const = rel.linear_parts()
    if u not in coeffs:
        raise ValueError(f"{u.display} does not occur in the relation")
    rest = rel - coeffs[u] * Scalar.var(u)
    return -rest / coeffs[u]


def coefficient(rel: Scalar, u: Symbol) -> Scalar:
    coeffs, _ = rel.linear_parts()
    return coeffs.get(u, Scalar.coerce(0))


def proportionality(derived: Scalar, reference: Scalar) -> Optional[Scalar]:
    """``k`` with ``derived = k·reference`` if the ratio is free of unknowns, else ``None``."""
    dc, dk = derived.linear_parts()
    rc, rk = reference.linear_parts()
    if set(dc) != set(rc) or dk.is_zero() != rk.is_zero():
        return None
    if not rc:
        return None
    u = min(rc, key=lambda s: s.key)
    k = dc[u] / rc[u]
    if not (derived - reference * k).is_zero():
        return None
    return k


def compare(derived: Scalar, reference: Scalar) -> Tuple[str, Optional[Scalar], Scalar]:
    """Classify ``derived`` against ``reference``.

    Returns ``(verdict, factor, residual)``: ``"equal"`` when the difference
    is zero, ``"proportional"`` with the factor when they agree up to an
    unknown-free multiplier, else ``"different"`` with ``derived − reference``.
    """
    diff = derived - reference
    if diff.is_zero():
        return "equal", Scalar.coerce(1), diff
    k = proportionality(derived, reference)
    if k is not None:
        return "proportional", k, Scalar.coerce(0)
    return "different", None, diff


def family_member(name: str, mu: int, j: int) -> Symbol:
    """``name[μ;j]`` on a rank-one ``M₁``."""
    return unknown(name, (mu,), (j,))


@dataclass
class RecurrenceSystem:
    """``Σ_i rows[i]·u_{ν−i} = 0`` for one unknown family."""

    name: str
    coeffs: List[Scalar]
    family: Tuple[str, int] = ("c", 1)

    @classmethod
    def from_relation(cls, name: str, rel: Scalar, family=("c", 1)) -> "RecurrenceSystem":
        coeffs, const = rel.linear_parts()
        if not const.is_zero():
            raise ValueError("recurrence rows are homogeneous")
        rows: Dict[int, Scalar] = {}
        fam, mu = family
        for u, k in coeffs.items():
            if u.name != fam or u.index[0] != (mu,):
                raise ValueError(f"unexpected unknown {u.display} in a {fam}[{mu};·] recurrence")
            rows[-u.index[1][0]] = k
        if min(rows) < 0:
            raise ValueError("recurrence rows must only reach backwards")
        out = [rows.get(i, Scalar.coerce(0)) for i in range(max(rows) + 1)]
        return cls(name, out, family)

    @property
    def shifts(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Scalar.coerce(0)

    def relation(self, k: int = 0) -> Scalar:
        """The row as a relation in ``c[μ;k−i]`` at ``ν̄+k``."""
        fam, mu = self.family
        rel = Scalar.coerce(0)
        for i, c in enumerate(self.coeffs):
            rel = rel + c * Scalar.var(family_member(fam, mu, -i))
        return shift(rel, k)

    def scaled(self, k) -> "RecurrenceSystem":
        return RecurrenceSystem(self.name, [c * k for c in self.coeffs], self.family)

    def primitive(self) -> "RecurrenceSystem":
        """Same row scaled to coprime polynomial coefficients."""
        lcm = Polynomial.const(1)
        for c in self.coeffs:
            if c:
                lcm = lcm * c.den.exquo(poly_gcd(lcm, c.den))
        nums = [(c * Scalar(lcm)).as_polynomial() for c in self.coeffs]
        g = Polynomial.const(0)
        for n in nums:
            g = n if g.is_zero() else poly_gcd(g, n)
        return RecurrenceSystem(self.name, [Scalar(n.exquo(g)) for n in nums], self.family)

    def max_nubar_degree(self) -> int:
        return max(c.num.degree(NUBAR) - c.den.degree(NUBAR) for c in self.coeffs if c)


def nubar_shift(s: Scalar, k: int) -> Scalar:
    return s.substitute({NUBAR: Scalar.var(NUBAR) + k}) if k else s


@dataclass
class Stage:
    name: str
    value: Scalar
    definition: str


@dataclass
class EliminationTrace:
    """Stages of the elimination from two recurrences down to ``p(ν̄)``."""

    stages: Dict[str, Stage] = field(default_factory=dict)
    identities: List[Tuple[str, Scalar]] = field(default_factory=list)

    def add(self, name: str, value: Scalar, definition: str) -> Scalar:
        self.stages[name] = Stage(name, value, definition)
        return value

    def __getitem__(self, name: str) -> Scalar:
        return self.stages[name].value

    @property
    def p(self) -> Scalar:
        return self["p"]


def eliminate(s: RecurrenceSystem, t: RecurrenceSystem, u_mult: Tuple[Scalar, Scalar],
              v_mult: Tuple[Scalar, Scalar]) -> EliminationTrace:
    """Run the four-stage elimination with the given multipliers.

    ``u_i = α·s_i − β·t_i`` (``α·s₀ = β·t₀`` is required so ``c_ν`` drops
    out), ``v_i = γ·u_i + δ·s_{i−1}(ν̄−1)`` (chosen so ``c_{ν−3}`` drops
    out), ``w₀ = s₀v₂``, ``w₁ = s₁v₂ − s₂v₁`` and
    ``p = v₁(ν̄+1)w₁ − v₂(ν̄+1)w₀``.  The residuals of the cancellations
    are recorded in ``trace.identities``; zero residuals mean the
    stated elimination is exact.
    """
    tr = EliminationTrace()
    alpha, beta = u_mult
    gamma, delta = v_mult
    tr.identities.append(("c_ν cancels in u", alpha * s[0] - beta * t[0]))
    for i in (1, 2, 3):
        tr.add(f"u{i}", alpha * s[i] - beta * t[i], f"u{i} = α·s{i} − β·t{i}")
    sm = [nubar_shift(s[i], -1) for i in range(3)]
    tr.identities.append(("c_{ν−3} cancels in v", gamma * tr["u3"] + delta * sm[2]))
    for i in (1, 2):
        tr.add(f"v{i}", gamma * tr[f"u{i}"] + delta * sm[i - 1], f"v{i} = γ·u{i} + δ·s{i-1}(ν̄−1)")
    tr.add("w0", s[0] * tr["v2"], "w0 = s0·v2")
    tr.add("w1", s[1] * tr["v2"] - s[2] * tr["v1"], "w1 = s1·v2 − s2·v1")
    tr.add("p", nubar_shift(tr["v1"], 1) * tr["w1"] - nubar_shift(tr["v2"], 1) * tr["w0"],
           "p = v1(ν̄+1)·w1 − v2(ν̄+1)·w0")
    return tr


def eliminate_generic(s: RecurrenceSystem, t: RecurrenceSystem) -> EliminationTrace:
    """Same pipeline with the plain cross multipliers ``α=t₀, β=s₀, γ=s₂(ν̄−1), δ=−u₃``."""
    alpha, beta = t[0], s[0]
    u3 = alpha * s[3] - beta * t[3]
    return eliminate(s, t, (alpha, beta), (nubar_shift(s[2], -1), -u3))
