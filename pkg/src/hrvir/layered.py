"""Layered modules with indexed unknowns.

A layered module has basis vectors ``x_ν, y_ν, z_ν, ...`` indexed by
offsets ``λ`` from a generic base point ``ν`` of the sublattice ``M₁``.
The lattice has one *transverse* generator ``d``; every other generator
spans ``M₁``.  Each layer carries a weight shift and a parameter, and
``L_μ`` (``μ ∈ M₁``) acts by

    L_μ v_λ = (ν̄ + λ + shift + μ·param) v_{λ+μ} + leakage,

where leakage terms go to strictly later layers and may carry indexed
unknowns such as ``c_{μ,ν}``.  Transverse generators ``L_{kd}`` act by
explicit rules between layers.  Generators with both a transverse and an
``M₁`` component (``L_{1+d}`` and so on) are deliberately undefined: the
computations only ever reach them through commutators.

Layers marked *truncated* model a quotient: anything landing there is
dropped (and counted).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import CENTRAL, OperatorExpr, pbw_normal_form
from .arith import Scalar, symbol, unknown
from .arith.parse import parse_scalar
from .arith.symbols import INDEXED_UNKNOWN, Symbol
from .errors import PreconditionError
from .families import ModuleVector
from .lattice import LatticeBasis, LatticeVector

NUBAR = symbol("ν̄")
MU_SLOT = symbol("⟨μ⟩")

_TEMPLATE_NAMES = {"μ": MU_SLOT, "mu": MU_SLOT, "ν̄": NUBAR}


def template(text: str) -> Scalar:
    """Parse a coefficient template; ``μ`` stands for the acting generator, ``ν̄`` for the source index."""
    return parse_scalar(text, names=_TEMPLATE_NAMES)


@dataclass(frozen=True)
class Layer:
    name: str
    shift: Scalar
    param: Scalar
    truncated: bool = False


@dataclass(frozen=True)
class UnknownRef:
    """Indexed unknown attached to a rule: ``name[μ;ν]`` or ``name[ν]``."""

    name: str
    parts: Tuple[str, ...]  # each "mu" or "nu"

    def symbol(self, mu: Tuple[int, ...], lam: Tuple[int, ...]) -> Symbol:
        return unknown(self.name, *[mu if p == "mu" else lam for p in self.parts])


@dataclass(frozen=True)
class LeakRule:
    source: str
    target: str
    coeff: Scalar
    unknown: Optional[UnknownRef] = None


@dataclass(frozen=True)
class TransverseRule:
    source: str
    target: str
    step: int
    coeff: Scalar
    unknown: Optional[UnknownRef] = None
    only_at: Optional[Tuple[int, ...]] = None


class UndefinedGenerator(PreconditionError):
    """The module has no rule for this generator on this layer."""


class LayeredModule:
    def __init__(self, basis: LatticeBasis, transverse: str, layers: Sequence[Layer],
                 leakage: Sequence[LeakRule] = (), transverse_rules: Sequence[TransverseRule] = (),
                 base: Optional[Scalar] = None, diagonal: bool = True):
        self.basis = basis
        if transverse not in basis.labels:
            raise ValueError(f"transverse generator {transverse!r} is not in the basis")
        self.t_index = basis.labels.index(transverse)
        self.layers = list(layers)
        self.order = {l.name: i for i, l in enumerate(self.layers)}
        if len(self.order) != len(self.layers):
            raise ValueError("layer names must be distinct")
        for r in list(leakage) + list(transverse_rules):
            for name in (r.source, r.target):
                if name not in self.order:
                    raise ValueError(f"rule refers to unknown layer {name!r}")
        for r in leakage:
            if self.order[r.target] <= self.order[r.source]:
                raise ValueError(f"leakage {r.source}→{r.target} must go to a later layer")
        self.leakage = list(leakage)
        self.transverse_rules = list(transverse_rules)
        self.base = Scalar.var(NUBAR) if base is None else Scalar.coerce(base)
        self.diagonal = diagonal
        self._cache: Dict[Tuple, Tuple[Tuple[Tuple[str, Tuple[int, ...]], Scalar], ...]] = {}
        self.dropped = 0

    # -- index helpers --------------------------------------------------------
    def m1_part(self, v: LatticeVector) -> Tuple[int, ...]:
        return tuple(c for i, c in enumerate(v.coords) if i != self.t_index)

    def offset(self, *m1: int) -> LatticeVector:
        """Lattice vector with the given ``M₁`` coordinates and no transverse part."""
        if len(m1) == 1 and not isinstance(m1[0], int):
            m1 = tuple(m1[0])
        coords = list(m1)
        coords.insert(self.t_index, 0)
        return self.basis.vector(coords)

    def weight_base(self, lam: Tuple[int, ...]) -> Scalar:
        """``ν̄`` of the basis vector at offset ``λ``."""
        return self.base + self.offset(lam).embed()

    def vector(self, layer: str, *m1: int) -> ModuleVector:
        return ModuleVector.basis_vector(self.offset(*m1), layer)

    def _fill(self, t: Scalar, mu: Tuple[int, ...], lam: Tuple[int, ...]) -> Scalar:
        binds = {NUBAR: self.weight_base(lam)}
        if mu is not None:
            binds[MU_SLOT] = self.offset(mu).embed()
        return t.substitute(binds)

    # -- action ------------------------------------------------------------------
    def _act_basis(self, gen: LatticeVector, layer: str, lam: Tuple[int, ...]):
        key = (gen.coords, layer, lam)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        t = gen.coords[self.t_index]
        mu = self.m1_part(gen)
        out: Dict[Tuple[str, Tuple[int, ...]], Scalar] = {}

        def add(target, idx, k):
            if k:
                kk = (target, idx)
                out[kk] = out[kk] + k if kk in out else k

        if t == 0:
            dest = tuple(a + b for a, b in zip(lam, mu))
            L = self.layers[self.order[layer]]
            if self.diagonal:
                add(layer, dest, self.weight_base(lam) + L.shift + self.offset(mu).embed() * L.param)
            if any(mu):
                for r in self.leakage:
                    if r.source == layer:
                        k = self._fill(r.coeff, mu, lam)
                        if r.unknown is not None:
                            k = k * Scalar.var(r.unknown.symbol(mu, lam))
                        add(r.target, dest, k)
        elif not any(mu):
            rules = [r for r in self.transverse_rules if r.source == layer and r.step == t]
            if not rules:
                raise UndefinedGenerator(f"no rule for L[{gen.text()}] on layer {layer}")
            for r in rules:
                if r.only_at is not None and r.only_at != lam:
                    continue
                k = self._fill(r.coeff, None, lam)
                if r.unknown is not None:
                    k = k * Scalar.var(r.unknown.symbol((), lam))
                add(r.target, lam, k)
        else:
            raise UndefinedGenerator(f"L[{gen.text()}] mixes transverse and M₁ directions; "
                                     "express it through commutators")
        res = tuple(out.items())
        self._cache[key] = res
        return res

    def act(self, gen, v: ModuleVector, stats: Optional[Dict[str, int]] = None) -> ModuleVector:
        """``L_gen · v``; ``c`` acts as zero."""
        if gen is CENTRAL:
            return ModuleVector()
        acc: Dict[Tuple[str, LatticeVector], Scalar] = {}
        for (layer, vec), c in v.terms.items():
            for (target, idx), k in self._act_basis(gen, layer, self.m1_part(vec)):
                if self.layers[self.order[target]].truncated:
                    self.dropped += 1
                    if stats is not None:
                        stats[target] = stats.get(target, 0) + 1
                    continue
                key = (target, self.offset(idx))
                val = c * k
                acc[key] = acc[key] + val if key in acc else val
        return ModuleVector(acc)

    def apply_word(self, word, v: ModuleVector, stats=None) -> ModuleVector:
        for g in reversed(word):
            v = self.act(g, v, stats)
            if v.is_zero():
                break
        return v

    def apply_operator(self, e: OperatorExpr, v: ModuleVector, stats=None) -> ModuleVector:
        acc = ModuleVector()
        for word, coeff in e.words().items():
            acc = acc + self.apply_word(word, v, stats).scale(coeff)
        return acc

    def label(self, v: LatticeVector) -> str:
        """``ν+λ`` style label of an offset."""
        parts = []
        for k, lab in zip(self.m1_part(v), [l for i, l in enumerate(self.basis.labels)
                                              if i != self.t_index]):
            if k:
                s = "−" if k < 0 else "+"
                body = str(abs(k)) if lab == "1" else (lab if abs(k) == 1 else f"{abs(k)}{lab}")
                parts.append(s + body)
        return "ν" + "".join(parts)


def apply_operator(mod: LayeredModule, e: OperatorExpr, v: ModuleVector, stats=None) -> ModuleVector:
    return mod.apply_operator(e, v, stats)


def unknowns_of(s: Scalar) -> List[Symbol]:
    return [x for x in s.symbols() if x.kind == INDEXED_UNKNOWN]


def extract_relation(mod: LayeredModule, e1: OperatorExpr, e2: OperatorExpr, v: ModuleVector,
                     require_equal: bool = False) -> List[Tuple[Tuple[str, Tuple[int, ...]], Scalar]]:
    """Coefficientwise ``e₁·v − e₂·v``; each entry is a relation ``expr = 0``.

    With ``require_equal`` the two operators must first agree in the
    enveloping algebra.  Every returned relation is checked to be linear
    in the indexed unknowns.
    """
    if require_equal and not (pbw_normal_form(e1 - e2).is_zero()):
        raise PreconditionError("the two operators differ in the enveloping algebra")
    diff = mod.apply_operator(e1, v) - mod.apply_operator(e2, v)
    out = []
    for (layer, vec), c in sorted(diff.terms.items(), key=lambda t: (mod.order[t[0][0]], t[0][1].coords)):
        c.linear_parts()  # raises on nonlinear occurrences
        out.append(((layer, mod.m1_part(vec)), c))
    return out


# -- configuration --------------------------------------------------------------

def _scalar(value) -> Scalar:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if isinstance(value, float):
            raise ValueError("floating point values are not accepted; use a string such as \"1/2\"")
        return Scalar.coerce(value)
    return parse_scalar(str(value))


def _unknown(spec) -> Optional[UnknownRef]:
    if spec is None:
        return None
    name, *parts = spec
    for p in parts:
        if p not in ("mu", "nu"):
            raise ValueError(f"unknown index part {p!r}; expected 'mu' or 'nu'")
    return UnknownRef(name, tuple(parts))


def module_from_config(cfg) -> LayeredModule:
    """Build a :class:`LayeredModule` from a JSON string or an already-parsed dict.

    Schema::

        {
          "basis": {"labels": ["1", "d"], "values": ["1", "d"], "generic": false},
          "transverse": "d",
          "base": "ν̄",                          (optional)
          "layers": [{"name": "x", "shift": "0", "param": "b"},
                     {"name": "z", "shift": "d", "param": "b''", "truncated": false}],
          "leakage": [{"source": "y", "target": "z", "coeff": "1", "unknown": ["c", "mu", "nu"]}],
          "transverse_rules": [{"source": "x", "target": "y", "step": 1, "coeff": "ν̄+b*d",
                                "unknown": ["a", "nu"], "only_at": [0]}]
        }

    Coefficient templates are scalar expressions in which ``μ`` is the
    acting ``M₁`` generator and ``ν̄`` the weight of the source index.
    """
    if isinstance(cfg, str):
        cfg = json.loads(cfg)
    b = cfg["basis"]
    basis = LatticeBasis(b["labels"], [_scalar(v) for v in b["values"]], bool(b.get("generic", False)))
    layers = [Layer(l["name"], _scalar(l.get("shift", 0)), _scalar(l.get("param", 0)),
                    bool(l.get("truncated", False))) for l in cfg["layers"]]
    leak = [LeakRule(r["source"], r["target"], template(str(r.get("coeff", "1"))), _unknown(r.get("unknown")))
            for r in cfg.get("leakage", [])]
    trans = [TransverseRule(r["source"], r["target"], int(r.get("step", 1)),
                            template(str(r.get("coeff", "1"))), _unknown(r.get("unknown")),
                            tuple(r["only_at"]) if r.get("only_at") is not None else None)
             for r in cfg.get("transverse_rules", [])]
    base = _scalar(cfg["base"]) if "base" in cfg else None
    return LayeredModule(basis, cfg["transverse"], layers, leak, trans, base)
