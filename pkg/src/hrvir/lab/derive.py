"""Mechanical re-derivation of the relations from layered-module actions."""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from ..algebra import Comm, L, OperatorExpr, Scale, pbw_normal_form
from ..arith import Scalar, parse_scalar, symbol, unknown
from ..families import ModuleVector
from ..lattice import DeltaLog
from ..layered import NUBAR, LayeredModule, extract_relation, module_from_config
from .relations import RecurrenceSystem, family_member, remap_unknowns, shift, solve_for

# --- module configurations ------------------------------------------------------

A_CONFIG = {
    "basis": {"labels": ["μ", "μ′", "d"], "values": ["μ", "μ′", "d"], "generic": True},
    "transverse": "d",
    "layers": [
        {"name": "x", "shift": "0", "param": "b"},
        {"name": "y", "shift": "d", "param": "b′"},
        {"name": "z", "shift": "d", "param": "b″", "truncated": True},
    ],
    "transverse_rules": [{"source": "x", "target": "y", "step": 1, "coeff": "1", "unknown": ["a", "nu"]}],
}


def leak_config(ld_coeff: str = "1", y_param: str = "b-1", b: str = "b", bpp: str = "b″",
                d: str = "d", base: Optional[str] = None, exceptional: Optional[str] = None) -> dict:
    """Three layers over ``[1, d]`` with leakage ``c_{μ,ν}`` from ``y`` to ``z``."""
    cfg = {
        "basis": {"labels": ["1", "d"], "values": ["1", d]},
        "transverse": "d",
        "layers": [
            {"name": "x", "shift": "0", "param": b},
            {"name": "y", "shift": d, "param": y_param},
            {"name": "z", "shift": d, "param": bpp},
        ],
        "leakage": [{"source": "y", "target": "z", "coeff": "1", "unknown": ["c", "mu", "nu"]}],
        "transverse_rules": [{"source": "x", "target": "y", "step": 1, "coeff": ld_coeff}],
    }
    if base is not None:
        cfg["base"] = base
    if exceptional is not None:
        cfg["transverse_rules"].append(
            {"source": "x", "target": "z", "step": 1, "coeff": exceptional, "only_at": [0]})
    return cfg


def matrix_config(b: str = "b", d: str = "d", lower: Optional[str] = None) -> dict:
    """Two layers ``X, Y`` with ``L_d: X→Y`` and ``L_{−d}: Y→X`` (default ``(ν̄+d−bd)A``)."""
    if lower is None:
        lower = f"(ν̄+({d})-({b})*({d}))*A"
    return {
        "basis": {"labels": ["μ", "μ′", "d"], "values": ["μ", "μ′", d], "generic": True},
        "transverse": "d",
        "layers": [{"name": "X", "shift": "0", "param": b}, {"name": "Y", "shift": d, "param": b}],
        "transverse_rules": [
            {"source": "X", "target": "Y", "step": 1, "coeff": f"ν̄+({b})*({d})"},
            {"source": "Y", "target": "X", "step": -1, "coeff": lower},
        ],
    }


# --- the triple-commutator identity -------------------------------------------------

def triple_commutator(mu, mup, t) -> Tuple[OperatorExpr, OperatorExpr]:
    """Both sides of ``(t−μ−μ′)[L_μ,[L_μ′,L_t]] = (t−μ′)(t+μ′−μ)[L_{μ+μ′},L_t]``.

    Returned as ``(lhs, rhs)``; ``lhs − rhs`` is zero in the enveloping algebra.
    """
    tv, mv, mpv = t.embed(), mu.embed(), mup.embed()
    Lm, Lp, Lt, Ls = L(mu), L(mup), L(t), L(mu + mup)
    lhs = Scale(tv - mv - mpv, Lm * Lp * Lt - Lm * Lt * Lp - Lp * Lt * Lm + Lt * Lp * Lm)
    rhs = Scale((tv - mpv) * (tv + mpv - mv), Ls * Lt - Lt * Ls)
    return lhs, rhs


def triple_identity(mod: LayeredModule, sign: int = 1) -> Tuple[OperatorExpr, OperatorExpr]:
    """:func:`triple_commutator` on the module's ``μ, μ′`` and ``t = ±d``."""
    B = mod.basis
    return triple_commutator(B.gen("μ"), B.gen("μ′"), B.gen("d") * sign)


@lru_cache(maxsize=None)
def a_module() -> LayeredModule:
    return module_from_config(A_CONFIG)


@lru_cache(maxsize=None)
def derive_a_relation() -> Tuple[Scalar, Tuple[str, ...]]:
    """Apply the identity to ``x_ν`` and read the ``y_{ν+μ+μ′}`` coefficient."""
    mod = a_module()
    lhs, rhs = triple_identity(mod)
    with DeltaLog() as log:
        rels = extract_relation(mod, lhs, rhs, mod.vector("x", 0, 0))
    found = dict(rels)
    rel = found.pop(("y", (1, 1)), Scalar.coerce(0))
    if found:
        raise AssertionError(f"unexpected relations at {sorted(found)}")
    return rel, tuple(log.summary())


MU, MUP = symbol("μ", "basis-value"), symbol("μ′", "basis-value")

SPECIALIZATIONS = {
    # (scalar bindings, index map (i,j) -> k)
    "a": ({MUP: "μ", NUBAR: "ν̄-μ"}, lambda i, j: i + j - 1),
    "b": ({MUP: "-μ"}, lambda i, j: i - j),
    "c": ({MU: "-μ", MUP: "-μ", NUBAR: "ν̄+μ"}, lambda i, j: -i - j + 1),
}


def specialize(rel: Scalar, which: str) -> Scalar:
    binds, idx = SPECIALIZATIONS[which]
    out = rel.substitute({k: parse_scalar(v) for k, v in binds.items()})
    return remap_unknowns(out, lambda u: unknown("a", (idx(*u.index[0]), 0)))


def a_family(expr: str):
    """Substitution turning ``a[k,0]`` into ``expr`` with ``ν̄`` at offset ``kμ``."""
    template = parse_scalar(expr)

    def fn(u):
        k = u.index[0][0]
        return template.substitute({NUBAR: Scalar.var(NUBAR) + Scalar.var(MU) * k})
    return fn


# --- the leakage module and its recurrences -------------------------------------------

class LeakDerivation:
    """Operator identities around ``L_{±1+d}``, ``L_{2+d}`` evaluated on a leakage module."""

    def __init__(self, mod: LayeredModule):
        self.mod = mod
        B = mod.basis
        self.one, self.d = B.gen("1"), B.gen("d")
        self.dv = self.d.embed()
        one, dd = self.one, self.d
        Lm1, L1, L2, Ld = L(-one), L(one), L(one * 2), L(dd)
        dv = self.dv
        self.L1d = Scale(1 / (dv - 1), Comm(L1, Ld))
        self.Lm1d = Scale(1 / (dv + 1), Comm(Lm1, Ld))
        self.ops = {
            "Ld": (Ld, Scale(1 / (dv + 2), Comm(Lm1, self.L1d))),
            "L0y": (Scale(Scalar.coerce(2), L(B.zero())), Comm(Lm1, L1)),
            "L2d": (Scale(1 / (dv - 2), Comm(L2, Ld)), Scale(1 / dv, Comm(L1, self.L1d))),
            "L1d": (self.L1d, Scale(1 / (dv - 3), Comm(L2, self.Lm1d))),
        }

    def check_pbw(self) -> Dict[str, bool]:
        return {k: pbw_normal_form(a - b).is_zero() for k, (a, b) in self.ops.items()}

    def z_coefficient(self, e: OperatorExpr, layer: str, j: int, target: int) -> Scalar:
        v = self.mod.apply_operator(e, self.mod.vector(layer, j))
        return v.coefficient("z", self.mod.offset(target))

    def relation(self, key: str, j: int = 0) -> Scalar:
        """Single relation from identity ``key`` applied at offset ``j``."""
        layer = "y" if key == "L0y" else "x"
        e1, e2 = self.ops[key]
        rels = extract_relation(self.mod, e1, e2, self.mod.vector(layer, j))
        zs = [r for (lay, idx), r in rels if lay == "z"]
        others = [(lay, idx) for (lay, idx), r in rels if lay != "z"]
        if others:
            raise AssertionError(f"identity {key} fails outside the z layer at {others}")
        if len(zs) > 1:
            raise AssertionError(f"identity {key} produced {len(zs)} relations")
        return zs[0] if zs else Scalar.coerce(0)

    # c_{-1,ν+j} and c_{2,ν+j} in terms of c_{ν+i}
    def c_minus_one(self, j: int) -> Scalar:
        return solve_for(self.relation("Ld", j - 1), family_member("c", -1, j))

    def c_two(self, j: int) -> Scalar:
        return solve_for(self.relation("L2d", j), family_member("c", 2, j))

    def eliminate_aux(self, rel: Scalar) -> Scalar:
        def fn(u):
            m, j = u.index[0][0], u.index[1][0]
            if m == -1:
                return self.c_minus_one(j)
            if m == 2:
                return self.c_two(j)
            return u
        return remap_unknowns(rel, fn)

    def s_relation(self, j: int = 0) -> Scalar:
        return self.eliminate_aux(self.relation("L0y", j))

    def t_relation(self, j: int = 0) -> Scalar:
        return self.eliminate_aux(self.relation("L1d", j - 1))


@lru_cache(maxsize=None)
def leak_derivation(variant: str = "plain") -> LeakDerivation:
    if variant == "plain":
        return LeakDerivation(module_from_config(leak_config()))
    if variant == "scaled":
        return LeakDerivation(module_from_config(leak_config(ld_coeff="ν̄+b*d", y_param="b")))
    raise ValueError(variant)


def normalized_row(derived: Scalar, reference: Scalar) -> Tuple[Scalar, Scalar]:
    """Rescale ``derived`` so its leading ``c_ν`` coefficient matches ``reference``."""
    cν = family_member("c", 1, 0)
    dc = derived.linear_parts()[0][cν]
    rc = reference.linear_parts()[0][cν]
    k = rc / dc
    return derived * k, k


@lru_cache(maxsize=None)
def recurrences(variant: str = "plain") -> Tuple[RecurrenceSystem, RecurrenceSystem, Scalar, Scalar]:
    """Derived ``s`` and ``t`` rows (raw, as produced by the engine) plus the scale factors used."""
    D = leak_derivation(variant)
    s_raw = D.s_relation(0)
    t_raw = D.t_relation(0)
    return (RecurrenceSystem.from_relation("s", s_raw), RecurrenceSystem.from_relation("t", t_raw),
            s_raw, t_raw)
