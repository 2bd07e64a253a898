"""Reference forms of the printed relations, kept as data.

Every entry is a scalar expression meaning ``expr = 0`` (or, for closed
quantities like the determinant, the value itself).  Unknowns use the
module's index conventions: ``a[i,j]`` is ``a`` at offset ``iμ+jμ′`` over
the generic basis, or ``a[i,0]`` at offset ``iμ`` once ``μ′`` has been
specialized; ``c[m;j]`` is ``c_{m,ν+j}`` and ``c[1;j]`` is ``c_{ν+j}``.

Entries reproduce the printed text as literally as the grammar allows.
Where the printed text is defective the literal reading is kept here and
the defect is surfaced by the checks that compare against derivations.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict

from ..arith import Scalar, parse_scalar

TEXT: Dict[str, str] = {
    # L_d applied through the triple-commutator identity, read at y_{ν+μ+μ′}
    "a-relation": (
        "(d-μ-μ′)*((ν̄+d+μ′*b′)*(ν̄+μ′+d+μ*b′)*a[0,0] - (ν̄+μ′*b)*(ν̄+μ′+d+μ*b′)*a[0,1]"
        " - (ν̄+μ*b)*(ν̄+μ+d+μ′*b′)*a[1,0] + (ν̄+μ*b)*(ν̄+μ+μ′*b)*a[1,1])"
        " - (d-μ′)*(d+μ′-μ)*((ν̄+d+(μ+μ′)*b′)*a[0,0] - (ν̄+(μ+μ′)*b)*a[1,1])"
    ),
    "three-term-a": (
        "((d-2*μ)*(ν̄-μ+d+μ*b′)*(ν̄+d+μ*b′) - d*(d-μ)*(ν̄-μ+d+2*μ*b′))*a[-1,0]"
        " - 2*(d-2*μ)*(ν̄-μ+μ*b)*(ν̄+d+μ*b′)*a[0,0]"
        " + ((d-2*μ)*(ν̄-μ+μ*b)*(ν̄+μ*b) + d*(d-μ)*(ν̄-μ+2*μ*b))*a[1,0]"
    ),
    "three-term-b": (
        "(ν̄-μ*b)*(ν̄-μ+d+μ*b′)*a[-1,0]"
        " - ((ν̄+d-μ*b′)*(ν̄-μ+d+μ*b′) + (ν̄+μ*b)*(ν̄+μ-μ*b) - (d+μ)*(d-2*μ))*a[0,0]"
        " + (ν̄+μ*b)*(ν̄+μ+d-μ*b′)*a[1,0]"
    ),
    # the printed third line has no operator before its last term; read as "+"
    "three-term-c": (
        "((d+2*μ)*(ν̄+μ-μ*b)*(ν̄-μ*b) + d*(d+μ)*(ν̄+μ-2*μ*b))*a[-1,0]"
        " - 2*(d+2*μ)*(ν̄+μ-μ*b)*(ν̄+d-μ*b′)*a[0,0]"
        " + ((d+2*μ)*(ν̄+μ+d-μ*b′)*(ν̄+d-μ*b′) - d*(d+μ)*(ν̄+μ+d-2*μ*b′))*a[1,0]"
    ),
    "determinant": (
        "(b′-b)*(1+b′-b)*μ^6*(4*d*(3*(b+b′)^2-7*b-5*b′+2)*ν̄"
        " + 4*(b+b′)*((b+b′)^2*(b-b′)-2*(b+b′)*(b-2*b′)-(b+5*b′)+2)*μ^2"
        " + d^2*(-(b+b′)^3*(b-b′)-2*(b+b′)*(b^2+3*b*b′+4*b′^2)+19*b^2+34*b*b′+19*b′^2-24*b-16*b′+4))"
    ),
    # z-coefficients of the four operator identities around L_{±1+d}, L_{2+d}
    "L1d-on-x": "c[1;0]/(d-1)",
    "Ld-via-L-1": "(c[-1;1] - 1/(d-1)*((ν̄-b)*c[1;-1] - (ν̄+1+d-b″)*c[1;0]))/(d+2)",
    "L0-on-y": (
        "(ν̄+d+b-1)*c[-1;1] + (ν̄+1+d-b″)*c[1;0] - (ν̄+d-b+1)*c[1;-1] - (ν̄-1+d+b″)*c[-1;0]"
    ),
    "L-1d-on-x": "1/((d+1)*(d-1))*((ν̄-1-b)*c[1;-2] - (ν̄+d-b″)*c[1;-1])",
    "L2d-direct": "c[2;0]/(d-2)",
    "L2d-via-L1": "1/(d*(d-1))*((k+1+d+b″)*c[1;0] - (ν̄+1+b-d)*c[1;1])",
    "L1d-via-L2": (
        "1/(d-3)*(c[2;-1] + 1/((d+1)*(d-1))*(((ν̄-1-b)*c[1;-2] - (ν̄+d-b″)*c[1;-1])*(ν̄-1+d+2*b″)"
        " - (ν̄+2*b)*((ν̄+1-b)*c[1;0] - (ν̄+2+d-b″)*c[1;1])))"
    ),
    "c-minus-one": "c[-1;0] - 1/(d-1)*((ν̄-1-b)*c[1;-2] - (ν̄+d-b″)*c[1;-1])",
    "s-row": (
        "(ν̄+b)*(ν̄+1+d-b″)*c[1;0] - (2*ν̄^2+(2*d-1)*ν̄-d+b″-b″^2-b^2+1)*c[1;-1]"
        " + (ν̄+d-1+b″)*(ν̄-1-b)*c[1;-2]"
    ),
    "c-two": "c[2;0] - (d-2)/(d*(d-1))*((ν̄+1+d+b″)*c[1;0] - (ν̄+b-d+1)*c[1;1])",
    "t-row": (
        "d*(ν̄-1+2*b)*(ν̄+1+d-b″)*c[1;0]"
        " - (d*ν̄^2+(d^2+(b-2)*d-2)*ν̄+(b-2)*d^2-2*b^2*d+2-2*b)*c[1;-1]"
        " - (d*ν̄^2+(d^2+(b″-2)*d+2)*ν̄-d^2-(2*b″^2-b″-3)*d+2*b″-2)*c[1;-2]"
        " + d*(ν̄-2-b)*(ν̄-2+d+2*b″)*c[1;-3]"
    ),
    # multipliers of the elimination as printed
    "u-alpha": "d*(ν̄-1+2*b)",
    "u-beta": "ν̄+b",
    "v-gamma": "ν̄-2-d+b″",
    "v-delta": "d*(ν̄-2+d+2*b″)*(ν̄+b)",
    "p-factors": "-d*(d+1)*(b″-b)*(b″-b-1)*(ν̄+b)*(ν̄+d-1+b″)",
    "p0": "(b+b″)*(b+b″-1)",
    "p1-offset": "-2*(3*b″^2-3*b″-1)*b*d - 2*(3*b″^3-4*b″^2-b″+1)*d",
    # the variant where L_d x_ν = (ν̄+bd) y_ν
    "c-minus-one-variant": (
        "(ν̄-1+(d+1)*b)*c[-1;0]"
        " - 1/(d-1)*((ν̄-1-b)*(ν̄-2+b*d)*c[1;-2] - (ν̄-1+b*d)*(ν̄+d-b″)*c[1;-1])"
    ),
    "c-two-variant": (
        "(ν̄+b*d)*c[2;0] - (d-2)/(d*(d-1))*((ν̄+b*d)*(ν̄+1+d+b″)*c[1;0]"
        " - ((ν̄+b)*(ν̄+1+b*d) - (d-1)*(ν̄+(d+1)*b))*c[1;1])"
    ),
    "exceptional-normalizer": "(d-1)*(1-b)",
    "matrix-composite": "(ν̄+b*d)*(ν̄+d-b*d)*A",
}


@lru_cache(maxsize=None)
def get(name: str) -> Scalar:
    return parse_scalar(TEXT[name])


# closed forms c_{m,ν+j} under each case hypothesis; "C" is the free constant
CLOSED_FORMS = {
    "b″=b": {
        "hypothesis": {"b″": "b"},
        "c": "C",
        "cm": "m*(d-m)/(d-1)*C",
    },
    "b″=b+1": {
        "hypothesis": {"b″": "b+1"},
        "c": "(ν̄+(2*b+1)*d+(b+1))*C",
        "cm": "m*(d-m)/(d-1)*(ν̄+(2*b+1)*d+m*(b+1))*C",
    },
    "b=1,b″=−1": {
        "hypothesis": {"b": "1", "b″": "-1"},
        "c": "C/(ν̄*(ν̄+1))",
        "cm": "m*(d-m)/(d-1)*C/(ν̄*(ν̄+m))",
    },
    "b=−1,b″=1": {
        "hypothesis": {"b": "-1", "b″": "1"},
        "c": "(ν̄-d)*(ν̄+d+1)*C",
        "cm": "m*(d-m)/(d-1)*(ν̄-d)*(ν̄+d+m)*C",
    },
    "b=1,b″=0": {
        "hypothesis": {"b": "1", "b″": "0"},
        "c": "C/(ν̄+d+1)",
        "cm": "m*(d-m)/(d-1)*C/(ν̄+d+m)",
    },
}

# solution list for the determinant, as (b, b′) with b′ possibly a linear form in b
DET_SOLUTIONS = [("b", "b"), ("b", "b-1"), ("1", "-1"), ("0", "1"), ("2", "0")]
# case list for the leakage coefficient, as (b, b″)
LEAK_SOLUTIONS = [("b", "b"), ("b", "b+1"), ("1", "-1"), ("-1", "1"), ("1", "0")]
