"""The Lie algebra Vir[M] and its universal enveloping algebra.

Bracket::

    [L_μ, L_ν] = (ν − μ) L_{μ+ν} − (μ³ − μ)/12 · δ_{μ,−ν} · c,   c central.

Here ``μ`` inside a coefficient means the scalar the lattice vector embeds
to.  The delta is decided on coordinates (see :mod:`hrvir.lattice`).
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .arith import Scalar
from .lattice import LatticeBasis, LatticeVector, delta
from .errors import PreconditionError
from .report import CheckBuilder, Report

_ZERO = Scalar.coerce(0)
_TWELFTH = Scalar.coerce(__import__("fractions").Fraction(1, 12))


class LieElement:
    """``Σ coeff·L_μ + central·c`` over a fixed lattice basis."""

    __slots__ = ("basis", "terms", "central")

    def __init__(self, basis: LatticeBasis, terms: Optional[Dict[LatticeVector, Scalar]] = None,
                 central=0):
        self.basis = basis
        self.terms: Dict[LatticeVector, Scalar] = {}
        for mu, c in (terms or {}).items():
            if mu.basis != basis:
                raise PreconditionError("term over a different lattice basis")
            c = Scalar.coerce(c)
            if c:
                self.terms[mu] = c
        self.central = Scalar.coerce(central)

    @classmethod
    def L(cls, mu: LatticeVector, coeff=1) -> "LieElement":
        return cls(mu.basis, {mu: coeff})

    @classmethod
    def c(cls, basis: LatticeBasis, coeff=1) -> "LieElement":
        return cls(basis, {}, coeff)

    def _check(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement):
            raise TypeError(f"not a Lie element: {other!r}")
        if other.basis != self.basis:
            raise PreconditionError("Lie elements over different lattice bases")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        terms = dict(self.terms)
        for mu, c in other.terms.items():
            terms[mu] = terms.get(mu, _ZERO) + c
        return LieElement(self.basis, terms, self.central + other.central)

    def __neg__(self) -> "LieElement":
        return LieElement(self.basis, {m: -c for m, c in self.terms.items()}, -self.central)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, k) -> "LieElement":
        k = Scalar.coerce(k)
        return LieElement(self.basis, {m: c * k for m, c in self.terms.items()}, self.central * k)

    def __rmul__(self, k) -> "LieElement":
        return self.scale(k)

    def is_zero(self) -> bool:
        return not self.terms and self.central.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.basis == other.basis and (self - other).is_zero()

    __hash__ = None

    def coefficient(self, mu: LatticeVector) -> Scalar:
        return self.terms.get(mu, _ZERO)

    def to_text(self) -> str:
        parts = [f"({c.to_text()})·L[{mu.text()}]"
                 for mu, c in sorted(self.terms.items(), key=lambda t: t[0].coords)]
        if self.central:
            parts.append(f"({self.central.to_text()})·c")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LieElement({self.to_text()!r})"


def bracket_generators(mu: LatticeVector, nu: LatticeVector) -> Tuple[Scalar, Scalar]:
    """``(coefficient of L_{μ+ν}, coefficient of c)`` in ``[L_μ, L_ν]``."""
    m, n = mu.embed(), nu.embed()
    coeff = n - m
    central = _ZERO
    if delta(mu, -nu):
        central = -(m * m * m - m) * _TWELFTH
    return coeff, central


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of the bracket; ``c`` brackets to zero with everything."""
    x._check(y)
    terms: Dict[LatticeVector, Scalar] = {}
    central = _ZERO
    for mu, a in x.terms.items():
        for nu, b in y.terms.items():
            coeff, cen = bracket_generators(mu, nu)
            ab = a * b
            if coeff:
                s = mu + nu
                terms[s] = terms.get(s, _ZERO) + ab * coeff
            if cen:
                central = central + ab * cen
    return LieElement(x.basis, terms, central)


def jacobi_residual(x: LieElement, y: LieElement, z: LieElement) -> LieElement:
    return bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)


def jacobi_check(x: LieElement, y: LieElement, z: LieElement, check_id: str = "ALG-JACOBI",
                 anchor: str = "Jacobi identity for the bracket") -> Report:
    chk = CheckBuilder(check_id, anchor)
    r = jacobi_residual(x, y, z)
    chk.require(r.is_zero(), "Jacobi residual", r.to_text())
    return chk.finish()


def graded_component(x: LieElement, mu: LatticeVector) -> LieElement:
    """Projection onto degree ``μ``; the degree-0 part also keeps ``c``."""
    terms = {mu: x.terms[mu]} if mu in x.terms else {}
    return LieElement(x.basis, terms, x.central if mu.is_zero() else 0)


def is_homogeneous(x: LieElement, mu: LatticeVector) -> bool:
    return graded_component(x, mu) == x


class CentralTermError(ArithmeticError):
    """An iterated bracket produced a central term, so a single coefficient is not defined."""


def nested_bracket_coefficient(mu: LatticeVector, nu: LatticeVector, copies: int) -> Scalar:
    """Coefficient of the single L-term of ``[L_μ, [L_μ, ..., [L_μ, L_ν]...]]``."""
    if copies < 1:
        raise PreconditionError("copies must be >= 1")
    lm = LieElement.L(mu)
    y = LieElement.L(nu)
    for k in range(copies):
        y = bracket(lm, y)
        if y.central:
            raise CentralTermError(f"central term {y.central} after {k + 1} brackets")
    target = nu + mu * copies
    extra = [m for m in y.terms if m != target]
    if extra:
        raise ArithmeticError("iterated bracket is not a single generator")
    return y.coefficient(target)


def product_formula(mu: LatticeVector, b1: LatticeVector, copies: int) -> Scalar:
    """``∏_{i=0}^{copies−1} (i·μ + b₁)`` as an embedded scalar."""
    m, b = mu.embed(), b1.embed()
    acc = Scalar.coerce(1)
    for i in range(copies):
        acc = acc * (m * i + b)
    return acc


# -- enveloping algebra --------------------------------------------------------

class _Central:
    """The central element as a PBW generator; it sorts after every L_μ."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "c"

    def __reduce__(self):
        return "CENTRAL"


CENTRAL = _Central()

Gen = Union[LatticeVector, _Central]
Word = Tuple[Gen, ...]


def generator_key(g: Gen):
    """Total order used for normal words: lower keys are written first.

    L-generators sort by degree, then by coordinates in descending
    lexicographic order, so over the basis (1, d) ``L_1`` comes before
    ``L_d``.  ``c`` comes last.
    """
    if g is CENTRAL:
        return (1,)
    return (0, sum(g.coords), tuple(-x for x in g.coords))


def gen_text(g: Gen) -> str:
    if g is CENTRAL:
        return "c"
    return f"L[{vector_label(g)}]"


def vector_label(v: LatticeVector) -> str:
    """Readable linear combination of generator labels, e.g. ``μ+μ′`` or ``1+d``."""
    parts = []
    for k, label in zip(v.coords, v.basis.labels):
        if not k:
            continue
        if label == "1":
            body = str(abs(k))
        else:
            body = label if abs(k) == 1 else f"{abs(k)}{label}"
        sign = "−" if k < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("−" if parts[0][0] == "−" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


class PBWForm:
    """Linear combination of ordered words with scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, Scalar]] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWForm):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, _ZERO) == other.terms.get(k, _ZERO) for k in keys)

    __hash__ = None

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), [generator_key(g) for g in t[0]]))
        return " + ".join(f"({c.to_text()})·" + ("·".join(gen_text(g) for g in w) or "1")
                          for w, c in items)

    def __str__(self) -> str:
        return self.to_text()


def _add_into(acc: Dict[Word, Scalar], w: Word, c: Scalar) -> None:
    v = acc.get(w)
    acc[w] = c if v is None else v + c


def _bracket_gens(a: Gen, b: Gen) -> List[Tuple[Gen, Scalar]]:
    if a is CENTRAL or b is CENTRAL:
        return []
    coeff, cen = bracket_generators(a, b)
    out = []
    if coeff:
        out.append((a + b, coeff))
    if cen:
        out.append((CENTRAL, cen))
    return out


@lru_cache(maxsize=200_000)
def _normal_word(word: Word) -> Tuple[Tuple[Word, Scalar], ...]:
    """Normal form of one word, rewriting the leftmost out-of-order pair."""
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if generator_key(a) > generator_key(b):
            acc: Dict[Word, Scalar] = {}
            swapped = word[:i] + (b, a) + word[i + 2:]
            for w, c in _normal_word(swapped):
                _add_into(acc, w, c)
            for g, k in _bracket_gens(a, b):
                shorter = word[:i] + (g,) + word[i + 2:]
                for w, c in _normal_word(shorter):
                    _add_into(acc, w, c * k)
            return tuple((w, c) for w, c in acc.items() if c)
    return ((word, Scalar.coerce(1)),)


def _normal_word_random(word: Word, rng: random.Random) -> Dict[Word, Scalar]:
    """Same normal form, but each step rewrites a randomly chosen out-of-order pair."""
    bad = [i for i in range(len(word) - 1) if generator_key(word[i]) > generator_key(word[i + 1])]
    if not bad:
        return {word: Scalar.coerce(1)}
    i = rng.choice(bad)
    a, b = word[i], word[i + 1]
    acc: Dict[Word, Scalar] = {}
    for w, c in _normal_word_random(word[:i] + (b, a) + word[i + 2:], rng).items():
        _add_into(acc, w, c)
    for g, k in _bracket_gens(a, b):
        for w, c in _normal_word_random(word[:i] + (g,) + word[i + 2:], rng).items():
            _add_into(acc, w, c * k)
    return acc


def normal_form_of_words(words: Dict[Word, Scalar], rng: Optional[random.Random] = None) -> PBWForm:
    acc: Dict[Word, Scalar] = {}
    for word, coeff in words.items():
        if not coeff:
            continue
        parts = _normal_word_random(word, rng).items() if rng is not None else _normal_word(word)
        for w, c in parts:
            _add_into(acc, w, c * coeff)
    return PBWForm(acc)


# -- operator expressions --------------------------------------------------------

class OperatorExpr:
    """Expression tree over the generators ``L_μ`` and ``c``."""

    def words(self) -> Dict[Word, Scalar]:
        raise NotImplementedError

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return Sum((self, other))

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return Sum((self, Scale(Scalar.coerce(-1), other)))

    def __mul__(self, other: "OperatorExpr") -> "OperatorExpr":
        return Prod((self, other))

    def __rmul__(self, k) -> "OperatorExpr":
        return Scale(Scalar.coerce(k), self)

    def generators(self) -> List[Gen]:
        seen: Dict[Gen, None] = {}
        for w in self.words():
            for g in w:
                seen[g] = None
        return list(seen)


class LGen(OperatorExpr):
    def __init__(self, mu: LatticeVector):
        self.mu = mu

    def words(self):
        return {(self.mu,): Scalar.coerce(1)}

    def __repr__(self):
        return f"(L {vector_label(self.mu)})"


class CGen(OperatorExpr):
    def words(self):
        return {(CENTRAL,): Scalar.coerce(1)}

    def __repr__(self):
        return "(c)"


class Sum(OperatorExpr):
    def __init__(self, items: Sequence[OperatorExpr]):
        self.items = tuple(items)

    def words(self):
        acc: Dict[Word, Scalar] = {}
        for it in self.items:
            for w, c in it.words().items():
                _add_into(acc, w, c)
        return {w: c for w, c in acc.items() if c}

    def __repr__(self):
        return "(+ " + " ".join(map(repr, self.items)) + ")"


class Scale(OperatorExpr):
    def __init__(self, k: Scalar, item: OperatorExpr):
        self.k = Scalar.coerce(k)
        self.item = item

    def words(self):
        if not self.k:
            return {}
        return {w: c * self.k for w, c in self.item.words().items()}

    def __repr__(self):
        return f"(scale {self.k.to_text()} {self.item!r})"


class Prod(OperatorExpr):
    def __init__(self, items: Sequence[OperatorExpr]):
        self.items = tuple(items)

    def words(self):
        acc: Dict[Word, Scalar] = {(): Scalar.coerce(1)}
        for it in self.items:
            nxt: Dict[Word, Scalar] = {}
            right = it.words()
            for w1, c1 in acc.items():
                for w2, c2 in right.items():
                    _add_into(nxt, w1 + w2, c1 * c2)
            acc = {w: c for w, c in nxt.items() if c}
        return acc

    def __repr__(self):
        return "(prod " + " ".join(map(repr, self.items)) + ")"


class Comm(OperatorExpr):
    def __init__(self, a: OperatorExpr, b: OperatorExpr):
        self.a, self.b = a, b

    def words(self):
        return Sum((Prod((self.a, self.b)), Scale(Scalar.coerce(-1), Prod((self.b, self.a))))).words()

    def __repr__(self):
        return f"(comm {self.a!r} {self.b!r})"


def L(mu: LatticeVector) -> OperatorExpr:
    return LGen(mu)


def pbw_normal_form(e: OperatorExpr, rng: Optional[random.Random] = None) -> PBWForm:
    """Canonical ordered-word form; ``rng`` picks rewrite positions at random."""
    return normal_form_of_words(e.words(), rng)


def lie_to_operator(x: LieElement) -> OperatorExpr:
    items: List[OperatorExpr] = [Scale(c, LGen(mu)) for mu, c in x.terms.items()]
    if x.central:
        items.append(Scale(x.central, CGen()))
    return Sum(items)
