"""Free abelian groups M ⊂ ℂ with a chosen ℤ-basis.

A :class:`LatticeBasis` names its generators and records the scalar each
one embeds to (``β_i`` by default, or any :class:`Scalar` such as ``1`` or
a generic symbol ``d``).  Vectors are integer coordinate tuples over a
basis; equality, and therefore every Kronecker delta, is decided on the
coordinates alone.  That is exact because the generators are assumed
linearly independent over ℚ.

When a basis is flagged ``generic`` its generators stand for unspecified
elements in general position.  Every delta evaluated over such a basis is
reported to the active :class:`DeltaLog`, so a check can list exactly
which coincidences it assumed away.
"""
from __future__ import annotations

import contextvars
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .arith import Scalar, basis_symbol
from .arith.symbols import BASIS_VALUE, symbol
from .errors import ParseError, PreconditionError


class LatticeBasis:
    """An ordered ℤ-basis; ``values[i]`` is the complex number generator ``i`` stands for."""

    __slots__ = ("labels", "values", "generic", "_hash")

    def __init__(self, labels: Sequence[str], values: Sequence, generic: bool = False):
        if len(labels) != len(values):
            raise ValueError("one value per generator label is required")
        if not labels:
            raise ValueError("a lattice basis needs rank >= 1")
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be distinct")
        vals = tuple(Scalar.coerce(v) for v in values)
        if len(set(vals)) != len(vals):
            raise ValueError("generator values must be distinct")
        self.labels = tuple(labels)
        self.values = vals
        self.generic = generic
        self._hash = hash((self.labels, self.values, generic))

    @classmethod
    def standard(cls, rank: int) -> "LatticeBasis":
        """Generators ``b_i`` embedding to the symbols ``β_i``."""
        syms = [basis_symbol(i + 1) for i in range(rank)]
        return cls([f"b{i + 1}" for i in range(rank)], syms)

    @classmethod
    def with_values(cls, values: Sequence, labels: Optional[Sequence[str]] = None,
                    generic: bool = False) -> "LatticeBasis":
        vals = [Scalar.coerce(v) for v in values]
        if labels is None:
            labels = [v.to_text() for v in vals]
        return cls(labels, vals, generic)

    @classmethod
    def generic_symbols(cls, *names: str) -> "LatticeBasis":
        """Formal generators in general position, e.g. ``generic_symbols("μ", "μ′", "d")``."""
        syms = [symbol(n, BASIS_VALUE) if n in ("μ", "μ′", "μ″", "ν", "λ") else symbol(n)
                for n in names]
        return cls(list(names), syms, generic=True)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def vector(self, *coords: int) -> "LatticeVector":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return LatticeVector(self, tuple(int(c) for c in coords))

    def zero(self) -> "LatticeVector":
        return LatticeVector(self, (0,) * self.rank)

    def unit(self, i: int) -> "LatticeVector":
        c = [0] * self.rank
        c[i] = 1
        return LatticeVector(self, tuple(c))

    def gen(self, label: str) -> "LatticeVector":
        return self.unit(self.labels.index(label))

    def parse(self, text: str) -> "LatticeVector":
        return self.vector(parse_coords(text, self.rank))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return (self.labels, self.values, self.generic) == (other.labels, other.values, other.generic)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        pairs = ", ".join(f"{l}={v}" for l, v in zip(self.labels, self.values))
        return f"LatticeBasis({pairs}{', generic' if self.generic else ''})"


@dataclass(frozen=True)
class LatticeVector:
    basis: LatticeBasis = field(repr=False)
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.basis.rank:
            raise ValueError(f"expected {self.basis.rank} coordinates, got {len(self.coords)}")

    def _check(self, other: "LatticeVector") -> None:
        if not isinstance(other, LatticeVector):
            raise TypeError(f"not a lattice vector: {other!r}")
        if other.basis != self.basis:
            raise PreconditionError("lattice vectors over different bases")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(self.basis, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(self.basis, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(self.basis, tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "LatticeVector":
        if not isinstance(k, int):
            return NotImplemented
        return LatticeVector(self.basis, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def embed(self) -> Scalar:
        return scalar_embed(self)

    @property
    def deg(self) -> int:
        return deg_B(self)

    def text(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __str__(self) -> str:
        return self.text()


def parse_coords(text: str, rank: Optional[int] = None) -> Tuple[int, ...]:
    """Parse ``"1,-2,3"`` (ASCII or unicode minus)."""
    parts = text.replace("−", "-").split(",")
    out = []
    pos = 0
    for p in parts:
        try:
            out.append(int(p.strip()))
        except ValueError:
            raise ParseError(f"expected an integer, got {p.strip()!r}", text, pos) from None
        pos += len(p) + 1
    if rank is not None and len(out) != rank:
        raise ParseError(f"expected {rank} coordinates, got {len(out)}", text, 0)
    return tuple(out)


# -- generic-position bookkeeping -------------------------------------------

class DeltaLog:
    """Collects delta decisions made over generic bases while active."""

    def __init__(self) -> None:
        self.events: List[str] = []
        self._token = None

    def __enter__(self) -> "DeltaLog":
        self._token = _ACTIVE_LOG.set(self)
        return self

    def __exit__(self, *exc) -> None:
        _ACTIVE_LOG.reset(self._token)

    def record(self, event: str) -> None:
        self.events.append(event)

    def summary(self) -> List[str]:
        """Distinct events in first-seen order."""
        return list(dict.fromkeys(self.events))


_ACTIVE_LOG: contextvars.ContextVar[Optional[DeltaLog]] = contextvars.ContextVar(
    "hrvir_delta_log", default=None)


def delta(mu: LatticeVector, nu: LatticeVector) -> int:
    """Kronecker delta on coordinates, logging generic-position decisions."""
    mu._check(nu)
    equal = mu.coords == nu.coords
    if mu.basis.generic:
        log = _ACTIVE_LOG.get()
        if log is not None:
            verdict = "1" if equal else "0 (generic position)"
            log.record(f"delta[{mu.text()} ; {nu.text()}] = {verdict}")
    return 1 if equal else 0


# -- degrees and embedding ---------------------------------------------------

def deg_B(mu: LatticeVector) -> int:
    """Sum of coordinates."""
    return sum(mu.coords)


def scalar_embed(mu: LatticeVector, basis: Optional[LatticeBasis] = None) -> Scalar:
    """``Σ m_i·β_i`` as a linear scalar."""
    basis = basis or mu.basis
    if basis.rank != len(mu.coords):
        raise ValueError("rank mismatch")
    acc = Scalar.coerce(0)
    for m, v in zip(mu.coords, basis.values):
        if m:
            acc = acc + v * m
    return acc


# -- integer matrices --------------------------------------------------------

def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class BasisChange:
    """Row ``i`` holds the old-basis coordinates of new generator ``i``."""

    matrix: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def determinant(self) -> int:
        return int_det(self.matrix)

    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def to_old(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """Old-basis coordinates of ``Σ coords[i]·b′_i``."""
        if len(coords) != self.rank:
            raise ValueError("rank mismatch")
        return tuple(sum(c * row[j] for c, row in zip(coords, self.matrix)) for j in range(self.rank))

    def to_new(self, coords: Sequence[int]) -> Tuple[Fraction, ...]:
        """Solve for new-basis coordinates exactly over ℚ."""
        n = self.rank
        # columns of the transpose are the new generators
        aug = [[Fraction(self.matrix[j][i]) for j in range(n)] + [Fraction(coords[i])]
               for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ValueError("basis change is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return tuple(aug[i][n] for i in range(n))

    def rows_text(self) -> str:
        return "; ".join("(" + ",".join(str(x) for x in row) + ")" for row in self.matrix)


def basis_lemma21(rank, k: int) -> BasisChange:
    """``b′_i = Σ_{j≤i}(k+i−j+1)b_j + k·Σ_{j>i} b_j``.

    ``rank`` may be an integer or a :class:`LatticeBasis`.  The determinant
    is 1 for rank ≥ 2; in rank 1 the single generator is ``(k+1)b₁`` and
    the determinant is ``k+1``, so callers check ``determinant`` themselves.
    """
    if isinstance(rank, LatticeBasis):
        rank = rank.rank
    if rank < 1:
        raise ValueError("rank must be positive")
    if k < 0:
        raise PreconditionError("k must be non-negative")
    rows = tuple(tuple(k + i - j + 1 if j <= i else k for j in range(1, rank + 1))
                 for i in range(1, rank + 1))
    return BasisChange(rows)


@dataclass(frozen=True)
class Lemma23Basis:
    """Result of the sign-normalized construction around a lattice point.

    ``normalized`` is expressed in the basis after the sign flips; ``change``
    is the same family of generators in the original coordinates.
    """

    case: int
    flips: Tuple[int, ...]
    normalized: BasisChange
    change: BasisChange


def basis_lemma23(mu: LatticeVector) -> Lemma23Basis:
    """ℤ-basis built from ``μ``: case 1 when m₁, m₂ ≠ 0, otherwise case 2 at the first zero."""
    n = mu.basis.rank
    if n < 2:
        raise PreconditionError("the construction needs rank >= 2")
    if mu.is_zero():
        raise PreconditionError("μ must be nonzero")
    flips = tuple(i for i, m in enumerate(mu.coords) if m < 0)
    m = [abs(c) for c in mu.coords]

    def e(i):
        v = [0] * n
        v[i] = 1
        return v

    def comb(*terms):
        out = [0] * n
        for k, v in terms:
            for i in range(n):
                out[i] += k * v[i]
        return out

    if m[0] != 0 and m[1] != 0:
        case = 1
        b1 = comb((m[1], m), (1, e(0)))
        b2 = comb((m[0], m), (-1, e(1)))
        rows = [b1, b2] + [comb((1, b1), (1, e(i))) for i in range(2, n)]
    else:
        case = 2
        z = m.index(0)
        bz = comb((1, m), (1, e(z)))
        rows = [bz if i == z else comb((1, bz), (1, e(i))) for i in range(n)]
    normalized = BasisChange(tuple(tuple(r) for r in rows))
    original = BasisChange(tuple(tuple(-x if j in flips else x for j, x in enumerate(r))
                                 for r in rows))
    if not original.is_unimodular():
        raise ArithmeticError(f"construction is not unimodular for μ={mu.coords}")
    return Lemma23Basis(case, flips, normalized, original)


def cone_membership(mu: LatticeVector, k: int, change: Optional[BasisChange] = None) -> bool:
    """Whether every B-coordinate of ``μ`` is at least ``k``.

    With ``change`` given, ``μ`` holds coordinates over the new generators
    and is first rewritten in the old basis.
    """
    coords = change.to_old(mu.coords) if change is not None else mu.coords
    return all(c >= k for c in coords)


def box(rank: int, radius: int, exclude_zero: bool = False) -> Iterable[Tuple[int, ...]]:
    """All integer points of ``[−radius, radius]^rank`` in lexicographic order."""
    from itertools import product
    for p in product(range(-radius, radius + 1), repeat=rank):
        if exclude_zero and not any(p):
            continue
        yield p
