"""Interned symbols for the exact arithmetic kernel.

Every symbol gets a process-local integer slot (used to pack exponent
vectors into a single Python int) and a deterministic ordering key that
does not depend on creation order.  Printing and leading-term selection
only ever look at the ordering key, so two processes that create the same
symbols in a different order still produce identical text.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional, Tuple

BASIS_VALUE = "basis-value"
PARAMETER = "parameter"
INDEXED_UNKNOWN = "indexed-unknown"

_KIND_RANK = {BASIS_VALUE: 0, PARAMETER: 1, INDEXED_UNKNOWN: 2}

Index = Tuple[Tuple[int, ...], ...]

_SUBSCRIPTS = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")


@dataclass(frozen=True, eq=False)
class Symbol:
    name: str
    kind: str
    index: Optional[Index] = None
    slot: int = field(default=-1, compare=False)

    @property
    def key(self):
        return (_KIND_RANK[self.kind], self.name, self.index or ())

    @property
    def display(self) -> str:
        if self.index is None:
            return self.name
        parts = ";".join(",".join(str(c) for c in part) for part in self.index)
        return f"{self.name}[{parts}]"

    def __repr__(self) -> str:
        return f"Symbol({self.display!r})"

    def __reduce__(self):
        return (symbol, (self.name, self.kind, self.index))


class SymbolTable:
    """Process-wide registry.  ``(name, kind, index)`` is unique."""

    def __init__(self) -> None:
        self._by_key: dict = {}
        self._by_slot: list = []
        self._lock = threading.Lock()

    def get(self, name: str, kind: str = PARAMETER, index: Optional[Index] = None) -> Symbol:
        if kind not in _KIND_RANK:
            raise ValueError(f"unknown symbol kind {kind!r}")
        if (kind == INDEXED_UNKNOWN) != (index is not None):
            raise ValueError("indexed unknowns carry an index; other symbols do not")
        if index is not None:
            index = tuple(tuple(int(c) for c in part) for part in index)
        key = (name, kind, index)
        sym = self._by_key.get(key)
        if sym is not None:
            return sym
        with self._lock:
            sym = self._by_key.get(key)
            if sym is None:
                sym = Symbol(name, kind, index, len(self._by_slot))
                self._by_slot.append(sym)
                self._by_key[key] = sym
        return sym

    def by_slot(self, slot: int) -> Symbol:
        return self._by_slot[slot]

    def __len__(self) -> int:
        return len(self._by_slot)


TABLE = SymbolTable()


def symbol(name: str, kind: str = PARAMETER, index: Optional[Index] = None) -> Symbol:
    return TABLE.get(name, kind, index)


def basis_symbol(i: int) -> Symbol:
    """The scalar value beta_i of the i-th lattice generator (1-based)."""
    return TABLE.get("β" + str(i).translate(_SUBSCRIPTS), BASIS_VALUE)


def unknown(name: str, *index_parts) -> Symbol:
    """Indexed unknown such as ``a[0,1]`` or ``c[1;0,0]``."""
    return TABLE.get(name, INDEXED_UNKNOWN, tuple(tuple(p) for p in index_parts))
