"""Structured outcome of a verification check."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Iterable, List, Optional

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
UNDECIDABLE = "undecidable"
STATUSES = (PASS, FAIL, UNDECIDABLE)


@dataclass
class Report:
    id: str
    anchor: str
    status: str
    witness: Optional[str] = None
    elapsed_ms: int = 0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError(f"{self.id}: a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        return f"{self.status.upper():<11} {self.id:<22} {self.elapsed_ms:>7} ms  {self.anchor}"


class CheckBuilder:
    """Accumulates sub-results for one check and emits a single :class:`Report`.

    Each ``require`` either passes silently or records a failure with a
    witness.  Notes are free-form strings kept in insertion order.
    """

    def __init__(self, check_id: str, anchor: str):
        self.id = check_id
        self.anchor = anchor
        self.notes: List[str] = []
        self.failures: List[str] = []
        self.undecided: List[str] = []
        self._t0 = time.perf_counter()

    def note(self, text: str) -> None:
        self.notes.append(text)

    def require(self, ok: bool, what: str, witness=None) -> bool:
        if not ok:
            w = witness.to_text() if hasattr(witness, "to_text") else (str(witness) if witness is not None else what)
            self.failures.append(f"{what}: {w}")
        return ok

    def require_zero(self, value, what: str) -> bool:
        """Pass iff ``value`` is zero; the value itself is the failure witness."""
        zero = value.is_zero() if hasattr(value, "is_zero") else value == 0
        return self.require(zero, what, value)

    def undecidable(self, what: str) -> None:
        self.undecided.append(what)

    def finish(self, elapsed_ms: Optional[int] = None) -> Report:
        if elapsed_ms is None:
            elapsed_ms = int((time.perf_counter() - self._t0) * 1000)
        if self.failures:
            status, witness = FAIL, self.failures[0]
            notes = self.notes + [f"failure: {f}" for f in self.failures[1:]]
        elif self.undecided:
            status, witness = UNDECIDABLE, None
            notes = self.notes + [f"undecidable: {u}" for u in self.undecided]
        else:
            status, witness, notes = PASS, None, list(self.notes)
        return Report(self.id, self.anchor, status, witness, elapsed_ms, notes)


@contextmanager
def timed():
    """Yields a one-element list that receives the elapsed milliseconds."""
    box = [0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = int((time.perf_counter() - t0) * 1000)


def report_document(reports: Iterable[Report], config: dict, include_timing: bool = True) -> str:
    """Serialize reports (sorted by id) into the versioned JSON document."""
    items = sorted(reports, key=lambda r: r.id)
    body = []
    for r in items:
        d = r.to_dict()
        if not include_timing:
            d["elapsed_ms"] = 0
        body.append(d)
    doc = {
        "schema": "hrvir-report",
        "version": SCHEMA_VERSION,
        "config": config,
        "summary": {s: sum(1 for r in items if r.status == s) for s in STATUSES},
        "reports": body,
    }
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=False) + "\n"
