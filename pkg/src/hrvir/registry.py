"""Registry of named verification checks."""
from __future__ import annotations

import traceback
from dataclasses import dataclass
from typing import Callable, Dict

from .report import CheckBuilder, Report


@dataclass(frozen=True)
class CheckConfig:
    rank: int = 2
    radius: int = 3
    samples: int = 100
    seed: int = 0

    def to_dict(self) -> dict:
        return {"rank": self.rank, "radius": self.radius, "samples": self.samples, "seed": self.seed}


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    fn: Callable[[CheckBuilder, CheckConfig], None]


CHECKS: Dict[str, Check] = {}


def check(check_id: str, anchor: str):
    """Register ``fn(chk, config)`` under ``check_id``."""
    def deco(fn):
        if check_id in CHECKS:
            raise ValueError(f"duplicate check id {check_id}")
        CHECKS[check_id] = Check(check_id, anchor, fn)
        return fn
    return deco


def run_check(check_id: str, config: CheckConfig = CheckConfig()) -> Report:
    c = CHECKS[check_id]
    chk = CheckBuilder(c.id, c.anchor)
    try:
        c.fn(chk, config)
    except Exception as exc:  # a crash is a failure with the error as witness
        chk.require(False, "check raised", f"{type(exc).__name__}: {exc}")
        chk.note(traceback.format_exc(limit=3).strip().splitlines()[-1])
    return chk.finish()
