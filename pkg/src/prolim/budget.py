"""Truncation budgets and depth-stamped verdicts.

Every claim about an infinite shape is checked on a finite window.  A
``Budget`` fixes that window: ``depth`` is the maximal level explored and
``node_cap`` bounds every individual search, so exhaustion is always
reported distinctly from refutation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum


DEPTH_ENV_VAR = "PROLIM_DEPTH_DEFAULT"


def default_depth() -> int:
    raw = os.environ.get(DEPTH_ENV_VAR)
    if raw is None:
        return 4
    return int(raw)


@dataclass(frozen=True)
class Budget:
    """Finite window onto an infinite shape.

    ``depth`` >= 0 is the maximal index level materialized; ``node_cap``
    bounds the number of candidates any single bounded search may visit.
    """

    depth: int
    node_cap: int = 100_000

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.node_cap <= 0:
            raise ValueError("node_cap must be positive")

    def deeper(self, extra: int = 1) -> "Budget":
        return Budget(self.depth + extra, self.node_cap)


def as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


class Verdict(Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    UNDETERMINED = "undetermined"
    EXHAUSTED = "exhausted"


@dataclass
class Certificate:
    """Outcome of one bounded check, stamped with the depth it ran at.

    ``witnesses`` holds whatever finite evidence the check produced
    (index tuples, base maps, per-level outcomes); ``details`` is free-form
    human-readable context.
    """

    name: str
    verdict: Verdict
    depth: int
    witnesses: dict = field(default_factory=dict)
    details: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        extra = f" -- {self.details}" if self.details else ""
        return f"{self.name}: {self.verdict.value} (depth={self.depth}){extra}"
