"""Search outcomes and node budgets shared by every extraction stage."""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    FOUND = "found"
    ABSENT = "absent"
    BUDGET = "budget"


class BudgetExhausted(RuntimeError):
    """Raised inside a search when its node budget runs out."""


class Budget:
    """A shared node counter; ``limit=None`` means unlimited."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"node budget {self.limit} exhausted")


def as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    if budget is None:
        env = os.environ.get("GOWERS_LAB_BUDGET")
        budget = int(env) if env else None
    return Budget(budget if budget else None)


@dataclass
class ExtractionReport:
    status: Status
    witness: Any = None          # SetBlockSeq, FuncBlockSeq or None
    color: Any = None            # i_0
    carrier: Any = None          # the SetBlockSeq s of the signed statements
    examined: int = 0
    kind: str = ""
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def to_json(self) -> dict:
        def enc(x):
            if x is None:
                return None
            if hasattr(x, "ambient"):
                return {"ambient": x.ambient, "sets": x.to_json()}
            return x.to_json()
        color = self.color
        if color is not None and not isinstance(color, int):
            color = repr(color)
        return {"status": self.status.value, "kind": self.kind, "params": dict(self.params),
                "witness": enc(self.witness), "carrier": enc(self.carrier),
                "color": color, "examined": self.examined, "notes": list(self.notes)}


def absent(kind: str, params: dict, examined: int, *notes: str) -> ExtractionReport:
    return ExtractionReport(Status.ABSENT, kind=kind, params=params, examined=examined, notes=list(notes))


def out_of_budget(kind: str, params: dict, budget: Budget) -> ExtractionReport:
    return ExtractionReport(Status.BUDGET, kind=kind, params=params, examined=budget.used,
                            notes=[f"budget {budget.limit} exhausted"])
