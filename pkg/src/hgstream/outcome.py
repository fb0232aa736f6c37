"""Run outcomes shared by the colorers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .core import Coloring, Hyperedge


class FailureReason(str, Enum):
    UNFIXABLE_MONO_EDGE = "unfixable_mono_edge"
    RESIDUAL_OVERFLOW_BLUE = "residual_overflow_blue"
    RESIDUAL_OVERFLOW_RED = "residual_overflow_red"
    FINAL_CHECK_BLUE = "final_check_blue"
    FINAL_CHECK_RED = "final_check_red"
    MONOCHROMATIC_EDGE = "monochromatic_edge"
    PASS_BUDGET_EXHAUSTED = "pass_budget_exhausted"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Failure:
    reason: FailureReason
    edge: Hyperedge | None = None
    # 0-based position in the stream where the guard fired, if any
    position: int | None = None


@dataclass
class ColorOutcome:
    """A finished run: either a coloring or the failure that stopped it."""

    coloring: Coloring | None
    failure: Failure | None = None
    stats: object = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.failure is None
