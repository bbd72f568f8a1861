"""Aggregate per-objective-group fault-freeness judgments into one number.

Judgments are elicited per group of assurance objectives ("given that this
group's objectives were all accomplished, how confident are we that no fault
of this kind exists?").  Combining groups needs a dependence assumption; the
two closed forms here bracket the plausible range:

* ``conservative``: the Frechet lower bound max(0, 1 - sum(1 - p_i)), which
  assumes nothing about dependence between fault kinds.
* ``independent``: the product of the group probabilities.

A structured belief-net backend could refine these; it is an extension
point, not implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .reliability import Probability

__all__ = [
    "ObjectiveGroupAssessment",
    "AssuranceLevel",
    "UnknownLevelError",
    "ASSURANCE_LEVEL_OBJECTIVES",
    "level_preset",
    "aggregate_fault_freeness",
]

# DO-178C objective counts per software level.
ASSURANCE_LEVEL_OBJECTIVES = {"A": 71, "B": 69, "C": 62, "D": 26}

AggregationMode = Literal["conservative", "independent"]


class UnknownLevelError(ValueError):
    """Requested assurance level is not one of A, B, C, D."""


@dataclass(frozen=True)
class ObjectiveGroupAssessment:
    """Confidence that no fault of one group's kind exists, given its
    objectives were accomplished."""

    group_id: str
    objective_count: int
    p_no_fault: Probability

    def __post_init__(self) -> None:
        if not self.group_id:
            raise ValueError("group_id must be non-empty")
        if self.objective_count < 1:
            raise ValueError(f"objective_count must be >= 1, got {self.objective_count}")
        object.__setattr__(self, "p_no_fault", Probability(self.p_no_fault))


@dataclass(frozen=True)
class AssuranceLevel:
    """A DO-178C software level and its total objective count."""

    level: str
    total_objectives: int

    def __post_init__(self) -> None:
        expected = ASSURANCE_LEVEL_OBJECTIVES.get(self.level)
        if expected is None:
            raise UnknownLevelError(f"unknown assurance level {self.level!r}")
        if self.total_objectives != expected:
            raise ValueError(
                f"level {self.level} has {expected} objectives, got {self.total_objectives}"
            )


def level_preset(level: str) -> AssuranceLevel:
    """The assurance level with its objective count: A=71, B=69, C=62, D=26."""
    if level not in ASSURANCE_LEVEL_OBJECTIVES:
        raise UnknownLevelError(f"unknown assurance level {level!r}")
    return AssuranceLevel(level=level, total_objectives=ASSURANCE_LEVEL_OBJECTIVES[level])


def aggregate_fault_freeness(
    groups: Sequence[ObjectiveGroupAssessment],
    mode: AggregationMode,
) -> Probability:
    """Whole-standard probability of fault-freeness from per-group judgments.

    ``conservative`` uses the Frechet lower bound, ``independent`` the plain
    product; the conservative result never exceeds the independent one.
    """
    if not groups:
        raise ValueError("groups must be non-empty")
    ids = [g.group_id for g in groups]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise ValueError(f"duplicate group ids: {dupes}")
    if mode == "conservative":
        return Probability(max(0.0, 1.0 - math.fsum(1.0 - g.p_no_fault for g in groups)))
    if mode == "independent":
        return Probability(math.prod(g.p_no_fault for g in groups))
    raise ValueError(f"mode must be 'conservative' or 'independent', got {mode!r}")
