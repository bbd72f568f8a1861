"""Windowed fleet operation with bootstrapped certification confidence.

Certification evidence rarely covers a type's whole lifetime up front:
confidence is needed only for the next operating window, and each window
survived failure-free becomes evidence for the next, larger one.  This
module simulates that loop: per window, the fleet flies a known number of
demands, the conservative bound for that window is computed from the
evidence accumulated so far, and - the simulation assumes failure-free
operation throughout - the window's demands are added to the evidence.

Windows are abstract; wall-clock duration never enters the arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .inference import Evidence, SurvivalPrediction, worst_case_survival
from .reliability import Probability, check_demand_count

__all__ = [
    "ConstantGrowth",
    "LinearGrowth",
    "LogisticGrowth",
    "FleetGrowthModel",
    "FleetScenario",
    "WindowRecord",
    "BootstrapTrace",
    "FeasibilityVerdict",
    "demands_in_window",
    "run_bootstrap",
    "check_feasibility",
]


@dataclass(frozen=True)
class ConstantGrowth:
    """Fixed fleet size in every window."""

    initial_fleet: int

    kind = "constant"

    def __post_init__(self) -> None:
        if self.initial_fleet < 1:
            raise ValueError(f"initial_fleet must be >= 1, got {self.initial_fleet}")

    def fleet_size(self, window_index: int) -> int:
        return self.initial_fleet


@dataclass(frozen=True)
class LinearGrowth:
    """Fleet grows by a fixed number of aircraft per window."""

    initial_fleet: int
    added_per_window: int

    kind = "linear"

    def __post_init__(self) -> None:
        if self.initial_fleet < 1:
            raise ValueError(f"initial_fleet must be >= 1, got {self.initial_fleet}")
        if self.added_per_window < 0:
            raise ValueError(f"added_per_window must be >= 0, got {self.added_per_window}")

    def fleet_size(self, window_index: int) -> int:
        return self.initial_fleet + self.added_per_window * window_index


@dataclass(frozen=True)
class LogisticGrowth:
    """S-curve growth toward a carrying capacity, rounded to whole aircraft."""

    initial_fleet: int
    growth_rate: float
    carrying_capacity: int

    kind = "logistic"

    def __post_init__(self) -> None:
        if self.initial_fleet < 1:
            raise ValueError(f"initial_fleet must be >= 1, got {self.initial_fleet}")
        if not (math.isfinite(self.growth_rate) and self.growth_rate >= 0.0):
            raise ValueError(f"growth_rate must be finite and >= 0, got {self.growth_rate}")
        if self.carrying_capacity < self.initial_fleet:
            raise ValueError(
                f"carrying_capacity {self.carrying_capacity} below "
                f"initial_fleet {self.initial_fleet}"
            )

    def fleet_size(self, window_index: int) -> int:
        n0 = self.initial_fleet
        cap = self.carrying_capacity
        size = cap / (1.0 + (cap - n0) / n0 * math.exp(-self.growth_rate * window_index))
        return int(math.floor(size + 0.5))  # aircraft are discrete; round half up


FleetGrowthModel = Union[ConstantGrowth, LinearGrowth, LogisticGrowth]


@dataclass(frozen=True)
class FleetScenario:
    """Everything a bootstrap run needs: growth, demand rate, windows,
    assessed fault-freeness, starting evidence, and the pass threshold.

    ``include_remaining_lifetime`` additionally records, at each window, the
    prediction over all demands remaining in the scenario, for comparison
    against the per-window bounds.
    """

    growth: FleetGrowthModel
    demands_per_aircraft_per_window: int
    window_count: int
    p_nf: Probability
    initial_evidence: Evidence
    confidence_threshold: Probability
    include_remaining_lifetime: bool = False

    def __post_init__(self) -> None:
        if self.demands_per_aircraft_per_window < 1:
            raise ValueError(
                "demands_per_aircraft_per_window must be >= 1, "
                f"got {self.demands_per_aircraft_per_window}"
            )
        check_demand_count(self.window_count, "window_count")
        object.__setattr__(self, "p_nf", Probability(self.p_nf))
        object.__setattr__(self, "confidence_threshold", Probability(self.confidence_threshold))
        if isinstance(self.initial_evidence, int):
            object.__setattr__(self, "initial_evidence", Evidence(self.initial_evidence))


@dataclass(frozen=True)
class WindowRecord:
    """One window of the trace; ``accumulated_evidence`` is the evidence the
    window's prediction was computed from (before the window's own demands)."""

    window_index: int
    fleet_size: int
    window_demands: int
    accumulated_evidence: int
    prediction: SurvivalPrediction
    meets_threshold: bool
    observed_failures: int = 0  # reserved; the engine assumes failure-free operation
    remaining_lifetime: Optional[SurvivalPrediction] = None


@dataclass(frozen=True)
class BootstrapTrace:
    windows: tuple[WindowRecord, ...]
    cumulative_demands: int
    threshold: Probability

    def __post_init__(self) -> None:
        object.__setattr__(self, "windows", tuple(self.windows))
        object.__setattr__(self, "threshold", Probability(self.threshold))


@dataclass(frozen=True)
class FeasibilityVerdict:
    all_windows_pass: bool
    first_failing_window: Optional[int]
    final_cumulative_demands: int
    minimum_margin: Optional[float]


def demands_in_window(scenario: FleetScenario, window_index: int) -> int:
    """Fleet size at the window times demands per aircraft per window."""
    if not 0 <= window_index < scenario.window_count:
        raise IndexError(
            f"window_index {window_index} out of range for "
            f"{scenario.window_count} windows"
        )
    return scenario.growth.fleet_size(window_index) * scenario.demands_per_aircraft_per_window


def run_bootstrap(scenario: FleetScenario) -> BootstrapTrace:
    """Run every window, accumulating failure-free demands as evidence.

    Window w is predicted from the evidence r_w available before it starts;
    afterwards r_{w+1} = r_w + n_w.  A window that misses the confidence
    threshold is recorded as such; the run never halts early, since the
    point is to see whether confidence keeps pace with fleet growth.
    """
    window_demands = [
        demands_in_window(scenario, w) for w in range(scenario.window_count)
    ]
    remaining = sum(window_demands)
    r = scenario.initial_evidence.r
    records = []
    for w, n_w in enumerate(window_demands):
        prediction = worst_case_survival(scenario.p_nf, r, n_w)
        lifetime = None
        if scenario.include_remaining_lifetime:
            lifetime = worst_case_survival(scenario.p_nf, r, remaining)
        records.append(
            WindowRecord(
                window_index=w,
                fleet_size=scenario.growth.fleet_size(w),
                window_demands=n_w,
                accumulated_evidence=r,
                prediction=prediction,
                meets_threshold=prediction.lower_bound >= scenario.confidence_threshold,
                remaining_lifetime=lifetime,
            )
        )
        r += n_w
        remaining -= n_w
    return BootstrapTrace(
        windows=tuple(records),
        cumulative_demands=sum(window_demands),
        threshold=scenario.confidence_threshold,
    )


def check_feasibility(trace: BootstrapTrace) -> FeasibilityVerdict:
    """Summarize a trace: did every window clear its threshold, and by how much?"""
    failing = [w.window_index for w in trace.windows if not w.meets_threshold]
    margins = [float(w.prediction.lower_bound) - float(trace.threshold) for w in trace.windows]
    return FeasibilityVerdict(
        all_windows_pass=not failing,
        first_failing_window=failing[0] if failing else None,
        final_cumulative_demands=trace.cumulative_demands,
        minimum_margin=min(margins) if margins else None,
    )
