"""Two-component reliability model for demand-based software failure.

The software is fault-free with probability ``p_nf`` (in which case it never
fails); otherwise every demand fails independently with probability
``p_f_given_faulty``.  Everything downstream of this package reduces to the
probability of surviving a run of independent demands under that mixture, so
the powers ``(1 - q)**k`` are evaluated in the log domain to stay accurate
for q near 0 and demand counts up to 10**12.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Probability",
    "DemandCount",
    "MixtureModel",
    "MonteCarloEstimate",
    "InfeasibleScaleError",
    "check_demand_count",
    "pfd",
    "survival_probability",
    "monte_carlo_survival",
]

# Monte Carlo guard: reject runs that would simulate more demands than this.
MAX_SIMULATED_DEMANDS = 10**10

# Elements drawn per vectorized block in the demand simulation (memory bound).
_BLOCK_DRAW_BUDGET = 1 << 20


class InfeasibleScaleError(ValueError):
    """A simulation was requested at a scale the engine refuses to attempt."""


class Probability(float):
    """A float constrained to [0, 1].

    Rejects NaN, infinities and out-of-range values at construction instead
    of clamping, so configuration errors surface immediately.  Instances are
    ordinary floats in arithmetic; the log-domain views are available via
    :attr:`log` and :attr:`log_complement`.
    """

    __slots__ = ()

    def __new__(cls, value: float) -> "Probability":
        v = float(value)
        if not math.isfinite(v) or not 0.0 <= v <= 1.0:
            raise ValueError(f"probability must be finite and in [0, 1], got {value!r}")
        return super().__new__(cls, v)

    @property
    def log(self) -> float:
        """log(p); -inf for p == 0."""
        return math.log(self) if self > 0.0 else -math.inf

    @property
    def log_complement(self) -> float:
        """log(1 - p); -inf for p == 1."""
        return math.log1p(-self) if self < 1.0 else -math.inf

    def __repr__(self) -> str:  # matches construction
        return f"Probability({float(self)!r})"


# Demand counts are plain non-negative ints (arbitrary precision covers the
# 10**12 scale); validate at API boundaries with check_demand_count.
DemandCount = int


def check_demand_count(value: int, name: str = "count") -> int:
    """Validate a demand count: a non-negative integer."""
    try:
        n = operator.index(value)
    except TypeError:
        raise TypeError(f"{name} must be an integer, got {value!r}") from None
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")
    return n


@dataclass(frozen=True)
class MixtureModel:
    """Fault-freeness confidence plus the per-demand failure probability if faulty."""

    p_nf: Probability
    p_f_given_faulty: Probability

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_nf", Probability(self.p_nf))
        object.__setattr__(self, "p_f_given_faulty", Probability(self.p_f_given_faulty))


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Survival fraction from simulation, with its binomial standard error."""

    estimate: float
    standard_error: float
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.estimate <= 1.0:
            raise ValueError(f"estimate out of [0, 1]: {self.estimate}")
        if self.standard_error < 0.0:
            raise ValueError(f"standard_error must be >= 0: {self.standard_error}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1: {self.trials}")


def log_survive_run(q: float, k: int) -> float:
    """log((1 - q)**k): log-probability that k demands all survive at failure rate q.

    Exact at the corners: 0.0 when k == 0 or q == 0, -inf when q == 1 and k > 0.
    """
    if k == 0 or q == 0.0:
        return 0.0
    if q == 1.0:
        return -math.inf
    return k * math.log1p(-q)


def survive_run(q: float, k: int) -> float:
    """(1 - q)**k evaluated through the log domain."""
    return math.exp(log_survive_run(q, k))  # exp(-inf) == 0.0


def pfd(model: MixtureModel) -> Probability:
    """Unconditional probability of failure on a single demand.

    Fault-free software never fails, so only the faulty branch contributes:
    ``p_f_given_faulty * (1 - p_nf)``.
    """
    return Probability(model.p_f_given_faulty * (1.0 - model.p_nf))


def survival_probability(model: MixtureModel, n: DemandCount) -> Probability:
    """Probability of surviving n independent demands without failure.

    ``p_nf + (1 - p_nf) * (1 - p_f_given_faulty)**n``.  The first term is a
    floor independent of n; the second decays geometrically.
    """
    n = check_demand_count(n, "n")
    if n == 0:
        return Probability(1.0)
    p_nf = model.p_nf
    if p_nf == 1.0:
        return Probability(1.0)
    return Probability(p_nf + (1.0 - p_nf) * survive_run(model.p_f_given_faulty, n))


def monte_carlo_survival(
    model: MixtureModel,
    n: DemandCount,
    trials: int,
    seed: int,
) -> MonteCarloEstimate:
    """Estimate the n-demand survival probability by simulating the mixture.

    Each trial first decides fault-freeness (probability ``p_nf``); a faulty
    trial then runs n independent demands, each failing with probability
    ``p_f_given_faulty``, and survives only if none fail.  Demands are drawn
    in blocks with early exit once a trial has failed, which leaves the
    estimator exact while bounding memory.

    Randomness comes from numpy's PCG64 generator seeded with ``seed``, so
    results are reproducible bit-for-bit on a given platform.

    Raises:
        InfeasibleScaleError: if trials * n exceeds 10**10 simulated demands.
    """
    n = check_demand_count(n, "n")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if trials * n > MAX_SIMULATED_DEMANDS:
        raise InfeasibleScaleError(
            f"trials * n = {trials * n} exceeds the {MAX_SIMULATED_DEMANDS} "
            "simulated-demand guard"
        )

    rng = np.random.default_rng(seed)
    p_nf = float(model.p_nf)
    q = float(model.p_f_given_faulty)

    survivors = 0
    chunk = min(trials, _BLOCK_DRAW_BUDGET)
    remaining = trials
    while remaining > 0:
        size = min(chunk, remaining)
        remaining -= size
        faulty = int((rng.random(size) >= p_nf).sum())
        survivors += size - faulty
        if n == 0 or q == 0.0:
            survivors += faulty
            continue
        alive = faulty
        done = 0
        while alive > 0 and done < n:
            block = min(n - done, max(1, _BLOCK_DRAW_BUDGET // alive))
            draws = rng.random((alive, block))
            alive = int((draws >= q).all(axis=1).sum())
            done += block
        survivors += alive

    estimate = survivors / trials
    stderr = math.sqrt(estimate * (1.0 - estimate) / trials)
    return MonteCarloEstimate(estimate=estimate, standard_error=stderr, trials=trials, seed=seed)
