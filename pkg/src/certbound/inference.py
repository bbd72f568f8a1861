"""Conservative posterior prediction of failure-free operation.

Given an assessed probability ``p_nf`` that the software is fault-free, and
``r`` observed failure-free demands, the probability of surviving ``n``
further demands depends on the unknown prior for the per-demand failure
probability of faulty software.  Among all priors that put mass ``p_nf`` on
the fault-free point, the one minimizing the posterior predictive is a
single point mass at some location q, so minimizing over q in [0, 1] yields
a bound that is guaranteed conservative whatever the true prior.

For a point mass at q the predictive is

    g(q) = (p_nf + (1 - p_nf) * (1 - q)**(r + n)) / (p_nf + (1 - p_nf) * (1 - q)**r)

All powers are evaluated as exp(k * log1p(-q)) and ratios as differences of
log-sum-exp terms, so r + n up to ~10**12 is safe.  ``grid_worst_case`` is a
deliberately brute-force minimizer kept independent of the optimizer so the
two can check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .reliability import Probability, check_demand_count, log_survive_run

__all__ = [
    "Evidence",
    "DiscretePrior",
    "SurvivalPrediction",
    "PointPredictive",
    "SweepRow",
    "DegenerateConditioningError",
    "predictive_given_point_prior",
    "worst_case_survival",
    "grid_worst_case",
    "posterior_predictive_discrete",
    "sweep",
]

# Coarse bracketing scan for the optimizer: points log-spaced in q and in 1-q.
_SCAN_POINTS_PER_SIDE = 500
_SCAN_Q_FLOOR = 1e-18

# Brute-force oracle grid runs log-spaced over [_GRID_Q_MIN, 1] plus {0, 1}.
_GRID_Q_MIN = 1e-15

# Candidates whose value is within this of the minimum count as ties.
_TIE_TOL = 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class DegenerateConditioningError(ValueError):
    """The prior assigns zero probability to the observed failure-free run."""


@dataclass(frozen=True)
class Evidence:
    """A count of consecutive failure-free demands already observed."""

    r: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", check_demand_count(self.r, "r"))


@dataclass(frozen=True)
class DiscretePrior:
    """Finite mixture prior: mass ``p_nf`` on fault-freeness plus point atoms.

    ``atoms`` is a sequence of (q, weight) pairs with q in (0, 1] and positive
    weights; ``p_nf`` plus the total atom weight must equal 1 within 1e-12.
    """

    p_nf: Probability
    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_nf", Probability(self.p_nf))
        atoms = tuple((float(q), float(w)) for q, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms and self.p_nf != 1.0:
            raise ValueError("atoms must be non-empty unless p_nf == 1")
        for q, w in atoms:
            if not 0.0 < q <= 1.0:
                raise ValueError(f"atom location must be in (0, 1], got {q}")
            if not (math.isfinite(w) and w > 0.0):
                raise ValueError(f"atom weight must be positive and finite, got {w}")
        total = self.p_nf + math.fsum(w for _, w in atoms)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"p_nf + atom weights must sum to 1, got {total!r}")


class PointPredictive(Probability):
    """Predictive probability from a single-atom prior.

    Behaves as a float; ``degenerate`` is True when the inputs conditioned on
    a zero-probability event (p_nf = 0, q = 1, r >= 1) and the value is the
    q -> 1 limit.
    """

    __slots__ = ("degenerate",)

    degenerate: bool

    def __new__(cls, value: float, degenerate: bool = False) -> "PointPredictive":
        self = super().__new__(cls, value)
        self.degenerate = degenerate
        return self


@dataclass(frozen=True)
class SurvivalPrediction:
    """Conservative lower bound on surviving n further demands after r successes."""

    lower_bound: Probability
    worst_case_q: Probability
    floor: Probability
    r: int
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower_bound", Probability(self.lower_bound))
        object.__setattr__(self, "worst_case_q", Probability(self.worst_case_q))
        object.__setattr__(self, "floor", Probability(self.floor))
        object.__setattr__(self, "r", check_demand_count(self.r, "r"))
        object.__setattr__(self, "n", check_demand_count(self.n, "n"))
        if self.lower_bound < self.floor:
            raise ValueError(
                f"lower_bound {self.lower_bound!r} below floor {self.floor!r}"
            )

    @property
    def excess_over_floor(self) -> float:
        return float(self.lower_bound) - float(self.floor)


@dataclass(frozen=True)
class SweepRow:
    """One cell of a worst-case sweep, in the CSV column order."""

    p_nf: float
    r: int
    n: int
    lower_bound: float
    worst_case_q: float
    excess_over_floor: float


def _logsumexp(values: Iterable[float]) -> float:
    vals = list(values)
    m = max(vals)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(v - m) for v in vals))


def _evidence_count(r: "int | Evidence") -> int:
    if isinstance(r, Evidence):
        return r.r
    return check_demand_count(r, "r")


def _log_point_predictive(a: float, q: float, r: int, n: int) -> tuple[float, bool]:
    """log g(q) for the point-mass prior, plus a degenerate-conditioning flag."""
    if n == 0 or q == 0.0 or a == 1.0:
        return 0.0, False
    if q == 1.0:
        if r == 0:
            return (math.log(a) if a > 0.0 else -math.inf), False
        if a > 0.0:
            return 0.0, False  # surviving r demands at q = 1 forces the fault-free branch
        return -math.inf, True  # q -> 1 limit of (1 - q)**n, n >= 1
    if a == 0.0:
        return n * math.log1p(-q), False
    log_a = math.log(a)
    log_b = math.log1p(-a)
    lu = math.log1p(-q)
    log_num = np.logaddexp(log_a, log_b + (r + n) * lu)
    log_den = np.logaddexp(log_a, log_b + r * lu)
    return float(log_num - log_den), False


def _log_predictive_vec(a: float, q: np.ndarray, r: int, n: int) -> np.ndarray:
    """Vectorized log g(q) over an array of q in [0, 1]; n >= 1 assumed.

    At q == 1 with a == 0 and r >= 1 the entry is the q -> 1 limit (-inf).
    """
    with np.errstate(divide="ignore"):
        lu = np.log1p(-q)  # -inf at q == 1
    if a == 0.0:
        return n * lu
    log_a = math.log(a)
    if a == 1.0:
        return np.zeros_like(lu)
    log_b = math.log1p(-a)
    log_num = np.logaddexp(log_a, log_b + (r + n) * lu)
    log_den = np.logaddexp(log_a, log_b + r * lu) if r > 0 else 0.0
    return log_num - log_den


def predictive_given_point_prior(
    p_nf: float, q: float, r: int, n: int
) -> PointPredictive:
    """Probability of surviving n further demands after r failure-free ones,
    under the prior "fault-free with probability p_nf, else failure rate exactly q".

    Evaluates g(q) in the log domain.  The degenerate combination
    p_nf = 0, q = 1, r >= 1 conditions on a zero-probability event; the result
    is the q -> 1 limit and is flagged rather than raised.
    """
    a = Probability(p_nf)
    qv = Probability(q)
    r = check_demand_count(r, "r")
    n = check_demand_count(n, "n")
    log_g, degenerate = _log_point_predictive(float(a), float(qv), r, n)
    return PointPredictive(min(1.0, math.exp(log_g)), degenerate)


def _golden_min(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200):
    """Golden-section minimum of a unimodal f on [lo, hi]; returns (x, f(x))."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def _stationarity_root(a: float, r: int, n: int) -> float:
    """Location q* of the unique interior minimum of g, for a in (0,1), r,n >= 1.

    Clearing denominators in g'(q) = 0 gives, with u = 1 - q and b = 1 - a,

        a*(r + n)*u**n + b*n*u**(r + n) = a*r

    whose left side increases monotonically in u, so the root is found by
    bisection on x = log u.  Accuracy in x is pushed to float resolution so
    the stationarity residual stays negligible even for n ~ 10**9.
    """
    log_a = math.log(a)
    log_b = math.log1p(-a)
    log_rhs = log_a + math.log(r)
    c1 = log_a + math.log(r + n)
    c2 = log_b + math.log(n)

    def above(x: float) -> bool:
        return np.logaddexp(c1 + n * x, c2 + (r + n) * x) > log_rhs

    # At x_hi the first term alone equals the right side, so the sign is positive.
    x_hi = (math.log(r) - math.log(r + n)) / n
    step = max(1.0, abs(x_hi))
    x_lo = x_hi - step
    while above(x_lo):
        step *= 2.0
        x_lo = x_hi - step
        if not math.isfinite(x_lo):  # pragma: no cover - unreachable for valid inputs
            raise ArithmeticError("stationarity bracket search diverged")
    for _ in range(200):
        mid = 0.5 * (x_lo + x_hi)
        if mid <= x_lo or mid >= x_hi:
            break
        if above(mid):
            x_hi = mid
        else:
            x_lo = mid
    return -math.expm1(x_hi)  # q* = 1 - exp(x)


def _scan_grid() -> np.ndarray:
    lo = np.geomspace(_SCAN_Q_FLOOR, 0.5, _SCAN_POINTS_PER_SIDE)
    hi = 1.0 - np.geomspace(0.5, _SCAN_Q_FLOOR, _SCAN_POINTS_PER_SIDE)
    return np.unique(np.concatenate([lo, hi]))  # in (0, 1]; near-1 values collapse onto 1.0


def _prediction(value: float, q: float, p_nf: float, r: int, n: int) -> SurvivalPrediction:
    clamped = min(1.0, max(float(p_nf), value))
    return SurvivalPrediction(
        lower_bound=Probability(clamped),
        worst_case_q=Probability(q),
        floor=Probability(p_nf),
        r=r,
        n=n,
    )


def worst_case_survival(p_nf: float, r: "int | Evidence", n: int) -> SurvivalPrediction:
    """Minimum over q in [0, 1] of the point-prior predictive, with its location.

    This is the guaranteed-conservative bound: no prior consistent with the
    given p_nf can yield a lower posterior predictive survival probability.
    With r = 0 the minimum sits at q = 1 and equals the p_nf floor; otherwise
    the interior minimizer is bracketed by a coarse log-spaced scan, refined
    by golden section, and cross-checked against the stationarity root, which
    is preferred when the values tie.  The returned bound is within 1e-10 of
    the true minimum.
    """
    a = Probability(p_nf)
    r = _evidence_count(r)
    n = check_demand_count(n, "n")

    if n == 0 or a == 1.0:
        return _prediction(1.0, 0.0, a, r, n)
    if r == 0:
        return _prediction(float(a), 1.0, a, r, n)
    if a == 0.0:
        return _prediction(0.0, 1.0, a, r, n)

    qs = _scan_grid()
    logg = _log_predictive_vec(float(a), qs, r, n)
    i = int(np.argmin(logg))
    candidates: list[tuple[float, float]] = [
        (1.0, 0.0),  # g(0) = 1
        (1.0, 1.0),  # g(1) = 1 for a > 0, r >= 1
        (math.exp(float(logg[i])), float(qs[i])),
    ]

    lo_i, hi_i = max(i - 1, 0), min(i + 1, len(qs) - 1)

    def g_scalar(q: float) -> float:
        return _log_point_predictive(float(a), q, r, n)[0]

    if qs[i] <= 0.5:
        x, fx = _golden_min(
            lambda x: g_scalar(math.exp(x)), math.log(qs[lo_i]), math.log(qs[hi_i])
        )
        candidates.append((math.exp(fx), math.exp(x)))
    else:
        u_lo = max(1.0 - qs[hi_i], 1e-20)
        u_hi = 1.0 - qs[lo_i]
        x, fx = _golden_min(
            lambda x: g_scalar(-math.expm1(x)), math.log(u_lo), math.log(u_hi)
        )
        candidates.append((math.exp(fx), -math.expm1(x)))

    q_root = _stationarity_root(float(a), r, n)
    root_value = math.exp(g_scalar(q_root))
    candidates.append((root_value, q_root))

    best = min(v for v, _ in candidates)
    if root_value <= best + _TIE_TOL:
        # The stationary point is the unique interior minimizer; prefer it so the
        # reported q satisfies the derivative condition, not just the value.
        return _prediction(root_value, q_root, a, r, n)
    value, q = min((v, q) for v, q in candidates if v <= best + _TIE_TOL)
    return _prediction(value, q, a, r, n)


def grid_worst_case(p_nf: float, r: "int | Evidence", n: int, K: int) -> SurvivalPrediction:
    """Brute-force minimum of the point-prior predictive over a fixed grid.

    The grid is K - 1 points log-spaced in q over [1e-15, 1] plus the
    endpoints {0, 1}; a uniform grid in q would waste nearly all its points
    because the minimizer typically sits near q ~ 1 / (r + n).  Ties resolve
    to the smallest q.  This is the oracle worst_case_survival is checked
    against; it deliberately shares no search logic with the optimizer.
    """
    a = Probability(p_nf)
    r = _evidence_count(r)
    n = check_demand_count(n, "n")
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")

    if n == 0:
        return _prediction(1.0, 0.0, a, r, n)

    qs = np.concatenate([[0.0], np.geomspace(_GRID_Q_MIN, 1.0, K - 1), [1.0]])
    logg = _log_predictive_vec(float(a), qs, r, n)
    # a == 0, q == 1, r >= 1 divides -inf by -inf; patch with the q -> 1 limit.
    logg = np.where(np.isnan(logg), -math.inf, logg)
    i = int(np.argmin(logg))
    return _prediction(math.exp(float(logg[i])), float(qs[i]), a, r, n)


def posterior_predictive_discrete(prior: DiscretePrior, r: "int | Evidence", n: int) -> Probability:
    """Exact Bayesian posterior predictive for a finite mixture prior.

    Returns
        (p_nf + sum_i w_i (1 - q_i)**(r + n)) / (p_nf + sum_i w_i (1 - q_i)**r)

    computed with log-sum-exp over the atom terms.

    Raises:
        DegenerateConditioningError: if the denominator is zero, i.e. the
            prior gives the observed r failure-free demands no probability.
    """
    r = _evidence_count(r)
    n = check_demand_count(n, "n")
    log_pnf = prior.p_nf.log
    log_den_terms = [log_pnf] + [
        math.log(w) + log_survive_run(q, r) for q, w in prior.atoms
    ]
    log_den = _logsumexp(log_den_terms)
    if log_den == -math.inf:
        raise DegenerateConditioningError(
            f"prior assigns probability 0 to surviving r={r} demands"
        )
    log_num_terms = [log_pnf] + [
        math.log(w) + log_survive_run(q, r + n) for q, w in prior.atoms
    ]
    log_num = _logsumexp(log_num_terms)
    return Probability(min(1.0, math.exp(log_num - log_den)))


def sweep(
    p_nf_grid: Sequence[float],
    r_grid: Sequence[int],
    n_grid: Sequence[int],
) -> list[SweepRow]:
    """worst_case_survival over the Cartesian product of the three grids.

    Rows are emitted in input order, p_nf outermost and n innermost.
    """
    if not p_nf_grid or not r_grid or not n_grid:
        raise ValueError("sweep grids must be non-empty")
    rows = []
    for p_nf in p_nf_grid:
        for r in r_grid:
            for n in n_grid:
                pred = worst_case_survival(p_nf, r, n)
                rows.append(
                    SweepRow(
                        p_nf=float(pred.floor),
                        r=pred.r,
                        n=pred.n,
                        lower_bound=float(pred.lower_bound),
                        worst_case_q=float(pred.worst_case_q),
                        excess_over_floor=pred.excess_over_floor,
                    )
                )
    return rows
