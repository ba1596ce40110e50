"""Empirical verification of the limit theorem: finite-n statistics vs limits.

For entropy order alpha in [0,2)\\{1} the limit theorem says

    R_alpha(n) - log2(n/2)                         ->  R_alpha(inf)
    (T_alpha(n) + 1/(1-alpha))/(n/2)^(1-alpha)
        - 1/(1-alpha)                              ->  (I(alpha)-1)/(1-alpha)

and the conditional variants satisfy the analogous statement with the
variant's limiting constant.  This module computes those finite-n left-hand
sides over a schedule of times (via the closed-form distributions), compares
them with the limit constants from quadrature, and renders verdicts.

The finite-n statistic oscillates in n (the theorem's proof averages an
oscillatory integrand; no convergence rate is available), so the series also
carries a two-point parity average (mean of the n and n+1 statistics) for
display.  Verdicts always use the raw statistic: the final gap must be below
a configured threshold (default 0.05) and below the first gap.  Both numbers
are diagnostic defaults of this tool, not theorem-backed rates.

Order 0 is reported but marked INFORMATIONAL: finite-n order-0 entropy counts
support sites (~ log2 n growth beyond the theorem's normalization), so its
gap does not shrink, and verdicts must not treat that as a failure of the
order>0 statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coin import Coin, QubitState
from .entropy import (
    EnsemblePrior,
    _check_finite_order,
    combine_conditional,
    renyi,
    tsallis,
)
from .errors import DomainError
from .evolve import Distribution
from .closedform import closed_distribution
from .limitdist import (
    conditional_renyi_limit,
    make_limit_density,
    renyi_limit,
    tsallis_limit_const,
)

DEFAULT_SCHEDULE = (128, 256, 512, 1024, 2048, 4096, 8192)
DEFAULT_THRESHOLD = 0.05
MAX_SCHEDULE_N = 100_000
THRESHOLD_NOTE = (
    "verdict thresholds are diagnostic defaults of this tool; the underlying "
    "limit theorem states no rate of convergence"
)


@dataclass(frozen=True)
class ConvergenceSeries:
    """One finite-n statistic series against its limit constant."""

    label: str
    alpha: float
    schedule: tuple[int, ...]
    finite_values: tuple[float, ...]
    limit_value: float
    gaps: tuple[float, ...]
    smoothed_values: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not (len(self.schedule) == len(self.finite_values) == len(self.gaps)):
            raise DomainError("schedule, finite_values and gaps must have equal lengths")
        if self.smoothed_values is not None and len(self.smoothed_values) != len(self.schedule):
            raise DomainError("smoothed_values length must match the schedule")
        if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
            raise DomainError(f"schedule must be strictly increasing, got {self.schedule}")


@dataclass(frozen=True)
class SeriesVerdict:
    """Pass/fail summary of one series."""

    label: str
    alpha: float
    first_gap: float
    final_gap: float
    threshold: float
    trend: str  # PASS | FAIL | NOT-APPLICABLE
    below_threshold: bool
    verdict: str  # PASS | FAIL | INFORMATIONAL


@dataclass(frozen=True)
class Report:
    """All series plus their verdicts and the threshold provenance note."""

    series: tuple[ConvergenceSeries, ...]
    verdicts: tuple[SeriesVerdict, ...]
    threshold: float
    note: str = THRESHOLD_NOTE


def _validate_schedule(schedule) -> tuple[int, ...]:
    sched = tuple(int(n) for n in schedule)
    if not sched:
        raise DomainError("schedule must be nonempty")
    if any(n < 1 for n in sched):
        raise DomainError(f"schedule times must be >= 1, got {sched}")
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise DomainError(f"schedule must be strictly increasing, got {sched}")
    if sched[-1] > MAX_SCHEDULE_N:
        raise DomainError(f"schedule max {sched[-1]} exceeds the exact-computation bound {MAX_SCHEDULE_N}")
    return sched


def _renyi_stat(dist: Distribution, alpha: float) -> float:
    return renyi(dist, alpha) - math.log2(dist.n / 2.0)


def _tsallis_stat(dist: Distribution, alpha: float) -> float:
    c = 1.0 / (1.0 - alpha)
    return (tsallis(dist, alpha) + c) / (dist.n / 2.0) ** (1.0 - alpha) - c


def _series(
    label: str,
    alpha: float,
    schedule: tuple[int, ...],
    stat_at,  # n -> float
    limit_value: float,
    parity_average: bool,
) -> ConvergenceSeries:
    finite = tuple(stat_at(n) for n in schedule)
    smoothed = None
    if parity_average:
        smoothed = tuple(0.5 * (v + stat_at(n + 1)) for n, v in zip(schedule, finite))
    gaps = tuple(abs(v - limit_value) for v in finite)
    return ConvergenceSeries(
        label=label,
        alpha=alpha,
        schedule=schedule,
        finite_values=finite,
        limit_value=limit_value,
        gaps=gaps,
        smoothed_values=smoothed,
    )


def renyi_gap_series(
    coin: Coin,
    state: QubitState,
    alpha: float,
    schedule=DEFAULT_SCHEDULE,
    *,
    parity_average: bool = True,
    label: str | None = None,
) -> ConvergenceSeries:
    """R_alpha(n) - log2(n/2) over the schedule versus the limiting constant."""
    alpha = _check_finite_order(alpha)
    schedule = _validate_schedule(schedule)
    limit_value = renyi_limit(make_limit_density(coin, state), alpha)

    def stat_at(n: int) -> float:
        return _renyi_stat(closed_distribution(coin, state, n), alpha)

    return _series(label or f"renyi[alpha={alpha:g}]", alpha, schedule, stat_at, limit_value, parity_average)


def tsallis_scaled_series(
    coin: Coin,
    state: QubitState,
    alpha: float,
    schedule=DEFAULT_SCHEDULE,
    *,
    parity_average: bool = True,
    label: str | None = None,
) -> ConvergenceSeries:
    """The scaled Tsallis statistic over the schedule versus its limit constant."""
    alpha = _check_finite_order(alpha)
    schedule = _validate_schedule(schedule)
    limit_value = tsallis_limit_const(make_limit_density(coin, state), alpha)

    def stat_at(n: int) -> float:
        return _tsallis_stat(closed_distribution(coin, state, n), alpha)

    return _series(label or f"tsallis[alpha={alpha:g}]", alpha, schedule, stat_at, limit_value, parity_average)


def conditional_gap_series(
    variant: str,
    coin: Coin,
    prior: EnsemblePrior,
    alpha: float,
    schedule=DEFAULT_SCHEDULE,
    *,
    parity_average: bool = True,
    label: str | None = None,
) -> ConvergenceSeries:
    """Conditional-variant statistic R^variant_alpha(X_n|Y) - log2(n/2) versus its limit."""
    alpha = _check_finite_order(alpha)
    schedule = _validate_schedule(schedule)
    limit_value = conditional_renyi_limit(variant, coin, prior, alpha)

    def stat_at(n: int) -> float:
        values = [renyi(closed_distribution(coin, state, n), alpha) for state in prior.states]
        return combine_conditional(variant, prior.weights, values, alpha) - math.log2(n / 2.0)

    return _series(
        label or f"cond-{variant}[alpha={alpha:g}]", alpha, schedule, stat_at, limit_value, parity_average
    )


def convergence_report(series, threshold: float = DEFAULT_THRESHOLD) -> Report:
    """Verdicts for a collection of series.

    Trend: final gap < first gap (NOT-APPLICABLE for single-point schedules).
    Threshold: final gap < threshold.  Overall verdict is PASS when the
    threshold holds and the trend does not fail; order-0 series are marked
    INFORMATIONAL regardless (see module docstring).
    """
    series = tuple(series)
    if not series:
        raise DomainError("need at least one series")
    verdicts = []
    for s in series:
        first_gap, final_gap = s.gaps[0], s.gaps[-1]
        if len(s.schedule) == 1:
            trend = "NOT-APPLICABLE"
        else:
            trend = "PASS" if final_gap < first_gap else "FAIL"
        below = bool(final_gap < threshold)
        if s.alpha == 0.0:
            verdict = "INFORMATIONAL"
        elif below and trend != "FAIL":
            verdict = "PASS"
        else:
            verdict = "FAIL"
        verdicts.append(
            SeriesVerdict(
                label=s.label,
                alpha=s.alpha,
                first_gap=first_gap,
                final_gap=final_gap,
                threshold=threshold,
                trend=trend,
                below_threshold=below,
                verdict=verdict,
            )
        )
    return Report(series=series, verdicts=tuple(verdicts), threshold=threshold)
