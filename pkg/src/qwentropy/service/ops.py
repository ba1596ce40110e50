"""Pure operation layer behind the HTTP endpoints (and the in-process CLI).

Each function takes a validated request model and returns a response model;
domain errors propagate as the package's exception types and are mapped to
HTTP statuses (or exit codes) by the callers.

Ensemble semantics: the unconditional tsallis/renyi columns describe the
prior-averaged (mixture) position distribution; the conditional columns apply
the requested variants.  At the limit the mixture's density stays in the same
parametric family (the drift coefficient averages), so the unconditional
limit columns use that density.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..closedform import closed_distribution
from ..coin import Coin, QubitState
from ..convergence import (
    DEFAULT_SCHEDULE,
    conditional_gap_series,
    convergence_report,
    renyi_gap_series,
    tsallis_scaled_series,
)
from ..entropy import EnsemblePrior, combine_conditional, renyi, tsallis
from ..evolve import Distribution, run
from ..limitdist import (
    conditional_renyi_limit,
    integral_falpha,
    make_limit_density,
    mixture_density,
    renyi_limit,
    tsallis_limit_const,
)
from .models import (
    ConvergeRequest,
    ConvergeResponse,
    DistributionPayload,
    EntropyRequest,
    EntropyResponse,
    EntropyRow,
    LimitRequest,
    LimitResponse,
    LimitRow,
    SeriesPayload,
    SimulateRequest,
    SimulateResponse,
    VerdictPayload,
    check_variants,
)


def _rng(seed: Optional[int]) -> Optional[np.random.Generator]:
    return None if seed is None else np.random.default_rng(seed)


def _distribution(coin: Coin, state: QubitState, n: int, method: str) -> Distribution:
    """One position distribution; the closed form needs n >= 1, so n = 0 evolves."""
    if method == "closedform" and n >= 1:
        return closed_distribution(coin, state, n)
    return run(coin, state, n)


def _mixture(dists: list[Distribution], weights: np.ndarray) -> Distribution:
    probs = np.zeros_like(dists[0].probs)
    for w, d in zip(weights, dists):
        probs += float(w) * d.probs
    return Distribution(n=dists[0].n, support=dists[0].support, probs=probs)


def _payload(dist: Distribution) -> DistributionPayload:
    return DistributionPayload(
        n=int(dist.n), support=[int(x) for x in dist.support], probs=[float(p) for p in dist.probs]
    )


def run_simulate(req: SimulateRequest) -> SimulateResponse:
    coin = req.coin.build()
    state = req.state.build(_rng(req.seed))
    dists = [_distribution(coin, state, n, req.method) for n in req.schedule]
    return SimulateResponse(distributions=[_payload(d) for d in dists])


def run_entropy(req: EntropyRequest) -> EntropyResponse:
    coin = req.coin.build()
    prior = req.build_prior(_rng(req.seed))
    variants = check_variants(req.variants, have_ensemble=req.ensemble is not None)
    rows = []
    for n in req.schedule:
        per_state = [_distribution(coin, state, n, req.method) for state in prior.states]
        mix = _mixture(per_state, prior.weights)
        for alpha in req.orders:
            t = tsallis(mix, alpha)  # rejects the excluded orders first
            r = renyi(mix, alpha)
            conditional = {}
            if variants:
                values = [renyi(d, alpha) for d in per_state]
                conditional = {
                    v: combine_conditional(v, prior.weights, values, alpha) for v in variants
                }
            rows.append(EntropyRow(n=n, alpha=alpha, tsallis=t, renyi=r, conditional=conditional))
    return EntropyResponse(variants=variants, rows=rows)


def run_limit(req: LimitRequest) -> LimitResponse:
    coin = req.coin.build()
    prior = req.build_prior(_rng(req.seed))
    variants = check_variants(req.variants, have_ensemble=req.ensemble is not None)
    density = mixture_density(coin, prior)
    rows = []
    for alpha in req.orders:
        r = renyi_limit(density, alpha)  # rejects the excluded orders first
        value, err = integral_falpha(density, alpha)
        t = tsallis_limit_const(density, alpha)
        conditional = {}
        if variants:
            conditional = {v: conditional_renyi_limit(v, coin, prior, alpha) for v in variants}
        rows.append(
            LimitRow(
                alpha=alpha,
                integral=value,
                integral_error=err,
                renyi_limit=r,
                tsallis_limit=t,
                conditional=conditional,
            )
        )
    return LimitResponse(variants=variants, rows=rows)


def run_converge(req: ConvergeRequest) -> ConvergeResponse:
    coin = req.coin.build()
    schedule = tuple(req.schedule) if req.schedule is not None else DEFAULT_SCHEDULE
    series = []
    if req.ensemble is not None:
        prior = req.build_prior(_rng(req.seed))
        variants = check_variants(req.variants, have_ensemble=True)
        for alpha in req.orders:
            for variant in variants:
                series.append(
                    conditional_gap_series(
                        variant, coin, prior, alpha, schedule, parity_average=req.parity_average
                    )
                )
    else:
        check_variants(req.variants, have_ensemble=False)
        state = req.state.build(_rng(req.seed))
        for alpha in req.orders:
            if "renyi" in req.statistics:
                series.append(
                    renyi_gap_series(coin, state, alpha, schedule, parity_average=req.parity_average)
                )
            if "tsallis" in req.statistics:
                series.append(
                    tsallis_scaled_series(
                        coin, state, alpha, schedule, parity_average=req.parity_average
                    )
                )
    report = convergence_report(series, threshold=req.threshold)
    return ConvergeResponse(
        threshold=report.threshold,
        note=report.note,
        series=[
            SeriesPayload(
                label=s.label,
                alpha=s.alpha,
                schedule=list(s.schedule),
                finite_values=[float(v) for v in s.finite_values],
                smoothed_values=None
                if s.smoothed_values is None
                else [float(v) for v in s.smoothed_values],
                limit_value=float(s.limit_value),
                gaps=[float(g) for g in s.gaps],
            )
            for s in report.series
        ],
        verdicts=[
            VerdictPayload(
                label=v.label,
                alpha=v.alpha,
                first_gap=v.first_gap,
                final_gap=v.final_gap,
                threshold=v.threshold,
                trend=v.trend,
                below_threshold=v.below_threshold,
                verdict=v.verdict,
            )
            for v in report.verdicts
        ],
    )
