"""Tsallis, Renyi, Shannon, and min-entropy of walk distributions, plus the
five conditional Renyi variants for ensembles of initial states.

Entropy orders are plain floats with two distinguished sentinel values:
``SHANNON`` (the order-1 limit) and ``MIN`` (the order-infinity limit).
Finite-order operations reject both with BadOrder.

The conditional variants, each a different way to condition Renyi entropy of
the walk position X on the random initial state Y:

    C  : mean of per-outcome entropies        sum_y P(y) R_a(X|Y=y)
    JA : joint minus marginal                 R_a(X,Y) - R_a(Y)
    RW : worst case                           (1/(1-a)) log2 max_y sum_x P(x|y)^a
    A  : a-mean of per-outcome power sums     (a/(1-a)) log2 sum_y P(y) (sum_x P(x|y)^a)^(1/a)
    H  : plain mean of power sums             (1/(1-a)) log2 sum_y P(y) sum_x P(x|y)^a

Each also has a computed form in terms of the per-outcome entropies
R_a(X|Y=y) alone; ``conditional_renyi`` evaluates the computed forms and
``conditional_renyi_direct`` evaluates the definitions, so the pair acts as a
self-check of the reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coin import Coin, QubitState
from .errors import BadOrder, BadParameter, DomainError, NotNormalized, VariantDomain
from .evolve import Distribution, run

SHANNON = 1.0
MIN = math.inf

VARIANTS = ("C", "JA", "RW", "A", "H")

_WEIGHT_TOL = 1e-12


def _check_finite_order(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0.0 or alpha == 1.0:
        raise BadOrder(f"order must be finite, >= 0 and != 1, got {alpha!r}")
    return alpha


def _power_sum(probs: np.ndarray, alpha: float) -> float:
    """sum p^alpha over strictly positive entries, descending order, 0^alpha := 0."""
    p = probs[probs > 0.0]
    if alpha == 0.0:
        return float(p.size)
    p = np.sort(p)[::-1]
    if alpha > 1.0:
        # p^alpha via exp2(alpha*log2 p): keeps tiny tail terms from flushing
        # through an intermediate subnormal before the sum.
        terms = np.exp2(alpha * np.log2(p))
    else:
        terms = p**alpha
    return math.fsum(terms.tolist())


def _renyi_of_probs(probs: np.ndarray, alpha: float) -> float:
    if alpha == 0.0:
        return math.log2(np.count_nonzero(probs > 0.0))
    return math.log2(_power_sum(probs, alpha)) / (1.0 - alpha)


def renyi(dist: Distribution, alpha: float) -> float:
    """Renyi entropy in bits; accepts finite orders, SHANNON, and MIN."""
    probs = dist.probs
    if alpha == MIN:
        return -math.log2(float(probs.max()))
    if alpha == SHANNON:
        p = probs[probs > 0.0]
        return -math.fsum((p * np.log2(p)).tolist())
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0.0:
        raise BadOrder(f"order must be >= 0, got {alpha!r}")
    return _renyi_of_probs(probs, alpha)


def tsallis(dist: Distribution, alpha: float) -> float:
    """Tsallis entropy (1/(1-alpha)) (sum p^alpha - 1); finite alpha != 1 only."""
    alpha = _check_finite_order(alpha)
    return (_power_sum(dist.probs, alpha) - 1.0) / (1.0 - alpha)


def tsallis_from_renyi(r: float, alpha: float) -> float:
    """The one-to-one correspondence T = (2^((1-alpha) R) - 1)/(1-alpha)."""
    alpha = _check_finite_order(alpha)
    return math.expm1((1.0 - alpha) * r * math.log(2.0)) / (1.0 - alpha)


@dataclass(frozen=True, eq=False)
class EnsemblePrior:
    """A finite ensemble of initial states with prior weights summing to 1."""

    states: tuple[QubitState, ...]
    weights: np.ndarray

    def __post_init__(self) -> None:
        if len(self.states) == 0:
            raise DomainError("ensemble must contain at least one state")
        w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (len(self.states),):
            raise DomainError(f"{len(self.states)} states but {w.shape} weights")
        if np.any(w < 0.0):
            raise NotNormalized(f"negative ensemble weight {float(w.min())!r}")
        total = math.fsum(w.tolist())
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise NotNormalized(f"ensemble weights sum to {total!r}, expected 1 within {_WEIGHT_TOL}")
        object.__setattr__(self, "weights", w)
        w.setflags(write=False)


def make_prior(entries: Sequence[tuple[QubitState, float]]) -> EnsemblePrior:
    """Build an EnsemblePrior from (state, weight) pairs."""
    states = tuple(s for s, _ in entries)
    weights = np.array([w for _, w in entries], dtype=np.float64)
    return EnsemblePrior(states=states, weights=weights)


def _check_variant(variant: str, alpha: float) -> str:
    if variant not in VARIANTS:
        raise BadParameter(f"unknown conditional variant {variant!r}; expected one of {VARIANTS}")
    if variant == "A" and alpha == 0.0:
        raise VariantDomain("variant A is undefined at order 0 (exponent (1-alpha)/alpha)")
    return variant


def combine_conditional(variant: str, weights: np.ndarray, values: Sequence[float], alpha: float) -> float:
    """The computed form of a conditional variant from per-outcome Renyi values.

    ``values[y]`` is R_alpha(X|Y=y); weights are the prior.  This same
    reduction applies verbatim to finite-n entropies and to their limits, so
    the finite-n conditional entropies, the limiting constants, and the
    convergence series all share it.
    """
    alpha = _check_finite_order(alpha)
    _check_variant(variant, alpha)
    w = np.asarray(weights, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    if w.shape != v.shape:
        raise DomainError(f"weights shape {w.shape} != values shape {v.shape}")
    mask = w > 0.0
    wm, vm = w[mask], v[mask]
    if variant == "C":
        return math.fsum((wm * vm).tolist())
    if variant == "RW":
        return float(vm.max()) if alpha < 1.0 else float(vm.min())
    if variant == "JA":
        inner = math.fsum((wm**alpha * np.exp2((1.0 - alpha) * vm)).tolist())
        return math.log2(inner) / (1.0 - alpha) - _renyi_of_probs(w, alpha)
    if variant == "A":
        inner = math.fsum((wm * np.exp2(((1.0 - alpha) / alpha) * vm)).tolist())
        return (alpha / (1.0 - alpha)) * math.log2(inner)
    # H
    inner = math.fsum((wm * np.exp2((1.0 - alpha) * vm)).tolist())
    return math.log2(inner) / (1.0 - alpha)


def conditional_renyi(variant: str, coin: Coin, prior: EnsemblePrior, n: int, alpha: float) -> float:
    """Conditional Renyi entropy of the walk position given the initial state,
    by the computed form: per-state walks are evolved and their Renyi
    entropies combined per the variant."""
    if n < 1:
        raise DomainError(f"step count must be >= 1, got {n}")
    alpha = _check_finite_order(alpha)
    _check_variant(variant, alpha)
    values = [renyi(run(coin, state, n), alpha) for state in prior.states]
    return combine_conditional(variant, prior.weights, values, alpha)


def conditional_renyi_direct(
    variant: str, per_outcome: Sequence[tuple[float, Distribution]], alpha: float
) -> float:
    """Conditional Renyi entropy straight from the defining expressions.

    ``per_outcome`` pairs each outcome's prior weight with its conditional
    position distribution (all at the same time n).  This is the oracle the
    computed forms are checked against.
    """
    alpha = _check_finite_order(alpha)
    _check_variant(variant, alpha)
    if not per_outcome:
        raise DomainError("need at least one outcome")
    times = {d.n for _, d in per_outcome}
    if len(times) != 1:
        raise DomainError(f"all distributions must share one time, got n in {sorted(times)}")
    w = np.array([wt for wt, _ in per_outcome], dtype=np.float64)
    if np.any(w < 0.0) or abs(math.fsum(w.tolist()) - 1.0) > _WEIGHT_TOL:
        raise NotNormalized("outcome weights must be a probability vector")
    active = [(float(wy), d) for wy, (_, d) in zip(w, per_outcome) if wy > 0.0]

    if variant == "C":
        return math.fsum(wy * _renyi_of_probs(d.probs, alpha) for wy, d in active)
    if variant == "RW":
        sums = [_power_sum(d.probs, alpha) for _, d in active]
        return math.log2(max(sums)) / (1.0 - alpha)
    if variant == "JA":
        # explicit joint table over (y, x)
        joint = np.concatenate([wy * d.probs for wy, d in active])
        r_joint = math.log2(_power_sum(joint, alpha)) / (1.0 - alpha)
        return r_joint - _renyi_of_probs(w, alpha)
    if variant == "A":
        inner = math.fsum(wy * _power_sum(d.probs, alpha) ** (1.0 / alpha) for wy, d in active)
        return (alpha / (1.0 - alpha)) * math.log2(inner)
    # H
    inner = math.fsum(wy * _power_sum(d.probs, alpha) for wy, d in active)
    return math.log2(inner) / (1.0 - alpha)
