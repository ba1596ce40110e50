"""Request/response schemas for the HTTP service.

Complex scalars (coin entries, state amplitudes) travel as Python complex
literals in strings because JSON has no complex type.  Entropy orders travel
as plain floats; operations that exclude an order reject it server-side with
a 422 naming the order.
"""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..coin import Coin, QubitState, make_coin, named_coin
from ..convergence import DEFAULT_THRESHOLD
from ..entropy import VARIANTS, EnsemblePrior
from ..errors import BadParameter
from ..serialize import parse_complex, parse_state


class CoinSpec(BaseModel):
    """A coin given either by name ('hadamard', 'rotation(pi/3)') or by entries."""

    name: Optional[str] = None
    a: Optional[str] = None
    b: Optional[str] = None
    delta: str = "1"

    def build(self) -> Coin:
        if self.name is not None:
            if self.a is not None or self.b is not None:
                raise BadParameter("give either a coin name or entries a/b, not both")
            return named_coin(self.name)
        if self.a is None or self.b is None:
            raise BadParameter("coin needs either a name or both entries a and b")
        return make_coin(parse_complex(self.a), parse_complex(self.b), parse_complex(self.delta))


class StateSpec(BaseModel):
    """An initial qubit state: named ('left', 'right', 'symmetric', 'random') or amplitudes."""

    name: Optional[str] = None
    alpha: Optional[str] = None
    beta: Optional[str] = None

    def build(self, rng: Optional[np.random.Generator] = None) -> QubitState:
        if self.name is not None:
            if self.alpha is not None or self.beta is not None:
                raise BadParameter("give either a state name or amplitudes alpha/beta, not both")
            return parse_state(self.name, rng)
        if self.alpha is None or self.beta is None:
            raise BadParameter("state needs either a name or both amplitudes alpha and beta")
        from ..coin import make_state

        return make_state(parse_complex(self.alpha), parse_complex(self.beta))


class EnsembleEntrySpec(BaseModel):
    alpha: str
    beta: str
    weight: float


class _EnsembleMixin(BaseModel):
    state: Optional[StateSpec] = None
    ensemble: Optional[list[EnsembleEntrySpec]] = None

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.state is None) == (self.ensemble is None):
            raise ValueError("give exactly one of 'state' or 'ensemble'")
        return self

    def build_prior(self, rng: Optional[np.random.Generator] = None) -> EnsemblePrior:
        """The prior over initial states; a lone state becomes a weight-1 ensemble."""
        if self.state is not None:
            return EnsemblePrior(
                states=(self.state.build(rng),), weights=np.array([1.0], dtype=np.float64)
            )
        from ..coin import make_state

        states = tuple(
            make_state(parse_complex(e.alpha), parse_complex(e.beta)) for e in self.ensemble
        )
        weights = np.array([e.weight for e in self.ensemble], dtype=np.float64)
        return EnsemblePrior(states=states, weights=weights)


def check_variants(variants: Optional[list[str]], have_ensemble: bool) -> list[str]:
    """Resolve the conditional-variant list; [] when no ensemble is in play."""
    if not have_ensemble:
        if variants:
            raise BadParameter("conditional variants require an ensemble")
        return []
    if variants is None or not variants:
        return list(VARIANTS)
    bad = [v for v in variants if v not in VARIANTS]
    if bad:
        raise BadParameter(f"unknown conditional variants {bad}; choose from {list(VARIANTS)}")
    # dedupe, keep caller order
    return list(dict.fromkeys(variants))


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


class SimulateRequest(BaseModel):
    coin: CoinSpec
    state: StateSpec
    schedule: list[int] = Field(min_length=1)
    method: Literal["evolve", "closedform"] = "evolve"
    seed: Optional[int] = None


class DistributionPayload(BaseModel):
    n: int
    support: list[int]
    probs: list[float]


class SimulateResponse(BaseModel):
    distributions: list[DistributionPayload]


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------


class EntropyRequest(_EnsembleMixin):
    coin: CoinSpec
    orders: list[float] = Field(min_length=1)
    schedule: list[int] = Field(min_length=1)
    variants: Optional[list[str]] = None
    method: Literal["evolve", "closedform"] = "evolve"
    seed: Optional[int] = None


class EntropyRow(BaseModel):
    n: int
    alpha: float
    tsallis: float
    renyi: float
    conditional: dict[str, float] = {}


class EntropyResponse(BaseModel):
    variants: list[str]
    rows: list[EntropyRow]


# ---------------------------------------------------------------------------
# limit
# ---------------------------------------------------------------------------


class LimitRequest(_EnsembleMixin):
    coin: CoinSpec
    orders: list[float] = Field(min_length=1)
    variants: Optional[list[str]] = None
    seed: Optional[int] = None


class LimitRow(BaseModel):
    alpha: float
    integral: float
    integral_error: float
    renyi_limit: float
    tsallis_limit: float
    conditional: dict[str, float] = {}


class LimitResponse(BaseModel):
    variants: list[str]
    rows: list[LimitRow]


# ---------------------------------------------------------------------------
# converge
# ---------------------------------------------------------------------------


class ConvergeRequest(_EnsembleMixin):
    coin: CoinSpec
    orders: list[float] = Field(min_length=1)
    schedule: Optional[list[int]] = None
    variants: Optional[list[str]] = None
    statistics: list[Literal["renyi", "tsallis"]] = ["renyi", "tsallis"]
    threshold: float = DEFAULT_THRESHOLD
    parity_average: bool = True
    seed: Optional[int] = None


class SeriesPayload(BaseModel):
    label: str
    alpha: float
    schedule: list[int]
    finite_values: list[float]
    smoothed_values: Optional[list[float]] = None
    limit_value: float
    gaps: list[float]


class VerdictPayload(BaseModel):
    label: str
    alpha: float
    first_gap: float
    final_gap: float
    threshold: float
    trend: str
    below_threshold: bool
    verdict: str


class ConvergeResponse(BaseModel):
    threshold: float
    note: str
    series: list[SeriesPayload]
    verdicts: list[VerdictPayload]
