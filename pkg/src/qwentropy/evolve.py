"""Direct evolution of a coined walk on the integer line.

After n steps the walk occupies positions x in {-n, -n+2, ..., n}.  We store
the two chirality amplitudes on that support as arrays of length n + 1, index
i corresponding to position x = -n + 2*i.  One step maps

    psi_{n+1}(x) = P psi_n(x+1) + Q psi_n(x-1)

with P/Q the top/bottom row of the coin, which in array form is

    newL[0:n+1] = a*L + b*R        (shift from the right neighbour)
    newR[1:n+2] = c*L + d*R        (shift from the left neighbour)

Amplitudes are kept in extended-precision complex arrays; probabilities are
returned as float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coin import Coin, QubitState
from .errors import DomainError, NotNormalized

_DEFAULT_NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Distribution:
    """Position distribution after n steps: support -n..n in steps of 2."""

    n: int
    support: np.ndarray  # int64, length n + 1
    probs: np.ndarray  # float64, length n + 1

    def __post_init__(self) -> None:
        self.support.setflags(write=False)
        self.probs.setflags(write=False)

    def validate(self, norm_tol: float = _DEFAULT_NORM_TOL) -> None:
        """Check nonnegativity and unit total mass; raise NotNormalized otherwise."""
        if self.probs.shape != (self.n + 1,):
            raise NotNormalized(f"expected {self.n + 1} probabilities, got {self.probs.shape}")
        if np.any(self.probs < 0.0):
            worst = float(self.probs.min())
            raise NotNormalized(f"negative probability {worst!r}")
        total = math.fsum(self.probs.tolist())
        if abs(total - 1.0) > norm_tol:
            raise NotNormalized(f"total mass {total!r} differs from 1 by more than {norm_tol}")

    def norm_defect(self) -> float:
        """Signed deviation of the total mass from 1."""
        return math.fsum(self.probs.tolist()) - 1.0


@dataclass(frozen=True, eq=False)
class AmplitudeField:
    """Chirality amplitudes on the step-n support, extended precision."""

    n: int
    left: np.ndarray  # clongdouble, length n + 1
    right: np.ndarray  # clongdouble, length n + 1

    def __post_init__(self) -> None:
        self.left.setflags(write=False)
        self.right.setflags(write=False)

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1, 2, dtype=np.int64)

    def distribution(self) -> Distribution:
        p_ext = np.abs(self.left) ** 2 + np.abs(self.right) ** 2
        return Distribution(
            n=self.n,
            support=self.positions,
            probs=p_ext.astype(np.float64),
        )


def initial_field(state: QubitState) -> AmplitudeField:
    """The walk at step 0: all mass at the origin with the given chirality."""
    return AmplitudeField(
        n=0,
        left=np.array([state.alpha], dtype=np.clongdouble),
        right=np.array([state.beta], dtype=np.clongdouble),
    )


def step(field: AmplitudeField, coin: Coin) -> AmplitudeField:
    """Advance the field by one coined step."""
    m = field.n
    new_left = np.empty(m + 2, dtype=np.clongdouble)
    new_right = np.empty(m + 2, dtype=np.clongdouble)
    new_left[: m + 1] = coin.a * field.left + coin.b * field.right
    new_left[m + 1] = 0
    new_right[0] = 0
    new_right[1:] = coin.c * field.left + coin.d * field.right
    return AmplitudeField(n=m + 1, left=new_left, right=new_right)


def run(coin: Coin, state: QubitState, n: int, *, norm_tol: float = _DEFAULT_NORM_TOL) -> Distribution:
    """Evolve n steps and return the validated position distribution.

    n = 0 returns the point mass at the origin.
    """
    if n < 0:
        raise DomainError(f"step count must be >= 0, got {n}")
    field = initial_field(state)
    for _ in range(n):
        field = step(field, coin)
    dist = field.distribution()
    dist.validate(norm_tol)
    return dist
