"""The weak-limit density of the rescaled walk and its entropy constants.

For a coin with all entries nonzero, the position X_n/n converges weakly to
the density

    f(x) = |b| (1 - c1 x) / (pi (1 - x^2) sqrt(|a|^2 - x^2)),   |x| < |a|,

with drift coefficient c1 = |alpha|^2 - |beta|^2
+ (a alpha conj(b beta) + conj(a alpha) b beta)/|a|^2.

The limiting Renyi constant is (1/(1-alpha)) log2 I(alpha) with
I(alpha) = integral of f^alpha over the support; the Tsallis constant is
(I(alpha) - 1)/(1-alpha).  I(alpha) is finite exactly for alpha < 2: the
endpoint factor (|a|^2 - x^2)^(-alpha/2) is non-integrable from alpha = 2 on.

Quadrature: the substitution x = |a| sin(theta) removes the square-root
endpoint singularity, leaving an integrand ~ cos(theta)^(1-alpha) on
(-pi/2, pi/2) — bounded for alpha <= 1, weakly singular for 1 < alpha < 2 —
which a double-exponential (tanh-sinh) rule handles.  Levels double until two
successive estimates differ by < 1e-10 (or 12 levels); the final difference,
plus a tail sentinel for the truncated node range, is the reported error
estimate, and NonConvergedQuadrature is raised when it exceeds 1e-8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coin import Coin, QubitState
from .entropy import EnsemblePrior, _check_finite_order, combine_conditional
from .errors import (
    BadOrder,
    CoinDegenerate,
    DivergentIntegral,
    DomainError,
    NonConvergedQuadrature,
)

_QUAD_TOL = 1e-10
_QUAD_MAX_LEVEL = 12
_QUAD_ERR_LIMIT = 1e-8
_T_MAX = 12.0  # node range; weights underflow to 0 well before this for alpha not near 2


@dataclass(frozen=True)
class LimitDensity:
    """Parameters of the limit density: support half-width |a|, |b|, and drift c1."""

    absA: float
    absB: float
    drift: float


def make_limit_density(coin: Coin, state: QubitState) -> LimitDensity:
    """Extract the density parameters; requires all coin entries nonzero.

    Nonnegativity of the bracket 1 - c1 x is asserted on a grid of 1e4
    interior points (it holds for every unit state, so a violation flags an
    inconsistent input or an implementation fault).
    """
    if coin.is_degenerate:
        raise CoinDegenerate("the limit density requires all four coin entries nonzero")
    a2, b2 = coin.abs_a_sq, coin.abs_b_sq
    abs_a = math.sqrt(a2)
    abs_b = math.sqrt(b2)
    alpha2 = float(np.abs(state.alpha) ** 2)
    beta2 = float(np.abs(state.beta) ** 2)
    cross = float(2.0 * np.real(coin.a * state.alpha * np.conj(coin.b * state.beta)))
    drift = alpha2 - beta2 + cross / a2
    xs = np.linspace(-abs_a, abs_a, 10_002)[1:-1]
    if np.any(1.0 - drift * xs < -1e-12):
        raise DomainError(f"density bracket 1 - c1 x negative on the support (c1 = {drift!r})")
    return LimitDensity(absA=abs_a, absB=abs_b, drift=drift)


def density_at(ld: LimitDensity, x: float) -> float:
    """f(x); zero at and outside the endpoints +-|a| by the support convention."""
    if abs(x) >= ld.absA:
        return 0.0
    bracket = max(1.0 - ld.drift * x, 0.0)
    return ld.absB * bracket / (math.pi * (1.0 - x * x) * math.sqrt(ld.absA**2 - x * x))


def _tanh_sinh(g: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> tuple[float, float]:
    """Integrate g over theta in (-pi/2, pi/2) with the double-exponential rule.

    ``g(sin_theta, cos_theta)`` must evaluate vectorized; cos_theta is passed
    explicitly because near the endpoints it is computed from the stable
    complement 1 - |u| rather than from u itself (u saturates to 1.0 in
    float64 long before the weights become negligible).
    """
    half_pi = 0.5 * math.pi

    def rows(ts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        s = half_pi * np.sinh(ts)
        one_minus = 2.0 / (np.exp(2.0 * np.minimum(s, 350.0)) + 1.0)  # 1 - tanh(s)
        # du/dt = (pi/2) cosh(t) sech^2(s), times dtheta/du = pi/2
        weight = half_pi * half_pi * np.cosh(ts) * one_minus * (2.0 - one_minus)
        return 1.0 - one_minus, one_minus, weight

    def eval_nodes(ts: np.ndarray) -> tuple[float, float]:
        """(sum of w*(g(+u)+g(-u)), largest single contribution near the range end)."""
        u, one_minus, w = rows(ts)
        keep = (w > 0.0) & (one_minus > 0.0)
        if not keep.any():
            return 0.0, 0.0
        u, one_minus, w, ts_k = u[keep], one_minus[keep], w[keep], ts[keep]
        cos_t = np.sin(half_pi * one_minus)
        sin_t = np.sin(half_pi * u)
        contrib = w * (g(sin_t, cos_t) + g(-sin_t, cos_t))
        tail = float(np.abs(contrib[ts_k >= ts_k.max() - 1.0]).max()) if ts_k.size else 0.0
        return math.fsum(contrib.tolist()), tail

    # level 0: h = 1, nodes at t = 0 (weight (pi/2)^2) and +-1..+-T_MAX
    center = float((half_pi * half_pi * g(np.array([0.0]), np.array([1.0])))[0])
    side, tail = eval_nodes(np.arange(1.0, _T_MAX + 0.5))
    total = center + side
    estimate = total  # h = 1
    err = math.inf
    h = 1.0
    for _ in range(1, _QUAD_MAX_LEVEL + 1):
        h *= 0.5
        new_sum, new_tail = eval_nodes(np.arange(h, _T_MAX, 2.0 * h))
        tail = max(tail, new_tail)
        total += new_sum
        new_estimate = h * total
        err = abs(new_estimate - estimate)
        estimate = new_estimate
        if err < _QUAD_TOL:
            break
    err = max(err, tail)
    if err > _QUAD_ERR_LIMIT:
        raise NonConvergedQuadrature(
            f"quadrature error estimate {err:.3e} exceeds {_QUAD_ERR_LIMIT:.0e}"
        )
    return estimate, err


def integral_falpha(ld: LimitDensity, alpha: float) -> tuple[float, float]:
    """(I(alpha), error estimate) with I(alpha) the integral of f^alpha.

    alpha = 0 returns the support length 2|a| exactly.  Raises
    DivergentIntegral for alpha >= 2 and BadOrder for alpha < 0.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0.0:
        raise BadOrder(f"order must be finite and >= 0, got {alpha!r}")
    if alpha >= 2.0:
        raise DivergentIntegral(
            f"integral of f^alpha diverges for alpha >= 2 (endpoint exponent -alpha/2), got {alpha}"
        )
    if alpha == 0.0:
        return 2.0 * ld.absA, 0.0
    abs_a, abs_b, drift = ld.absA, ld.absB, ld.drift

    def g(sin_t: np.ndarray, cos_t: np.ndarray) -> np.ndarray:
        x = abs_a * sin_t
        base = abs_b * np.maximum(1.0 - drift * x, 0.0) / (math.pi * (1.0 - x * x))
        with np.errstate(divide="ignore", over="ignore"):
            out = np.exp2(alpha * np.log2(base) + (1.0 - alpha) * np.log2(abs_a * cos_t))
        return out

    return _tanh_sinh(g)


def renyi_limit(ld: LimitDensity, alpha: float) -> float:
    """The limiting Renyi constant (1/(1-alpha)) log2 I(alpha); alpha != 1, alpha < 2."""
    alpha = _check_finite_order(alpha)
    if alpha == 0.0:
        return math.log2(2.0 * ld.absA)
    value, _ = integral_falpha(ld, alpha)
    return math.log2(value) / (1.0 - alpha)


def tsallis_limit_const(ld: LimitDensity, alpha: float) -> float:
    """The limiting Tsallis constant (I(alpha) - 1)/(1-alpha); alpha != 1, alpha < 2."""
    alpha = _check_finite_order(alpha)
    value, _ = integral_falpha(ld, alpha)
    return (value - 1.0) / (1.0 - alpha)


def conditional_renyi_limit(
    variant: str, coin: Coin, prior: EnsemblePrior, alpha: float
) -> float:
    """The limiting conditional Renyi constant: per-state limits combined per variant."""
    values = [renyi_limit(make_limit_density(coin, state), alpha) for state in prior.states]
    return combine_conditional(variant, prior.weights, values, alpha)


def mixture_density(coin: Coin, prior: EnsemblePrior) -> LimitDensity:
    """Limit density of the prior-averaged walk: same family, weight-averaged drift."""
    members = [make_limit_density(coin, state) for state in prior.states]
    drift = math.fsum(float(w) * m.drift for w, m in zip(prior.weights, members))
    return LimitDensity(absA=members[0].absA, absB=members[0].absB, drift=drift)
