"""Closed-form position distributions via Jacobi-polynomial evaluation.

Independent second route to the walk distribution (the first being direct
evolution).  After n steps, the probability at positions +/-(n-2k) for
1 <= k <= floor(n/2) factors as

    P(+/-(n-2k)) = |a|^(2(n-2k-1)) * |b|^4 * (E +/- O)

where E and O are quadratic forms in the two Jacobi values

    J1 = P^(1, n-2k)_{k-1}(2|a|^2 - 1),   J0 = P^(0, n-2k)_{k-1}(2|a|^2 - 1)

with coefficients depending on x = k/n, on the coin moduli, and on the two
state invariants d = |alpha|^2 - |beta|^2 and
c = a*alpha*conj(b*beta) + conj(a*alpha)*b*beta:

    E = (2x^2-2x+1)/(2x^2) J1^2 - (1/x) J0 J1 + J0^2/|b|^2
    O = -((1-2x)/(2x^2)) ((|a|^2-|b|^2) d + 2 c) J1^2
        - ((1-2x)/x) (d - c/|b|^2) J0 J1

The extreme sites carry P(-n) = |a|^(2(n-1)) |a alpha + b beta|^2 and
P(+n) = |a|^(2(n-1)) |c alpha + d beta|^2.

The scale factor |a|^(2(n-2k-1)) underflows float64 past n of a few hundred
while the Jacobi values overflow in the same regime, so all polynomial
recurrences and products run in a scaled representation (mantissa plus base-2
exponent) and are converted to plain floats only at the end.  The degree
recurrence is used instead of the path-counting alternating binomial double
sum, whose terms cancel catastrophically in float64 for large k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coin import Coin, QubitState
from .errors import BadParameter, CoinDegenerate, DivergentScale, DomainError
from .evolve import Distribution

_EXP_LIMIT = 1 << 40  # sanity bound on scaled exponents
_NEG_CLAMP_REL = 1e-10  # negative results within this fraction of the term magnitude are rounded to 0


# ---------------------------------------------------------------------------
# Scaled scalar arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaledReal:
    """A real number as mantissa * 2**log2scale with |mantissa| in [1,2) or 0."""

    mantissa: float
    log2scale: int

    @classmethod
    def from_parts(cls, value: float, log2scale: int = 0) -> "ScaledReal":
        if value == 0.0:
            return cls(0.0, 0)
        if not math.isfinite(value):
            raise DivergentScale(f"non-finite mantissa {value!r}")
        m, e = math.frexp(value)  # |m| in [0.5, 1)
        scale = log2scale + e - 1
        if abs(scale) > _EXP_LIMIT:
            raise DivergentScale(f"exponent {scale} outside sane range")
        return cls(2.0 * m, scale)

    @classmethod
    def from_float(cls, value: float) -> "ScaledReal":
        return cls.from_parts(value)

    @classmethod
    def from_log2(cls, log2value: float) -> "ScaledReal":
        """The positive number 2**log2value."""
        if not math.isfinite(log2value):
            raise DivergentScale(f"non-finite log2 value {log2value!r}")
        ip = math.floor(log2value)
        return cls.from_parts(2.0 ** (log2value - ip), ip)

    def __mul__(self, other):
        if isinstance(other, ScaledReal):
            return ScaledReal.from_parts(self.mantissa * other.mantissa, self.log2scale + other.log2scale)
        return ScaledReal.from_parts(self.mantissa * float(other), self.log2scale)

    __rmul__ = __mul__

    def __neg__(self) -> "ScaledReal":
        return ScaledReal(-self.mantissa, self.log2scale)

    def __abs__(self) -> "ScaledReal":
        return ScaledReal(abs(self.mantissa), self.log2scale)

    def __add__(self, other: "ScaledReal") -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            return NotImplemented
        if self.mantissa == 0.0:
            return other
        if other.mantissa == 0.0:
            return self
        ref = max(self.log2scale, other.log2scale)
        m = math.ldexp(self.mantissa, self.log2scale - ref) + math.ldexp(other.mantissa, other.log2scale - ref)
        return ScaledReal.from_parts(m, ref)

    def __sub__(self, other: "ScaledReal") -> "ScaledReal":
        return self.__add__(-other)

    def to_float(self) -> float:
        """Plain float value; underflow rounds to 0, overflow raises DivergentScale."""
        if self.mantissa == 0.0:
            return 0.0
        if self.log2scale > 1024:
            raise DivergentScale(f"2**{self.log2scale} exceeds float64 range")
        if self.log2scale < -1100:
            return 0.0
        return math.ldexp(self.mantissa, self.log2scale)

    def __float__(self) -> float:
        return self.to_float()


# ---------------------------------------------------------------------------
# Jacobi polynomials and the terminating hypergeometric series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiEval:
    """One Jacobi-polynomial evaluation P_n^(nu,mu)(x)."""

    degree: int
    nu: float
    mu: float
    x: float
    value: float

    @classmethod
    def evaluate(cls, degree: int, nu: float, mu: float, x: float) -> "JacobiEval":
        _check_jacobi_params(degree, nu, mu)
        if degree == 0:
            return cls(degree, nu, mu, x, 1.0)
        p_prev = 1.0
        p_cur = 0.5 * (nu - mu) + 0.5 * (nu + mu + 2.0) * x
        for j in range(2, degree + 1):
            tw = 2.0 * j + nu + mu
            c1 = 2.0 * j * (j + nu + mu) * (tw - 2.0)
            c2 = (tw - 1.0) * (tw * (tw - 2.0) * x + nu * nu - mu * mu)
            c3 = 2.0 * (j + nu - 1.0) * (j + mu - 1.0) * tw
            p_prev, p_cur = p_cur, (c2 * p_cur - c3 * p_prev) / c1
        return cls(degree, nu, mu, x, p_cur)


def _check_jacobi_params(degree: int, nu: float, mu: float) -> None:
    if degree < 0:
        raise BadParameter(f"degree must be >= 0, got {degree}")
    if nu <= -1.0 or mu <= -1.0:
        raise BadParameter(f"Jacobi parameters must exceed -1, got nu={nu}, mu={mu}")


def jacobi(n: int, nu: float, mu: float, x: float) -> float:
    """P_n^(nu,mu)(x) by the three-term recurrence in degree."""
    return JacobiEval.evaluate(n, nu, mu, x).value


def hypergeom2f1_poly(n: int, bparam: float, cparam: float, z: float) -> float:
    """Terminating 2F1(-n, b; c; z): the exact sum of n+1 terms.

    Terms are accumulated in descending magnitude order with exact (fsum)
    summation.  Raises PoleInC when cparam is a nonpositive integer.
    """
    from .errors import PoleInC

    if n < 0:
        raise BadParameter(f"degree must be >= 0, got {n}")
    if float(cparam).is_integer() and cparam <= 0:
        raise PoleInC(f"lower parameter {cparam} is a nonpositive integer")
    terms = [1.0]
    t = 1.0
    for j in range(n):
        t *= (-n + j) * (bparam + j) / ((cparam + j) * (j + 1.0)) * z
        terms.append(t)
    terms.sort(key=abs, reverse=True)
    return math.fsum(terms)


def _scaled_jacobi(degree: int, nu: float, mu: float, x: float) -> ScaledReal:
    """Scalar Jacobi recurrence carried in ScaledReal, renormalized every step."""
    _check_jacobi_params(degree, nu, mu)
    if degree == 0:
        return ScaledReal.from_float(1.0)
    prev = ScaledReal.from_float(1.0)
    cur = ScaledReal.from_float(0.5 * (nu - mu) + 0.5 * (nu + mu + 2.0) * x)
    for j in range(2, degree + 1):
        tw = 2.0 * j + nu + mu
        c1 = 2.0 * j * (j + nu + mu) * (tw - 2.0)
        c2 = (tw - 1.0) * (tw * (tw - 2.0) * x + nu * nu - mu * mu)
        c3 = 2.0 * (j + nu - 1.0) * (j + mu - 1.0) * tw
        prev, cur = cur, (cur * c2 - prev * c3) * (1.0 / c1)
    return cur


def _scaled_jacobi_vector(nu: float, mu: np.ndarray, xi: float) -> tuple[np.ndarray, np.ndarray]:
    """P^(nu, mu[i])_{i}(xi) for i = 0..len(mu)-1 as (mantissa, exponent) arrays.

    Mantissas follow the frexp convention (|m| in [0.5,1) or 0); index i holds
    the degree-i value for its own column, which is exactly the diagonal
    needed by the distribution assembly (k = i + 1 requires degree k - 1).
    """
    kmax = mu.shape[0]
    res_m = np.empty(kmax, dtype=np.float64)
    res_e = np.zeros(kmax, dtype=np.int64)
    res_m[0] = 0.5
    res_e[0] = 1  # P_0 = 1 = 0.5 * 2^1
    if kmax == 1:
        return res_m, res_e
    m_prev = np.full(kmax, 0.5)
    e_prev = np.ones(kmax, dtype=np.int64)
    m_cur, e32 = np.frexp(0.5 * (nu - mu) + 0.5 * (nu + mu + 2.0) * xi)
    e_cur = e32.astype(np.int64)
    res_m[1] = m_cur[1]
    res_e[1] = e_cur[1]
    for j in range(2, kmax):
        sl = slice(j, kmax)
        mu_s = mu[sl]
        tw = 2.0 * j + nu + mu_s
        c1 = 2.0 * j * (j + nu + mu_s) * (tw - 2.0)
        c2 = (tw - 1.0) * (tw * (tw - 2.0) * xi + nu * nu - mu_s * mu_s)
        c3 = 2.0 * (j + nu - 1.0) * (j + mu_s - 1.0) * tw
        e_ref = np.maximum(e_cur[sl], e_prev[sl])
        v = (
            c2 * np.ldexp(m_cur[sl], (e_cur[sl] - e_ref).astype(np.int32))
            - c3 * np.ldexp(m_prev[sl], (e_prev[sl] - e_ref).astype(np.int32))
        ) / c1
        m_new, e32 = np.frexp(v)
        m_prev[sl] = m_cur[sl]
        e_prev[sl] = e_cur[sl]
        m_cur[sl] = m_new
        e_cur[sl] = e_ref + e32
        res_m[j] = m_cur[j]
        res_e[j] = e_cur[j]
    return res_m, res_e


@lru_cache(maxsize=128)
def _scaled_jacobi_columns(n: int, a2: float):
    """Cached (J1, J0) scaled columns for all k = 1..n//2 at xi = 2*a2 - 1."""
    kmax = n // 2
    if kmax == 0:
        empty_m = np.empty(0)
        empty_e = np.empty(0, dtype=np.int64)
        return empty_m, empty_e, empty_m, empty_e
    xi = 2.0 * a2 - 1.0
    mu = n - 2.0 * np.arange(1, kmax + 1, dtype=np.float64)
    m1, e1 = _scaled_jacobi_vector(1.0, mu, xi)
    m0, e0 = _scaled_jacobi_vector(0.0, mu, xi)
    for arr in (m1, e1, m0, e0):
        arr.setflags(write=False)
    return m1, e1, m0, e0


# ---------------------------------------------------------------------------
# Walk probabilities
# ---------------------------------------------------------------------------


def _require_nondegenerate(coin: Coin) -> None:
    if coin.is_degenerate:
        raise CoinDegenerate("closed forms require all four coin entries nonzero; use direct evolution")


def _state_invariants(coin: Coin, state: QubitState) -> tuple[float, float, float]:
    """(|alpha|^2, |beta|^2, cross) with cross = 2 Re(a alpha conj(b beta))."""
    alpha2 = float(np.abs(state.alpha) ** 2)
    beta2 = float(np.abs(state.beta) ** 2)
    cross = float(2.0 * np.real(coin.a * state.alpha * np.conj(coin.b * state.beta)))
    return alpha2, beta2, cross


def _bracket_coefficients(
    x: np.ndarray | float, a2: float, b2: float, dd: float, cross: float
) -> tuple[np.ndarray | float, ...]:
    """Coefficients of (J1^2, J0*J1, J0^2) in the even bracket and (J1^2, J0*J1) in the odd one."""
    ce1 = (2.0 * x * x - 2.0 * x + 1.0) / (2.0 * x * x)
    ce01 = -1.0 / x
    ce0 = 1.0 / b2
    co1 = -((1.0 - 2.0 * x) / (2.0 * x * x)) * ((a2 - b2) * dd + 2.0 * cross)
    co01 = -((1.0 - 2.0 * x) / x) * (dd - cross / b2)
    return ce1, ce01, ce0, co1, co01


def prob_extremes(coin: Coin, state: QubitState, n: int) -> tuple[float, float]:
    """(P(X_n = +n), P(X_n = -n)): probability at the two extreme sites."""
    if n < 1:
        raise DomainError(f"step count must be >= 1, got {n}")
    a2, b2 = coin.abs_a_sq, coin.abs_b_sq
    alpha2, beta2, cross = _state_invariants(coin, state)
    bracket_right = b2 * alpha2 + a2 * beta2 - cross
    bracket_left = a2 * alpha2 + b2 * beta2 + cross
    bracket_right = max(bracket_right, 0.0)
    bracket_left = max(bracket_left, 0.0)
    if n == 1 or a2 == 0.0:
        scale = 1.0 if n == 1 else 0.0
    else:
        scale = ScaledReal.from_log2((n - 1) * math.log2(a2)).to_float()
    return bracket_right * scale, bracket_left * scale


def prob_at(coin: Coin, state: QubitState, n: int, k: int) -> tuple[float, float]:
    """(P(X_n = n-2k), P(X_n = -(n-2k))) for 1 <= k <= floor(n/2), scalar scaled route."""
    _require_nondegenerate(coin)
    if n < 1:
        raise DomainError(f"step count must be >= 1, got {n}")
    if not 1 <= k <= n // 2:
        raise DomainError(f"k must satisfy 1 <= k <= floor(n/2) = {n // 2}, got {k}")
    a2, b2 = coin.abs_a_sq, coin.abs_b_sq
    alpha2, beta2, cross = _state_invariants(coin, state)
    dd = alpha2 - beta2
    xi = 2.0 * a2 - 1.0
    mu = float(n - 2 * k)
    j1 = _scaled_jacobi(k - 1, 1.0, mu, xi)
    j0 = _scaled_jacobi(k - 1, 0.0, mu, xi)
    ce1, ce01, ce0, co1, co01 = _bracket_coefficients(k / n, a2, b2, dd, cross)
    t1 = j1 * j1
    t01 = j0 * j1
    t0 = j0 * j0
    even = t1 * ce1 + t01 * ce01 + t0 * ce0
    odd = t1 * co1 + t01 * co01
    pref = ScaledReal.from_log2((n - 2 * k - 1) * math.log2(a2) + 2.0 * math.log2(b2))
    p_plus = ((even + odd) * pref).to_float()
    p_minus = ((even - odd) * pref).to_float()
    magnitude = (
        (abs(t1 * ce1) + abs(t01 * ce01) + abs(t0 * ce0) + abs(t1 * co1) + abs(t01 * co01)) * pref
    ).to_float()
    return _clamp_scalar(p_plus, magnitude), _clamp_scalar(p_minus, magnitude)


def _clamp_scalar(p: float, magnitude: float) -> float:
    if p < 0.0 and abs(p) <= _NEG_CLAMP_REL * max(magnitude, 1e-300):
        return 0.0
    return p


def _clamp_vector(p: np.ndarray, magnitude: np.ndarray) -> np.ndarray:
    tiny = (p < 0.0) & (np.abs(p) <= _NEG_CLAMP_REL * np.maximum(magnitude, 1e-300))
    p[tiny] = 0.0
    return p


def _ldexp_mixed(mantissa: np.ndarray, log2scale: np.ndarray) -> np.ndarray:
    """mantissa * 2**log2scale with a real-valued log2scale, without intermediate under/overflow."""
    ip = np.floor(log2scale)
    out = np.ldexp(mantissa * np.exp2(log2scale - ip), ip.astype(np.int32))
    if np.isinf(out).any():
        raise DivergentScale("scaled assembly overflowed float64")
    return out


def closed_distribution(coin: Coin, state: QubitState, n: int) -> Distribution:
    """Full position distribution after n steps from the closed forms.

    Vectorized over k (the data-parallel layout of independent prob_at calls);
    requires a non-degenerate coin and n >= 1.
    """
    _require_nondegenerate(coin)
    if n < 1:
        raise DomainError(f"step count must be >= 1, got {n}")
    a2, b2 = coin.abs_a_sq, coin.abs_b_sq
    alpha2, beta2, cross = _state_invariants(coin, state)
    dd = alpha2 - beta2
    probs = np.zeros(n + 1, dtype=np.float64)
    p_right, p_left = prob_extremes(coin, state, n)
    probs[0] = p_left
    probs[n] = p_right
    kmax = n // 2
    if kmax:
        m1, e1, m0, e0 = _scaled_jacobi_columns(n, a2)
        k = np.arange(1, kmax + 1, dtype=np.float64)
        ce1, ce01, ce0, co1, co01 = _bracket_coefficients(k / n, a2, b2, dd, cross)
        t1_e = 2 * e1
        t01_e = e0 + e1
        t0_e = 2 * e0
        e_ref = np.maximum(np.maximum(t1_e, t01_e), t0_e)
        w1 = np.ldexp(m1 * m1, (t1_e - e_ref).astype(np.int32))
        w01 = np.ldexp(m0 * m1, (t01_e - e_ref).astype(np.int32))
        w0 = np.ldexp(m0 * m0, (t0_e - e_ref).astype(np.int32))
        even = ce1 * w1 + ce01 * w01 + ce0 * w0
        odd = co1 * w1 + co01 * w01
        magnitude_m = np.abs(ce1 * w1) + np.abs(ce01 * w01) + np.abs(ce0 * w0) + np.abs(co1 * w1) + np.abs(co01 * w01)
        log2scale = (n - 2.0 * k - 1.0) * math.log2(a2) + 2.0 * math.log2(b2) + e_ref
        p_plus = _ldexp_mixed(even + odd, log2scale)
        p_minus = _ldexp_mixed(even - odd, log2scale)
        magnitude = _ldexp_mixed(magnitude_m, log2scale)
        p_plus = _clamp_vector(p_plus, magnitude)
        p_minus = _clamp_vector(p_minus, magnitude)
        probs[1 : kmax + 1] = p_minus
        if n % 2 == 0:
            # k = n/2 is position 0, its own mirror: both brackets coincide there
            # (the odd part carries an exact 1-2k/n = 0 factor); keep the + value.
            assert abs(p_plus[-1] - p_minus[-1]) <= 1e-12
        probs[n - kmax : n] = p_plus[::-1]
    dist = Distribution(n=n, support=np.arange(-n, n + 1, 2, dtype=np.int64), probs=probs)
    dist.validate(norm_tol=1e-9)
    return dist


def sum_identity_check(k: int, n: int, coin: Coin, which: int) -> tuple[float, float]:
    """Both sides of the two binomial-sum / Jacobi-value identities.

    which=1: sum_g (-r)^(g-1) (1/g) C(k-1,g-1) C(n-k-1,g-1)  vs  |a|^(-2(k-1)) (1/k) P^(1,n-2k)_{k-1}(2|a|^2-1)
    which=0: sum_g (-r)^(g-1)       C(k-1,g-1) C(n-k-1,g-1)  vs  |a|^(-2(k-1))       P^(0,n-2k)_{k-1}(2|a|^2-1)

    with r = |b|^2/|a|^2.  The binomial side alternates with catastrophic
    float64 cancellation near k = n/2, so it is evaluated in exact rational
    arithmetic (r taken as the exact rational of the float |a|^2, |b|^2 as
    1 - |a|^2) and rounded once; the Jacobi side runs the float64 recurrence.
    """
    if which not in (0, 1):
        raise BadParameter(f"which must be 0 or 1, got {which}")
    if not 1 <= k <= n // 2:
        raise DomainError(f"k must satisfy 1 <= k <= floor(n/2) = {n // 2}, got {k}")
    _require_nondegenerate(coin)
    a2 = coin.abs_a_sq
    r = (1 - Fraction(a2)) / Fraction(a2)
    acc = Fraction(0)
    for g in range(1, k + 1):
        term = (-r) ** (g - 1) * math.comb(k - 1, g - 1) * math.comb(n - k - 1, g - 1)
        if which == 1:
            term = term / g
        acc += term
    lhs = float(acc)
    xi = 2.0 * a2 - 1.0
    poly = jacobi(k - 1, float(which), float(n - 2 * k), xi)
    rhs = poly * a2 ** (-(k - 1))
    if which == 1:
        rhs /= k
    return lhs, rhs
