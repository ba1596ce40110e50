"""Discrete-time quantum walks on the line: exact distributions, entropies,
and their long-time limits.

The pieces:

- ``coin`` / ``evolve``: U(2) coins, initial qubit states, and direct state
  evolution to the exact position distribution after n steps.
- ``closedform``: the same distribution site-by-site from closed forms built
  on Jacobi polynomials, with overflow-safe scaled arithmetic.
- ``entropy``: Tsallis/Renyi entropies of a distribution and five conditional
  Renyi variants over an ensemble of initial states.
- ``limitdist``: the walk's weak-limit density, integrals of its powers, and
  the limiting entropy constants.
- ``convergence``: finite-n statistics run against those constants, with a
  verdict report.
- ``serialize`` / ``cli`` / ``service``: CSV/JSON forms, the command line
  client, and the HTTP service.
"""

from .closedform import (
    JacobiEval,
    ScaledReal,
    closed_distribution,
    hypergeom2f1_poly,
    jacobi,
    prob_at,
    prob_extremes,
    sum_identity_check,
)
from .coin import (
    Coin,
    CoinDecomposition,
    QubitState,
    decompose,
    make_coin,
    make_state,
    named_coin,
    random_coin,
    random_state,
)
from .convergence import (
    DEFAULT_SCHEDULE,
    DEFAULT_THRESHOLD,
    THRESHOLD_NOTE,
    ConvergenceSeries,
    Report,
    SeriesVerdict,
    conditional_gap_series,
    convergence_report,
    renyi_gap_series,
    tsallis_scaled_series,
)
from .entropy import (
    MIN,
    SHANNON,
    VARIANTS,
    EnsemblePrior,
    combine_conditional,
    conditional_renyi,
    conditional_renyi_direct,
    make_prior,
    renyi,
    tsallis,
    tsallis_from_renyi,
)
from .errors import (
    BadDeterminant,
    BadOrder,
    BadParameter,
    CoinDegenerate,
    DivergentIntegral,
    DivergentScale,
    DomainError,
    InputError,
    NonConvergedQuadrature,
    NotNormalized,
    NumericError,
    PoleInC,
    UnknownName,
    VariantDomain,
    WalkError,
)
from .evolve import AmplitudeField, Distribution, initial_field, run, step
from .limitdist import (
    LimitDensity,
    conditional_renyi_limit,
    density_at,
    integral_falpha,
    make_limit_density,
    mixture_density,
    renyi_limit,
    tsallis_limit_const,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # coin
    "Coin",
    "CoinDecomposition",
    "QubitState",
    "decompose",
    "make_coin",
    "make_state",
    "named_coin",
    "random_coin",
    "random_state",
    # evolve
    "AmplitudeField",
    "Distribution",
    "initial_field",
    "run",
    "step",
    # closedform
    "JacobiEval",
    "ScaledReal",
    "closed_distribution",
    "hypergeom2f1_poly",
    "jacobi",
    "prob_at",
    "prob_extremes",
    "sum_identity_check",
    # entropy
    "MIN",
    "SHANNON",
    "VARIANTS",
    "EnsemblePrior",
    "combine_conditional",
    "conditional_renyi",
    "conditional_renyi_direct",
    "make_prior",
    "renyi",
    "tsallis",
    "tsallis_from_renyi",
    # limitdist
    "LimitDensity",
    "conditional_renyi_limit",
    "density_at",
    "integral_falpha",
    "make_limit_density",
    "mixture_density",
    "renyi_limit",
    "tsallis_limit_const",
    # convergence
    "DEFAULT_SCHEDULE",
    "DEFAULT_THRESHOLD",
    "THRESHOLD_NOTE",
    "ConvergenceSeries",
    "Report",
    "SeriesVerdict",
    "conditional_gap_series",
    "convergence_report",
    "renyi_gap_series",
    "tsallis_scaled_series",
    # errors
    "WalkError",
    "InputError",
    "NumericError",
    "NotNormalized",
    "BadDeterminant",
    "UnknownName",
    "BadParameter",
    "CoinDegenerate",
    "BadOrder",
    "VariantDomain",
    "DomainError",
    "PoleInC",
    "DivergentScale",
    "NonConvergedQuadrature",
    "DivergentIntegral",
]
