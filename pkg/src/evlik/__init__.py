"""Likelihood inference for extreme value models on block-maxima data.

The pieces fit together like this: `distributions` holds the parametric
families and their quantile/simulation support, `likelihood` evaluates
continuous and exact (rounded-data) log-likelihoods, `inference` maximizes
them and builds profile likelihood and asymptotic intervals, `coverage` runs
Monte Carlo coverage studies of those intervals, and `cli` wires it all to a
command line. `datasets` ships a small bundled example series.
"""

from .distributions import (
    FAMILIES,
    FRECHET,
    GUMBEL,
    SINGULAR,
    WEIBULL,
    EvParams,
    GevParams,
    cdf,
    ev_to_gev,
    gev_to_ev,
    is_singular,
    pdf,
    quantile,
    sample,
    support,
)
from .errors import (
    ConvergenceError,
    DegenerateSampleError,
    DomainError,
    EvlikError,
    HessianError,
    InputError,
    OneSidedIntervalError,
    SingularLikelihoodError,
)
from .inference import (
    CONTINUOUS_ONLY,
    EXACT_ONLY,
    FALLBACK,
    FitResult,
    IntervalResult,
    LrtResult,
    ProfileCurve,
    aml_interval,
    fit_mle,
    gumbel_plausibility,
    likelihood_interval,
    lrt_nested,
    profile_curve,
    select_submodel,
)
from .likelihood import (
    CONTINUOUS,
    EXACT,
    ObservedSample,
    detect_precision,
    loglik,
    loglik_reparam,
    relative_likelihood,
)
from .datasets import (
    SYNTHETIC_MAXIMA_PARAMS,
    SYNTHETIC_MAXIMA_PRECISION,
    SYNTHETIC_MAXIMA_SEED,
    generate_synthetic_maxima,
    load_synthetic_maxima,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # families and parameters
    "FAMILIES", "WEIBULL", "GUMBEL", "FRECHET",
    "GevParams", "EvParams", "gev_to_ev", "ev_to_gev",
    "pdf", "cdf", "quantile", "sample", "support",
    "SINGULAR", "is_singular",
    # likelihood
    "ObservedSample", "detect_precision", "loglik", "loglik_reparam",
    "relative_likelihood", "CONTINUOUS", "EXACT",
    # bundled data
    "SYNTHETIC_MAXIMA_PARAMS", "SYNTHETIC_MAXIMA_SEED",
    "SYNTHETIC_MAXIMA_PRECISION",
    "generate_synthetic_maxima", "load_synthetic_maxima",
    # fitting and intervals
    "fit_mle", "FitResult", "profile_curve", "ProfileCurve",
    "likelihood_interval", "aml_interval", "IntervalResult",
    "select_submodel", "gumbel_plausibility", "lrt_nested", "LrtResult",
    "FALLBACK", "CONTINUOUS_ONLY", "EXACT_ONLY",
    # errors
    "EvlikError", "DomainError", "DegenerateSampleError", "InputError",
    "ConvergenceError", "SingularLikelihoodError", "HessianError",
    "OneSidedIntervalError",
]
