"""Continuous and exact log-likelihoods for block maxima samples.

The continuous likelihood is the usual product of densities. The exact
likelihood acknowledges that records are rounded to a finite precision h and
multiplies cell probabilities F(x + h/2) - F(x - h/2) instead, clamping each
cell to the support. The distinction matters: the continuous Weibull-type
likelihood is unbounded when beta < 1 and the endpoint closes in on the
sample maximum, while the exact one stays bounded by 0 from above.

Internal convention in this module: log-likelihood kernels return a plain
float where -inf means "impossible under these parameters" and +inf encodes
"a data point sits exactly on an infinite density spike". Public functions
translate +inf into the SINGULAR marker from `distributions`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import (
    FRECHET,
    GUMBEL,
    GUMBEL_SHAPE_EPS,
    WEIBULL,
    EvParams,
    GevParams,
    SINGULAR,
    is_singular,
)
from .errors import DomainError

__all__ = [
    "ObservedSample",
    "detect_precision",
    "loglik",
    "loglik_reparam",
    "relative_likelihood",
    "CONTINUOUS",
    "EXACT",
]

CONTINUOUS = "continuous"
EXACT = "exact"
_KINDS = (CONTINUOUS, EXACT)

_GEV = "gev"
_MODEL_FAMILIES = (_GEV, WEIBULL, GUMBEL, FRECHET)


def detect_precision(values) -> float:
    """Smallest power of ten 10^-d, d in 0..10, that reproduces every value.

    Falls back to 1e-10 when even ten decimals do not resolve the data.
    """
    arr = np.asarray(values, dtype=float)
    for d in range(11):
        if np.all(np.round(arr, d) == arr):
            return 10.0 ** (-d)
    return 1e-10


@dataclass(frozen=True, eq=False)
class ObservedSample:
    """A block maxima sample plus the recording precision of its values.

    ``precision_h`` is the rounding cell width used by the exact likelihood.
    When omitted it is inferred with `detect_precision`. Values are stored
    as recorded; nothing is re-rounded.
    """

    values: np.ndarray
    precision_h: float | None = None

    def __post_init__(self):
        arr = np.array(self.values, dtype=float, copy=True).reshape(-1)
        if arr.size == 0:
            raise DomainError("sample is empty")
        if not np.all(np.isfinite(arr)):
            raise DomainError("sample values must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        h = self.precision_h
        h = detect_precision(arr) if h is None else float(h)
        if not math.isfinite(h) or h <= 0.0:
            raise DomainError(f"precision_h must be > 0, got {h}")
        object.__setattr__(self, "precision_h", h)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def max(self) -> float:
        return float(self.values.max())

    @property
    def min(self) -> float:
        return float(self.values.min())


# --- continuous kernels ------------------------------------------------------
# All kernels take raw floats plus the value array; they are the inner loop of
# every fit and deliberately stay free of object plumbing.

def _cont_gumbel(mu, sigma, x):
    with np.errstate(over="ignore"):
        z = (x - mu) / sigma
    with np.errstate(over="ignore"):
        s = np.exp(-z).sum()
    if not math.isfinite(s):
        return -math.inf
    return -x.size * math.log(sigma) - z.sum() - s


def _cont_gev(a, b, c, x):
    if abs(c) < GUMBEL_SHAPE_EPS:
        return _cont_gumbel(a, b, x)
    with np.errstate(over="ignore"):
        cz = c * ((x - a) / b)
    m = cz.min()
    if m < -1.0:
        return -math.inf
    if m == -1.0:
        if c < -1.0:
            return math.inf
        if c != -1.0:
            return -math.inf
        cz = cz[cz > -1.0]  # c = -1: endpoint density is 1/b, folded into -n log b
    logu = np.log1p(cz)
    with np.errstate(over="ignore"):
        s = np.exp(-logu / c).sum()
    if not math.isfinite(s):
        return -math.inf
    return -x.size * math.log(b) - (1.0 + 1.0 / c) * logu.sum() - s


def _cont_weibull(mu, sigma, beta, x):
    with np.errstate(over="ignore"):
        w = (mu - x) / sigma
    if x.size > 1 and w.max() == w.min() and x.max() > x.min():
        # Distinct observations collapsed onto one standardized value: sigma is
        # so large relative to the data spread that rounding has erased the
        # data entirely.  In that regime the exp(w**beta) terms the collapse
        # destroyed dominate, so the honest likelihood is -inf, not the
        # density-spike value naive evaluation would return.
        return -math.inf
    m = w.min()
    if m < 0.0:
        return -math.inf
    n = x.size
    if m == 0.0:
        if beta < 1.0:
            return math.inf
        if beta > 1.0:
            return -math.inf
        return n * (math.log(beta) - math.log(sigma)) - w.sum()
    logw = np.log(w)
    with np.errstate(over="ignore"):
        s = np.exp(beta * logw).sum()
    if not math.isfinite(s):
        return -math.inf
    return n * (math.log(beta) - math.log(sigma)) + (beta - 1.0) * logw.sum() - s


def _cont_frechet(mu, sigma, beta, x):
    with np.errstate(over="ignore"):
        v = (x - mu) / sigma
    if v.min() <= 0.0:
        return -math.inf
    if x.size > 1 and v.max() == v.min() and x.max() > x.min():
        # Same collapse guard as the Weibull kernel: distinct data mapped to a
        # single standardized value means precision is gone and the true
        # likelihood is -inf.
        return -math.inf
    logv = np.log(v)
    with np.errstate(over="ignore"):
        s = np.exp(-beta * logv).sum()
    if not math.isfinite(s):
        return -math.inf
    return x.size * (math.log(beta) - math.log(sigma)) - (beta + 1.0) * logv.sum() - s


# --- exact kernels -----------------------------------------------------------
# Every family has survival-style tail function t(x) with F = exp(-t), t
# decreasing. A cell [x-h/2, x+h/2] clamped to the support has probability
#   P = exp(-t_hi) - exp(-t_lo) = exp(-t_hi) * (-expm1(-(t_lo - t_hi)))
# and the difference t_lo - t_hi is built from expm1/log1p so that nothing
# cancels even when h is tiny relative to the cell location.

def _cell_logp(t_hi, dt):
    # dt = t_lo - t_hi >= 0; dt == 0 means zero probability.
    with np.errstate(divide="ignore"):
        return -t_hi + np.log(-np.expm1(-dt))


def _exact_gumbel(mu, sigma, x, h):
    with np.errstate(over="ignore"):
        z = (x - mu) / sigma
    d = h / (2.0 * sigma)
    with np.errstate(over="ignore"):
        t = np.exp(-z)
        t_hi = t * math.exp(-d)
        dt = t * (2.0 * math.sinh(d))
    total = _cell_logp(t_hi, dt).sum()
    return float(total) if math.isfinite(total) else -math.inf


def _exact_gev(a, b, c, x, h):
    if abs(c) < GUMBEL_SHAPE_EPS:
        return _exact_gumbel(a, b, x, h)
    with np.errstate(over="ignore"):
        u = 1.0 + c * ((x - a) / b)
    if x.size > 1 and u.max() == u.min() and x.max() > x.min():
        # distinct observations collapsed onto one standardized value: the
        # scale is so extreme that rounding has erased the data, and with it
        # any meaningful cell probabilities
        return -math.inf
    s = c * h / (2.0 * b)
    ul = u - s  # at x - h/2
    uh = u + s  # at x + h/2
    g = -1.0 / c
    if c > 0.0:
        if np.any(uh <= 0.0):  # some cell entirely below the lower endpoint
            return -math.inf
        interior = ul > 0.0
        clamped = ~interior
    else:
        if np.any(ul <= 0.0):  # some cell entirely above the upper endpoint
            return -math.inf
        interior = uh > 0.0
        clamped = ~interior

    logp = np.empty_like(u)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if np.any(interior):
            ui = u[interior]
            r = s / ui
            big = np.exp(g * np.log(ui))
            hi_part = np.expm1(g * np.log1p(r))
            lo_part = np.expm1(g * np.log1p(-r))
            logp[interior] = _cell_logp(big * (1.0 + hi_part), big * (lo_part - hi_part))
        if np.any(clamped):
            if c > 0.0:
                # cell straddles the lower endpoint: F(lo) = 0
                logp[clamped] = -np.exp(g * np.log(uh[clamped]))
            else:
                # cell straddles the upper endpoint: F(hi) = 1
                logp[clamped] = _cell_logp(0.0, np.exp(g * np.log(ul[clamped])))
    total = logp.sum()
    return float(total) if math.isfinite(total) else -math.inf


def _exact_weibull(mu, sigma, beta, x, h):
    with np.errstate(over="ignore"):
        w = (mu - x) / sigma
    if x.size > 1 and w.max() == w.min() and x.max() > x.min():
        return -math.inf  # same collapse guard as the gev exact kernel
    d = h / (2.0 * sigma)
    wl = w + d
    wh = w - d
    if np.any(wl <= 0.0):
        return -math.inf
    interior = wh > 0.0
    clamped = ~interior
    logp = np.empty_like(w)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if np.any(interior):
            wi = w[interior]
            r = d / wi
            big = np.exp(beta * np.log(wi))
            lo_part = np.expm1(beta * np.log1p(r))
            hi_part = np.expm1(beta * np.log1p(-r))
            logp[interior] = _cell_logp(big * (1.0 + hi_part), big * (lo_part - hi_part))
        if np.any(clamped):
            logp[clamped] = _cell_logp(0.0, np.exp(beta * np.log(wl[clamped])))
    total = logp.sum()
    return float(total) if math.isfinite(total) else -math.inf


def _exact_frechet(mu, sigma, beta, x, h):
    with np.errstate(over="ignore"):
        v = (x - mu) / sigma
    if x.size > 1 and v.max() == v.min() and x.max() > x.min():
        return -math.inf  # same collapse guard as the gev exact kernel
    d = h / (2.0 * sigma)
    vl = v - d
    vh = v + d
    if np.any(vh <= 0.0):
        return -math.inf
    interior = vl > 0.0
    clamped = ~interior
    logp = np.empty_like(v)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if np.any(interior):
            vi = v[interior]
            r = d / vi
            big = np.exp(-beta * np.log(vi))
            lo_part = np.expm1(-beta * np.log1p(-r))
            hi_part = np.expm1(-beta * np.log1p(r))
            logp[interior] = _cell_logp(big * (1.0 + hi_part), big * (lo_part - hi_part))
        if np.any(clamped):
            logp[clamped] = -np.exp(-beta * np.log(vh[clamped]))
    total = logp.sum()
    return float(total) if math.isfinite(total) else -math.inf


# --- parameter plumbing -------------------------------------------------------

def _theta_size(family, alpha, fixed_mu) -> int:
    if family == _GEV:
        if fixed_mu is not None:
            raise DomainError("fixed_mu applies to the classical families only")
        return 3
    if family == GUMBEL:
        if fixed_mu is not None:
            raise DomainError("fixed_mu is not supported for the gumbel")
        return 2
    if family in (WEIBULL, FRECHET):
        return 2 if fixed_mu is not None else 3
    raise DomainError(f"unknown model family {family!r}")


def _exp_or_none(arg: float):
    """exp(arg), or None where it would overflow. Underflow is a plain 0.0."""
    if arg > 700.0:
        return None
    return math.exp(arg)


def _to_natural(family, theta, alpha=None, fixed_mu=None):
    """Map free coordinates to the natural parameter tuple.

    Returns None when the point is infeasible (so optimizers can probe
    freely): non-positive scale or shape, a quantile constraint that no
    parameter value can satisfy, or a map so extreme it overflows.
    """
    logy = None
    if alpha is not None:
        logy = math.log(-math.log(alpha))

    if family == _GEV:
        t0, b, c = theta
        if b <= 0.0 or not math.isfinite(b):
            return None
        if alpha is None:
            return (t0, b, c)
        if abs(c) < GUMBEL_SHAPE_EPS:
            return (t0 + b * logy, b, c)
        if -c * logy > 700.0:
            return None
        return (t0 - (b / c) * math.expm1(-c * logy), b, c)

    if family == GUMBEL:
        t0, sigma = theta
        if sigma <= 0.0 or not math.isfinite(sigma):
            return None
        mu = t0 if alpha is None else t0 + sigma * logy
        return (mu, sigma)

    if fixed_mu is None:
        t0, sigma, beta = theta
        if sigma <= 0.0 or beta <= 0.0 or not math.isfinite(sigma) or not math.isfinite(beta):
            return None
        if alpha is None:
            mu = t0
        else:
            e = _exp_or_none(logy / beta if family == WEIBULL else -logy / beta)
            if e is None:
                return None
            mu = t0 + sigma * e if family == WEIBULL else t0 - sigma * e
        return (mu, sigma, beta)

    mu = float(fixed_mu)
    if alpha is None:
        sigma, beta = theta
        if sigma <= 0.0 or beta <= 0.0:
            return None
        return (mu, sigma, beta)
    q, beta = theta
    if beta <= 0.0 or not math.isfinite(beta):
        return None
    if family == WEIBULL:
        if q >= mu:
            return None
        e = _exp_or_none(-logy / beta)
        sigma = None if e is None else (mu - q) * e
    else:
        if q <= mu:
            return None
        e = _exp_or_none(logy / beta)
        sigma = None if e is None else (q - mu) * e
    if sigma is None or sigma <= 0.0 or not math.isfinite(sigma):
        return None
    return (mu, sigma, beta)


_CONT = {
    _GEV: _cont_gev,
    GUMBEL: _cont_gumbel,
    WEIBULL: _cont_weibull,
    FRECHET: _cont_frechet,
}
_EXACT = {
    _GEV: _exact_gev,
    GUMBEL: _exact_gumbel,
    WEIBULL: _exact_weibull,
    FRECHET: _exact_frechet,
}


def _loglik_theta(family, theta, x, *, alpha=None, fixed_mu=None,
                  kind=CONTINUOUS, h=None):
    """Fast path used by the optimizers. +inf encodes a singular hit."""
    nat = _to_natural(family, theta, alpha, fixed_mu)
    if nat is None:
        return -math.inf
    if kind == CONTINUOUS:
        return _CONT[family](*nat, x)
    return _EXACT[family](*nat, x, h)


def _params_to_spec(params):
    if isinstance(params, GevParams):
        return _GEV, (params.a, params.b, params.c)
    if isinstance(params, EvParams):
        if params.family == GUMBEL:
            return GUMBEL, (params.mu, params.sigma)
        return params.family, (params.mu, params.sigma, params.beta)
    raise DomainError(f"expected GevParams or EvParams, got {type(params).__name__}")


def _check_kind(kind):
    if kind not in _KINDS:
        raise DomainError(f"kind must be one of {_KINDS}, got {kind!r}")


def loglik(params, sample: ObservedSample, kind=CONTINUOUS):
    """Log-likelihood of a parameter point for the given sample.

    Returns a float (possibly -inf for an impossible configuration) or the
    SINGULAR marker when a data point sits exactly on an infinite density
    spike of the continuous model.
    """
    _check_kind(kind)
    family, nat = _params_to_spec(params)
    if kind == CONTINUOUS:
        value = _CONT[family](*nat, sample.values)
    else:
        value = _EXACT[family](*nat, sample.values, sample.precision_h)
    if value == math.inf:
        return SINGULAR
    return value


def loglik_reparam(theta, family, sample: ObservedSample, *, quantile_alpha=None,
                   fixed_mu=None, kind=CONTINUOUS):
    """Log-likelihood in reparametrized coordinates.

    With ``quantile_alpha`` set, the first coordinate of ``theta`` is the
    quantile of that order instead of the location; the remaining ones keep
    their natural meaning ((b, c) for "gev", (sigma, beta) or sigma alone for
    the classical families, beta alone with ``fixed_mu``). Infeasible points
    give -inf rather than raising, so search code can probe anywhere.
    """
    _check_kind(kind)
    if family not in _MODEL_FAMILIES:
        raise DomainError(f"unknown model family {family!r}")
    if quantile_alpha is not None:
        quantile_alpha = float(quantile_alpha)
        if not 0.0 < quantile_alpha < 1.0:
            raise DomainError("quantile_alpha must lie strictly between 0 and 1")
    theta = tuple(float(t) for t in theta)
    want = _theta_size(family, quantile_alpha, fixed_mu)
    if len(theta) != want:
        raise DomainError(
            f"theta for {family} "
            f"{'(fixed mu) ' if fixed_mu is not None else ''}has {want} coordinates, "
            f"got {len(theta)}"
        )
    if any(not math.isfinite(t) for t in theta):
        return -math.inf
    value = _loglik_theta(family, theta, sample.values, alpha=quantile_alpha,
                          fixed_mu=fixed_mu, kind=kind, h=sample.precision_h)
    if value == math.inf:
        return SINGULAR
    return value


def relative_likelihood(loglik_value, loglik_max) -> float:
    """exp(loglik_value - loglik_max), clamped into [0, 1].

    ``loglik_value`` may be -inf (gives 0). A value above the maximum by
    more than a small slack, or any non-finite maximum, is a usage error.
    """
    if is_singular(loglik_value) or is_singular(loglik_max):
        raise DomainError("relative likelihood is undefined at a singular point")
    loglik_value = float(loglik_value)
    loglik_max = float(loglik_max)
    if not math.isfinite(loglik_max):
        raise DomainError(f"loglik_max must be finite, got {loglik_max}")
    if math.isnan(loglik_value) or loglik_value == math.inf:
        raise DomainError(f"loglik_value must be a real value or -inf, got {loglik_value}")
    if loglik_value > loglik_max + 1e-7:
        raise DomainError(
            f"loglik_value {loglik_value} exceeds loglik_max {loglik_max}"
        )
    if loglik_value == -math.inf:
        return 0.0
    return min(1.0, math.exp(loglik_value - loglik_max))
