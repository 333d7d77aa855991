"""Extreme value distributions for block maxima.

Two coordinate systems are used throughout. ``GevParams`` is the unified
generalized extreme value family with location ``a``, scale ``b > 0`` and
shape ``c``: negative shapes are bounded above (Weibull type), ``c = 0`` is
the Gumbel member and positive shapes are heavy tailed (Frechet type).
``EvParams`` holds the classical three-family coordinates: location ``mu``,
scale ``sigma > 0`` and, except for the Gumbel, a positive shape ``beta``.

A shape of exactly 0.0 in ``GevParams`` is a statement that the model is the
Gumbel one, not a rounding accident. Evaluation also routes |c| < 1e-12
through the Gumbel branch, where the general formulas lose all precision.

The Weibull density with ``beta < 1`` is unbounded at ``x = mu``. Evaluating
the density there returns the module-level ``SINGULAR`` marker instead of a
float, so callers can tell an infinite density spike from overflow. The same
marker comes back from the GEV density at its upper endpoint when ``c < -1``,
which is the same spike in the other coordinate system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "WEIBULL",
    "GUMBEL",
    "FRECHET",
    "FAMILIES",
    "GUMBEL_SHAPE_EPS",
    "SINGULAR",
    "is_singular",
    "GevParams",
    "EvParams",
    "support",
    "pdf",
    "cdf",
    "quantile",
    "sample",
    "gev_to_ev",
    "ev_to_gev",
]

WEIBULL = "weibull"
GUMBEL = "gumbel"
FRECHET = "frechet"
FAMILIES = (WEIBULL, GUMBEL, FRECHET)

# Below this the GEV formulas in c are evaluated on their Gumbel limit.
GUMBEL_SHAPE_EPS = 1e-12


class _Singular:
    """Marker for an unbounded density value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "SINGULAR"


SINGULAR = _Singular()


def is_singular(value) -> bool:
    return value is SINGULAR


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class GevParams:
    """GEV parameters (a, b, c) with scale b > 0."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        object.__setattr__(self, "a", _finite("a", self.a))
        object.__setattr__(self, "b", _finite("b", self.b))
        object.__setattr__(self, "c", _finite("c", self.c))
        if self.b <= 0:
            raise DomainError(f"scale b must be > 0, got {self.b}")

    @property
    def is_gumbel(self) -> bool:
        return abs(self.c) < GUMBEL_SHAPE_EPS


@dataclass(frozen=True)
class EvParams:
    """Classical extreme value parameters.

    ``family`` is one of "weibull", "gumbel", "frechet". ``beta`` must be
    None for the Gumbel and > 0 for the other two.
    """

    family: str
    mu: float
    sigma: float
    beta: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        object.__setattr__(self, "mu", _finite("mu", self.mu))
        object.__setattr__(self, "sigma", _finite("sigma", self.sigma))
        if self.sigma <= 0:
            raise DomainError(f"scale sigma must be > 0, got {self.sigma}")
        if self.family == GUMBEL:
            if self.beta is not None:
                raise DomainError("gumbel has no shape parameter beta")
        else:
            if self.beta is None:
                raise DomainError(f"{self.family} needs a shape parameter beta")
            object.__setattr__(self, "beta", _finite("beta", self.beta))
            if self.beta <= 0:
                raise DomainError(f"shape beta must be > 0, got {self.beta}")


Params = GevParams | EvParams


def support(params: Params) -> tuple[float, float]:
    """Closure of the support as (lower, upper), with infinities where open."""
    if isinstance(params, GevParams):
        if params.is_gumbel:
            return (-math.inf, math.inf)
        edge = params.a - params.b / params.c
        if params.c < 0:
            return (-math.inf, edge)
        return (edge, math.inf)
    if params.family == GUMBEL:
        return (-math.inf, math.inf)
    if params.family == WEIBULL:
        return (-math.inf, params.mu)
    return (params.mu, math.inf)


def _as_array(x, name="x", require_finite=True):
    arr = np.asarray(x, dtype=float)
    if require_finite and not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _scalar_or_array(out: np.ndarray, scalar: bool):
    if scalar:
        return float(out)
    return out


# --- density ---------------------------------------------------------------

def _gumbel_logpdf(mu, sigma, x):
    z = (x - mu) / sigma
    with np.errstate(over="ignore"):
        return -math.log(sigma) - z - np.exp(-z)


def _logpdf(params: Params, x: np.ndarray):
    """Log density values plus a mask of singular points."""
    out = np.full(x.shape, -np.inf)
    singular = np.zeros(x.shape, dtype=bool)

    if isinstance(params, GevParams):
        a, b, c = params.a, params.b, params.c
        if params.is_gumbel:
            return _gumbel_logpdf(a, b, x), singular
        z = (x - a) / b
        cz = c * z
        inside = cz > -1.0
        edge = cz == -1.0
        if np.any(inside):
            logu = np.log1p(cz[inside])
            with np.errstate(over="ignore"):
                t = np.exp(-logu / c)
            out[inside] = -math.log(b) - (1.0 + 1.0 / c) * logu - t
        if np.any(edge):
            # Density at the finite endpoint: 0 for -1 < c < 0 and c > 0,
            # 1/b for c = -1, infinite spike for c < -1.
            if c < -1.0:
                singular[edge] = True
            elif c == -1.0:
                out[edge] = -math.log(b)
        return out, singular

    mu, sigma, beta = params.mu, params.sigma, params.beta
    if params.family == GUMBEL:
        return _gumbel_logpdf(mu, sigma, x), singular
    if params.family == WEIBULL:
        w = (mu - x) / sigma
        pos = w > 0
        zero = w == 0
        if np.any(pos):
            logw = np.log(w[pos])
            with np.errstate(over="ignore"):
                out[pos] = (
                    math.log(beta) - math.log(sigma)
                    + (beta - 1.0) * logw - np.exp(beta * logw)
                )
        if np.any(zero):
            if beta < 1.0:
                singular[zero] = True
            elif beta == 1.0:
                out[zero] = -math.log(sigma)
        return out, singular
    # Frechet: density falls to 0 at mu, no spike for any beta > 0.
    v = (x - mu) / sigma
    pos = v > 0
    if np.any(pos):
        logv = np.log(v[pos])
        with np.errstate(over="ignore"):
            out[pos] = (
                math.log(beta) - math.log(sigma)
                - (beta + 1.0) * logv - np.exp(-beta * logv)
            )
    return out, singular


def pdf(params: Params, x):
    """Density at x (scalar or array).

    Returns ``SINGULAR`` if any evaluation point carries an infinite density
    spike (Weibull ``beta < 1`` at ``x = mu`` and its GEV twin). Outside the
    support the density is 0. Non-finite x raises DomainError.
    """
    arr = _as_array(x)
    scalar = arr.ndim == 0
    logv, singular = _logpdf(params, np.atleast_1d(arr))
    if singular.any():
        return SINGULAR
    with np.errstate(over="ignore"):
        dens = np.exp(logv)
    return _scalar_or_array(dens if not scalar else dens[0], scalar)


# --- distribution function --------------------------------------------------

def _cdf(params: Params, x: np.ndarray) -> np.ndarray:
    if isinstance(params, GevParams):
        a, b, c = params.a, params.b, params.c
        z = (x - a) / b
        if params.is_gumbel:
            with np.errstate(over="ignore"):
                return np.exp(-np.exp(-z))
        cz = c * z
        out = np.empty(x.shape)
        inside = cz > -1.0
        with np.errstate(over="ignore"):
            t = np.exp(-np.log1p(cz[inside]) / c)
            out[inside] = np.exp(-t)
        out[~inside] = 1.0 if c < 0 else 0.0
        return out

    mu, sigma, beta = params.mu, params.sigma, params.beta
    z = (x - mu) / sigma
    if params.family == GUMBEL:
        with np.errstate(over="ignore"):
            return np.exp(-np.exp(-z))
    out = np.empty(x.shape)
    if params.family == WEIBULL:
        w = -z
        pos = w > 0
        with np.errstate(over="ignore"):
            out[pos] = np.exp(-np.power(w[pos], beta))
        out[~pos] = 1.0
        return out
    pos = z > 0
    with np.errstate(over="ignore", divide="ignore"):
        out[pos] = np.exp(-np.power(z[pos], -beta))
    out[~pos] = 0.0
    return out


def cdf(params: Params, x):
    """Distribution function at x (scalar or array). 0 or 1 outside the support."""
    arr = _as_array(x)
    scalar = arr.ndim == 0
    vals = _cdf(params, np.atleast_1d(arr))
    return _scalar_or_array(vals if not scalar else vals[0], scalar)


# --- quantiles and sampling --------------------------------------------------

def quantile(params: Params, alpha):
    """Quantile of order alpha, for alpha strictly inside (0, 1).

    Scalar or array alpha. Raises DomainError outside the open interval.
    """
    arr = _as_array(alpha, name="alpha")
    scalar = arr.ndim == 0
    a1 = np.atleast_1d(arr)
    if np.any(a1 <= 0.0) or np.any(a1 >= 1.0):
        raise DomainError("alpha must lie strictly between 0 and 1")
    logy = np.log(-np.log(a1))  # log(-log(alpha))

    if isinstance(params, GevParams):
        if params.is_gumbel:
            q = params.a - params.b * logy
        else:
            c = params.c
            # a - (b/c) * (1 - (-log alpha)^(-c)), written with expm1 so the
            # small-c regime keeps its digits.
            q = params.a + (params.b / c) * np.expm1(-c * logy)
    else:
        mu, sigma, beta = params.mu, params.sigma, params.beta
        if params.family == GUMBEL:
            q = mu - sigma * logy
        elif params.family == WEIBULL:
            q = mu - sigma * np.exp(logy / beta)
        else:
            q = mu + sigma * np.exp(-logy / beta)
    return _scalar_or_array(q if not scalar else q[0], scalar)


def sample(params: Params, n: int, seed) -> np.ndarray:
    """Draw n values by inverting the distribution function.

    ``seed`` is an integer or a numpy Generator; the draw is a pure function
    of it. Inverse sampling keeps one uniform per observation, so streams
    are reproducible across platforms.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"sample size must be >= 0, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    u = rng.random(n)
    while True:  # random() can return 0.0; the quantile needs the open interval
        zero = u == 0.0
        if not zero.any():
            break
        u[zero] = rng.random(int(zero.sum()))
    if n == 0:
        return np.empty(0)
    return np.atleast_1d(quantile(params, u))


# --- coordinate maps ---------------------------------------------------------

def gev_to_ev(params: GevParams) -> EvParams:
    """Map (a, b, c) to the classical coordinates of the member it names.

    c < 0 gives a Weibull, c = 0 exactly the Gumbel, c > 0 a Frechet. The
    exact-zero tag decides the family; a tiny nonzero c is mapped by sign.
    """
    a, b, c = params.a, params.b, params.c
    if c == 0.0:
        return EvParams(GUMBEL, mu=a, sigma=b)
    if c < 0:
        return EvParams(WEIBULL, mu=a - b / c, sigma=-b / c, beta=-1.0 / c)
    return EvParams(FRECHET, mu=a - b / c, sigma=b / c, beta=1.0 / c)


def ev_to_gev(params: EvParams) -> GevParams:
    """Inverse of gev_to_ev."""
    if params.family == GUMBEL:
        return GevParams(a=params.mu, b=params.sigma, c=0.0)
    if params.family == WEIBULL:
        c = -1.0 / params.beta
        b = params.sigma / params.beta
        return GevParams(a=params.mu - params.sigma, b=b, c=c)
    c = 1.0 / params.beta
    b = params.sigma / params.beta
    return GevParams(a=params.mu + params.sigma, b=b, c=c)
