"""Maximum likelihood fitting, profile likelihood curves and intervals.

Everything here works on a `_ModelSpec`: a family ("gev" or one of the
classical three), an optional quantile order that replaces the location
coordinate, and an optional fixed location for the two-parameter variants.
Optimization runs over unconstrained coordinates (scales and shapes through
their logs) with a plain Nelder-Mead and a handful of moment-based starts.

The continuous likelihood for Weibull-type members is unbounded along the
ridge where the implied shape beta drops below 1 and the endpoint closes in
on the sample maximum. Searches are watched for that ridge; what happens on
detection depends on `kind_policy`:

* "continuous-with-exact-fallback": refit with the exact likelihood, flag it
* "continuous-only": raise SingularLikelihoodError
* "exact-only": skip the continuous likelihood entirely
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.stats import chi2, norm

from . import likelihood as lk
from ._simplex import BIG, fd_hessian, nelder_mead
from .distributions import (
    FRECHET,
    GUMBEL,
    WEIBULL,
    EvParams,
    GevParams,
    ev_to_gev,
    gev_to_ev,
    quantile,
)
from .errors import (
    ConvergenceError,
    DegenerateSampleError,
    DomainError,
    HessianError,
    OneSidedIntervalError,
    SingularLikelihoodError,
)
from .likelihood import CONTINUOUS, EXACT, ObservedSample

__all__ = [
    "FitResult",
    "ProfileCurve",
    "IntervalResult",
    "LrtResult",
    "fit_mle",
    "profile_curve",
    "likelihood_interval",
    "aml_interval",
    "select_submodel",
    "gumbel_plausibility",
    "lrt_nested",
    "FALLBACK",
    "CONTINUOUS_ONLY",
    "EXACT_ONLY",
]

GEV = "gev"
EULER = 0.5772156649015329

FALLBACK = "continuous-with-exact-fallback"
CONTINUOUS_ONLY = "continuous-only"
EXACT_ONLY = "exact-only"
_POLICIES = (FALLBACK, CONTINUOUS_ONLY, EXACT_ONLY)

# How close (in units of 10*h) the implied endpoint must sit to the sample
# maximum, with implied beta < 1, before a probe counts as riding the
# singular ridge.
_RIDGE_ZONE_CELLS = 10.0

# Cap on -log(beta) excursions in the rotated (near-Gumbel) direction. The
# Gumbel limit is approached at rate O(n / beta), so beta = e^18 ~ 6.6e7
# already matches the limiting log-likelihood far below every tolerance used
# here, while sigma = b * beta stays small enough that the likelihood still
# resolves ~1e-4 shifts in a profiled location or quantile. Much beyond this,
# float rounding quantizes the likelihood in the target coordinate and
# root-finding on the profile stalls.
_MAX_NEG_LOG_BETA = 18.0

# A conditional solve landing at a classical shape this large is walking the
# gumbel boundary, where the profile converges to the gumbel supremum rather
# than dropping: the relative likelihood there already matches the limit to
# O(n/beta) ~ 1e-4, yet sits far below the beta = e^18 excursion cap whose
# clipping would otherwise fake a crossing.
_GUMBEL_RIDGE_BETA = 1e6


class _SingularPath(Exception):
    """Internal: a continuous-likelihood search is riding the unbounded ridge."""

    def __init__(self, theta, loglik):
        self.theta = tuple(theta)
        self.loglik = float(loglik)


class _Rebase(Exception):
    """Internal: a conditional fit beat the supposed global maximum."""

    def __init__(self, theta, loglik):
        self.theta = tuple(theta)
        self.loglik = float(loglik)


# --- model specification -----------------------------------------------------

@dataclass(frozen=True)
class _ModelSpec:
    family: str
    alpha: float | None = None
    fixed_mu: float | None = None

    @property
    def names(self) -> tuple[str, ...]:
        loc = "q" if self.alpha is not None else ("a" if self.family == GEV else "mu")
        if self.family == GEV:
            return (loc, "b", "c")
        if self.family == GUMBEL:
            return (loc, "sigma")
        if self.fixed_mu is not None:
            return ("sigma", "beta") if self.alpha is None else ("q", "beta")
        return (loc, "sigma", "beta")

    @property
    def log_mask(self) -> tuple[bool, ...]:
        return tuple(n in ("b", "sigma", "beta") for n in self.names)

    @property
    def rotated(self) -> bool:
        """Three-parameter weibull/frechet searches run in GEV-like coordinates.

        In natural coordinates the Gumbel limit (beta -> inf) drags mu and
        sigma to infinity together along a curved ridge that stalls simplex
        searches well short of the optimum. In (location, log b, -log beta)
        the same limit is one flat coordinate direction with the other two
        stable, which the search handles cleanly.
        """
        return self.family in (WEIBULL, FRECHET) and self.fixed_mu is None

    @property
    def k(self) -> int:
        return len(self.names)


def _make_spec(family, alpha, fixed_mu) -> _ModelSpec:
    if family not in (GEV, WEIBULL, GUMBEL, FRECHET):
        raise DomainError(f"unknown model family {family!r}")
    if alpha is not None:
        alpha = float(alpha)
        if not 0.0 < alpha < 1.0:
            raise DomainError("quantile_alpha must lie strictly between 0 and 1")
    if fixed_mu is not None:
        if family not in (WEIBULL, FRECHET):
            raise DomainError("fixed_mu makes sense for weibull and frechet only")
        fixed_mu = float(fixed_mu)
        if not math.isfinite(fixed_mu):
            raise DomainError("fixed_mu must be finite")
    return _ModelSpec(family, alpha, fixed_mu)


def _pack(spec: _ModelSpec, theta):
    """Public coordinates -> unconstrained search coordinates."""
    y = np.asarray(theta, dtype=float).copy()
    if spec.rotated:
        loc, sigma, beta = y
        if sigma <= 0 or beta <= 0:
            raise DomainError("sigma and beta must be > 0 to start a search")
        w = -math.log(beta)
        if spec.alpha is None:
            # the GEV location: a = mu + sigma (frechet), mu - sigma (weibull)
            loc = loc + sigma if spec.family == FRECHET else loc - sigma
        return np.array([loc, math.log(sigma) + w, w])
    for i, is_log in enumerate(spec.log_mask):
        if is_log:
            if y[i] <= 0:
                raise DomainError(f"{spec.names[i]} must be > 0 to start a search")
            y[i] = math.log(y[i])
    return y


def _unpack(spec: _ModelSpec, y):
    """Search coordinates -> public coordinates. May overflow for absurd y."""
    theta = np.asarray(y, dtype=float).copy()
    if spec.rotated:
        loc, logb, w = theta
        beta = math.exp(-w)
        sigma = math.exp(logb - w)
        if spec.alpha is None:
            loc = loc - sigma if spec.family == FRECHET else loc + sigma
        return np.array([loc, sigma, beta])
    for i, is_log in enumerate(spec.log_mask):
        if is_log:
            theta[i] = math.exp(theta[i])
    return theta


def _ridge_geometry(spec: _ModelSpec, nat):
    """Implied (beta, upper endpoint) of a Weibull-type point, else None."""
    if spec.family == GEV:
        a, b, c = nat
        if c < 0.0:
            return (-1.0 / c, a - b / c)
        return None
    if spec.family == WEIBULL:
        mu, _, beta = nat
        return (beta, mu)
    return None


def _from_natural(spec: _ModelSpec, nat):
    """Natural parameters -> this spec's public coordinates (3-param forms)."""
    if spec.family == GEV:
        a, b, c = nat
        if spec.alpha is None:
            return np.array([a, b, c])
        logy = math.log(-math.log(spec.alpha))
        if abs(c) < lk.GUMBEL_SHAPE_EPS:
            q = a - b * logy
        else:
            q = a + (b / c) * math.expm1(-c * logy)
        return np.array([q, b, c])
    mu, sigma, beta = nat
    if spec.alpha is None:
        return np.array([mu, sigma, beta])
    logy = math.log(-math.log(spec.alpha))
    if spec.family == WEIBULL:
        return np.array([mu - sigma * math.exp(logy / beta), sigma, beta])
    return np.array([mu + sigma * math.exp(-logy / beta), sigma, beta])


def _kink_escape_starts(spec: _ModelSpec, nat, x):
    """Interior restarts for an exact fit stalled on the top-cell kink.

    The exact likelihood is continuous but kinked along the surface where the
    implied upper endpoint crosses the edge of the largest observation's cell
    (the cell probability clamps at the support boundary there). Simplex
    descent can stall exactly on that surface while a better smooth interior
    maximum exists. These starts re-enter the interior by pushing the
    endpoint a few data spans above the sample maximum, preserving the rest
    of the geometry, so a follow-up search can find the interior optimum.
    """
    if spec.fixed_mu is not None:
        return []  # the endpoint is pinned; no interior to escape to
    xmax = float(x.max())
    span = float(x.max() - x.min())
    starts = []
    for f in (0.05, 0.2, 0.6):
        delta = f * span
        if spec.family == GEV:
            a, b, c = nat
            if xmax + delta <= a:
                continue
            cand = (a, -c * (xmax + delta - a), c)
        else:  # weibull: endpoint is mu; shift it, keeping mu - sigma fixed
            mu, sigma, beta = nat
            cand = (xmax + delta, sigma + (xmax + delta - mu), beta)
        try:
            starts.append(_pack(spec, _from_natural(spec, cand)))
        except DomainError:
            continue
    return starts


def _kink_surface_fit(spec: _ModelSpec, x, h, nat, sigma0, seed):
    """Exact-likelihood maximum ON the top-cell kink surface, in spec coords.

    Along the surface (implied endpoint pinned at xmax + h/2) the exact
    likelihood is smooth, but simplex descent across it keeps collapsing
    against the kink and stalls wherever it first lands. A Weibull-type
    point with its endpoint pinned is exactly a two-parameter Weibull with
    fixed location, so the constrained optimum is found by that smooth,
    regular fit and mapped back. Returns (theta, loglik) or None.
    """
    if spec.fixed_mu is not None or spec.family == FRECHET:
        return None
    e0 = float(x.max()) + 0.5 * h
    wspec = _make_spec(WEIBULL, None, e0)
    # seed the (sigma, beta) search from the stalled point's own geometry
    if spec.family == GEV:
        a, b, c = nat
        start = (e0 - a, -1.0 / c) if (e0 > a and c < 0.0) else None
    else:
        _, sigma, beta = nat
        start = (sigma, beta)
    try:
        starts, wsigma0 = _start_points(wspec, x, 4, seed, start)
        y, f, _, _ = _run_starts(wspec, x, h, EXACT, starts, wsigma0, None)
    except (ConvergenceError, DomainError, _SingularPath):
        return None
    sigma, beta = _unpack(wspec, y)
    if spec.family == GEV:
        g = ev_to_gev(EvParams(WEIBULL, mu=e0, sigma=sigma, beta=beta))
        mapped = (g.a, g.b, g.c)
    else:
        mapped = (e0, sigma, beta)
    try:
        theta = _from_natural(spec, mapped)
    except (DomainError, OverflowError):
        return None
    return theta, -f


class _RidgeMonitor:
    """Watches continuous-likelihood probes for the singularity chase.

    A probe whose implied beta is below 1 and whose endpoint has closed to
    within a few rounding cells of the sample maximum is not heading for a
    regular interior optimum; it is climbing the unbounded spike. Interior
    maxima keep the endpoint O(sigma/n) away from the largest observation,
    far outside the zone at any realistic measurement precision.
    """

    def __init__(self, spec: _ModelSpec, xmax: float, h: float):
        self.spec = spec
        self.xmax = xmax
        self.zone = _RIDGE_ZONE_CELLS * h

    def check(self, theta, nat, ll):
        geo = _ridge_geometry(self.spec, nat)
        if geo is not None:
            beta, endpoint = geo
            if beta < 1.0 and endpoint - self.xmax <= self.zone:
                raise _SingularPath(theta, ll)


def _make_objective(spec: _ModelSpec, x, kind, h, monitor: _RidgeMonitor | None):
    cont = kind == CONTINUOUS
    kern = lk._CONT[spec.family] if cont else lk._EXACT[spec.family]
    alpha, fixed_mu = spec.alpha, spec.fixed_mu
    log_idx = [i for i, m in enumerate(spec.log_mask) if m]

    def neg(y):
        # absurd log-scale excursions overflow exp; they are simply infeasible
        if any(abs(y[i]) > 600.0 for i in log_idx):
            return BIG
        if spec.rotated and y[2] < -_MAX_NEG_LOG_BETA:
            return BIG
        try:
            theta = _unpack(spec, y)
        except OverflowError:
            return BIG
        if not np.all(np.isfinite(theta)):
            return BIG
        nat = lk._to_natural(spec.family, theta, alpha, fixed_mu)
        if nat is None:
            return BIG
        ll = kern(*nat, x) if cont else kern(*nat, x, h)
        if ll == math.inf:
            # a data point sits exactly on the density spike
            raise _SingularPath(theta, ll)
        if monitor is not None:
            monitor.check(theta, nat, ll)
        if not math.isfinite(ll):
            return BIG
        return -ll

    return neg


# --- starting points -----------------------------------------------------------

def _coord_scales(spec: _ModelSpec, sigma0: float) -> np.ndarray:
    out = []
    for name, is_log in zip(spec.names, spec.log_mask):
        if is_log:
            out.append(1.0)
        elif name == "c":
            out.append(0.5)
        else:
            out.append(max(sigma0, 1e-8))
    return np.array(out)


def _shape_seeds(family, rng, extras):
    if family == GEV:
        base = [-0.1, 0.0, 0.1]
        draw = lambda: rng.uniform(-0.45, 0.45)
    elif family == WEIBULL:
        base = [-0.35, -0.15]
        draw = lambda: rng.uniform(-0.7, -0.08)
    elif family == FRECHET:
        base = [0.15, 0.35]
        draw = lambda: rng.uniform(0.08, 0.7)
    else:
        return [None] * max(1, 1 + extras)
    return base + [draw() for _ in range(extras)]


def _start_points(spec: _ModelSpec, x, n_starts, seed, explicit):
    """List of packed start vectors. `explicit` (theta coordinates) goes first."""
    n = x.size
    m = float(x.mean())
    sd = float(x.std(ddof=1)) if n > 1 else 0.0
    sd = max(sd, 1e-8 * (1.0 + abs(m)))
    sigma0 = sd * math.sqrt(6.0) / math.pi
    mu0 = m - EULER * sigma0
    xmax = float(x.max())
    xmin = float(x.min())
    rng = np.random.default_rng(seed)

    starts: list[np.ndarray] = []
    if explicit is not None:
        starts.append(_pack(spec, explicit))

    want = max(1, int(n_starts))
    cs = _shape_seeds(spec.family, rng, extras=max(0, want - 3))
    for j, c0 in enumerate(cs[:want]):
        fresh = j >= 3 or (c0 is None and j >= 1)
        jit_loc = rng.normal(0.0, 0.35) * sigma0 if fresh else 0.0
        jit_scale = math.exp(rng.normal(0.0, 0.35)) if fresh else 1.0
        a0 = mu0 + jit_loc
        b0 = sigma0 * jit_scale

        if spec.family == GEV:
            params = GevParams(a0, b0, c0)
            theta = [a0, b0, c0]
            if spec.alpha is not None:
                theta[0] = float(quantile(params, spec.alpha))
        elif spec.family == GUMBEL:
            params = EvParams(GUMBEL, mu=a0, sigma=b0)
            theta = [a0, b0]
            if spec.alpha is not None:
                theta[0] = float(quantile(params, spec.alpha))
        else:
            ev = gev_to_ev(GevParams(a0, b0, c0))
            mu, sig, bet = ev.mu, ev.sigma, ev.beta
            if spec.fixed_mu is not None:
                mu = spec.fixed_mu
                bet = abs(1.0 / c0)
                if spec.family == FRECHET:
                    med = float(np.median(x)) - mu
                    if med <= 0:
                        continue
                    sig = med * math.log(2.0) ** (1.0 / bet)
                else:
                    med = mu - float(np.median(x))
                    if med <= 0:
                        continue
                    sig = med * math.log(2.0) ** (-1.0 / bet)
            else:
                # keep the start feasible relative to the data range
                if spec.family == WEIBULL and mu <= xmax:
                    mu = xmax + 0.25 * sigma0
                if spec.family == FRECHET and mu >= xmin:
                    mu = xmin - 0.25 * sigma0
            params = EvParams(spec.family, mu=mu, sigma=sig, beta=bet)
            if spec.fixed_mu is not None:
                theta = ([sig, bet] if spec.alpha is None
                         else [float(quantile(params, spec.alpha)), bet])
            else:
                theta = [mu, sig, bet]
                if spec.alpha is not None:
                    theta[0] = float(quantile(params, spec.alpha))
        try:
            starts.append(_pack(spec, theta))
        except DomainError:
            continue
    if not starts:
        raise ConvergenceError("could not build a feasible starting point")
    return starts, sigma0


# --- fit ------------------------------------------------------------------------

@dataclass
class FitResult:
    """A maximized likelihood in one parametrization.

    ``theta`` holds the free coordinates listed in ``names`` on their natural
    scale. ``params`` rebuilds the distribution object behind them.
    """

    family: str
    quantile_alpha: float | None
    fixed_mu: float | None
    names: tuple[str, ...]
    theta: np.ndarray
    loglik_max: float
    kind_used: str
    used_exact_fallback: bool
    converged: bool
    n_evals: int
    sample: ObservedSample = field(repr=False)

    @property
    def params(self):
        nat = lk._to_natural(self.family, tuple(self.theta),
                             self.quantile_alpha, self.fixed_mu)
        if nat is None:
            raise DomainError("stored fit coordinates are infeasible")
        if self.family == GEV:
            return GevParams(*nat)
        if self.family == GUMBEL:
            return EvParams(GUMBEL, mu=nat[0], sigma=nat[1])
        return EvParams(self.family, mu=nat[0], sigma=nat[1], beta=nat[2])

    def coordinate(self, name: str) -> float:
        try:
            return float(self.theta[self.names.index(name)])
        except ValueError:
            raise DomainError(f"fit has no coordinate {name!r}; it has {self.names}")


def _run_starts(spec, x, h, kind, starts, sigma0, monitor, maxfev=4500):
    """Multi-start search. Starts that climb the singular ridge are dropped;
    only if every start either failed or went singular does the singularity
    win and _SingularPath propagate (a proper interior maximum, when one
    exists, is the estimate regardless of the unbounded spike)."""
    neg = _make_objective(spec, x, kind, h, monitor)
    scales = _coord_scales(spec, sigma0)
    best = None
    evals = 0
    any_conv = False
    first_singular = None
    for j, y0 in enumerate(starts):
        steps = (0.1 if j == 0 else 0.4) * scales
        try:
            y, f, ne, conv = nelder_mead(neg, y0, steps, xatol=1e-7, fatol=1e-11,
                                         maxfev=maxfev)
        except _SingularPath as sp:
            if first_singular is None:
                first_singular = sp
            continue
        evals += ne
        any_conv = any_conv or (conv and f < BIG)
        if best is None or f < best[1]:
            best = (y, f)
    if best is None or best[1] >= BIG:
        if first_singular is not None:
            raise first_singular
        raise ConvergenceError("no feasible parameter point was found")
    y, f = best
    # polish until the value stops moving; a polish that wanders onto the
    # ridge is discarded, the interior point stands
    try:
        for _ in range(4):
            y2, f2, ne, _ = nelder_mead(neg, y, 0.01 * scales, xatol=1e-10,
                                        fatol=1e-13, maxfev=800)
            evals += ne
            if f - f2 < 1e-10:
                y, f = (y2, f2) if f2 < f else (y, f)
                break
            y, f = y2, f2
    except _SingularPath:
        pass
    return y, f, evals, any_conv


def _validate_sample(sample, spec: _ModelSpec):
    if not isinstance(sample, ObservedSample):
        raise DomainError("sample must be an ObservedSample")
    if sample.values.min() == sample.values.max():
        raise DegenerateSampleError(
            "all sample values are equal; no scale parameter is identifiable"
        )
    if sample.n < spec.k:
        raise DomainError(
            f"need at least {spec.k} observations to fit {spec.k} parameters"
        )
    if spec.fixed_mu is not None:
        half = sample.precision_h / 2.0
        if spec.family == FRECHET and spec.fixed_mu >= sample.max - half:
            raise DomainError("fixed_mu must lie below the sample to fit a frechet")
        if spec.family == WEIBULL and spec.fixed_mu <= sample.min + half:
            raise DomainError("fixed_mu must lie above the sample to fit a weibull")


def fit_mle(sample: ObservedSample, family: str = GEV, *, quantile_alpha=None,
            fixed_mu=None, kind_policy: str = FALLBACK, n_starts: int = 5,
            seed: int = 0, start=None) -> FitResult:
    """Maximum likelihood fit of one model family.

    Args:
        sample: the observed block maxima.
        family: "gev", "weibull", "gumbel" or "frechet".
        quantile_alpha: when set, fit in quantile coordinates: the first
            coordinate becomes the quantile of this order.
        fixed_mu: pin the location of a weibull/frechet (two-parameter form).
        kind_policy: what to do about the unbounded continuous likelihood.
        n_starts: number of multi-start searches (moment seeds plus jitter).
        seed: jitter seed; the fit is a pure function of (sample, seed).
        start: optional explicit starting theta in the fit's coordinates.

    Returns:
        FitResult. `used_exact_fallback` is set when the continuous fit ran
        into the density spike and the exact likelihood took over.
    """
    if kind_policy not in _POLICIES:
        raise DomainError(f"kind_policy must be one of {_POLICIES}")
    spec = _make_spec(family, quantile_alpha, fixed_mu)
    _validate_sample(sample, spec)
    x = sample.values
    h = sample.precision_h
    starts, sigma0 = _start_points(spec, x, n_starts, seed, start)

    def attempt(kind, monitor, start_list):
        y, f, evals, conv = _run_starts(spec, x, h, kind, start_list, sigma0, monitor)
        theta, ll = _unpack(spec, y), -f
        if kind != EXACT:
            return theta, ll, evals, conv
        # exact fits can stall on the top-cell kink; give the interior a shot
        nat = lk._to_natural(spec.family, theta, spec.alpha, spec.fixed_mu)
        geom = None if nat is None else _ridge_geometry(spec, nat)
        if geom is not None and geom[1] - sample.max <= _RIDGE_ZONE_CELLS * h:
            surf = _kink_surface_fit(spec, x, h, nat, sigma0, seed)
            if surf is not None and surf[1] > ll:
                theta, ll, conv = np.asarray(surf[0]), surf[1], True
                nat = lk._to_natural(spec.family, theta, spec.alpha,
                                     spec.fixed_mu)
            esc = [] if nat is None else _kink_escape_starts(spec, nat, x)
            if esc:
                try:
                    y2, f2, ev2, conv2 = _run_starts(spec, x, h, EXACT, esc,
                                                     sigma0, None)
                except ConvergenceError:
                    return theta, ll, evals, conv  # the kink point stands
                evals += ev2
                if -f2 > ll:
                    theta, ll, conv = _unpack(spec, y2), -f2, conv2
        return theta, ll, evals, conv

    used_fallback = False
    if kind_policy == EXACT_ONLY:
        kind = EXACT
        theta, ll, evals, conv = attempt(EXACT, None, starts)
    else:
        kind = CONTINUOUS
        monitor = None
        if spec.family in (GEV, WEIBULL):
            monitor = _RidgeMonitor(spec, sample.max, h)
        try:
            theta, ll, evals, conv = attempt(CONTINUOUS, monitor, starts)
        except _SingularPath as sp:
            if kind_policy == CONTINUOUS_ONLY:
                raise SingularLikelihoodError(sp.theta, sp.loglik) from None
            kind = EXACT
            used_fallback = True
            # the exact optimum of a spike sample lives where the continuous
            # search blew up, so lead with that point
            exact_starts = list(starts)
            try:
                exact_starts.insert(0, _pack(spec, sp.theta))
            except DomainError:
                pass
            theta, ll, evals, conv = attempt(EXACT, None, exact_starts)

    return FitResult(
        family=spec.family,
        quantile_alpha=spec.alpha,
        fixed_mu=spec.fixed_mu,
        names=spec.names,
        theta=theta,
        loglik_max=ll,
        kind_used=kind,
        used_exact_fallback=used_fallback,
        converged=conv,
        n_evals=evals,
        sample=sample,
    )


# --- profile machinery -----------------------------------------------------------

def _target_spec(fit: FitResult, target: str, alpha):
    """Coordinates in which `target` is one free coordinate, plus the mle there."""
    if target == "q":
        if alpha is None:
            raise DomainError("a quantile target needs quantile_alpha")
        spec = _make_spec(fit.family, alpha, fit.fixed_mu)
        params = fit.params
        q_hat = float(quantile(params, alpha))
        if fit.family == GEV:
            theta = np.array([q_hat, params.b, params.c])
        elif fit.family == GUMBEL:
            theta = np.array([q_hat, params.sigma])
        elif fit.fixed_mu is not None:
            theta = np.array([q_hat, params.beta])
        else:
            theta = np.array([q_hat, params.sigma, params.beta])
        return spec, 0, q_hat, theta
    spec = _make_spec(fit.family, None, fit.fixed_mu)
    if target not in spec.names:
        raise DomainError(
            f"target {target!r} is not a coordinate of this model ({spec.names})"
        )
    params = fit.params
    if fit.family == GEV:
        theta = np.array([params.a, params.b, params.c])
    elif fit.family == GUMBEL:
        theta = np.array([params.mu, params.sigma])
    elif fit.fixed_mu is not None:
        theta = np.array([params.sigma, params.beta])
    else:
        theta = np.array([params.mu, params.sigma, params.beta])
    idx = spec.names.index(target)
    return spec, idx, float(theta[idx]), theta


class _ConditionalSolver:
    """Maximizes the likelihood over the nuisance coordinates at fixed target.

    Keeps the warm chain: each solve starts from the nuisance optimum of the
    previous one, which is what makes bisection affordable.
    """

    def __init__(self, spec, idx, x, h, kind, sigma0, ll_max, theta_mle,
                 seed=0, monitor=None):
        self.spec = spec
        self.idx = idx
        self.x = x
        self.h = h
        self.kind = kind
        self.monitor = monitor
        self.free = [i for i in range(spec.k) if i != idx]
        # fixing the location of a rotated model leaves (sigma, beta) free;
        # keep the ridge-friendly coordinates there too
        self.rotated = spec.rotated and spec.names[idx] in ("q", "mu")
        if self.rotated:
            self.scales = np.array([1.0, 1.0])
            self._bounded = (True, True)
        else:
            self.scales = _coord_scales(spec, sigma0)[self.free]
            self._bounded = tuple(spec.log_mask[i] for i in self.free)
        self.nuis_mle = theta_mle[self.free].copy()
        self.t_hat = float(theta_mle[idx])
        self.ll_max = ll_max
        self.cont = kind == CONTINUOUS
        self.kern = lk._CONT[spec.family] if self.cont else lk._EXACT[spec.family]
        self.sigma0 = sigma0
        self.xmax = float(np.max(x))
        self.xmin = float(np.min(x))
        # Hard domain edge for the target under the continuous likelihood:
        # once the shape crosses the density-spike threshold (GEV shape below
        # -1, Weibull beta below 1) the conditional likelihood is unbounded
        # and no profile value exists, only the spike. The exact likelihood
        # is bounded everywhere, so it carries no such edge.
        self.t_floor = None
        if self.cont:
            name = spec.names[idx]
            if spec.family == GEV and name == "c":
                self.t_floor = -1.0
            elif spec.family == WEIBULL and name == "beta":
                self.t_floor = 1.0
        # Route to the gumbel boundary: with all three classical coordinates
        # free, any one of them pinned at an extreme value is absorbed by
        # the other two as the shape grows without bound, so the conditional
        # likelihood flattens onto the gumbel supremum instead of dropping.
        # Record where the shape sits so the endpoint search can recognize
        # that ridge. A pinned quantile is NOT absorbed (the gumbel limit
        # keeps it identified and the profile keeps decaying), and the gev
        # parameterization has no such route at all, so neither is guarded.
        self.beta_slot = None
        self.target_is_beta = False
        if spec.family in (WEIBULL, FRECHET) and spec.k == 3 \
                and spec.names[idx] in ("mu", "sigma", "beta"):
            if spec.names[idx] == "beta":
                self.target_is_beta = True
            else:
                free_names = [spec.names[i] for i in self.free]
                self.beta_slot = free_names.index("beta")
        self._gumbel_ll = None
        self.warm = None  # packed nuisance coordinates of the last solve
        self.warm_t = None  # target value the warm point belongs to

    def on_gumbel_ridge(self, t, nu) -> bool:
        """Did this conditional solve land on the gumbel boundary ridge?"""
        if self.target_is_beta:
            return float(t) >= _GUMBEL_RIDGE_BETA
        if self.beta_slot is not None and nu is not None:
            return float(nu[self.beta_slot]) >= _GUMBEL_RIDGE_BETA
        return False

    def gumbel_limit_ll(self) -> float:
        """Log-likelihood supremum on the gumbel boundary (lazy, cached)."""
        if self._gumbel_ll is None:
            samp = ObservedSample(self.x, precision_h=self.h)
            policy = CONTINUOUS_ONLY if self.cont else EXACT_ONLY
            self._gumbel_ll = fit_mle(samp, GUMBEL,
                                      kind_policy=policy).loglik_max
        return self._gumbel_ll

    def _neg_at(self, t):
        spec, idx = self.spec, self.idx
        theta = np.empty(spec.k)
        theta[idx] = t

        def neg(yr):
            if any(b and abs(v) > 600.0 for b, v in zip(self._bounded, yr)):
                return BIG
            if self.rotated and yr[1] < -_MAX_NEG_LOG_BETA:
                return BIG
            try:
                vals = self._unpack_nuis(yr)
            except OverflowError:
                return BIG
            if not np.all(np.isfinite(vals)):
                return BIG
            theta[self.free] = vals
            nat = lk._to_natural(spec.family, theta, spec.alpha, spec.fixed_mu)
            if nat is None:
                return BIG
            ll = self.kern(*nat, self.x) if self.cont else self.kern(*nat, self.x, self.h)
            if ll == math.inf:
                raise _SingularPath(theta.copy(), ll)
            if self.monitor is not None:
                self.monitor.check(theta.copy(), nat, ll)
            if not math.isfinite(ll):
                return BIG
            return -ll

        return neg

    def _pack_nuis(self, nuis):
        y = np.asarray(nuis, dtype=float).copy()
        if self.rotated:
            sigma, beta = y
            if sigma <= 0 or beta <= 0:
                return None
            w = -math.log(beta)
            return np.array([math.log(sigma) + w, w])
        for pos, i in enumerate(self.free):
            if self.spec.log_mask[i]:
                if y[pos] <= 0:
                    return None
                y[pos] = math.log(y[pos])
        return y

    def _unpack_nuis(self, y):
        if self.rotated:
            logb, w = y
            return np.array([math.exp(logb - w), math.exp(-w)])
        out = y.copy()
        for pos, i in enumerate(self.free):
            if self.spec.log_mask[i]:
                out[pos] = math.exp(out[pos])
        return out

    def _kink_curve(self, t):
        """Parametrization of the endpoint-pinned family at fixed target t.

        With the implied support endpoint pinned at some location e and the
        target pinned at t, one free coordinate v remains for GEV and
        three-parameter Weibull specs. Returns (nat_of, lo, hi,
        needs_t_below_endpoint) where nat_of(v, e) maps the free coordinate
        and the endpoint to natural parameters, (lo, hi) bound the useful
        range of v, and the flag marks targets that are only feasible below
        the endpoint. None when no such family exists for this spec
        (continuous kind, fixed-location submodel, Gumbel or Frechet family,
        Weibull location target, or a pinned value of the wrong sign).
        """
        spec = self.spec
        if self.cont or spec.fixed_mu is not None \
                or spec.family not in (GEV, WEIBULL):
            return None
        name = spec.names[self.idx]
        logy = None if spec.alpha is None else math.log(-math.log(spec.alpha))

        if spec.family == GEV:
            if name == "q":

                def nat_of(v, e):  # v = c < 0; b/c = (t - e) * y^c
                    s = (t - e) * math.exp(v * logy)
                    return (e + s, v * s, v)

                return nat_of, -30.0, -1e-9, True
            if name == "a":

                def nat_of(v, e):  # v = c < 0
                    return (t, v * (t - e), v)

                return nat_of, -30.0, -1e-9, True
            if name == "b":
                if t <= 0.0:
                    return None

                def nat_of(v, e):  # v = c < 0
                    return (e + t / v, t, v)

                return nat_of, -30.0, -1e-9, False
            # "c"
            if t >= 0.0:
                return None

            def nat_of(v, e):  # v = log b
                b = math.exp(v)
                return (e + b / t, b, t)

            mid = math.log(self.sigma0)
            return nat_of, mid - 12.0, mid + 12.0, False
        # three-parameter Weibull: the endpoint is mu itself
        if name == "mu":
            return None  # the target IS the pinned coordinate
        if name == "q":

            def nat_of(v, e):  # v = log beta
                beta = math.exp(v)
                return (e, (e - t) * math.exp(-logy / beta), beta)

            return nat_of, -7.0, 7.0, True
        if name == "sigma":
            if t <= 0.0:
                return None

            def nat_of(v, e):  # v = log beta
                return (e, t, math.exp(v))

            return nat_of, -7.0, 7.0, False
        # "beta"
        if t <= 0.0:
            return None

        def nat_of(v, e):  # v = log sigma
            return (e, math.exp(v), t)

        mid = math.log(self.sigma0)
        return nat_of, mid - 12.0, mid + 12.0, False

    def _kink_conditional(self, t):
        """Exact-likelihood optimum along the top-cell kink at fixed target.

        The likelihood is smooth along the curve where the implied endpoint
        sits exactly at xmax + h/2 while simplex descent across it keeps
        stalling, so this one-dimensional solve recovers the kink branch of
        the profile; the caller takes the better of this and the
        unconstrained search. Returns (loglik, packed nuisance, free
        coordinate) or None when the curve is empty or infeasible.
        """
        curve = self._kink_curve(t)
        if curve is None:
            return None
        nat_of, lo, hi, below = curve
        e0 = self.xmax + 0.5 * self.h
        if below and t >= e0:
            return None
        kern, x, h = self.kern, self.x, self.h
        scale_cap = 1e9 * max(1.0, self.sigma0)

        def neg(v):
            try:
                nat = nat_of(float(v), e0)
            except OverflowError:
                return BIG
            if not all(map(math.isfinite, nat)):
                return BIG
            if not 0.0 < nat[1] <= scale_cap:
                return BIG  # scales past any data resolution are meaningless
            ll = kern(*nat, x, h)
            return -ll if math.isfinite(ll) else BIG

        # coarse scan, then a local polish inside the best grid cell
        grid = np.linspace(lo, hi, 25)
        vals = [neg(v) for v in grid]
        j = int(np.argmin(vals))
        if vals[j] >= BIG:
            return None
        res = minimize_scalar(neg, bounds=(grid[max(0, j - 1)],
                                           grid[min(len(grid) - 1, j + 1)]),
                              method="bounded", options={"xatol": 1e-12})
        v_best, f_best = ((float(res.x), float(res.fun))
                          if res.fun < vals[j] else (float(grid[j]), vals[j]))
        if f_best >= BIG:
            return None
        try:
            theta = _from_natural(self.spec, nat_of(v_best, e0))
        except (OverflowError, ValueError):
            return None
        y = self._pack_nuis(np.asarray(theta)[self.free])
        if y is None:
            return None
        return -f_best, y, v_best

    def _kink_escape_nuis(self, t, v_kink):
        """Nuisance starts nudged off the top-cell kink surface.

        Simplex descent that reaches the kink tends to stall on it even when
        the true conditional optimum lies in the smooth interior. Restarting
        from points whose implied endpoint sits a fraction of a data span
        beyond the kink pulls the search back into the interior while
        keeping the target pinned.
        """
        curve = self._kink_curve(t)
        if curve is None:
            return []
        nat_of, _, _, below = curve
        span = self.xmax - self.xmin
        if span <= 0.0:
            span = max(self.h, 1.0)
        out = []
        for frac in (0.05, 0.2, 0.6):
            e = self.xmax + 0.5 * self.h + frac * span
            if below and t >= e:
                continue
            try:
                nat = nat_of(float(v_kink), e)
                theta = _from_natural(self.spec, nat)
            except (OverflowError, ValueError):
                continue
            if not np.all(np.isfinite(theta)):
                continue
            y = self._pack_nuis(np.asarray(theta)[self.free])
            if y is not None:
                out.append(y)
        return out

    def solve(self, t: float):
        """Profile log-likelihood at target value t, plus the nuisance argmax."""
        if not self.free:
            raise DomainError("nothing to profile over")
        neg = self._neg_at(t)
        tried = []
        if self.warm is not None:
            tried.append((self.warm, 0.06))
        y_mle = self._pack_nuis(self.nuis_mle)
        if y_mle is not None and (self.warm is None
                                  or np.max(np.abs(y_mle - self.warm)) > 1e-12):
            tried.append((y_mle, 0.15))
        # Both starts always run: the warm chain tracks the branch of the
        # nuisance optimum it last saw, but the branches of a multimodal
        # nuisance landscape (an interior optimum versus the near-Gumbel
        # ridge) trade places as the target moves, and the profile is the
        # max over all of them. The mle-anchored start keeps a line to the
        # branch a ridge-riding warm chain would otherwise silently drop.
        # As in _run_starts, an interior optimum outranks the density spike:
        # a start that gets captured by the spike (a cold start at a far
        # target can re-enter feasibility right through the
        # endpoint-at-the-data zone the ridge monitor watches) is dropped,
        # and the singularity propagates only when no start found a proper
        # interior value.
        best = None
        first_singular = None
        for y0, rel in tried:
            try:
                y, f, _, _ = nelder_mead(neg, y0, rel * self.scales,
                                         xatol=1e-8, fatol=1e-10, maxfev=900)
            except _SingularPath as sp:
                if first_singular is None:
                    first_singular = sp
                continue
            if best is None or f < best[1]:
                best = (y, f)
        if (best is None or best[1] >= BIG) and first_singular is not None:
            raise first_singular
        kink = self._kink_conditional(t)
        if kink is not None:
            if best is None or -kink[0] < best[1]:
                best = (kink[1], -kink[0])
            if best[1] >= -kink[0] - 1e-3:
                # The unconstrained search came back glued to the kink (or
                # worse). That is exactly how a simplex that slid onto the
                # kink surface and stalled looks, so probe the smooth
                # interior from endpoint-nudged restarts before trusting it.
                for y0 in self._kink_escape_nuis(t, kink[2]):
                    y2, f2, _, _ = nelder_mead(neg, y0, 0.1 * self.scales,
                                               xatol=1e-8, fatol=1e-10,
                                               maxfev=900)
                    if f2 < best[1]:
                        best = (y2, f2)
        y, f = best
        if f >= BIG:
            return -math.inf, None
        if -f > self.ll_max + 1e-6:
            theta = np.empty(self.spec.k)
            theta[self.idx] = t
            theta[self.free] = self._unpack_nuis(y)
            raise _Rebase(theta, -f)
        self.warm = y
        self.warm_t = t
        return -f, self._unpack_nuis(y)

    def solve_walk(self, t: float, max_solves: int = 48):
        """solve(t), feeding the warm chain through intermediate points.

        A long jump in the target can strand the warm nuisance point in
        infeasible territory, where the search sees a featureless plateau
        and reports -inf even though t is perfectly feasible. Walking the
        gap in shrinking steps keeps every start near a feasible optimum;
        a genuine feasibility wall still comes back as -inf once the step
        has shrunk to nothing against it.
        """
        ll, nu = self.solve(t)
        if ll > -math.inf:
            return ll, nu
        t_cur = self.warm_t if self.warm_t is not None else self.t_hat
        step = t - t_cur
        tiny = 1e-10 * (1.0 + abs(t) + abs(t_cur))
        for _ in range(max_solves):
            if abs(step) < tiny:
                return -math.inf, None
            step *= 0.5
            t_next = t_cur + step
            ll, nu = self.solve(t_next)
            if ll == -math.inf:
                continue
            if t_next == t:
                return ll, nu
            t_cur = t_next
            step = t - t_cur
            ll, nu = self.solve(t)
            if ll > -math.inf:
                return ll, nu
        return -math.inf, None


def _se_for(spec, theta, idx, x, h, kind):
    """Standard error of one coordinate from the observed information.

    Returns None when the finite-difference Hessian refuses to behave; the
    last eigenvalue diagnostics are returned alongside for error reporting.
    """
    def fun(th):
        return lk._loglik_theta(spec.family, th, x, alpha=spec.alpha,
                                fixed_mu=spec.fixed_mu, kind=kind, h=h)

    eigs = None
    for step in (1e-4, 1e-5, 2e-6):
        H = fd_hessian(fun, theta, rel_step=step)
        if not np.all(np.isfinite(H)):
            continue
        info = -H
        eigs = np.linalg.eigvalsh(info)
        if eigs[0] <= 0:
            continue
        cov = np.linalg.inv(info)
        v = cov[idx, idx]
        if v > 0 and math.isfinite(v):
            return math.sqrt(v), eigs
    return None, eigs


_LEVEL_RESID_TOL = 1e-4


def _ridge_abort(solver: _ConditionalSolver, side, t, r, level_k):
    """Stop an endpoint search that walked onto the gumbel boundary.

    Past _GUMBEL_RIDGE_BETA the conditional optimum hugs the gumbel family
    and the profile converges to the gumbel supremum, so whether the cut is
    ever crossed out here is decided by that limit, not by further steps
    (which only clip against the optimizer's excursion cap).
    """
    r_lim = math.exp(min(0.0, solver.gumbel_limit_ll() - solver.ll_max))
    if r_lim >= level_k:
        raise OneSidedIntervalError(side, t, max(r, r_lim))
    raise ConvergenceError(
        f"the {side} endpoint search reached the gumbel boundary (classical "
        f"shape above {_GUMBEL_RIDGE_BETA:g}) before crossing the cutoff; "
        f"the endpoint is numerically out of reach")


def _crossing(solver: _ConditionalSolver, t_hat, ll_max, level_k, w0, direction):
    """One endpoint of {t : R_p(t) >= level_k} by doubling then bisection."""
    side = "lower" if direction < 0 else "upper"
    w = w0
    t_in = t_hat
    t_out = None
    for _ in range(41):
        t = t_hat + direction * w
        clamped = False
        if direction < 0 and solver.t_floor is not None and t <= solver.t_floor:
            t = solver.t_floor
            clamped = True
        ll, nu = solver.solve_walk(t)
        r = 0.0 if ll == -math.inf else math.exp(min(0.0, ll - ll_max))
        if solver.on_gumbel_ridge(t, nu):
            _ridge_abort(solver, side, t, r, level_k)
        if r < level_k:
            t_out = t
            break
        if clamped:
            # Still above the cut at the edge of the continuous domain; past
            # it only the density spike remains, so this endpoint cannot be
            # computed with the continuous likelihood.
            theta = np.empty(solver.spec.k)
            theta[solver.idx] = t
            theta[solver.free] = nu if nu is not None else solver.nuis_mle
            raise _SingularPath(theta, ll)
        t_in = t
        w *= 2.0
    if t_out is None:
        raise OneSidedIntervalError(side, t_hat + direction * w / 2.0, r)

    lo, hi = t_in, t_out
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        ll, nu = solver.solve_walk(mid)
        r = 0.0 if ll == -math.inf else math.exp(min(0.0, ll - ll_max))
        if solver.on_gumbel_ridge(mid, nu):
            _ridge_abort(solver, side, mid, r, level_k)
        if abs(r - level_k) < _LEVEL_RESID_TOL:
            return mid, r - level_k
        if r >= level_k:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"bisection for the {side} endpoint did not meet the residual tolerance"
    )


def _initial_halfwidth(spec, idx, theta, t_hat, x, h, kind, level_k, sigma0):
    se, _ = _se_for(spec, theta, idx, x, h, kind)
    if se is not None:
        return math.sqrt(-2.0 * math.log(level_k)) * se
    name = spec.names[idx]
    if name == "c":
        return 0.25
    if name in ("b", "sigma", "beta"):
        return 0.5 * abs(t_hat)
    return max(0.75 * sigma0, 1e-3 * (1.0 + abs(t_hat)))


def _sigma0_of(x):
    sd = float(x.std(ddof=1)) if x.size > 1 else 1.0
    return max(sd * math.sqrt(6.0) / math.pi, 1e-8)


@dataclass(frozen=True)
class IntervalResult:
    """A confidence or likelihood interval for one scalar target."""

    target: str
    method: str  # "profile" or "aml"
    family: str
    quantile_alpha: float | None
    estimate: float
    lower: float
    upper: float
    level_k: float | None = None
    confidence: float | None = None
    se: float | None = None
    residual_lower: float | None = None
    residual_upper: float | None = None
    kind_used: str = CONTINUOUS
    used_exact_fallback: bool = False

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def covers(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def _refit_exact(fit: FitResult, seed) -> FitResult:
    return fit_mle(fit.sample, fit.family, quantile_alpha=fit.quantile_alpha,
                   fixed_mu=fit.fixed_mu, kind_policy=EXACT_ONLY, seed=seed)


def _with_singular_fallback(impl, fit, kind_policy, seed):
    """Run impl(fit, fallback_flag); on a ridge hit, rerun on an exact refit."""
    try:
        return impl(fit, fit.used_exact_fallback)
    except _SingularPath as sp:
        if kind_policy == CONTINUOUS_ONLY:
            raise SingularLikelihoodError(sp.theta, sp.loglik) from None
        if fit.kind_used == EXACT:
            raise ConvergenceError(
                "exact likelihood reported a singular value; this should not happen"
            ) from None
        exact_fit = _refit_exact(fit, seed)
        return impl(exact_fit, True)


def likelihood_interval(sample: ObservedSample, target: str, *, quantile_alpha=None,
                        level_k: float = 0.15, family: str = GEV, fixed_mu=None,
                        kind_policy: str = FALLBACK, fit: FitResult | None = None,
                        n_starts: int = 5, seed: int = 0) -> IntervalResult:
    """Profile likelihood interval {t : R_p(t) >= level_k} for one target.

    `target` is "q" (with `quantile_alpha`) or a natural coordinate name such
    as "c" or "mu". Endpoints are located by doubling out from the mle and
    bisecting until |R_p - level_k| < 1e-4. If R_p never falls below the cut
    on one side within 40 doublings, OneSidedIntervalError reports that side
    as effectively unbounded.
    """
    if not 0.0 < level_k < 1.0:
        raise DomainError("level_k must lie strictly between 0 and 1")
    if fit is None:
        fit = fit_mle(sample, family, fixed_mu=fixed_mu, kind_policy=kind_policy,
                      n_starts=n_starts, seed=seed)

    def impl(base: FitResult, fell_back: bool) -> IntervalResult:
        for _ in range(3):
            spec, idx, t_hat, theta = _target_spec(base, target, quantile_alpha)
            x = base.sample.values
            h = base.sample.precision_h
            kind = base.kind_used
            sigma0 = _sigma0_of(x)
            monitor = None
            if kind == CONTINUOUS and spec.family in (GEV, WEIBULL):
                monitor = _RidgeMonitor(spec, base.sample.max, h)
            solver = _ConditionalSolver(spec, idx, x, h, kind, sigma0,
                                        base.loglik_max, theta, monitor=monitor)
            w0 = _initial_halfwidth(spec, idx, theta, t_hat, x, h, kind,
                                    level_k, sigma0)
            try:
                lower, res_lo = _crossing(solver, t_hat, base.loglik_max,
                                          level_k, w0, -1.0)
                solver.warm = None
                solver.warm_t = None
                upper, res_hi = _crossing(solver, t_hat, base.loglik_max,
                                          level_k, w0, +1.0)
            except _Rebase as rb:
                base = fit_mle(base.sample, base.family,
                               quantile_alpha=spec.alpha, fixed_mu=base.fixed_mu,
                               kind_policy=EXACT_ONLY if kind == EXACT else kind_policy,
                               seed=seed, start=rb.theta)
                continue
            return IntervalResult(
                target=target, method="profile", family=base.family,
                quantile_alpha=quantile_alpha, estimate=t_hat,
                lower=lower, upper=upper, level_k=level_k,
                residual_lower=res_lo, residual_upper=res_hi,
                kind_used=kind, used_exact_fallback=fell_back,
            )
        raise ConvergenceError(
            "the base maximum kept moving while profiling; fit did not stabilize"
        )

    return _with_singular_fallback(impl, fit, kind_policy, seed)


def aml_interval(sample: ObservedSample, target: str, *, quantile_alpha=None,
                 confidence: float = 0.95, family: str = GEV, fixed_mu=None,
                 kind_policy: str = FALLBACK, fit: FitResult | None = None,
                 n_starts: int = 5, seed: int = 0) -> IntervalResult:
    """Asymptotic (Wald) interval from the observed information.

    The information matrix is a central finite-difference Hessian of the
    log-likelihood in the coordinates that carry the target (quantile
    coordinates for "q"), inverted in full; the interval is the usual
    estimate +- z * se, symmetric by construction.
    """
    if not 0.0 < confidence < 1.0:
        raise DomainError("confidence must lie strictly between 0 and 1")
    if fit is None:
        fit = fit_mle(sample, family, fixed_mu=fixed_mu, kind_policy=kind_policy,
                      n_starts=n_starts, seed=seed)

    def impl(base: FitResult, fell_back: bool) -> IntervalResult:
        spec, idx, t_hat, theta = _target_spec(base, target, quantile_alpha)
        se, eigs = _se_for(spec, theta, idx, base.sample.values,
                           base.sample.precision_h, base.kind_used)
        if se is None:
            raise HessianError(
                "observed information is not positive definite at the mle",
                eigenvalues=eigs,
            )
        z = float(norm.ppf(0.5 + confidence / 2.0))
        d = z * se
        return IntervalResult(
            target=target, method="aml", family=base.family,
            quantile_alpha=quantile_alpha, estimate=t_hat,
            lower=t_hat - d, upper=t_hat + d, confidence=confidence, se=se,
            kind_used=base.kind_used, used_exact_fallback=fell_back,
        )

    return _with_singular_fallback(impl, fit, kind_policy, seed)


@dataclass
class ProfileCurve:
    """Relative profile likelihood along a grid for one target coordinate."""

    target: str
    family: str
    quantile_alpha: float | None
    fixed_mu: float | None
    grid: np.ndarray
    r_values: np.ndarray
    nuisances: np.ndarray
    t_hat: float
    loglik_max: float
    level_span: float
    kind_used: str
    used_exact_fallback: bool
    failed_points: tuple
    fit: FitResult = field(repr=False)
    #: Sides ("lower"/"upper") where R_p never falls below `level_span`, so
    #: the grid is clamped to a finite plotting window instead of a bracket.
    open_sides: tuple = ()


def profile_curve(sample: ObservedSample, target: str, *, quantile_alpha=None,
                  family: str = GEV, fixed_mu=None, kind_policy: str = FALLBACK,
                  fit: FitResult | None = None, grid=None, n_points: int = 101,
                  level_span: float = 0.02, n_starts: int = 5,
                  seed: int = 0) -> ProfileCurve:
    """Relative profile likelihood curve R_p(t).

    Without an explicit grid, the grid spans the interval where R_p >=
    `level_span` (0.02 by default, comfortably wider than any interval at
    0.15) with `n_points` points, the mle inserted. Points are solved
    outward from the mle so each conditional fit warm-starts at its
    neighbor. Grid points whose conditional fit fails are dropped; more than
    20% of them failing is an error. A side where R_p stays above
    `level_span` all the way to the gumbel boundary (a weakly identified
    classical threshold does this) is clamped to a finite plotting window
    and listed in `open_sides`.
    """
    if fit is None:
        fit = fit_mle(sample, family, fixed_mu=fixed_mu, kind_policy=kind_policy,
                      n_starts=n_starts, seed=seed)

    def impl(base: FitResult, fell_back: bool) -> ProfileCurve:
        spec, idx, t_hat, theta = _target_spec(base, target, quantile_alpha)
        x = base.sample.values
        h = base.sample.precision_h
        kind = base.kind_used
        sigma0 = _sigma0_of(x)
        monitor = None
        if kind == CONTINUOUS and spec.family in (GEV, WEIBULL):
            monitor = _RidgeMonitor(spec, base.sample.max, h)
        solver = _ConditionalSolver(spec, idx, x, h, kind, sigma0,
                                    base.loglik_max, theta, monitor=monitor)

        open_sides = []
        if grid is None:
            w0 = _initial_halfwidth(spec, idx, theta, t_hat, x, h, kind,
                                    level_span, sigma0)
            # A side where R_p never drops below level_span has no bracket;
            # clamp it to a few data spans so the curve stays plottable and
            # record the side as open.
            span = 10.0 * max(float(np.ptp(x)), h, 1e-3)
            bounds = []
            for direction in (-1.0, +1.0):
                solver.warm = None
                solver.warm_t = None
                try:
                    b, _ = _crossing(solver, t_hat, base.loglik_max,
                                     level_span, w0, direction)
                except OneSidedIntervalError as e:
                    open_sides.append(e.side)
                    b = t_hat + direction * span
                bounds.append(b)
            pts = np.linspace(bounds[0], bounds[1], int(n_points))
        else:
            pts = np.asarray(grid, dtype=float)
            if pts.ndim != 1 or pts.size < 2:
                raise DomainError("grid must be a one-dimensional array of points")
            pts = np.sort(pts)
        pts = np.unique(np.concatenate([pts, [t_hat]]))

        m = pts.size
        r = np.full(m, np.nan)
        nuis = np.full((m, max(1, spec.k - 1)), np.nan)
        failed = []
        i_hat = int(np.argmin(np.abs(pts - t_hat)))
        for block in (range(i_hat, -1, -1), range(i_hat + 1, m)):
            solver.warm = None
            solver.warm_t = None
            for i in block:
                try:
                    ll, nu = solver.solve_walk(float(pts[i]))
                except (_Rebase, ConvergenceError):
                    failed.append(float(pts[i]))
                    continue
                r[i] = 0.0 if ll == -math.inf else math.exp(min(0.0, ll - base.loglik_max))
                if nu is not None:
                    nuis[i] = nu
        ok = ~np.isnan(r)
        if ok.sum() < 0.8 * m:
            raise ConvergenceError(
                f"conditional fits failed on {m - int(ok.sum())} of {m} grid points"
            )
        return ProfileCurve(
            target=target, family=base.family, quantile_alpha=quantile_alpha,
            fixed_mu=base.fixed_mu, grid=pts[ok], r_values=r[ok],
            nuisances=nuis[ok], t_hat=t_hat, loglik_max=base.loglik_max,
            level_span=level_span, kind_used=kind,
            used_exact_fallback=fell_back, failed_points=tuple(failed), fit=base,
            open_sides=tuple(open_sides),
        )

    return _with_singular_fallback(impl, fit, kind_policy, seed)


# --- model comparison helpers -------------------------------------------------

def select_submodel(c_hat) -> str:
    """Name the classical family a GEV shape estimate points at.

    The cut is 1e-5: anything closer to zero is called gumbel.
    """
    if isinstance(c_hat, FitResult):
        if c_hat.family != GEV:
            raise DomainError("submodel selection needs a gev fit")
        c_hat = c_hat.coordinate("c")
    c = float(c_hat)
    if c < -1e-5:
        return WEIBULL
    if c > 1e-5:
        return FRECHET
    return GUMBEL


def gumbel_plausibility(obj) -> float:
    """Relative profile likelihood of the gumbel member, R_p(c = 0).

    Accepts a gev FitResult or a ProfileCurve built from one; the value
    comes from a dedicated conditional fit at c = 0, not from interpolating
    any grid.
    """
    fit = obj.fit if isinstance(obj, ProfileCurve) else obj
    if not isinstance(fit, FitResult) or fit.family != GEV:
        raise DomainError("gumbel plausibility is defined for gev fits")
    spec, idx, _, theta = _target_spec(fit, "c", None)
    x = fit.sample.values
    solver = _ConditionalSolver(spec, idx, x, fit.sample.precision_h,
                                fit.kind_used, _sigma0_of(x), fit.loglik_max,
                                theta)
    try:
        ll0, _ = solver.solve_walk(0.0)
    except _Rebase:
        # the gumbel slice beat the stored maximum; likelihoods this flat are
        # indistinguishable from c = 0
        return 1.0
    if ll0 == -math.inf:
        return 0.0
    return math.exp(min(0.0, ll0 - fit.loglik_max))


@dataclass(frozen=True)
class LrtResult:
    """Likelihood ratio test of a restricted model inside a full one."""

    w: float
    statistic: float
    p_value: float
    df: int

    def __iter__(self):  # allows w, stat, p, df = lrt_nested(...)
        return iter((self.w, self.statistic, self.p_value, self.df))


def lrt_nested(loglik_restricted: float, loglik_full: float, df: int = 1) -> LrtResult:
    """W = L_restricted / L_full, -2 log W, and its chi-square tail area."""
    lr = float(loglik_restricted)
    lf = float(loglik_full)
    if not (math.isfinite(lr) and math.isfinite(lf)):
        raise DomainError("both log-likelihoods must be finite")
    if df < 1:
        raise DomainError("df must be a positive integer")
    if lr > lf + 1e-6:
        raise DomainError(
            f"restricted log-likelihood {lr} exceeds the full one {lf}; "
            "the full fit has not converged"
        )
    stat = max(0.0, 2.0 * (lf - lr))
    return LrtResult(
        w=math.exp(-stat / 2.0),
        statistic=stat,
        p_value=float(chi2.sf(stat, df)),
        df=df,
    )
