"""Distribution layer: quantiles, CDF/PDF, sampling, coordinate mappings.

Numeric reference values were computed with an independent high-precision
oracle (closed forms in 50-digit arithmetic, cross-checked against
scipy.stats); the shipped code never calls scipy.stats itself.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

import evlik
from evlik import (
    EvParams,
    GevParams,
    cdf,
    ev_to_gev,
    gev_to_ev,
    pdf,
    quantile,
    sample,
    support,
)

# strategies for well-conditioned parameter values
_loc = st.floats(-50, 50)
_scale = st.floats(0.05, 50)
_shape_nonzero = st.one_of(st.floats(-2.0, -1e-3), st.floats(1e-3, 2.0))
_beta = st.floats(0.2, 20)
_alpha = st.floats(0.001, 0.999)


# ---------------------------------------------------------------- quantiles

def test_gev_quantile_frozen_value():
    # oracle: a - (b/c)(1 - (-log alpha)^(-c)) at 50 digits
    assert quantile(GevParams(1.0, 1.0, 0.5), 0.99) == pytest.approx(
        18.949853380255422, abs=1e-12)


def test_weibull_quantile_frozen_value_and_gev_equality():
    # oracle: mu - sigma (-log alpha)^(1/beta); the GEV(1,1,-0.5) value is
    # forced equal by the coordinate mapping
    qw = quantile(EvParams("weibull", mu=3.0, sigma=2.0, beta=2.0), 0.99)
    qg = quantile(GevParams(1.0, 1.0, -0.5), 0.99)
    assert qw == pytest.approx(2.799497273300322, abs=1e-12)
    assert qg == pytest.approx(qw, abs=1e-12)


def test_gumbel_quantile_frozen_value():
    # oracle: a - b log(-log alpha)
    assert quantile(GevParams(1.0, 1.0, 0.0), 0.95) == pytest.approx(
        3.9701952490421646, abs=1e-12)
    assert quantile(GevParams(1.0, 1.0, 0.0), 0.99) == pytest.approx(
        5.60014922677658, abs=1e-12)


@pytest.mark.parametrize("c", [-1.2, -0.5, -0.05, 0.05, 0.5, 1.2])
@pytest.mark.parametrize("alpha", [0.01, 0.5, 0.95, 0.999])
def test_gev_matches_scipy(c, alpha):
    p = GevParams(2.0, 1.5, c)
    # scipy's genextreme uses the opposite sign convention for the shape
    q = quantile(p, alpha)
    assert q == pytest.approx(
        sps.genextreme.ppf(alpha, -c, loc=2.0, scale=1.5), rel=1e-10)
    assert cdf(p, q) == pytest.approx(alpha, abs=1e-10)
    x = np.array([q])
    assert pdf(p, x)[0] == pytest.approx(
        sps.genextreme.pdf(q, -c, loc=2.0, scale=1.5), rel=1e-9)


@pytest.mark.parametrize("alpha", [0.05, 0.5, 0.95])
def test_gumbel_matches_scipy(alpha):
    p = GevParams(-1.0, 2.5, 0.0)
    q = quantile(p, alpha)
    assert q == pytest.approx(sps.gumbel_r.ppf(alpha, loc=-1.0, scale=2.5),
                              rel=1e-12)
    assert pdf(p, np.array([q]))[0] == pytest.approx(
        sps.gumbel_r.pdf(q, loc=-1.0, scale=2.5), rel=1e-12)


# --------------------------------------------------- property: CDF o quantile

@settings(max_examples=150, deadline=None)
@given(a=_loc, b=_scale, c=_shape_nonzero, alpha=_alpha)
def test_cdf_quantile_identity_gev(a, b, c, alpha):
    p = GevParams(a, b, c)
    assert abs(cdf(p, quantile(p, alpha)) - alpha) < 1e-10


@settings(max_examples=60, deadline=None)
@given(a=_loc, b=_scale, alpha=_alpha)
def test_cdf_quantile_identity_gumbel(a, b, alpha):
    p = GevParams(a, b, 0.0)
    assert abs(cdf(p, quantile(p, alpha)) - alpha) < 1e-10


@settings(max_examples=80, deadline=None)
@given(mu=_loc, sigma=_scale, beta=_beta, alpha=_alpha,
       fam=st.sampled_from(["weibull", "frechet"]))
def test_cdf_quantile_identity_classical(mu, sigma, beta, alpha, fam):
    p = EvParams(fam, mu=mu, sigma=sigma, beta=beta)
    assert abs(cdf(p, quantile(p, alpha)) - alpha) < 1e-10


# --------------------------------------------------- property: mapping round trip

@settings(max_examples=150, deadline=None)
@given(a=_loc, b=_scale, c=_shape_nonzero)
def test_gev_ev_round_trip(a, b, c):
    p = GevParams(a, b, c)
    back = ev_to_gev(gev_to_ev(p))
    # the location passes through intermediates of size b/|c|, so "relative"
    # for it means relative to that operand scale, not to a possibly tiny a
    loc_tol = 1e-12 * (1.0 + abs(a) + b / abs(c))
    assert back.a == pytest.approx(a, abs=loc_tol)
    assert back.b == pytest.approx(b, rel=1e-12)
    assert back.c == pytest.approx(c, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(mu=_loc, sigma=_scale, beta=_beta,
       fam=st.sampled_from(["weibull", "frechet"]))
def test_ev_gev_round_trip(mu, sigma, beta, fam):
    p = EvParams(fam, mu=mu, sigma=sigma, beta=beta)
    back = gev_to_ev(ev_to_gev(p))
    assert back.family == fam
    loc_tol = 1e-12 * (1.0 + abs(mu) + sigma)
    assert back.mu == pytest.approx(mu, abs=loc_tol)
    assert back.sigma == pytest.approx(sigma, rel=1e-12)
    assert back.beta == pytest.approx(beta, rel=1e-12)


def test_mapping_agrees_in_distribution():
    p = GevParams(37.02, 8.1, 0.21)
    e = gev_to_ev(p)
    assert e.family == "frechet"
    for alpha in (0.1, 0.5, 0.9, 0.99):
        assert quantile(e, alpha) == pytest.approx(quantile(p, alpha),
                                                   rel=1e-12)


# --------------------------------------------------- property: Gumbel limit

@settings(max_examples=80, deadline=None)
@given(a=st.floats(-10, 10), b=st.floats(0.1, 10), alpha=_alpha,
       eps=st.sampled_from([1e-8, -1e-8]))
def test_gumbel_limit_quantile(a, b, alpha, eps):
    q0 = quantile(GevParams(a, b, 0.0), alpha)
    q1 = quantile(GevParams(a, b, eps), alpha)
    assert abs(q1 - q0) < 1e-6 * max(1.0, abs(q0))


@pytest.mark.parametrize("eps", [1e-8, -1e-8])
def test_gumbel_limit_cdf_pdf(eps):
    x = np.linspace(-3.0, 8.0, 40)
    p0, p1 = GevParams(0.5, 1.5, 0.0), GevParams(0.5, 1.5, eps)
    assert np.max(np.abs(cdf(p1, x) - cdf(p0, x))) < 1e-6
    assert np.max(np.abs(pdf(p1, x) - pdf(p0, x))) < 1e-6


# ---------------------------------------------------------------- sampling

def test_sample_deterministic_and_consistent():
    p = GevParams(1.0, 1.0, -0.5)
    x1 = sample(p, 10_000, seed=12)
    x2 = sample(p, 10_000, seed=12)
    assert np.array_equal(x1, x2)
    # Monte Carlo check of the quantile formula
    assert np.quantile(x1, 0.95) == pytest.approx(quantile(p, 0.95), abs=0.1)


def test_sample_respects_support():
    lo, hi = support(GevParams(1.0, 1.0, -0.5))
    x = sample(GevParams(1.0, 1.0, -0.5), 5000, seed=3)
    assert lo <= x.min() and x.max() <= hi
    assert hi == pytest.approx(1.0 + 1.0 / 0.5)  # a - b/c

    lo_f, hi_f = support(EvParams("frechet", mu=2.0, sigma=1.0, beta=3.0))
    assert lo_f == pytest.approx(2.0) and math.isinf(hi_f)


def test_invalid_parameters_rejected():
    with pytest.raises(evlik.DomainError):
        GevParams(0.0, -1.0, 0.1)
    with pytest.raises(evlik.DomainError):
        EvParams("weibull", mu=0.0, sigma=1.0, beta=-2.0)
    with pytest.raises(evlik.DomainError):
        EvParams("cauchy", mu=0.0, sigma=1.0, beta=1.0)
    with pytest.raises(evlik.DomainError):
        quantile(GevParams(0.0, 1.0, 0.1), 1.5)


def test_singular_sentinel():
    assert evlik.is_singular(evlik.SINGULAR)
    assert not evlik.is_singular(float("inf"))
    assert not evlik.is_singular(-5.0)
