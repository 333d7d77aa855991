"""Likelihood kernels: continuous vs exact, precision detection, reparams.

scipy.stats serves as the independent oracle for continuous densities; the
frozen constants come from 50-digit closed-form evaluation.
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
    ObservedSample,
    detect_precision,
    loglik,
    loglik_reparam,
    relative_likelihood,
)


def _obs(values, h=1e-6):
    return ObservedSample(np.asarray(values, dtype=float), precision_h=h)


# ------------------------------------------------------- continuous kernels

@pytest.mark.parametrize("c", [-0.7, -0.2, 0.0, 0.2, 0.7])
def test_continuous_gev_matches_scipy(c):
    x = np.array([1.2, 0.4, 2.7, 1.9, 0.8, 3.1])
    ours = loglik(GevParams(1.0, 0.8, c), _obs(x), kind="continuous")
    # scipy's shape has the opposite sign
    ref = sps.genextreme.logpdf(x, -c, loc=1.0, scale=0.8).sum()
    assert ours == pytest.approx(ref, rel=1e-10)


def test_continuous_classical_matches_scipy():
    x = np.array([3.2, 4.4, 2.7, 5.9, 3.8])
    wb = EvParams("weibull", mu=8.0, sigma=3.0, beta=2.5)
    ref = sps.weibull_max.logpdf(x, 2.5, loc=8.0, scale=3.0).sum()
    assert loglik(wb, _obs(x), kind="continuous") == pytest.approx(
        ref, rel=1e-10)
    fr = EvParams("frechet", mu=1.0, sigma=2.0, beta=3.0)
    ref = sps.invweibull.logpdf(x, 3.0, loc=1.0, scale=2.0).sum()
    assert loglik(fr, _obs(x), kind="continuous") == pytest.approx(
        ref, rel=1e-10)


def test_continuous_outside_support():
    x = np.array([0.5, 2.0])  # 0.5 < mu of the frechet
    fr = EvParams("frechet", mu=1.0, sigma=2.0, beta=3.0)
    assert loglik(fr, _obs(x), kind="continuous") == -math.inf


# ------------------------------------------------------------ exact kernel

def test_exact_single_cell_frozen_value():
    # Weibull(1,1,0.5), observation 1.0 at h=0.1: the cell [0.95, 1.05]
    # clamps to the support endpoint, so the probability is
    # 1 - exp(-sqrt(0.05)); oracle log value at 50 digits:
    wb = EvParams("weibull", mu=1.0, sigma=1.0, beta=0.5)
    s = ObservedSample(np.array([1.0]), precision_h=0.1)
    assert loglik(wb, s, kind="exact") == pytest.approx(
        -1.6075870696859194, abs=1e-12)


def test_exact_bounded_where_continuous_singular():
    # same configuration: the continuous density blows up at the endpoint
    wb = EvParams("weibull", mu=1.0, sigma=1.0, beta=0.5)
    s = ObservedSample(np.array([1.0]), precision_h=0.1)
    assert evlik.is_singular(loglik(wb, s, kind="continuous"))
    ex = loglik(wb, s, kind="exact")
    assert math.isfinite(ex) and ex <= 0.0


@settings(max_examples=60, deadline=None)
@given(c=st.one_of(st.floats(-0.9, -0.05), st.floats(0.05, 0.9)),
       a=st.floats(-5, 5), b=st.floats(0.2, 5))
def test_exact_is_a_log_probability(a, b, c):
    x = np.round(np.array([a + 0.3 * b, a + 0.9 * b, a + 1.7 * b]), 2)
    ll = loglik(GevParams(a, b, c), ObservedSample(x, precision_h=0.01),
                kind="exact")
    assert ll <= 1e-12  # log of a probability, never positive


def test_exact_continuous_limit_decay():
    # as h -> 0, exact(theta; h) - n log h converges to the continuous
    # log-likelihood, with error shrinking monotonically
    x = np.array([2.1, 3.4, 1.7, 5.2, 2.9, 4.1])
    for p in (GevParams(2.5, 1.2, 0.1), GevParams(2.5, 1.2, -0.3),
              EvParams("frechet", mu=0.5, sigma=2.0, beta=3.0)):
        cont = loglik(p, _obs(x), kind="continuous")
        errs = []
        for h in (1e-2, 1e-4, 1e-6):
            s = ObservedSample(x, precision_h=h)
            ex = loglik(p, s, kind="exact")
            errs.append(abs(ex - (cont + x.size * math.log(h))))
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-9


def test_collapsed_standardization_guard():
    # mu so large that distinct observations standardize identically: the
    # honest value is -inf, not a finite density-spike artifact
    x = np.array([10.0, 10.5, 11.0])
    s = ObservedSample(x, precision_h=0.1)
    for p in (EvParams("weibull", mu=1e18, sigma=1.0, beta=2.0),
              EvParams("frechet", mu=-1e18, sigma=1.0, beta=2.0)):
        assert loglik(p, s, kind="continuous") == -math.inf
        assert loglik(p, s, kind="exact") == -math.inf


def test_extreme_scale_no_warnings():
    x = np.array([10.0, 10.5, 11.0])
    s = ObservedSample(x, precision_h=0.1)
    with np.errstate(all="raise"):
        for p in (GevParams(0.0, 1e-320, 0.5),
                  EvParams("weibull", mu=1e18, sigma=1e-320, beta=2.0)):
            for kind in ("continuous", "exact"):
                assert loglik(p, s, kind=kind) == -math.inf


# ----------------------------------------------------------- reparameterized

def test_quantile_coordinates_same_loglik():
    # natural (1, 1, 0.5) vs quantile coordinates (Q_.99, 1, 0.5)
    x = np.array([1.2, 0.4, 2.7, 1.9, 0.8, 3.1])
    s = _obs(x)
    nat = loglik(GevParams(1.0, 1.0, 0.5), s, kind="continuous")
    rep = loglik_reparam([18.949853380255422, 1.0, 0.5], "gev", s,
                         quantile_alpha=0.99, kind="continuous")
    assert rep == pytest.approx(nat, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(c=st.one_of(st.floats(-0.9, -0.05), st.floats(0.05, 0.9)),
       alpha=st.floats(0.5, 0.995))
def test_quantile_coordinates_property(c, alpha):
    x = np.array([1.2, 0.4, 2.7, 1.9, 0.8, 3.1])
    s = _obs(x)
    p = GevParams(0.8, 1.1, c)
    q = evlik.quantile(p, alpha)
    nat = loglik(p, s, kind="continuous")
    rep = loglik_reparam([q, 1.1, c], "gev", s, quantile_alpha=alpha,
                         kind="continuous")
    assert rep == pytest.approx(nat, abs=1e-9)


def test_relative_likelihood_frozen_value():
    # exp(-1.8971) at 50 digits
    assert relative_likelihood(-11.8971, -10.0) == pytest.approx(
        0.15000299776283707, abs=1e-14)
    assert relative_likelihood(-10.0, -10.0) == 1.0
    assert relative_likelihood(-math.inf, -10.0) == 0.0


# -------------------------------------------------------- precision detection

@pytest.mark.parametrize("values,expected", [
    ([12.3, 45.6, 7.8], 0.1),
    ([1.0, 2.0, 3.0], 1.0),
    ([1.25, 3.5], 0.01),
    ([10.0, 20.0, 300.0], 1.0),
])
def test_detect_precision(values, expected):
    assert detect_precision(np.array(values)) == pytest.approx(expected)


def test_detect_precision_fallback():
    assert detect_precision(np.array([math.pi, math.e])) == pytest.approx(
        1e-10)


# -------------------------------------------------------------- sample type

def test_observed_sample_validation():
    with pytest.raises(evlik.DomainError):
        ObservedSample(np.array([1.0, math.nan]), precision_h=0.1)
    with pytest.raises(evlik.DomainError):
        ObservedSample(np.array([1.0, 2.0]), precision_h=-0.1)
    with pytest.raises(evlik.DomainError):
        ObservedSample(np.array([]), precision_h=0.1)
