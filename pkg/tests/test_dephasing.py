"""
Test the dephasing rates
"""

import math
import warnings

import numpy as np
import pytest

from dephaseprobe.core import dephasing
from dephaseprobe.models import BathModel, RegimeTag

S_GRID = [0.1, 0.5, 1.0, 1.6, 2.2, 3.0]
TAU_GRID = [0.1, 1.0, 5.0, 20.0, 35.0]


@pytest.mark.parametrize("s", S_GRID)
@pytest.mark.parametrize("tau", TAU_GRID)
def test_closed_form_matches_quadrature(s, tau):
    closed = dephasing.gamma_zero_T(s, tau).gamma
    oracle = dephasing.gamma_zero_T_oracle(s, tau)
    assert abs(closed - oracle) / max(closed, 1e-12) <= 1e-8


@pytest.mark.parametrize("tau", [0.5, 1.0, 5.0, 20.0])
def test_ohmic_branch(tau):
    outcome = dephasing.gamma_zero_T(1.0, tau)
    assert outcome.gamma == pytest.approx(0.5 * math.log(1.0 + tau * tau), rel=1e-14)
    assert outcome.regime_tag == RegimeTag.exact_closed_form

    for shift in (1e-7, -1e-7):
        assert abs(dephasing.gamma_zero_T(1.0 + shift, tau).gamma - outcome.gamma) <= 1e-5


def test_super_ohmic_reduction():
    assert dephasing.gamma_zero_T(2.0, 1.0).gamma == pytest.approx(0.5, abs=1e-12)
    assert dephasing.gamma_zero_T(2.0, 2.0).gamma == pytest.approx(0.8, abs=1e-12)


def test_no_interaction():
    for s in S_GRID:
        outcome = dephasing.gamma_zero_T(s, 0.0)
        assert outcome.gamma == 0.0
        assert outcome.dgamma_ds == 0.0


@pytest.mark.parametrize("s", S_GRID)
@pytest.mark.parametrize("tau", TAU_GRID)
def test_derivative_matches_finite_difference(s, tau):
    h = 1e-6

    def rate(x):
        return dephasing.gamma_zero_T(x, tau).gamma

    # Richardson-extrapolated central difference
    coarse = (rate(s + h) - rate(s - h)) / (2 * h)
    fine = (rate(s + h / 2) - rate(s - h / 2)) / h
    estimate = (4 * fine - coarse) / 3
    analytic = dephasing.dgamma_ds_zero_T(s, tau)
    assert abs(analytic - estimate) <= 1e-6 * max(1.0, abs(analytic))


def test_derivative_continuous_through_ohmic_point():
    inside = dephasing.dgamma_ds_zero_T(1.0, 1.0)
    outside = dephasing.dgamma_ds_zero_T(1.0002, 1.0)
    assert inside == pytest.approx(outside, rel=1e-3)


@pytest.mark.parametrize("s", S_GRID)
def test_short_time_law(s):
    tau = 1e-3
    ratio = dephasing.gamma_zero_T(s, tau).gamma / dephasing.gamma_short_time(s, tau)
    assert ratio == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("s", [1.6, 2.2, 3.0])
def test_long_time_limit(s):
    assert dephasing.gamma_zero_T(s, 1e4).gamma == pytest.approx(
        dephasing.gamma_asymptote(s), rel=1e-2
    )


@pytest.mark.parametrize("s", [0.3, 1.0])
def test_long_time_divergence(s):
    assert dephasing.gamma_asymptote(s) == math.inf


def test_monotone_in_time():
    # dγ/dτ = Γ(s) sin(s arctan τ) / (1+τ²)^{s/2} stays non-negative only up to s = 2
    taus = np.linspace(0.0, 35.0, 50)
    for s in np.linspace(0.06, 2.0, 50):
        values = [dephasing.gamma_zero_T(float(s), float(tau)).gamma for tau in taus]
        assert all(v >= 0.0 for v in values)
        assert np.all(np.diff(values) >= -1e-12)


@pytest.mark.parametrize("s, tau", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.1)])
def test_domain_errors(s, tau):
    with pytest.raises(ValueError):
        dephasing.gamma_zero_T(s, tau)
    with pytest.raises(ValueError):
        dephasing.gamma_zero_T_oracle(s, tau)


@pytest.mark.parametrize("s", [0.5, 1.0, 1.5, 2.5])
@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0, 5.0])
def test_low_temperature_quadratic_matches_quadrature(s, tau):
    T = 0.01
    approximate = dephasing.gamma_low_T_quadratic(s, tau, T)
    exact = dephasing.gamma_finite_T_exact(s, tau, T)
    # Only the first Boltzmann term of coth is kept; the rest weigh (ζ(1+s)-1) T^{1+s}
    tolerance = 2e-2 if (s, tau) == (0.5, 5.0) else 1e-2
    assert approximate.gamma == pytest.approx(exact.gamma, rel=tolerance)
    assert approximate.regime_tag == RegimeTag.low_T_quadratic
    assert exact.regime_tag == RegimeTag.exact_quadrature


@pytest.mark.parametrize("s", [0.5, 1.5])
def test_low_temperature_expansion_matches_quadrature(s):
    T, tau = 0.005, 2.0
    approximate = dephasing.gamma_low_T(s, tau, T).gamma
    exact = dephasing.gamma_finite_T_exact(s, tau, T).gamma
    assert approximate == pytest.approx(exact, rel=1e-2)


def test_low_temperature_reduces_to_zero_temperature():
    cold = dephasing.gamma_zero_T(1.5, 3.0)
    assert dephasing.gamma_low_T(1.5, 3.0, 0.0).gamma == cold.gamma
    assert dephasing.gamma_low_T_quadratic(1.5, 3.0, 0.0).gamma == cold.gamma


def test_low_temperature_warns_when_hot():
    with pytest.warns(UserWarning):
        dephasing.gamma_low_T_quadratic(1.0, 1.0, 2.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dephasing.gamma_low_T_quadratic(1.0, 1.0, 0.1)


def test_finite_temperature_increases_dephasing():
    cold = dephasing.gamma_zero_T(1.0, 2.0).gamma
    warm = dephasing.gamma_finite_T_exact(1.0, 2.0, 0.5).gamma
    assert warm > cold


@pytest.mark.parametrize("s", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
def test_high_temperature_limit(s, tau):
    T = 100.0
    approximate = dephasing.gamma_high_T(s, tau, T)
    exact = dephasing.gamma_finite_T_exact(s, tau, T)
    assert approximate.gamma == pytest.approx(exact.gamma, rel=2e-2)
    assert approximate.dgamma_ds == pytest.approx(exact.dgamma_ds, rel=2e-2, abs=1e-3)


def test_finite_temperature_derivative():
    s, tau, T = 1.2, 1.5, 0.3
    h = 1e-4
    exact = dephasing.gamma_finite_T_exact(s, tau, T)
    upper = dephasing.gamma_finite_T_exact(s + h, tau, T).gamma
    lower = dephasing.gamma_finite_T_exact(s - h, tau, T).gamma
    assert exact.dgamma_ds == pytest.approx((upper - lower) / (2 * h), rel=1e-4)


def test_bath_model():
    assert BathModel(s=0.5).regime == "sub-Ohmic"
    assert BathModel(s=1.0).regime == "Ohmic"
    assert BathModel(s=2.0).regime == "super-Ohmic"
    assert BathModel(s=1.0).rate(1.0).gamma == pytest.approx(0.5 * math.log(2.0))
    assert BathModel(s=1.0, T=0.2).rate(1.0).regime_tag == RegimeTag.exact_quadrature
    assert BathModel(s=2.0).spectral_density(1.0) == pytest.approx(math.exp(-1.0))
    with pytest.raises(ValueError):
        BathModel(s=0.0)
