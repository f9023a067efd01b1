"""
Test the simulated measurements and the estimator of s
"""

import math

import pytest

from dephaseprobe.core import dephasing, metrology, montecarlo
from dephaseprobe.exceptions import ExperimentError, InfeasibleEstimateError
from dephaseprobe.models import SIGMA_X, MeasurementAxis, MeasurementRecord


def test_trial_seed():
    assert montecarlo.trial_seed(42, 7) == montecarlo.trial_seed(42, 7)
    seeds = {montecarlo.trial_seed(42, trial) for trial in range(1000)}
    assert len(seeds) == 1000
    assert montecarlo.trial_seed(42, 0) != montecarlo.trial_seed(43, 0)
    assert 0 <= montecarlo.trial_seed(42, 0) < 2**64


def test_no_dephasing_gives_all_plus():
    record = montecarlo.sample_outcomes(1.0, 1e-9, 1000)
    assert record.n_plus == 1000


def test_outcome_frequency():
    M = 1_000_000
    record = montecarlo.sample_outcomes(1.5, 35.0, M, seed=3)
    gamma = dephasing.gamma_zero_T(1.5, 35.0).gamma
    p_plus, _ = metrology.measurement_probabilities(gamma, SIGMA_X)
    sigma = math.sqrt(M * p_plus * (1 - p_plus))
    assert abs(record.n_plus - M * p_plus) < 4 * sigma


def test_axis_without_signal_is_unbiased():
    M = 100_000
    axis = MeasurementAxis(b=(0.0, 0.0, 1.0))
    record = montecarlo.sample_outcomes(1.5, 2.0, M, axis=axis, seed=5)
    assert abs(record.n_plus - M / 2) < 4 * math.sqrt(M / 4)


def test_sampling_is_reproducible():
    first = montecarlo.sample_outcomes(0.8, 3.0, 5000, seed=11)
    second = montecarlo.sample_outcomes(0.8, 3.0, 5000, seed=11)
    assert first == second
    assert first.seed == 11


def test_sampling_rejects_empty_record():
    with pytest.raises(ValueError):
        montecarlo.sample_outcomes(1.0, 1.0, 0)


def test_balanced_record_is_infeasible():
    record = MeasurementRecord(M=100, n_plus=50, tau=1.0, axis=SIGMA_X, seed=0)
    with pytest.raises(InfeasibleEstimateError):
        montecarlo.estimate_s(record)


def test_axis_without_signal_is_infeasible():
    record = MeasurementRecord(
        M=100, n_plus=80, tau=1.0, axis=MeasurementAxis.from_b1(0.0), seed=0
    )
    with pytest.raises(InfeasibleEstimateError):
        montecarlo.estimate_s(record)


def test_invert_rate_recovers_s():
    gamma = dephasing.gamma_zero_T(1.3, 0.5).gamma
    estimate = montecarlo.invert_rate(gamma, 0.5, 0.8, 3.0)
    assert estimate.s_hat == pytest.approx(1.3, abs=1e-8)
    assert estimate.n_roots == 1
    assert not estimate.multiple


def test_invert_rate_without_root():
    with pytest.raises(InfeasibleEstimateError):
        montecarlo.invert_rate(100.0, 0.5, 0.8, 3.0)
    with pytest.raises(ValueError):
        montecarlo.invert_rate(0.1, 0.5, 3.0, 0.8)


def test_estimate_from_exact_frequency():
    tau, M = 35.0, 1_000_000
    gamma = dephasing.gamma_zero_T(1.5, tau).gamma
    p_plus, _ = metrology.measurement_probabilities(gamma, SIGMA_X)
    record = MeasurementRecord(M=M, n_plus=round(M * p_plus), tau=tau, axis=SIGMA_X, seed=0)
    assert montecarlo.estimate_s(record).s_hat == pytest.approx(1.5, abs=1e-3)


def test_too_few_trials():
    with pytest.raises(ValueError):
        montecarlo.cr_experiment(1.5, 35.0, 1000, 50)


def test_mostly_infeasible_experiment():
    # γ ≈ 20 here, so the records carry almost no signal
    with pytest.raises(ExperimentError):
        montecarlo.cr_experiment(0.3, 35.0, 100, 100, max_workers=1)


def test_experiment_is_reproducible():
    first = montecarlo.cr_experiment(1.5, 35.0, 10_000, 100, seed=9, max_workers=1)
    second = montecarlo.cr_experiment(1.5, 35.0, 10_000, 100, seed=9, max_workers=4)
    assert first == second
    assert first.q_cr_bound <= first.cr_bound
    assert first.failures == 0


@pytest.mark.slow
def test_estimator_saturates_bound():
    result = montecarlo.cr_experiment(1.5, 35.0, 10_000, 1000)
    feasible = result.n_trials - result.failures
    assert abs(result.s_hat - 1.5) <= 3 * math.sqrt(result.empirical_variance / feasible)
    assert 0.85 <= result.saturation_ratio <= 1.3
    assert result.cr_bound == pytest.approx(result.q_cr_bound, rel=1e-12)


@pytest.mark.slow
def test_variance_scales_with_repetitions():
    single = montecarlo.cr_experiment(1.5, 35.0, 10_000, 1000)
    double = montecarlo.cr_experiment(1.5, 35.0, 20_000, 1000)
    ratio = double.empirical_variance / single.empirical_variance
    assert 0.4 <= ratio <= 0.6


@pytest.mark.slow
def test_tilted_axis_loses_information():
    tilted_axis = MeasurementAxis.from_b1(0.5)
    aligned = montecarlo.cr_experiment(1.5, 35.0, 10_000, 1000)
    tilted = montecarlo.cr_experiment(1.5, 35.0, 10_000, 1000, axis=tilted_axis)
    expected = metrology.qfi_ohmicity(1.5, 35.0).qfi / metrology.fisher_info_projective(
        1.5, 35.0, tilted_axis
    )
    ratio = tilted.empirical_variance / aligned.empirical_variance
    assert ratio == pytest.approx(expected, rel=0.25)
