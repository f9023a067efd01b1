"""
Simulated experiments: binomial measurement records, inversion estimates of
the ohmicity and their comparison with the Cramér-Rao bounds.

Random numbers come from ``numpy.random.PCG64``. Trial ``i`` of an
experiment with master seed ``seed`` draws from the 64-bit seed
``SeedSequence((seed, i)).generate_state(1, uint64)[0]``, so results do not
depend on how trials are scheduled.
"""

import logging
import math

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence
from scipy import optimize

from dephaseprobe.exceptions import ExperimentError, InfeasibleEstimateError
from dephaseprobe.models import (
    SIGMA_X,
    EstimationResult,
    MeasurementAxis,
    MeasurementRecord,
    SEstimate,
)

from . import dephasing
from .metrology import fisher_info_projective, measurement_probabilities, qfi_ohmicity
from .parallel import parallel_map

logger = logging.getLogger(__name__)

ROOT_SCAN_POINTS = 64
ROOT_TOLERANCE = 1e-10
MIN_TRIALS = 100
MAX_INFEASIBLE_FRACTION = 0.2


def trial_seed(seed: int, trial: int) -> int:
    """
    Seed of one trial, derived from the master seed and the trial index.
    """
    state = SeedSequence((seed, trial)).generate_state(1, dtype=np.uint64)
    return int(state[0])


def sample_outcomes(
    s_true: float,
    tau: float,
    M: int,
    axis: MeasurementAxis = SIGMA_X,
    seed: int = 42,
) -> MeasurementRecord:
    """
    Draw the number of "+" outcomes of M projective measurements.

    Parameters
    ----------
    s_true : float
        Ohmicity of the simulated bath.
    tau : float
        Interaction time, τ > 0.
    M : int
        Number of repetitions.
    axis : MeasurementAxis
        Measurement direction.
    seed : int
        Non-negative seed below 2**64.

    Returns
    -------
    record : MeasurementRecord

    Raises
    ------
    ValueError
        If an argument is out of range.
    """
    if M < 1:
        raise ValueError(f"Need at least one repetition, got M={M}")
    gamma = dephasing.gamma_zero_T(s_true, tau).gamma
    p_plus, _ = measurement_probabilities(gamma, axis)
    rng = Generator(PCG64(SeedSequence(seed)))
    n_plus = int(rng.binomial(M, min(max(p_plus, 0.0), 1.0)))
    return MeasurementRecord(M=M, n_plus=n_plus, tau=tau, axis=axis, seed=seed)


def invert_rate(gamma_hat: float, tau: float, s_lo: float, s_hi: float) -> SEstimate:
    """
    Solve γ_s(τ) = gamma_hat for s in [s_lo, s_hi].

    γ_s(τ) need not be monotone in s, so every sign change on a 64-point
    grid is bisected to 1e-10 and the root with the smallest residual is
    returned together with the number of roots found.

    Raises
    ------
    InfeasibleEstimateError
        If no root lies in the range.
    ValueError
        If s_lo >= s_hi or s_lo <= 0.
    """
    if not 0.0 < s_lo < s_hi:
        raise ValueError(f"Need 0 < s_lo < s_hi, got ({s_lo}, {s_hi})")

    def residual(s: float) -> float:
        return dephasing.gamma_zero_T(s, tau).gamma - gamma_hat

    grid = np.linspace(s_lo, s_hi, ROOT_SCAN_POINTS)
    values = np.array([residual(s) for s in grid])

    roots = [float(s) for s, value in zip(grid, values) if value == 0.0]
    for left, right, f_left, f_right in zip(grid, grid[1:], values, values[1:]):
        if f_left * f_right < 0.0:
            roots.append(optimize.bisect(residual, left, right, xtol=ROOT_TOLERANCE))

    if not roots:
        raise InfeasibleEstimateError(
            f"No s in [{s_lo}, {s_hi}] reproduces gamma={gamma_hat} at tau={tau}"
        )
    best = min(roots, key=lambda s: abs(residual(s)))
    if len(roots) > 1:
        logger.info("%d roots for gamma=%s at tau=%s; kept s=%s", len(roots), gamma_hat, tau, best)
    return SEstimate(s_hat=best, n_roots=len(roots))


def estimate_s(
    record: MeasurementRecord, s_lo: float = 0.05, s_hi: float = 3.0
) -> SEstimate:
    """
    Invert a measurement record into an estimate of s.

    With p̂ = n_plus/M the dephasing exponent is γ̂ = -ln((2p̂ - 1)/b_1), which
    is then matched by ``invert_rate``.

    Parameters
    ----------
    record : MeasurementRecord
        Outcome counts.
    s_lo, s_hi : float
        Search range for s.

    Returns
    -------
    estimate : SEstimate

    Raises
    ------
    InfeasibleEstimateError
        If b_1 = 0, if (2p̂ - 1)/b_1 <= 0, or if no root lies in the range.
    """
    b1 = record.axis.b1
    if b1 == 0.0:
        raise InfeasibleEstimateError("The measurement axis carries no signal (b1 = 0)")
    ratio = (2.0 * record.frequency - 1.0) / b1
    if ratio <= 0.0:
        raise InfeasibleEstimateError(
            f"Observed frequency {record.frequency} gives (2p-1)/b1 = {ratio} <= 0"
        )
    return invert_rate(-math.log(ratio), record.tau, s_lo, s_hi)


def cr_experiment(
    s_true: float,
    tau: float,
    M: int,
    n_trials: int,
    axis: MeasurementAxis = SIGMA_X,
    seed: int = 42,
    s_range: tuple[float, float] = (0.05, 3.0),
    max_workers: int | None = None,
    progress: bool = False,
) -> EstimationResult:
    """
    Repeat the estimation ``n_trials`` times and compare the spread of the
    estimates with the classical and quantum Cramér-Rao bounds.

    Parameters
    ----------
    s_true : float
        Ohmicity of the simulated bath.
    tau : float
        Interaction time.
    M : int
        Repetitions per record.
    n_trials : int
        Number of records, at least 100.
    axis : MeasurementAxis
        Measurement direction.
    seed : int
        Master seed; trial seeds come from ``trial_seed``.
    s_range : tuple[float, float]
        Search range for the estimator.
    max_workers : int | None
        Worker cap; see ``parallel_map``.
    progress : bool
        Show a progress bar.

    Returns
    -------
    result : EstimationResult

    Raises
    ------
    ValueError
        If n_trials < 100 or another argument is out of range.
    ExperimentError
        If more than 20% of the trials are infeasible.
    """
    if n_trials < MIN_TRIALS:
        raise ValueError(f"Need at least {MIN_TRIALS} trials, got {n_trials}")
    s_lo, s_hi = s_range

    def run_trial(trial: int) -> SEstimate | None:
        record = sample_outcomes(s_true, tau, M, axis, trial_seed(seed, trial))
        try:
            return estimate_s(record, s_lo, s_hi)
        except InfeasibleEstimateError as error:
            logger.debug("Trial %d infeasible: %s", trial, error)
            return None

    estimates = parallel_map(
        run_trial,
        range(n_trials),
        max_workers=max_workers,
        progress=progress,
        desc="trials",
    )
    feasible = [estimate for estimate in estimates if estimate is not None]
    failures = n_trials - len(feasible)
    if failures > MAX_INFEASIBLE_FRACTION * n_trials:
        raise ExperimentError(
            f"{failures} of {n_trials} trials were infeasible; "
            f"choose a different tau={tau} or M={M}"
        )
    if failures:
        logger.info("%d of %d trials infeasible", failures, n_trials)

    s_hats = np.array([estimate.s_hat for estimate in feasible])
    variance = float(np.var(s_hats, ddof=1))

    fisher = fisher_info_projective(s_true, tau, axis)
    qfi = qfi_ohmicity(s_true, tau).qfi
    cr_bound = 1.0 / (M * fisher) if fisher > 0.0 else math.inf
    q_cr_bound = 1.0 / (M * qfi) if qfi > 0.0 else math.inf

    return EstimationResult(
        s_true=s_true,
        s_hat=float(s_hats.mean()),
        n_trials=n_trials,
        empirical_variance=variance,
        cr_bound=cr_bound,
        q_cr_bound=q_cr_bound,
        saturation_ratio=variance / cr_bound,
        failures=failures,
        multiple_root_trials=sum(estimate.multiple for estimate in feasible),
    )
