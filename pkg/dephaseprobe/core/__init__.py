"""
Numerical core: dephasing rates, Fisher information, optimal times and
simulated experiments.
"""

from .dephasing import (
    apply_dephasing,
    coherence,
    dgamma_ds_zero_T,
    gamma_asymptote,
    gamma_finite_T_exact,
    gamma_high_T,
    gamma_low_T,
    gamma_low_T_quadratic,
    gamma_short_time,
    gamma_zero_T,
    gamma_zero_T_oracle,
    gaussian_phase_average,
    lindblad_dephasing,
    residual_coherence_equispaced,
)
from .mathkern import digamma, gamma, integrate_semi_infinite, ln_gamma
from .metrology import (
    bures_fidelity,
    classical_fisher_information,
    excess_qfi,
    fisher_info_projective,
    measurement_probabilities,
    outcome_probabilities,
    qfi_asymptote,
    qfi_finite_T,
    qfi_from_rate,
    qfi_high_T,
    qfi_ohmicity,
    qfi_qubit_closed_form,
    qfi_short_time_coeff,
    qfi_spectral,
    qsnr,
    symmetric_logarithmic_derivative,
)
from .montecarlo import (
    cr_experiment,
    estimate_s,
    invert_rate,
    sample_outcomes,
    trial_seed,
)
from .optimal import (
    locate_time_jump,
    maximize_qfi_over_time,
    optimal_qfi_curve,
    optimal_time_curve,
    quarter_period_time,
    sub_ohmic_time,
)
from .parallel import parallel_map

__all__ = [
    "apply_dephasing",
    "bures_fidelity",
    "classical_fisher_information",
    "coherence",
    "cr_experiment",
    "dgamma_ds_zero_T",
    "digamma",
    "estimate_s",
    "excess_qfi",
    "fisher_info_projective",
    "gamma",
    "gamma_asymptote",
    "gamma_finite_T_exact",
    "gamma_high_T",
    "gamma_low_T",
    "gamma_low_T_quadratic",
    "gamma_short_time",
    "gamma_zero_T",
    "gamma_zero_T_oracle",
    "gaussian_phase_average",
    "integrate_semi_infinite",
    "invert_rate",
    "lindblad_dephasing",
    "ln_gamma",
    "locate_time_jump",
    "maximize_qfi_over_time",
    "measurement_probabilities",
    "optimal_qfi_curve",
    "optimal_time_curve",
    "outcome_probabilities",
    "parallel_map",
    "qfi_asymptote",
    "qfi_finite_T",
    "qfi_from_rate",
    "qfi_high_T",
    "qfi_ohmicity",
    "qfi_qubit_closed_form",
    "qfi_short_time_coeff",
    "qfi_spectral",
    "qsnr",
    "quarter_period_time",
    "residual_coherence_equispaced",
    "sample_outcomes",
    "sub_ohmic_time",
    "symmetric_logarithmic_derivative",
    "trial_seed",
]
