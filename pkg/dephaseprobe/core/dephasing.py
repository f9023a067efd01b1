"""
Dephasing rates of a probe coupled to an Ohmic-like bath, the pure-dephasing
channel they drive, and coherence measures.

All quantities are dimensionless: τ = ω_c t, T is in units of ω_c and the
probe energies are in units of the qubit splitting Ω.
"""

import logging
import math
import warnings

import numpy as np
from scipy import linalg

from dephaseprobe.models import DephasingOutcome, ProbeState, QuadratureSpec, RegimeTag

from .mathkern import digamma, integrate_semi_infinite
from .mathkern import gamma as gamma_function

logger = logging.getLogger(__name__)

OHMIC_EXACT_WIDTH = 1e-12
"|s - 1| below which the logarithmic s = 1 branch is returned."

DERIVATIVE_FD_WIDTH = 1e-4
"Distance from the removable singularities inside which dγ/ds is taken by finite difference."

DERIVATIVE_FD_STEP = 1e-5


def _check_domain(s: float, tau: float) -> None:
    if not s > 0.0:
        raise ValueError(f"Ohmicity s must be positive, got s={s}")
    if not tau >= 0.0:
        raise ValueError(f"Interaction time tau must be non-negative, got tau={tau}")


def _check_temperature(T: float) -> None:
    if not T > 0.0:
        raise ValueError(f"Temperature must be positive here, got T={T}")


def _rate(s: float, tau: float) -> float:
    """
    Zero-temperature dephasing exponent for any s > -1.

    Written as Γ(s+1)/(s(s-1)) · B with B = 1 - (1+τ²)^{-(s-1)/2} cos[(s-1) arctan τ]
    evaluated through expm1 and sin², so the removable singularities at s = 1
    and s = 0 cancel without loss of precision.
    """
    if tau == 0.0:
        return 0.0
    log_term = math.log1p(tau * tau)
    if abs(s - 1.0) <= OHMIC_EXACT_WIDTH:
        return 0.5 * log_term
    if abs(s) <= OHMIC_EXACT_WIDTH:
        return tau * math.atan(tau) - 0.5 * log_term

    eps = s - 1.0
    angle = math.atan(tau)
    damping = math.exp(-0.5 * eps * log_term)
    bracket = -math.expm1(-0.5 * eps * log_term) + damping * 2.0 * math.sin(
        0.5 * eps * angle
    ) ** 2
    return gamma_function(s + 1.0) / (s * eps) * bracket


def _rate_derivative(s: float, tau: float) -> float:
    """
    d/ds of ``_rate``; analytic away from s = 0 and s = 1.
    """
    if tau == 0.0:
        return 0.0
    if abs(s - 1.0) < DERIVATIVE_FD_WIDTH or abs(s) < DERIVATIVE_FD_WIDTH:
        h = DERIVATIVE_FD_STEP
        logger.debug("Central difference for dgamma/ds at s=%s", s)
        return (_rate(s + h, tau) - _rate(s - h, tau)) / (2.0 * h)

    eps = s - 1.0
    log_term = math.log1p(tau * tau)
    angle = math.atan(tau)
    damping = math.exp(-0.5 * eps * log_term)
    bracket = -math.expm1(-0.5 * eps * log_term) + damping * 2.0 * math.sin(
        0.5 * eps * angle
    ) ** 2
    dbracket = damping * (
        0.5 * log_term * math.cos(eps * angle) + angle * math.sin(eps * angle)
    )
    # Γ(s-1) and ψ(s-1) through the recurrences, keeping every argument positive
    gamma_shift = gamma_function(s + 1.0) / (s * eps)
    digamma_shift = digamma(s + 1.0) - 1.0 / s - 1.0 / eps
    return gamma_shift * (digamma_shift * bracket + dbracket)


def gamma_zero_T(s: float, tau: float) -> DephasingOutcome:
    """
    Closed-form dephasing exponent of the zero-temperature Ohmic-like bath.

    γ_s(τ) = ½ log(1+τ²) for s = 1, and
    (1 - cos[(s-1) arctan τ] / (1+τ²)^{(s-1)/2}) Γ(s-1) otherwise.

    Parameters
    ----------
    s : float
        Ohmicity, s > 0.
    tau : float
        Dimensionless interaction time, τ >= 0.

    Returns
    -------
    outcome : DephasingOutcome
        γ, ∂_s γ, tagged ``exact_closed_form``.

    Raises
    ------
    ValueError
        If s <= 0 or tau < 0.
    """
    _check_domain(s, tau)
    return DephasingOutcome(
        gamma=max(_rate(s, tau), 0.0),
        dgamma_ds=_rate_derivative(s, tau),
        regime_tag=RegimeTag.exact_closed_form,
    )


def dgamma_ds_zero_T(s: float, tau: float) -> float:
    """
    Derivative of the zero-temperature exponent with respect to s.

    Analytic through Γ(s-1) and ψ(s-1); within 1e-4 of s = 1 a central
    difference with step 1e-5 is used instead.

    Raises
    ------
    ValueError
        If s <= 0 or tau < 0.
    """
    _check_domain(s, tau)
    return _rate_derivative(s, tau)


def _zero_T_integrand(s: float, tau: float):
    def integrand(x: np.ndarray) -> np.ndarray:
        return 2.0 * np.sin(0.5 * x * tau) ** 2 * np.power(x, s - 2.0) * np.exp(-x)

    return integrand


def gamma_zero_T_oracle(
    s: float, tau: float, spec: QuadratureSpec | None = None
) -> float:
    """
    Zero-temperature exponent by direct quadrature of
    ∫_0^∞ (1 - cos xτ) x^{s-2} e^{-x} dx.

    Raises
    ------
    ValueError
        If s <= 0 or tau < 0.
    QuadratureError
        If the quadrature does not converge.
    """
    _check_domain(s, tau)
    if tau == 0.0:
        return 0.0
    if spec is None:
        spec = QuadratureSpec.for_rate(tau)
    return integrate_semi_infinite(_zero_T_integrand(s, tau), spec)


def gamma_short_time(s: float, tau: float) -> float:
    """
    Short-time law γ_s(τ) ≈ ½ τ² Γ(1+s).

    Raises
    ------
    ValueError
        If s <= 0.
    """
    _check_domain(s, tau)
    return 0.5 * tau * tau * gamma_function(1.0 + s)


def gamma_asymptote(s: float) -> float:
    """
    Long-time limit of the exponent: Γ(s-1) for s > 1, infinite otherwise.

    Returns
    -------
    value : float
        Γ(s-1), or ``math.inf`` to flag the divergence for s <= 1.

    Raises
    ------
    ValueError
        If s <= 0.
    """
    _check_domain(s, 0.0)
    if s <= 1.0:
        return math.inf
    return gamma_function(s - 1.0)


def _finite_T_integrand(s: float, tau: float, T: float):
    def integrand(x: np.ndarray) -> np.ndarray:
        return (
            2.0
            * np.sin(0.5 * x * tau) ** 2
            * np.power(x, s - 2.0)
            * np.exp(-x)
            / np.tanh(x / (2.0 * T))
        )

    return integrand


def _finite_T_quadrature(s: float, tau: float, T: float, spec: QuadratureSpec) -> float:
    return integrate_semi_infinite(_finite_T_integrand(s, tau, T), spec)


def gamma_finite_T_exact(
    s: float, tau: float, T: float, spec: QuadratureSpec | None = None
) -> DephasingOutcome:
    """
    Finite-temperature exponent by quadrature of
    ∫_0^∞ (1 - cos xτ) x^{s-2} e^{-x} coth(x/2T) dx.

    The s-derivative is a central difference with step 1e-5.

    Parameters
    ----------
    s : float
        Ohmicity, s > 0.
    tau : float
        Interaction time, τ >= 0.
    T : float
        Temperature in units of ω_c, T > 0.
    spec : QuadratureSpec | None
        Quadrature settings; defaults to ``QuadratureSpec.for_rate(tau, T)``.

    Returns
    -------
    outcome : DephasingOutcome
        Tagged ``exact_quadrature``.

    Raises
    ------
    ValueError
        If s <= 0, tau < 0 or T <= 0.
    QuadratureError
        If the quadrature does not converge.
    """
    _check_domain(s, tau)
    _check_temperature(T)
    if tau == 0.0:
        return DephasingOutcome(
            gamma=0.0, dgamma_ds=0.0, regime_tag=RegimeTag.exact_quadrature
        )
    if spec is None:
        spec = QuadratureSpec.for_rate(tau, T)

    value = _finite_T_quadrature(s, tau, T, spec)
    h = min(DERIVATIVE_FD_STEP, 0.5 * s)
    derivative = (
        _finite_T_quadrature(s + h, tau, T, spec)
        - _finite_T_quadrature(s - h, tau, T, spec)
    ) / (2.0 * h)
    return DephasingOutcome(
        gamma=max(value, 0.0),
        dgamma_ds=derivative,
        regime_tag=RegimeTag.exact_quadrature,
    )


def _warn_if_not_low(T: float) -> None:
    if T >= 1.0:
        warnings.warn(
            f"Low-temperature expansion evaluated at T={T} >= 1 (units of the cutoff)",
            stacklevel=3,
        )


def gamma_low_T(s: float, tau: float, T: float) -> DephasingOutcome:
    """
    Low-temperature exponent from coth(x/2T) ≈ 1 + 2e^{-x/T}:

    γ_s(τ, T) ≈ γ_s(τ, 0) + 2((1+T)/T)^{1-s} γ_s(Tτ/(1+T), 0).

    Raises
    ------
    ValueError
        If s <= 0, tau < 0 or T < 0.
    """
    _check_domain(s, tau)
    if T < 0.0:
        raise ValueError(f"Temperature must be non-negative, got T={T}")
    _warn_if_not_low(T)

    base = _rate(s, tau)
    dbase = _rate_derivative(s, tau)
    if T == 0.0:
        return DephasingOutcome(
            gamma=base, dgamma_ds=dbase, regime_tag=RegimeTag.low_T_approx
        )

    ratio = (1.0 + T) / T
    scaled_tau = T * tau / (1.0 + T)
    prefactor = 2.0 * ratio ** (1.0 - s)
    thermal = _rate(s, scaled_tau)
    dthermal = _rate_derivative(s, scaled_tau)
    return DephasingOutcome(
        gamma=max(base + prefactor * thermal, 0.0),
        dgamma_ds=dbase + prefactor * (dthermal - math.log(ratio) * thermal),
        regime_tag=RegimeTag.low_T_approx,
    )


def gamma_low_T_quadratic(s: float, tau: float, T: float) -> DephasingOutcome:
    """
    Low-temperature exponent with the thermal term expanded to order τ²:

    γ_s(τ, T) ≈ γ_s(τ, 0) + T^{1+s} (1-T)/(1+T)^s τ² Γ(1+s).

    Both terms are differentiated analytically in s.

    Raises
    ------
    ValueError
        If s <= 0, tau < 0 or T < 0.
    """
    _check_domain(s, tau)
    if T < 0.0:
        raise ValueError(f"Temperature must be non-negative, got T={T}")
    _warn_if_not_low(T)

    base = _rate(s, tau)
    dbase = _rate_derivative(s, tau)
    if T == 0.0:
        return DephasingOutcome(
            gamma=base, dgamma_ds=dbase, regime_tag=RegimeTag.low_T_quadratic
        )

    coefficient = T ** (1.0 + s) * (1.0 - T) / (1.0 + T) ** s * gamma_function(1.0 + s)
    dcoefficient = coefficient * (math.log(T) - math.log1p(T) + digamma(1.0 + s))
    return DephasingOutcome(
        gamma=max(base + coefficient * tau * tau, 0.0),
        dgamma_ds=dbase + dcoefficient * tau * tau,
        regime_tag=RegimeTag.low_T_quadratic,
    )


def gamma_high_T(s: float, tau: float, T: float) -> DephasingOutcome:
    """
    High-temperature exponent from coth(x/2T) ≈ 2T/x.

    Substituting into the rate integral lowers the power of x by one, so
    γ_s(τ, T) ≈ 2T γ_{s-1}(τ, 0), with γ_{s-1} continued to s-1 > -1 by the
    same closed form. The next correction is of relative order
    γ_{s+1}/(12 T² γ_{s-1}).

    Raises
    ------
    ValueError
        If s <= 0, tau < 0 or T <= 0.
    """
    _check_domain(s, tau)
    _check_temperature(T)
    return DephasingOutcome(
        gamma=max(2.0 * T * _rate(s - 1.0, tau), 0.0),
        dgamma_ds=2.0 * T * _rate_derivative(s - 1.0, tau),
        regime_tag=RegimeTag.high_T_approx,
    )


def apply_dephasing(state: ProbeState, gamma: float) -> ProbeState:
    """
    Pure-dephasing channel ρ_nk → ρ_nk exp(-γ Ω_nk²) in the energy basis.

    Parameters
    ----------
    state : ProbeState
        Input probe state.
    gamma : float
        Dephasing exponent, γ >= 0.

    Returns
    -------
    state : ProbeState
        Dephased state; populations are untouched.

    Raises
    ------
    ValueError
        If gamma < 0 or the state is not a valid ProbeState.
    """
    if not isinstance(state, ProbeState):
        state = ProbeState.model_validate(state)
    if not gamma >= 0.0:
        raise ValueError(f"Dephasing exponent must be non-negative, got {gamma}")
    factors = np.exp(-gamma * state.transition_frequencies**2)
    return ProbeState(energies=state.energies, rho=state.rho * factors)


def coherence(state: ProbeState) -> float:
    """
    ℓ1 coherence Σ_{n≠k} |ρ_nk| in the energy basis.
    """
    magnitudes = np.abs(state.rho)
    return float(magnitudes.sum() - np.trace(magnitudes))


def residual_coherence_equispaced(d: int, gamma: float, Omega: float = 1.0) -> float:
    """
    Coherence left in a maximally coherent probe with equally spaced levels:
    C_γ = (2/d) Σ_{j=1}^{d-1} exp(-j² γ Ω²).

    Raises
    ------
    ValueError
        If d < 2, gamma < 0 or Omega <= 0.
    """
    if d < 2:
        raise ValueError(f"Probe dimension must be at least 2, got d={d}")
    if not gamma >= 0.0:
        raise ValueError(f"Dephasing exponent must be non-negative, got {gamma}")
    if not Omega > 0.0:
        raise ValueError(f"Level spacing must be positive, got Omega={Omega}")
    j = np.arange(1, d)
    return float(2.0 / d * np.exp(-(j**2) * gamma * Omega**2).sum())


def lindblad_dephasing(state: ProbeState, kappa: float, t: float) -> ProbeState:
    """
    Evolve under dρ/dt = 2κ L[H]ρ, with L[H]ρ = HρH - ½{H², ρ} and H diagonal
    in the energy basis, by exponentiating the Liouvillian.

    The result equals ``apply_dephasing(state, kappa * t)``.

    Raises
    ------
    ValueError
        If kappa or t is negative.
    """
    if kappa < 0.0 or t < 0.0:
        raise ValueError(f"kappa and t must be non-negative, got {kappa}, {t}")
    d = state.d
    hamiltonian = np.diag(np.asarray(state.energies, dtype=complex))
    identity = np.eye(d, dtype=complex)
    square = hamiltonian @ hamiltonian
    # Row-major vectorisation: vec(AρB) = (A ⊗ Bᵀ) vec(ρ)
    liouvillian = 2.0 * kappa * (
        np.kron(hamiltonian, hamiltonian.T)
        - 0.5 * np.kron(square, identity)
        - 0.5 * np.kron(identity, square.T)
    )
    evolved = (linalg.expm(liouvillian * t) @ state.rho.reshape(-1)).reshape(d, d)
    evolved = 0.5 * (evolved + evolved.conj().T)
    return ProbeState(energies=state.energies, rho=evolved)


def gaussian_phase_average(state: ProbeState, gamma: float, nodes: int = 64) -> ProbeState:
    """
    Dephasing as an average over random phase kicks,
    ρ_γ = ∫ g(z; 0, 2γ) e^{-izH} ρ e^{izH} dz, by Gauss-Hermite quadrature.

    Raises
    ------
    ValueError
        If gamma < 0.
    """
    if not gamma >= 0.0:
        raise ValueError(f"Dephasing exponent must be non-negative, got {gamma}")
    if gamma == 0.0:
        return state
    # z = 2 sqrt(γ) u turns g(z; 0, 2γ) dz into e^{-u²} du / sqrt(π)
    u, weights = np.polynomial.hermite.hermgauss(nodes)
    z = 2.0 * math.sqrt(gamma) * u
    omega = state.transition_frequencies
    kernel = (weights[:, None, None] * np.exp(-1j * z[:, None, None] * omega)).sum(
        axis=0
    ) / math.sqrt(math.pi)
    averaged = state.rho * kernel
    averaged = 0.5 * (averaged + averaged.conj().T)
    return ProbeState(energies=state.energies, rho=averaged)
