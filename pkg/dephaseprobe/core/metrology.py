"""
Fisher information, quantum Fisher information and measurement statistics
for estimating the parameters of a dephasing channel.
"""

import logging
import math
from typing import Literal

import numpy as np
from scipy import linalg

from dephaseprobe.models import (
    DephasingOutcome,
    MeasurementAxis,
    ProbeState,
    QfiPoint,
    QuadratureSpec,
)

from . import dephasing
from .mathkern import digamma
from .mathkern import gamma as gamma_function

logger = logging.getLogger(__name__)

NULL_SUBSPACE_CUTOFF = 1e-14
"Eigenvalue pairs with ρ_n + ρ_k below this contribute nothing to the QFI."

DERIVATIVE_TOLERANCE = 1e-10
REGULAR_FORM_WIDTH = 1e-6


def qfi_from_rate(gamma: float, dgamma: float) -> float:
    """
    QFI of a maximally coherent qubit dephased by γ(λ):
    H = (∂γ)² / (e^{2γ} - 1).

    Written as (∂γ)² e^{-2γ} / (1 - e^{-2γ}) so large γ underflows to zero
    instead of overflowing. Returns 0 at γ = 0, the τ → 0 limit.
    """
    if gamma <= 0.0:
        return 0.0
    decay = math.exp(-2.0 * gamma)
    return dgamma * dgamma * decay / -math.expm1(-2.0 * gamma)


def qsnr(s: float, qfi: float) -> float:
    """
    Quantum signal-to-noise ratio Q = s² H.
    """
    return s * s * qfi


def _qfi_point(s: float, tau: float, T: float, outcome: DephasingOutcome) -> QfiPoint:
    qfi = qfi_from_rate(outcome.gamma, outcome.dgamma_ds)
    return QfiPoint(
        s=s,
        tau=tau,
        T=T,
        qfi=qfi,
        qsnr=qsnr(s, qfi),
        gamma=outcome.gamma,
        dgamma_ds=outcome.dgamma_ds,
    )


def qfi_qubit_closed_form(
    C0: float, C_lambda: float, Omega: float, dgamma_dlambda: float
) -> float:
    """
    QFI of a dephased pure qubit in terms of its initial and residual coherence,

    H_λ = Ω⁴ (∂_λ γ)² C_0² C_λ² / (C_0² - C_λ²).

    Parameters
    ----------
    C0 : float
        Initial coherence sin 2φ, in (0, 1].
    C_lambda : float
        Residual coherence C_0 exp(-γ Ω²), in (0, C0).
    Omega : float
        Level splitting.
    dgamma_dlambda : float
        Susceptibility of the dephasing exponent to the parameter.

    Returns
    -------
    qfi : float

    Raises
    ------
    ValueError
        If the coherences are outside 0 < C_lambda < C0 <= 1 or Omega <= 0.
    """
    if not 0.0 < C0 <= 1.0:
        raise ValueError(f"Initial coherence must lie in (0, 1], got {C0}")
    if not 0.0 < C_lambda < C0:
        raise ValueError(
            f"Residual coherence must lie strictly inside (0, C0={C0}), got {C_lambda}"
        )
    if not Omega > 0.0:
        raise ValueError(f"Level splitting must be positive, got {Omega}")
    if dgamma_dlambda == 0.0:
        return 0.0
    return (
        Omega**4
        * dgamma_dlambda**2
        * C0**2
        * C_lambda**2
        / ((C0 - C_lambda) * (C0 + C_lambda))
    )


def _check_derivative(rho: ProbeState, drho) -> np.ndarray:
    drho = np.asarray(drho, dtype=complex)
    if drho.shape != rho.rho.shape:
        raise ValueError(
            f"Derivative has shape {drho.shape}, expected {rho.rho.shape}"
        )
    if np.max(np.abs(drho - drho.conj().T)) > DERIVATIVE_TOLERANCE:
        raise ValueError("Derivative of the density matrix is not Hermitian")
    if abs(np.trace(drho)) > DERIVATIVE_TOLERANCE:
        raise ValueError("Derivative of the density matrix is not traceless")
    return drho


def _eigenbasis_derivative(
    rho: ProbeState, drho
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    drho = _check_derivative(rho, drho)
    values, vectors = np.linalg.eigh(rho.rho)
    rotated = vectors.conj().T @ drho @ vectors
    return values, vectors, rotated


def qfi_spectral(rho: ProbeState, drho_dlambda) -> float:
    """
    QFI from the spectral decomposition ρ = Σ_n ρ_n |φ_n⟩⟨φ_n|.

    Evaluated as Σ_{n,k} 2 |⟨φ_n|∂ρ|φ_k⟩|² / (ρ_n + ρ_k): the diagonal terms
    are (∂ρ_n)²/ρ_n and the off-diagonal ones reproduce
    2 (ρ_n-ρ_k)²/(ρ_n+ρ_k) |⟨φ_k|∂φ_n⟩|². Pairs spanning the null space
    (ρ_n + ρ_k < 1e-14) are dropped.

    Parameters
    ----------
    rho : ProbeState
        The state.
    drho_dlambda : array_like
        ∂ρ/∂λ in the same basis as ``rho.rho``; Hermitian and traceless.

    Returns
    -------
    qfi : float

    Raises
    ------
    ValueError
        On a shape mismatch or a non-Hermitian or non-traceless derivative.
    """
    values, _, rotated = _eigenbasis_derivative(rho, drho_dlambda)
    sums = values[:, None] + values[None, :]
    support = sums >= NULL_SUBSPACE_CUTOFF
    terms = np.zeros_like(sums)
    terms[support] = 2.0 * np.abs(rotated[support]) ** 2 / sums[support]
    return float(max(terms.sum(), 0.0))


def symmetric_logarithmic_derivative(rho: ProbeState, drho_dlambda) -> np.ndarray:
    """
    Symmetric logarithmic derivative L solving 2∂ρ = Lρ + ρL.

    Its spectral measurement attains the QFI, H = Tr[ρ L²].

    Raises
    ------
    ValueError
        On a shape mismatch or a non-Hermitian or non-traceless derivative.
    """
    values, vectors, rotated = _eigenbasis_derivative(rho, drho_dlambda)
    sums = values[:, None] + values[None, :]
    support = sums >= NULL_SUBSPACE_CUTOFF
    sld = np.zeros_like(rotated)
    sld[support] = 2.0 * rotated[support] / sums[support]
    return vectors @ sld @ vectors.conj().T


def bures_fidelity(rho: ProbeState, sigma: ProbeState) -> float:
    """
    Uhlmann fidelity F = (Tr sqrt(sqrt(ρ) σ sqrt(ρ)))².
    """
    root = linalg.sqrtm(rho.rho)
    inner = linalg.sqrtm(root @ sigma.rho @ root)
    return float(np.real(np.trace(inner)) ** 2)


def qfi_ohmicity(s: float, tau: float) -> QfiPoint:
    """
    QFI for the ohmicity of a zero-temperature bath probed by a qubit
    prepared in |+⟩,

    H_s(τ) = [∂_s γ_s(τ)]² / (e^{2γ_s(τ)} - 1).

    Raises
    ------
    ValueError
        If s <= 0 or tau < 0.
    """
    return _qfi_point(s, tau, 0.0, dephasing.gamma_zero_T(s, tau))


def _short_time_coeff_literal(s: float) -> float:
    # Γ(s-1) and ψ(s-1) through the recurrences so s < 1 stays on positive arguments
    gamma_shift = gamma_function(s + 1.0) / (s * (s - 1.0))
    digamma_shift = digamma(s + 1.0) - 1.0 / s - 1.0 / (s - 1.0)
    factor = 2.0 * s - 1.0 + s * (s - 1.0) * digamma_shift
    return gamma_shift / (4.0 * s * (s - 1.0)) * factor * factor


def _short_time_coeff_regular(s: float) -> float:
    return gamma_function(1.0 + s) * digamma(1.0 + s) ** 2 / 4.0


def qfi_short_time_coeff(s: float) -> float:
    """
    Coefficient g_s of the short-time law H_s(τ) ≈ τ² g_s,

    g_s = Γ(s-1) / (4s(s-1)) · (2s - 1 + s(s-1) ψ(s-1))².

    The recurrences for Γ and ψ reduce this to Γ(1+s) ψ(1+s)² / 4, which is
    used within 1e-6 of s = 1 where the literal form is 0/0.

    Raises
    ------
    ValueError
        If s <= 0.
    """
    if not s > 0.0:
        raise ValueError(f"Ohmicity s must be positive, got s={s}")
    if abs(s - 1.0) < REGULAR_FORM_WIDTH:
        return _short_time_coeff_regular(s)
    return _short_time_coeff_literal(s)


def qfi_asymptote(s: float) -> float:
    """
    Long-time limit of the QFI: 0 for s <= 1, and
    [Γ(s-1) ψ(s-1)]² / (e^{2Γ(s-1)} - 1) for s > 1.

    Raises
    ------
    ValueError
        If s <= 0.
    """
    if not s > 0.0:
        raise ValueError(f"Ohmicity s must be positive, got s={s}")
    if s <= 1.0:
        return 0.0
    limit = gamma_function(s - 1.0)
    return qfi_from_rate(limit, limit * digamma(s - 1.0))


def measurement_probabilities(
    gamma: float, axis: MeasurementAxis
) -> tuple[float, float]:
    """
    Outcome probabilities p_± = ½(1 ± b_1 e^{-γ}) of measuring P_± = (I ± b·σ)/2
    on a qubit prepared in |+⟩ and dephased by γ.

    Raises
    ------
    ValueError
        If gamma < 0 or the axis is not a unit vector.
    """
    if not isinstance(axis, MeasurementAxis):
        axis = MeasurementAxis.model_validate(axis)
    if not gamma >= 0.0:
        raise ValueError(f"Dephasing exponent must be non-negative, got {gamma}")
    signal = axis.b1 * math.exp(-gamma)
    return 0.5 * (1.0 + signal), 0.5 * (1.0 - signal)


def outcome_probabilities(state: ProbeState, axis: MeasurementAxis) -> tuple[float, float]:
    """
    Outcome probabilities Tr[ρ P_±] for an arbitrary qubit state.

    Raises
    ------
    ValueError
        If the state is not a qubit.
    """
    if state.d != 2:
        raise ValueError(f"Projective Bloch measurements need a qubit, got d={state.d}")
    plus, minus = axis.projectors()
    return (
        float(np.real(np.trace(state.rho @ plus))),
        float(np.real(np.trace(state.rho @ minus))),
    )


def classical_fisher_information(probabilities, derivatives) -> float:
    """
    Fisher information Σ_k (∂p_k)² / p_k of a discrete outcome distribution.

    Outcomes with p_k = 0 are skipped.
    """
    probabilities = np.asarray(probabilities, dtype=float)
    derivatives = np.asarray(derivatives, dtype=float)
    support = probabilities > 0.0
    return float((derivatives[support] ** 2 / probabilities[support]).sum())


def fisher_info_projective(s: float, tau: float, axis: MeasurementAxis) -> float:
    """
    Fisher information on s of the projective measurement along ``axis``:

    F_s = b_1² (∂_s γ)² e^{-2γ} / (1 - b_1² e^{-2γ}),

    obtained by substituting p_± into Σ_k (∂p_k)²/p_k. Equals the QFI
    bit-for-bit when b_1 = ±1.

    Raises
    ------
    ValueError
        If s <= 0, tau < 0 or the axis is not a unit vector.
    """
    if not isinstance(axis, MeasurementAxis):
        axis = MeasurementAxis.model_validate(axis)
    outcome = dephasing.gamma_zero_T(s, tau)
    if outcome.gamma <= 0.0:
        return 0.0
    b1_squared = axis.b1 * axis.b1
    decay = math.exp(-2.0 * outcome.gamma)
    # 1 - b1² e^{-2γ} split so that b1 = 1 reduces to the QFI arithmetic exactly
    denominator = -math.expm1(-2.0 * outcome.gamma) + (1.0 - b1_squared) * decay
    return b1_squared * outcome.dgamma_ds**2 * decay / denominator


def qfi_finite_T(
    s: float,
    tau: float,
    T: float,
    method: Literal["quadratic", "low_T", "exact", "high_T"] = "quadratic",
    spec: QuadratureSpec | None = None,
) -> QfiPoint:
    """
    QFI for s at temperature T, with γ from the chosen evaluator plugged into
    H = (∂_s γ)² / (e^{2γ} - 1). ``spec`` only applies to ``method="exact"``.

    Raises
    ------
    ValueError
        If an argument is out of range or the method is unknown.
    QuadratureError
        If ``method="exact"`` and the quadrature does not converge.
    """
    if T == 0.0:
        return qfi_ohmicity(s, tau)
    evaluators = {
        "quadratic": dephasing.gamma_low_T_quadratic,
        "low_T": dephasing.gamma_low_T,
        "exact": dephasing.gamma_finite_T_exact,
        "high_T": dephasing.gamma_high_T,
    }
    if method not in evaluators:
        raise ValueError(f"Unknown finite-temperature method {method!r}")
    if method == "exact":
        return _qfi_point(s, tau, T, dephasing.gamma_finite_T_exact(s, tau, T, spec))
    return _qfi_point(s, tau, T, evaluators[method](s, tau, T))


def excess_qfi(s: float, tau: float, T: float) -> float:
    """
    Excess QFI ΔH_s(τ, T) = H_s(τ, T) - H_s(τ, 0), with the finite-temperature
    value from the quadratic low-temperature exponent. Positive when
    temperature helps.

    Raises
    ------
    ValueError
        If s <= 0, tau < 0 or T <= 0.
    """
    if not T > 0.0:
        raise ValueError(f"Temperature must be positive, got T={T}")
    warm = qfi_finite_T(s, tau, T, method="quadratic").qfi
    cold = qfi_ohmicity(s, tau).qfi
    return warm - cold


HIGH_T_MINIMUM = 10.0


def qfi_high_T(s: float, tau: float, T: float) -> float:
    """
    QFI in the high-temperature regime, from γ_s(τ, T) ≈ 2T γ_{s-1}(τ, 0).

    The exponent grows linearly with T, so the QFI is suppressed like
    e^{-4T γ_{s-1}}: almost no information about s survives.

    Raises
    ------
    ValueError
        If T < 10, s <= 0 or tau < 0.
    """
    if T < HIGH_T_MINIMUM:
        raise ValueError(f"High-temperature limit needs T >= {HIGH_T_MINIMUM}, got T={T}")
    return qfi_finite_T(s, tau, T, method="high_T").qfi
