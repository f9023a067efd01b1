"""
Physical inputs: the bath, the probe state and the measurement.
"""

import math
from typing import Literal

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)

HERMITICITY_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
POSITIVITY_TOLERANCE = 1e-10
AXIS_NORM_TOLERANCE = 1e-12


class BathModel(BaseModel):
    """
    Ohmic-like bosonic environment, J_s(ω) = ω_c (ω/ω_c)^s exp(-ω/ω_c).

    Attributes
    ----------
    s : float
        Ohmicity parameter.
    T : float
        Temperature in units of the cutoff frequency ω_c.
    """

    model_config = ConfigDict(frozen=True)

    s: float = Field(gt=0.0)
    T: float = Field(default=0.0, ge=0.0)

    @computed_field
    @property
    def regime(self) -> Literal["sub-Ohmic", "Ohmic", "super-Ohmic"]:
        if self.s < 1.0:
            return "sub-Ohmic"
        if self.s > 1.0:
            return "super-Ohmic"
        return "Ohmic"

    def spectral_density(self, x: np.ndarray | float) -> np.ndarray | float:
        """
        Spectral density at dimensionless frequency x = ω/ω_c, in units of ω_c.
        """
        return np.power(x, self.s) * np.exp(-np.asarray(x))

    def rate(self, tau: float):
        """
        Dephasing exponent at time ``tau`` for this bath.

        Uses the closed form at zero temperature and the exact quadrature
        otherwise.

        Returns
        -------
        outcome : DephasingOutcome
        """
        from dephaseprobe.core import dephasing

        if self.T == 0.0:
            return dephasing.gamma_zero_T(self.s, tau)
        return dephasing.gamma_finite_T_exact(self.s, tau, self.T)


class ProbeState(BaseModel):
    """
    Density matrix of a d-level probe written in its energy eigenbasis.

    Attributes
    ----------
    energies : tuple[float, ...]
        Energy levels E_n in units of Ω, non-decreasing. Degenerate levels are allowed.
    rho : np.ndarray
        d x d complex density matrix; stored read-only.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    energies: tuple[float, ...]
    rho: np.ndarray

    @field_validator("energies")
    @classmethod
    def _check_energies(cls, energies: tuple[float, ...]) -> tuple[float, ...]:
        if len(energies) < 2:
            raise ValueError(f"A probe needs at least two levels, got {len(energies)}")
        if any(b < a for a, b in zip(energies, energies[1:])):
            raise ValueError(f"Energies must be in ascending order, got {energies}")
        return energies

    @field_validator("rho", mode="before")
    @classmethod
    def _as_complex_matrix(cls, rho) -> np.ndarray:
        rho = np.array(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"rho must be a square matrix, got shape {rho.shape}")
        rho.setflags(write=False)
        return rho

    @model_validator(mode="after")
    def _check_density_matrix(self) -> "ProbeState":
        rho = self.rho
        if rho.shape[0] != len(self.energies):
            raise ValueError(
                f"rho has dimension {rho.shape[0]} but {len(self.energies)} energies were given"
            )
        if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOLERANCE:
            raise ValueError("rho is not Hermitian")
        trace = np.trace(rho)
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise ValueError(f"rho must have unit trace, got {trace}")
        smallest = np.linalg.eigvalsh(rho)[0]
        if smallest < -POSITIVITY_TOLERANCE:
            raise ValueError(f"rho is not positive semidefinite (eigenvalue {smallest})")
        return self

    @property
    def d(self) -> int:
        return len(self.energies)

    @property
    def transition_frequencies(self) -> np.ndarray:
        """
        Matrix of Ω_nk = E_n - E_k.
        """
        energies = np.asarray(self.energies, dtype=float)
        return energies[:, None] - energies[None, :]

    @classmethod
    def from_pure(cls, psi, energies) -> "ProbeState":
        """
        Projector onto the normalised vector ``psi``.
        """
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        rho = np.outer(psi, psi.conj())
        # Symmetrise away rounding so the Hermiticity check is exact
        rho = 0.5 * (rho + rho.conj().T)
        return cls(energies=tuple(float(e) for e in energies), rho=rho)

    @classmethod
    def maximally_coherent(cls, energies) -> "ProbeState":
        """
        Equal superposition Σ_n |e_n⟩/√d of all energy eigenstates.
        """
        d = len(energies)
        return cls.from_pure(np.full(d, 1.0 / math.sqrt(d)), energies)

    @classmethod
    def equispaced(cls, d: int, Omega: float = 1.0) -> "ProbeState":
        """
        Maximally coherent state of a probe with levels 0, Ω, ..., (d-1)Ω.
        """
        return cls.maximally_coherent([n * Omega for n in range(d)])

    @classmethod
    def maximally_mixed(cls, energies) -> "ProbeState":
        d = len(energies)
        return cls(energies=tuple(float(e) for e in energies), rho=np.eye(d) / d)


class QubitPreparation(BaseModel):
    """
    Pure qubit preparation cos φ |e_1⟩ + sin φ |e_2⟩.

    Attributes
    ----------
    phi : float
        Preparation angle in radians, in [0, π/2].
    Omega : float
        Level splitting in units of the qubit frequency.
    """

    model_config = ConfigDict(frozen=True)

    phi: float = Field(ge=0.0, le=math.pi / 2)
    Omega: float = Field(default=1.0, gt=0.0)

    @property
    def initial_coherence(self) -> float:
        return math.sin(2.0 * self.phi)

    def state(self) -> ProbeState:
        return ProbeState.from_pure(
            [math.cos(self.phi), math.sin(self.phi)], (0.0, self.Omega)
        )


class MeasurementAxis(BaseModel):
    """
    Bloch direction b of the projective qubit measurement P_± = (I ± b·σ)/2.

    Attributes
    ----------
    b : tuple[float, float, float]
        Unit vector (b1, b2, b3).
    """

    model_config = ConfigDict(frozen=True)

    b: tuple[float, float, float]

    @field_validator("b")
    @classmethod
    def _check_unit(cls, b: tuple[float, float, float]) -> tuple[float, float, float]:
        norm = math.sqrt(sum(component * component for component in b))
        if abs(norm - 1.0) > AXIS_NORM_TOLERANCE:
            raise ValueError(f"Measurement axis must be a unit vector, |b| = {norm}")
        return b

    @property
    def b1(self) -> float:
        return self.b[0]

    @classmethod
    def from_b1(cls, b1: float) -> "MeasurementAxis":
        """
        Axis in the x-y plane with the requested x component.
        """
        if not -1.0 <= b1 <= 1.0:
            raise ValueError(f"b1 must lie in [-1, 1], got {b1}")
        return cls(b=(b1, math.sqrt(1.0 - b1 * b1), 0.0))

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        """
        The two projectors (P_+, P_-).
        """
        sigma = (
            np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]], dtype=complex),
            np.array([[1, 0], [0, -1]], dtype=complex),
        )
        b_sigma = sum(component * pauli for component, pauli in zip(self.b, sigma))
        identity = np.eye(2, dtype=complex)
        return 0.5 * (identity + b_sigma), 0.5 * (identity - b_sigma)


SIGMA_X = MeasurementAxis(b=(1.0, 0.0, 0.0))
