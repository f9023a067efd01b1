"""
Result records produced by the numerical core.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .states import MeasurementAxis


class RegimeTag(str, Enum):
    exact_closed_form = "exact_closed_form"
    exact_quadrature = "exact_quadrature"
    low_T_approx = "low_T_approx"
    low_T_quadratic = "low_T_quadratic"
    high_T_approx = "high_T_approx"


class DephasingOutcome(BaseModel):
    """
    Dephasing exponent applied by the channel.

    Attributes
    ----------
    gamma : float
        Dephasing exponent γ_s(τ, T).
    dgamma_ds : float
        Derivative of γ with respect to the ohmicity s.
    regime_tag : RegimeTag
        Which evaluator produced the value.
    """

    model_config = ConfigDict(frozen=True)

    gamma: float = Field(ge=0.0)
    dgamma_ds: float
    regime_tag: RegimeTag


class QfiPoint(BaseModel):
    """
    Quantum Fisher information for s at one (s, τ, T).

    Attributes
    ----------
    qfi : float
        H_s(τ, T).
    qsnr : float
        Quantum signal-to-noise ratio Q_s = s² H_s.
    """

    model_config = ConfigDict(frozen=True)

    s: float
    tau: float
    T: float = 0.0
    qfi: float = Field(ge=0.0)
    qsnr: float = Field(ge=0.0)
    gamma: float
    dgamma_ds: float

    @model_validator(mode="after")
    def _check_qsnr(self) -> "QfiPoint":
        expected = self.s * self.s * self.qfi
        if abs(self.qsnr - expected) > 1e-12 * max(1.0, expected):
            raise ValueError(f"qsnr {self.qsnr} does not equal s² H = {expected}")
        return self


class OptimumReport(BaseModel):
    """
    Interaction time maximising the QFI at fixed s.

    Attributes
    ----------
    tau_star : float
        Optimal dimensionless time, or the horizon when saturating.
    qfi_star : float
        QFI at tau_star.
    saturating : bool
        The QFI is still increasing at the horizon, so no interior optimum exists.
    horizon : float
        Largest interaction time searched.
    """

    model_config = ConfigDict(frozen=True)

    s: float
    tau_star: float
    qfi_star: float
    saturating: bool
    horizon: float

    @model_validator(mode="after")
    def _check_saturation(self) -> "OptimumReport":
        if self.saturating and self.tau_star != self.horizon:
            raise ValueError("A saturating optimum must sit at the horizon")
        return self


class OptimalPrecision(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: float
    tau_star: float
    qfi_star: float
    qsnr_star: float


class PointFailure(BaseModel):
    """
    A grid point whose evaluation raised, kept so the rest of a curve survives.
    """

    model_config = ConfigDict(frozen=True)

    s: float
    message: str


class OptimumTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    reports: list[OptimumReport]
    failures: list[PointFailure] = []


class MeasurementRecord(BaseModel):
    """
    Outcome counts of M repeated projective measurements.

    Attributes
    ----------
    M : int
        Number of repetitions.
    n_plus : int
        Number of "+" outcomes.
    tau : float
        Interaction time.
    axis : MeasurementAxis
        Measurement direction.
    seed : int
        Seed the counts were drawn with.
    """

    model_config = ConfigDict(frozen=True)

    M: int = Field(ge=1)
    n_plus: int = Field(ge=0)
    tau: float = Field(gt=0.0)
    axis: MeasurementAxis
    seed: int = Field(ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_counts(self) -> "MeasurementRecord":
        if self.n_plus > self.M:
            raise ValueError(f"n_plus={self.n_plus} exceeds M={self.M}")
        return self

    @property
    def frequency(self) -> float:
        return self.n_plus / self.M


class SEstimate(BaseModel):
    """
    Estimate of s from one record.

    Attributes
    ----------
    s_hat : float
        The selected root.
    n_roots : int
        Number of roots found in the search range; more than one means the
        record was ambiguous.
    """

    model_config = ConfigDict(frozen=True)

    s_hat: float
    n_roots: int = Field(ge=1)

    @property
    def multiple(self) -> bool:
        return self.n_roots > 1


class EstimationResult(BaseModel):
    """
    Summary of a simulated Cramér-Rao experiment.

    Attributes
    ----------
    s_hat : float
        Mean of the estimates over feasible trials.
    empirical_variance : float
        Sample variance of the estimates.
    cr_bound : float
        Classical bound 1/(M F_s) for the chosen axis.
    q_cr_bound : float
        Quantum bound 1/(M H_s).
    saturation_ratio : float
        empirical_variance / cr_bound.
    failures : int
        Trials that could not be inverted.
    """

    model_config = ConfigDict(frozen=True)

    s_true: float
    s_hat: float
    n_trials: int
    empirical_variance: float = Field(ge=0.0)
    cr_bound: float
    q_cr_bound: float
    saturation_ratio: float
    failures: int = Field(ge=0)
    multiple_root_trials: int = Field(default=0, ge=0)
