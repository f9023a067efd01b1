from pydantic import BaseModel, ConfigDict, Field


class QuadratureSpec(BaseModel):
    """
    Tolerances and truncation for integrals over [0, ∞).

    Attributes
    ----------
    relative_tolerance : float
        Requested relative accuracy of the integral.
    absolute_tolerance : float
        Requested absolute accuracy, used when the integral is close to zero.
    max_subdivisions : int
        Budget of panel bisections before giving up.
    upper_cutoff : float
        Dimensionless frequency at which the integration range is truncated.
    frequency : float
        Oscillation frequency of the integrand (τ for the dephasing integrals);
        0 for non-oscillatory integrands. Panels are kept no wider than a
        quarter period.
    """

    model_config = ConfigDict(frozen=True)

    relative_tolerance: float = Field(default=1e-10, gt=0.0, le=1.0)
    absolute_tolerance: float = Field(default=1e-14, ge=0.0)
    max_subdivisions: int = Field(default=10_000, ge=1)
    upper_cutoff: float = Field(default=50.0, gt=0.0)
    frequency: float = Field(default=0.0, ge=0.0)

    @classmethod
    def for_rate(cls, tau: float, T: float = 0.0, **overrides) -> "QuadratureSpec":
        """
        Spec for a dephasing-rate integral at time ``tau`` and temperature ``T``.

        The cutoff is max(50, 50 T, 10 τ) and the panel width follows τ.
        """
        cutoff = max(50.0, 50.0 * T, 10.0 * tau)
        return cls(upper_cutoff=cutoff, frequency=tau, **overrides)
