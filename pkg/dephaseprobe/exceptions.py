"""
Exceptions raised by the numerical core.
"""


class QuadratureError(RuntimeError):
    """
    Adaptive quadrature ran out of subdivisions before meeting its tolerance.

    Attributes
    ----------
    error_estimate : float
        Absolute error estimate achieved when the budget was exhausted.
    subdivisions : int
        Number of panel bisections performed.
    """

    def __init__(self, message: str, error_estimate: float, subdivisions: int):
        super().__init__(message)
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions


class InfeasibleEstimateError(ValueError):
    """
    A measurement record cannot be inverted into an estimate of s.
    """


class ExperimentError(RuntimeError):
    """
    A simulated experiment produced too many infeasible trials to be meaningful.
    """
