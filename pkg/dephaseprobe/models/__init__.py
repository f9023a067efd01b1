"""
Domain models
"""

from .quadrature import QuadratureSpec
from .results import (
    DephasingOutcome,
    EstimationResult,
    MeasurementRecord,
    OptimalPrecision,
    OptimumReport,
    OptimumTable,
    PointFailure,
    QfiPoint,
    RegimeTag,
    SEstimate,
)
from .states import (
    SIGMA_X,
    BathModel,
    MeasurementAxis,
    ProbeState,
    QubitPreparation,
)

__all__ = [
    "SIGMA_X",
    "BathModel",
    "DephasingOutcome",
    "EstimationResult",
    "MeasurementAxis",
    "MeasurementRecord",
    "OptimalPrecision",
    "OptimumReport",
    "OptimumTable",
    "PointFailure",
    "ProbeState",
    "QfiPoint",
    "QuadratureSpec",
    "QubitPreparation",
    "RegimeTag",
    "SEstimate",
]
