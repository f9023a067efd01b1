"""
Interaction times that maximise the QFI for the ohmicity, and the optimal
precision curves built from them.
"""

import logging
import math

import numpy as np
from scipy import optimize

from dephaseprobe.exceptions import QuadratureError
from dephaseprobe.models import (
    OptimalPrecision,
    OptimumReport,
    OptimumTable,
    PointFailure,
)

from .metrology import qfi_ohmicity, qsnr
from .parallel import parallel_map

logger = logging.getLogger(__name__)

SCAN_POINTS = 512
SCAN_START = 1e-3
SATURATION_WINDOW = 0.02
"Fraction of the horizon within which a grid maximum counts as saturating."


def _qfi(s: float, tau: float) -> float:
    return qfi_ohmicity(s, tau).qfi


def _refine(s: float, taus: np.ndarray, values: np.ndarray, best: int, rel_tol: float):
    if best == 0 or best == len(taus) - 1:
        return taus[best], values[best]
    bracket = (taus[best - 1], taus[best], taus[best + 1])
    try:
        result = optimize.minimize_scalar(
            lambda tau: -_qfi(s, tau),
            bracket=bracket,
            method="golden",
            tol=max(rel_tol, 1.5e-8),
        )
    except ValueError as error:
        # Flat bracket, usually equal neighbouring samples
        logger.debug("Golden refinement skipped at s=%s: %s", s, error)
        return taus[best], values[best]

    if result.success and -result.fun >= values[best] and bracket[0] <= result.x <= bracket[2]:
        return float(result.x), float(-result.fun)
    return taus[best], values[best]


def maximize_qfi_over_time(
    s: float,
    tau_max: float = 35.0,
    rel_tol: float = 1e-8,
    scan_points: int = SCAN_POINTS,
) -> OptimumReport:
    """
    Find the interaction time maximising H_s(τ) on [1e-3, tau_max].

    A log-spaced scan locates the best sample, which golden-section search
    then refines inside its neighbouring samples. When the best sample lies
    in the last 2% of the range and the QFI is not falling at the horizon
    (slope > -rel_tol·H), the optimum is reported as saturating at the
    horizon.

    Parameters
    ----------
    s : float
        Ohmicity, s > 0.
    tau_max : float
        Search horizon.
    rel_tol : float
        Relative tolerance of the refinement and of the saturation slope test.
    scan_points : int
        Number of log-spaced scan samples.

    Returns
    -------
    report : OptimumReport

    Raises
    ------
    ValueError
        If s <= 0 or tau_max <= 1e-3.
    """
    if not s > 0.0:
        raise ValueError(f"Ohmicity s must be positive, got s={s}")
    if not tau_max > SCAN_START:
        raise ValueError(f"Horizon must exceed {SCAN_START}, got tau_max={tau_max}")

    taus = np.geomspace(SCAN_START, tau_max, scan_points)
    values = np.array([_qfi(s, tau) for tau in taus])
    best = int(np.argmax(values))

    slope = (values[-1] - values[-2]) / (taus[-1] - taus[-2])
    if taus[best] >= (1.0 - SATURATION_WINDOW) * tau_max and slope > -rel_tol * values[-1]:
        logger.info("QFI still rising at the horizon %s for s=%s", tau_max, s)
        return OptimumReport(
            s=s,
            tau_star=tau_max,
            qfi_star=float(max(values[-1], values[best])),
            saturating=True,
            horizon=tau_max,
        )

    tau_star, qfi_star = _refine(s, taus, values, best, rel_tol)
    logger.debug("s=%s: tau*=%s, H*=%s", s, tau_star, qfi_star)
    return OptimumReport(
        s=s,
        tau_star=float(tau_star),
        qfi_star=float(qfi_star),
        saturating=False,
        horizon=tau_max,
    )


def optimal_time_curve(
    s_grid,
    tau_max: float = 35.0,
    rel_tol: float = 1e-8,
    max_workers: int | None = None,
    progress: bool = False,
) -> OptimumTable:
    """
    Optimal interaction time for every s in ``s_grid``.

    Points are independent; a point that raises is recorded as a
    ``PointFailure`` and the others are still returned. Reports keep the
    order of ``s_grid``.

    Parameters
    ----------
    s_grid : Iterable[float]
        Ohmicity values.
    tau_max : float
        Search horizon.
    rel_tol : float
        Passed to ``maximize_qfi_over_time``.
    max_workers : int | None
        Worker cap; see ``parallel_map``.
    progress : bool
        Show a progress bar.

    Returns
    -------
    table : OptimumTable
    """

    def evaluate(s: float) -> OptimumReport | PointFailure:
        try:
            return maximize_qfi_over_time(s, tau_max=tau_max, rel_tol=rel_tol)
        except (ValueError, QuadratureError, ArithmeticError) as error:
            logger.warning("Optimisation failed at s=%s: %s", s, error)
            return PointFailure(s=s, message=str(error))

    outcomes = parallel_map(
        evaluate,
        [float(s) for s in s_grid],
        max_workers=max_workers,
        progress=progress,
        desc="optimum",
    )
    return OptimumTable(
        reports=[o for o in outcomes if isinstance(o, OptimumReport)],
        failures=[o for o in outcomes if isinstance(o, PointFailure)],
    )


def optimal_qfi_curve(
    s_grid,
    tau_max: float = 35.0,
    rel_tol: float = 1e-8,
    max_workers: int | None = None,
) -> list[OptimalPrecision]:
    """
    Optimal QFI and QSNR as a function of s, sorted by s.

    Failed points are logged and left out.
    """
    table = optimal_time_curve(
        s_grid, tau_max=tau_max, rel_tol=rel_tol, max_workers=max_workers
    )
    return sorted(
        (
            OptimalPrecision(
                s=report.s,
                tau_star=report.tau_star,
                qfi_star=report.qfi_star,
                qsnr_star=qsnr(report.s, report.qfi_star),
            )
            for report in table.reports
        ),
        key=lambda point: point.s,
    )


def locate_time_jump(
    reports: list[OptimumReport], factor: float = 2.0
) -> tuple[float, float] | None:
    """
    Find where the optimal time drops discontinuously as s grows.

    Parameters
    ----------
    reports : list[OptimumReport]
        Reports on an s grid, in any order.
    factor : float
        Minimum ratio between consecutive τ* values that counts as a jump.

    Returns
    -------
    interval : tuple[float, float] | None
        The pair of consecutive s values straddling the first jump, or None.
    """
    ordered = sorted(reports, key=lambda report: report.s)
    for left, right in zip(ordered, ordered[1:]):
        if right.tau_star * factor < left.tau_star:
            logger.debug(
                "tau* drops from %s to %s between s=%s and s=%s",
                left.tau_star,
                right.tau_star,
                left.s,
                right.s,
            )
            return left.s, right.s
    return None


def quarter_period_time(s: float) -> float:
    """
    Reference optimal time π/(2s) observed for strongly super-Ohmic baths.
    """
    return math.pi / (2.0 * s)


def sub_ohmic_time(s: float) -> float:
    """
    Reference optimal time (π/2) e^s for s ≪ 1.

    The numerical optimum sits about 15% above it for s ≤ 0.1.
    """
    return 0.5 * math.pi * math.exp(s)
