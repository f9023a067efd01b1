"""
Special functions and semi-infinite quadrature shared by the other modules.
"""

import logging
import math
import warnings
from collections.abc import Callable

import numpy as np
from scipy import integrate, special

from dephaseprobe.exceptions import QuadratureError
from dephaseprobe.models import QuadratureSpec

logger = logging.getLogger(__name__)

_LOW_NODES, _LOW_WEIGHTS = np.polynomial.legendre.leggauss(10)
_HIGH_NODES, _HIGH_WEIGHTS = np.polynomial.legendre.leggauss(21)

MAX_PANEL_WIDTH = 1.0


def _check_positive(name: str, x: float) -> None:
    if not x > 0.0:
        raise ValueError(f"{name} is only defined here for x > 0, got x={x}")


def ln_gamma(x: float) -> float:
    """
    Natural logarithm of the Euler Gamma function.

    Parameters
    ----------
    x : float
        Positive argument.

    Returns
    -------
    value : float
        ln Γ(x).

    Raises
    ------
    ValueError
        If x <= 0.
    """
    _check_positive("ln_gamma", x)
    return float(special.gammaln(x))


def gamma(x: float) -> float:
    """
    Euler Gamma function for x > 0.

    Raises
    ------
    ValueError
        If x <= 0.
    """
    _check_positive("gamma", x)
    return float(special.gamma(x))


def digamma(x: float) -> float:
    """
    Logarithmic derivative ψ(x) = Γ'(x)/Γ(x).

    Parameters
    ----------
    x : float
        Positive argument.

    Returns
    -------
    value : float
        ψ(x).

    Raises
    ------
    ValueError
        If x <= 0.
    """
    _check_positive("digamma", x)
    return float(special.psi(x))


def _panel_sums(
    f: Callable[[np.ndarray], np.ndarray],
    a: np.ndarray,
    b: np.ndarray,
    nodes: np.ndarray,
    weights: np.ndarray,
) -> np.ndarray:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * nodes[None, :]
    return half * (np.asarray(f(x), dtype=float) @ weights)


def _first_panel(
    f: Callable[[np.ndarray], np.ndarray], width: float, spec: QuadratureSpec
) -> tuple[float, float]:
    # The integrable singularity at x = 0 lives here; QAGS extrapolates through it.
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, error = integrate.quad(
                lambda x: float(f(np.asarray(x))),
                0.0,
                width,
                epsabs=spec.absolute_tolerance,
                epsrel=spec.relative_tolerance,
                limit=spec.max_subdivisions,
            )
        except integrate.IntegrationWarning as warning:
            raise QuadratureError(
                f"Quadrature on [0, {width}] did not converge: {warning}",
                error_estimate=math.inf,
                subdivisions=spec.max_subdivisions,
            ) from warning
    return value, error


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    spec: QuadratureSpec | None = None,
) -> float:
    """
    Integrate ``f`` over [0, ∞).

    The range is truncated at ``spec.upper_cutoff`` and split into panels no
    wider than min(1, π/(2 spec.frequency)). The first panel goes to QUADPACK,
    the rest are integrated with paired 10/21-point Gauss-Legendre rules and
    bisected until each panel meets its share of the tolerance. The tail beyond
    the cutoff is bounded by |f(cutoff)|, which holds for integrands decaying
    like e^{-x}.

    Parameters
    ----------
    f : Callable[[np.ndarray], np.ndarray]
        Integrand, evaluated element-wise on arrays of any shape.
    spec : QuadratureSpec | None
        Tolerances and truncation. Defaults to ``QuadratureSpec()``.

    Returns
    -------
    value : float
        The integral.

    Raises
    ------
    QuadratureError
        If the bisection budget is exhausted before the tolerance is met.
    """
    if spec is None:
        spec = QuadratureSpec()

    width = MAX_PANEL_WIDTH
    if spec.frequency > 0.0:
        width = min(width, math.pi / (2.0 * spec.frequency))
    width = min(width, spec.upper_cutoff)

    total, error = _first_panel(f, width, spec)

    edges = np.arange(width, spec.upper_cutoff, width)
    edges = np.append(edges, spec.upper_cutoff)
    a, b = edges[:-1], edges[1:]
    keep = b > a
    a, b = a[keep], b[keep]

    tail = float(abs(np.asarray(f(np.asarray([spec.upper_cutoff])))[0]))
    error += tail

    span = spec.upper_cutoff
    subdivisions = 0
    while a.size:
        coarse = _panel_sums(f, a, b, _LOW_NODES, _LOW_WEIGHTS)
        fine = _panel_sums(f, a, b, _HIGH_NODES, _HIGH_WEIGHTS)
        panel_error = np.abs(fine - coarse)

        estimate = abs(total + fine.sum())
        tolerance = max(spec.absolute_tolerance, spec.relative_tolerance * estimate)
        accepted = panel_error <= tolerance * (b - a) / span

        total += float(fine[accepted].sum())
        error += float(panel_error[accepted].sum())

        a, b = a[~accepted], b[~accepted]
        if not a.size:
            break

        subdivisions += a.size
        if subdivisions > spec.max_subdivisions:
            remaining = error + float(panel_error[~accepted].sum())
            raise QuadratureError(
                f"Quadrature exhausted {spec.max_subdivisions} subdivisions "
                f"with error estimate {remaining:.3e}",
                error_estimate=remaining,
                subdivisions=subdivisions,
            )
        mid = 0.5 * (a + b)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])

    logger.debug(
        "Integrated to %s (error estimate %.2e, %d bisections)",
        total,
        error,
        subdivisions,
    )
    return float(total)
