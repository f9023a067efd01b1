"""
Command-line front end: rate and QFI tables, parameter sweeps, optimal
times and simulated experiments, emitted as CSV or JSON.
"""

import argparse as ap
import json
import logging
import math
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Literal, TextIO

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from dephaseprobe import __version__
from dephaseprobe.core import (
    cr_experiment,
    excess_qfi,
    fisher_info_projective,
    gamma_finite_T_exact,
    gamma_high_T,
    gamma_low_T,
    gamma_low_T_quadratic,
    gamma_zero_T,
    maximize_qfi_over_time,
    optimal_time_curve,
    parallel_map,
    qfi_finite_T,
    qfi_ohmicity,
    qsnr,
)
from dephaseprobe.exceptions import ExperimentError, QuadratureError
from dephaseprobe.models import DephasingOutcome, MeasurementAxis, QuadratureSpec
from dephaseprobe.settings import Settings

logger = logging.getLogger(__name__)

Command = Literal["rate", "qfi", "fisher", "sweep", "opt", "excess", "simulate"]
Regime = Literal["exact", "low", "quadratic", "high"]

EXIT_OK = 0
EXIT_INVALID_CONFIG = 1
EXIT_NUMERICAL_FAILURE = 2

REGIME_METHODS = {
    "exact": "exact",
    "low": "low_T",
    "quadratic": "quadratic",
    "high": "high_T",
}


class GridRange(BaseModel):
    """
    Inclusive grid ``start:stop:count``, log-spaced with a ``log:`` prefix.
    """

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    count: int = Field(ge=2)
    log: bool = False

    @model_validator(mode="after")
    def _check_bounds(self) -> "GridRange":
        if not self.stop > self.start:
            raise ValueError(f"Range stop {self.stop} must exceed start {self.start}")
        if self.log and not self.start > 0.0:
            raise ValueError(f"Log-spaced ranges need a positive start, got {self.start}")
        return self

    @classmethod
    def parse(cls, text: str) -> "GridRange":
        log = text.startswith("log:")
        body = text.removeprefix("log:")
        parts = body.split(":")
        if len(parts) != 3:
            raise ValueError(f"Expected start:stop:count, got {text!r}")
        start, stop, count = parts
        return cls(start=float(start), stop=float(stop), count=int(count), log=log)

    def values(self) -> list[float]:
        if self.log:
            grid = np.geomspace(self.start, self.stop, self.count)
        else:
            grid = np.linspace(self.start, self.stop, self.count)
        return [float(value) for value in grid]


class RunConfig(BaseModel):
    """
    Validated configuration of one command-line run.

    Attributes
    ----------
    command : Command
        What to compute.
    s, tau : float | None
        Single values; a matching range takes precedence.
    s_range, tau_range : GridRange | None
        Grids of values.
    T : float
        Temperature in units of the cutoff.
    regime : Regime
        Finite-temperature evaluator for ``rate`` and ``qfi``.
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    s: float | None = Field(default=None, gt=0.0)
    tau: float | None = Field(default=None, ge=0.0)
    T: float = Field(default=0.0, ge=0.0)
    s_range: GridRange | None = None
    tau_range: GridRange | None = None
    b1: float = Field(default=1.0, ge=-1.0, le=1.0)
    M: int = Field(default=10_000, ge=1)
    n_trials: int = Field(default=1000, ge=100)
    seed: int = Field(default=42, ge=0, lt=2**64)
    tau_max: float = Field(default=35.0, gt=0.0)
    regime: Regime = "exact"
    output_format: Literal["csv", "json"] = "csv"
    output_path: Path | None = None

    @model_validator(mode="after")
    def _check_command(self) -> "RunConfig":
        if self.s_range is not None and not self.s_range.start > 0.0:
            raise ValueError(f"Ohmicity range must be positive, got {self.s_range.start}")
        if self.tau_range is not None and self.tau_range.start < 0.0:
            raise ValueError(f"Time range must be non-negative, got {self.tau_range.start}")

        if self.s is None and self.s_range is None:
            raise ValueError(f"'{self.command}' needs --s or --s-range")
        if self.command == "sweep" and (self.s_range is None or self.tau_range is None):
            raise ValueError("'sweep' needs both --s-range and --tau-range")
        if self.command in {"rate", "qfi", "fisher", "excess"}:
            if self.tau is None and self.tau_range is None:
                raise ValueError(f"'{self.command}' needs --tau or --tau-range")
        if self.command == "excess" and not self.T > 0.0:
            raise ValueError("'excess' needs a positive --T")
        if self.command == "simulate":
            if self.s is None:
                raise ValueError("'simulate' needs a single --s")
            if self.tau is not None and not self.tau > 0.0:
                raise ValueError("'simulate' needs a positive --tau")
        return self

    def s_values(self) -> list[float]:
        return self.s_range.values() if self.s_range is not None else [self.s]

    def tau_values(self) -> list[float]:
        return self.tau_range.values() if self.tau_range is not None else [self.tau]

    def grid(self) -> list[tuple[float, float]]:
        return [(s, tau) for s in self.s_values() for tau in self.tau_values()]


class PointFailureError(RuntimeError):
    """
    A grid point failed numerically; carries the point for the diagnostic.
    """

    def __init__(self, point: dict, error: Exception):
        super().__init__(f"{error} at {point}")
        self.point = point
        self.error = error


def _guarded(func: Callable[..., dict]) -> Callable[[tuple], dict]:
    def evaluate(point: tuple) -> dict:
        try:
            return func(*point)
        except (ValueError, QuadratureError, ArithmeticError) as error:
            keys = ("s", "tau")
            raise PointFailureError(dict(zip(keys, point)), error) from error

    return evaluate


def _quadrature_spec(settings: Settings, tau: float, T: float) -> QuadratureSpec:
    return QuadratureSpec.for_rate(
        tau,
        T,
        relative_tolerance=settings.quad_relative_tolerance,
        absolute_tolerance=settings.quad_absolute_tolerance,
        max_subdivisions=settings.quad_max_subdivisions,
    )


def _rate(config: RunConfig, settings: Settings, s: float, tau: float) -> DephasingOutcome:
    T = config.T
    if T == 0.0:
        return gamma_zero_T(s, tau)
    if config.regime == "exact":
        return gamma_finite_T_exact(s, tau, T, _quadrature_spec(settings, tau, T))
    evaluators = {
        "low": gamma_low_T,
        "quadratic": gamma_low_T_quadratic,
        "high": gamma_high_T,
    }
    return evaluators[config.regime](s, tau, T)


def _qfi_row(config: RunConfig, settings: Settings, s: float, tau: float) -> dict:
    if config.T == 0.0:
        point = qfi_ohmicity(s, tau)
    else:
        spec = _quadrature_spec(settings, tau, config.T)
        point = qfi_finite_T(s, tau, config.T, REGIME_METHODS[config.regime], spec)
    return point.model_dump()


def _rate_rows(config: RunConfig, settings: Settings) -> list[dict]:
    def row(s: float, tau: float) -> dict:
        outcome = _rate(config, settings, s, tau)
        return {
            "s": s,
            "tau": tau,
            "T": config.T,
            "gamma": outcome.gamma,
            "dgamma_ds": outcome.dgamma_ds,
            "regime_tag": outcome.regime_tag.value,
        }

    return parallel_map(_guarded(row), config.grid())


def _qfi_rows(config: RunConfig, settings: Settings) -> list[dict]:
    return parallel_map(
        _guarded(lambda s, tau: _qfi_row(config, settings, s, tau)), config.grid()
    )


def _fisher_rows(config: RunConfig, settings: Settings) -> list[dict]:
    axis = MeasurementAxis.from_b1(config.b1)

    def row(s: float, tau: float) -> dict:
        fisher = fisher_info_projective(s, tau, axis)
        qfi = qfi_ohmicity(s, tau).qfi
        return {
            "s": s,
            "tau": tau,
            "b1": config.b1,
            "fisher": fisher,
            "qfi": qfi,
            "ratio": fisher / qfi if qfi > 0.0 else float("nan"),
        }

    return parallel_map(_guarded(row), config.grid())


def _excess_rows(config: RunConfig, settings: Settings) -> list[dict]:
    def row(s: float, tau: float) -> dict:
        delta = excess_qfi(s, tau, config.T)
        return {
            "s": s,
            "tau": tau,
            "T": config.T,
            "delta_qfi": delta,
            "sign": int(np.sign(delta)),
        }

    return parallel_map(_guarded(row), config.grid())


def _opt_rows(config: RunConfig, settings: Settings) -> list[dict]:
    table = optimal_time_curve(config.s_values(), tau_max=config.tau_max, progress=True)
    if table.failures:
        failure = table.failures[0]
        raise PointFailureError({"s": failure.s}, RuntimeError(failure.message))
    return [
        report.model_dump() | {"qsnr_star": qsnr(report.s, report.qfi_star)}
        for report in table.reports
    ]


def _simulate_rows(config: RunConfig, settings: Settings) -> list[dict]:
    tau = config.tau
    if tau is None:
        tau = maximize_qfi_over_time(config.s, tau_max=config.tau_max).tau_star
        logger.info("Simulating at the optimal time tau=%s", tau)
    result = cr_experiment(
        config.s,
        tau,
        config.M,
        config.n_trials,
        axis=MeasurementAxis.from_b1(config.b1),
        seed=config.seed,
        progress=True,
    )
    return [{"tau": tau} | result.model_dump()]


COMMANDS: dict[str, Callable[[RunConfig, Settings], list[dict]]] = {
    "rate": _rate_rows,
    "qfi": _qfi_rows,
    "fisher": _fisher_rows,
    "sweep": _qfi_rows,
    "opt": _opt_rows,
    "excess": _excess_rows,
    "simulate": _simulate_rows,
}


def _finite_or_none(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def emit(config: RunConfig, rows: list[dict], stream: TextIO) -> None:
    """
    Write the table with the configuration as a header.

    CSV output starts with ``#`` lines holding the version and the
    configuration as JSON; floats are printed with 17 significant digits.
    JSON output is ``{"config": ..., "rows": [...]}`` with non-finite values
    written as null.
    """
    header = config.model_dump(mode="json")
    if config.output_format == "json":
        rows = [{key: _finite_or_none(value) for key, value in row.items()} for row in rows]
        json.dump({"config": header, "rows": rows}, stream, indent=2, allow_nan=False)
        stream.write("\n")
        return

    stream.write(f"# dephaseprobe {__version__}\n")
    stream.write(f"# config: {json.dumps(header, sort_keys=True)}\n")
    pd.DataFrame(rows).to_csv(stream, index=False, float_format="%.17g", lineterminator="\n")


def run(config: RunConfig, settings: Settings | None = None, stream: TextIO | None = None) -> int:
    """
    Execute one configured run and emit its table.

    Parameters
    ----------
    config : RunConfig
        What to compute.
    settings : Settings | None
        Quadrature tolerances and worker cap. Defaults to ``Settings()``.
    stream : TextIO | None
        Where to write when ``config.output_path`` is unset; defaults to stdout.

    Returns
    -------
    status : int
        0 on success, 2 when a point fails numerically.
    """
    if settings is None:
        settings = Settings()

    try:
        rows = COMMANDS[config.command](config, settings)
    except PointFailureError as failure:
        logger.error("Numerical failure at %s: %s", failure.point, failure.error)
        return EXIT_NUMERICAL_FAILURE
    except (QuadratureError, ExperimentError, ValueError, ArithmeticError) as error:
        logger.error("Numerical failure in '%s': %s", config.command, error)
        return EXIT_NUMERICAL_FAILURE

    if config.output_path is not None:
        with open(config.output_path, "w", newline="") as handle:
            emit(config, rows, handle)
        logger.info("Wrote %d rows to %s", len(rows), config.output_path)
    else:
        emit(config, rows, stream or sys.stdout)
    return EXIT_OK


class _ArgumentParser(ap.ArgumentParser):
    def error(self, message: str):
        raise ValueError(message)


def build_parser(settings: Settings) -> ap.ArgumentParser:
    parser = _ArgumentParser(
        prog="dephaseprobe",
        description="Quantum probing of Ohmic-like dephasing environments",
    )
    parser.add_argument("command", choices=list(COMMANDS), help="What to compute")
    parser.add_argument("--s", type=float, help="Ohmicity parameter")
    parser.add_argument("--tau", type=float, help="Dimensionless interaction time")
    parser.add_argument("--T", type=float, default=0.0, help="Temperature in units of the cutoff")
    parser.add_argument(
        "--s-range", type=str, help="Grid of s as start:stop:count (prefix log: for log spacing)"
    )
    parser.add_argument("--tau-range", type=str, help="Grid of tau, same syntax as --s-range")
    parser.add_argument("--b1", type=float, default=1.0, help="x component of the measurement axis")
    parser.add_argument("--M", type=int, default=10_000, help="Repetitions per record")
    parser.add_argument("--trials", type=int, default=1000, help="Simulated records")
    parser.add_argument("--seed", type=int, default=settings.seed, help="Master seed")
    parser.add_argument("--tau-max", type=float, default=settings.tau_max, help="Search horizon")
    parser.add_argument(
        "--regime",
        choices=list(REGIME_METHODS),
        default="exact",
        help="Finite-temperature evaluator for rate and qfi",
    )
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--out", type=Path, default=None, help="Output file (default stdout)")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=settings.log_level,
    )
    return parser


def parse_config(argv: list[str] | None, settings: Settings) -> tuple[RunConfig, str]:
    """
    Parse command-line arguments into a validated ``RunConfig``.

    Returns
    -------
    config : RunConfig
    log_level : str

    Raises
    ------
    ValueError
        On unknown flags, malformed ranges or values out of range.
    """
    args = build_parser(settings).parse_args(argv)
    config = RunConfig(
        command=args.command,
        s=args.s,
        tau=args.tau,
        T=args.T,
        s_range=GridRange.parse(args.s_range) if args.s_range else None,
        tau_range=GridRange.parse(args.tau_range) if args.tau_range else None,
        b1=args.b1,
        M=args.M,
        n_trials=args.trials,
        seed=args.seed,
        tau_max=args.tau_max,
        regime=args.regime,
        output_format=args.format,
        output_path=args.out,
    )
    return config, args.log_level


def main(argv: list[str] | None = None) -> int:
    settings = Settings()
    try:
        config, log_level = parse_config(argv, settings)
    except (ValueError, ValidationError) as error:
        logging.basicConfig(stream=sys.stderr)
        logger.error("Invalid configuration: %s", error)
        return EXIT_INVALID_CONFIG

    logging.basicConfig(
        level=log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return run(config, settings)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
