"""
Command implementations. Each returns an exit code:
0 success, 1 input error, 2 a result outside the requested tolerance.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import TextIO, TypeVar

import numpy as np
from pydantic import ValidationError

from src.assembly.schemas import SQuadConfig
from src.assembly.service import three_centre
from src.cli.exceptions import ParamsFileError
from src.cli.output import Row, write_rows
from src.cli.params import read_integral_params, read_three_centre_params
from src.cli.schemas import RunSpec
from src.core.config import default_de_config, default_oracle_config
from src.core.exceptions import ConvergenceError, IntegralError
from src.dequad.exceptions import QuadratureEvaluationError
from src.dequad.schemas import DEConfig, QuadratureResult, TransformKind
from src.dequad.service import (
    de_sum,
    integrate_I_s,
    point_scan,
    second_M,
    transformed_integrand,
)
from src.oracle.service import oracle_I_s
from src.sintegrand.schemas import IntegralParams
from src.sintegrand.service import oscillation_frequency, s_transform, sine_integrand

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_TOLERANCE = 2

# M ranges of the error scan when none is given
DEFAULT_M_RANGE: dict[TransformKind, tuple[float, float]] = {
    "phi1": (10.0, 19.0),
    "phi2": (4.0, 10.0),
}

T = TypeVar("T")
R = TypeVar("R")


def _de_config(spec: RunSpec, transform: TransformKind) -> DEConfig:
    return default_de_config(
        transform, eps0=spec.eps0, K=spec.K, max_attempts=spec.max_attempts
    )


def _ordered_map(func: Callable[[T], R], items: list[T], workers: int) -> list[R]:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _relative_error(value: float, reference: float) -> float:
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def _inputs(p: IntegralParams) -> Row:
    return {
        "s": p.s,
        "nu": str(p.nu),
        "n_gamma": p.n_gamma,
        "n_x": p.n_x,
        "lam": p.lam,
        "R1": p.R1,
        "zeta1": p.zeta1,
        "R2": p.R2,
        "zeta2": p.zeta2,
    }


def _scaled_value(result: QuadratureResult, p: IntegralParams) -> float:
    return result.value / oscillation_frequency(p) ** (p.lam + 1)


def cmd_integral(spec: RunSpec, stream: TextIO) -> int:
    """I(s) for each row with every selected transform, checked against the oracle."""
    rows: list[Row] = []
    failed = False
    oracle_cfg = default_oracle_config()
    for p in read_integral_params(spec.params_file):
        reference = oracle_I_s(p, oracle_cfg)
        for transform in spec.transforms:
            result = integrate_I_s(p, _de_config(spec, transform))
            rel_error = _relative_error(result.value, reference)
            failed |= rel_error > spec.tolerance
            rows.append(
                {
                    **_inputs(p),
                    "transform": transform,
                    "value": result.value,
                    "n_points": result.n_points,
                    "N_minus": result.N_minus,
                    "N_plus": result.N_plus,
                    "n_M": result.n_M,
                    "M": result.M,
                    "est_rel_error": result.est_rel_error,
                    "I_oracle": reference,
                    "rel_error": rel_error,
                }
            )
            logger.info(
                "%s: I(s)=%.15e with %d points (rel. error %.2e)",
                transform,
                result.value,
                result.n_points,
                rel_error,
            )
    write_rows(rows, spec.output, stream)
    return EXIT_TOLERANCE if failed else EXIT_OK


def _table_row(spec: RunSpec, p: IntegralParams) -> tuple[Row, bool]:
    """A failing row keeps its inputs and the error message; the table goes on."""
    row = _inputs(p)
    failed = False
    try:
        reference = oracle_I_s(p, default_oracle_config())
        for transform in spec.transforms:
            result = integrate_I_s(p, _de_config(spec, transform))
            rel_error = _relative_error(result.value, reference)
            failed |= rel_error > spec.tolerance
            row |= {
                f"I_{transform}": result.value,
                f"n_{transform}": result.n_points,
                f"max_{transform}": result.N_plus,
                f"nM_{transform}": result.n_M,
                f"eps_{transform}": rel_error,
            }
    except IntegralError as e:
        logger.error("row s=%g, nu=%s failed: %s", p.s, p.nu, e)
        return row | {"error": str(e)}, True
    row |= {"I_oracle": reference, "error": None}
    return row, failed


def cmd_table(spec: RunSpec, stream: TextIO) -> int:
    """One output row per input row; every row is computed before the exit code is decided."""
    params = read_integral_params(spec.params_file)
    logger.info("table: %d rows, transforms %s", len(params), ", ".join(spec.transforms))
    results = _ordered_map(lambda p: _table_row(spec, p), params, spec.workers)
    write_rows([row for row, _ in results], spec.output, stream)
    failures = sum(failed for _, failed in results)
    if failures:
        logger.warning(
            "%d of %d rows failed or fell outside tolerance %.1e",
            failures,
            len(results),
            spec.tolerance,
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_three_centre(spec: RunSpec, stream: TextIO) -> int:
    sq = SQuadConfig(order=spec.order, refine=spec.refine)
    transform: TransformKind = "phi1" if spec.transform == "phi1" else "phi2"
    de = _de_config(spec, transform)
    rows: list[Row] = []
    warned = False
    for p3 in read_three_centre_params(spec.params_file):
        result = three_centre(p3, sq, de, workers=spec.workers)
        warned |= result.accuracy_warning
        rows.append(
            {
                "n1": p3.n1,
                "l1": p3.l1,
                "m1": p3.m1,
                "zeta1": p3.zeta1,
                "n2": p3.n2,
                "l2": p3.l2,
                "m2": p3.m2,
                "zeta2": p3.zeta2,
                "R1": " ".join(format(c, ".17g") for c in p3.R1),
                "R2": " ".join(format(c, ".17g") for c in p3.R2),
                "real": result.real,
                "imag": result.imag,
                "n_terms": result.n_terms,
                "n_inner": result.n_inner,
                "order": result.order,
                "s_rel_diff": result.s_rel_diff,
            }
        )
    write_rows(rows, spec.output, stream)
    return EXIT_TOLERANCE if warned else EXIT_OK


def cmd_error_scan(spec: RunSpec, stream: TextIO) -> int:
    """Absolute error of the trapezoidal sum against the oracle over a grid of M."""
    p = read_integral_params(spec.params_file)[0]
    reference = oracle_I_s(p, default_oracle_config())
    v = oscillation_frequency(p)
    f = sine_integrand(s_transform(p), p)
    rows: list[Row] = []
    for transform in spec.transforms:
        lo, hi = DEFAULT_M_RANGE[transform]
        grid = np.linspace(spec.m_min or lo, spec.m_max or hi, spec.m_num)
        cfg = _de_config(spec, transform)
        for M in grid.tolist():
            result = de_sum(f, v, M, cfg)
            value = _scaled_value(result, p)
            rows.append(
                {
                    "transform": transform,
                    "M": M,
                    "n_points": result.n_points,
                    "value": value,
                    "abs_error": abs(value - reference),
                }
            )
    write_rows(rows, spec.output, stream)
    return EXIT_OK


def cmd_point_scan(spec: RunSpec, stream: TextIO) -> int:
    """
    Absolute error against the number of collocation points at M2, from an upper
    bound of --start-upper out to the bounds the integrator finds at M2.
    """
    p = read_integral_params(spec.params_file)[0]
    reference = oracle_I_s(p, default_oracle_config())
    v = oscillation_frequency(p)
    f = sine_integrand(s_transform(p), p)
    rows: list[Row] = []
    for transform in spec.transforms:
        for result in point_scan(f, v, _de_config(spec, transform), spec.start_upper):
            value = _scaled_value(result, p)
            rows.append(
                {
                    "transform": transform,
                    "M": result.M,
                    "n_points": result.n_points,
                    "N_minus": result.N_minus,
                    "N_plus": result.N_plus,
                    "value": value,
                    "abs_error": abs(value - reference),
                }
            )
    write_rows(rows, spec.output, stream)
    return EXIT_OK


def cmd_transformed_scan(spec: RunSpec, stream: TextIO) -> int:
    """The integrand in the t variable at M2 on a uniform grid, for plotting."""
    p = read_integral_params(spec.params_file)[0]
    grid = np.linspace(spec.t_min, spec.t_max, spec.t_num)
    rows: list[Row] = []
    for transform in spec.transforms:
        cfg = _de_config(spec, transform)
        M = second_M(cfg)
        values = transformed_integrand(p, M, cfg, grid)
        rows.extend(
            {"transform": transform, "M": M, "t": t, "value": value}
            for t, value in zip(grid.tolist(), values.tolist(), strict=True)
        )
    write_rows(rows, spec.output, stream)
    return EXIT_OK


COMMANDS: dict[str, Callable[[RunSpec, TextIO], int]] = {
    "integral": cmd_integral,
    "table": cmd_table,
    "three-centre": cmd_three_centre,
    "error-scan": cmd_error_scan,
    "point-scan": cmd_point_scan,
    "transformed-scan": cmd_transformed_scan,
}


def run(spec: RunSpec, stream: TextIO) -> int:
    """
    Dispatch a command. Bad input exits with 1; a sum that did not converge or
    could not be evaluated exits with 2.
    """
    logger.info("command %s on %s", spec.command, spec.params_file)
    try:
        code = COMMANDS[spec.command](spec, stream)
    except ParamsFileError as e:
        logger.error("%s", e)
        return EXIT_INPUT
    except ValidationError as e:
        logger.error("invalid input: %s", e)
        return EXIT_INPUT
    except (ConvergenceError, QuadratureEvaluationError) as e:
        logger.error("%s did not converge: %s", spec.command, e)
        return EXIT_TOLERANCE
    except IntegralError as e:
        logger.error("%s failed: %s", spec.command, e)
        return EXIT_INPUT
    logger.info("command %s finished with exit code %d", spec.command, code)
    return code
