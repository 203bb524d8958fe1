"""
Reference values of I(s) by a route independent of the DE rule.

Each half-period of the sine integrand (or each lobe of the spherical Bessel
integrand) is integrated by globally adaptive Gauss-Kronrod 15/7 quadrature and the
alternating series of panel integrals is summed until its tail is negligible or
its epsilon-accelerated limit is stable.
"""

from __future__ import annotations

import heapq
import logging
import math
from collections.abc import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from src.oracle.constants import ROUNDOFF_FACTOR, STABLE_ESTIMATES, WG, WGK, XGK
from src.oracle.exceptions import OracleAccuracyError
from src.oracle.schemas import OracleConfig, OracleResult
from src.sintegrand.schemas import IntegralParams
from src.sintegrand.service import (
    original_integrand,
    oscillation_frequency,
    s_transform,
    sine_integrand,
)

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
VectorFunction = Callable[[FloatArray], FloatArray]

_NODES = np.concatenate([-XGK[:-1], XGK[::-1]])
_KRONROD_WEIGHTS = np.concatenate([WGK[:-1], WGK[::-1]])
_gauss_half = np.zeros_like(XGK)
_gauss_half[1::2] = WG
_GAUSS_WEIGHTS = np.concatenate([_gauss_half[:-1], _gauss_half[::-1]])
_EPS = float(np.finfo(np.float64).eps)


def _gauss_kronrod(f: VectorFunction, a: float, b: float) -> tuple[float, float, float]:
    """(Kronrod estimate, |Kronrod - Gauss|, roundoff floor) on [a, b]."""
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(centre + half * _NODES), dtype=np.float64)
    if not np.all(np.isfinite(fx)):
        raise OracleAccuracyError(f"non-finite integrand on [{a!r}, {b!r}]")
    kronrod = half * float(_KRONROD_WEIGHTS @ fx)
    gauss = half * float(_GAUSS_WEIGHTS @ fx)
    floor = ROUNDOFF_FACTOR * _EPS * half * float(_KRONROD_WEIGHTS @ np.abs(fx))
    return kronrod, abs(kronrod - gauss), floor


def adaptive_integrate(
    f: VectorFunction,
    a: float,
    b: float,
    cfg: OracleConfig,
    abs_tol: float = 0.0,
) -> float:
    """
    Integral of a vectorised f over [a, b] to rel_tol (or abs_tol if larger).

    The panel with the largest error is bisected until the summed error meets the
    tolerance or every remaining error is at roundoff level.
    """
    if not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    value, error, floor = _gauss_kronrod(f, a, b)
    heap: list[tuple[float, float, float, float, float, float]] = [
        (-max(error, floor), a, b, value, error, floor)
    ]
    total = value
    total_error = max(error, floor)
    panels = 1
    while True:
        if total_error <= max(cfg.rel_tol * abs(total), abs_tol):
            break
        _, lo, hi, worst_value, worst_error, worst_floor = heap[0]
        if worst_error <= worst_floor:
            break
        if panels >= cfg.max_panels:
            raise OracleAccuracyError(
                f"panel budget {cfg.max_panels} exhausted on [{a!r}, {b!r}] "
                f"with estimated error {total_error:.3e}",
                best_estimate=math.fsum(item[3] for item in heap),
            )
        heapq.heappop(heap)
        total -= worst_value
        total_error -= max(worst_error, worst_floor)
        mid = 0.5 * (lo + hi)
        for left, right in ((lo, mid), (mid, hi)):
            value, error, floor = _gauss_kronrod(f, left, right)
            heapq.heappush(heap, (-max(error, floor), left, right, value, error, floor))
            total += value
            total_error += max(error, floor)
        panels += 1
    return math.fsum(item[3] for item in heap)


def wynn_epsilon(partial_sums: Sequence[float]) -> float:
    """Limit estimate from the highest even column of Wynn's epsilon table."""
    if not partial_sums:
        raise ValueError("wynn_epsilon needs at least one partial sum")
    current = [float(s) for s in partial_sums]
    best = current[-1]
    if len(current) < 3:
        return best
    previous = [0.0] * (len(current) + 1)
    for column in range(1, len(partial_sums)):
        following: list[float] = []
        for i in range(len(current) - 1):
            diff = current[i + 1] - current[i]
            if diff == 0.0:
                return best
            following.append(previous[i + 1] + 1.0 / diff)
        previous, current = current, following
        if column % 2 == 0:
            best = current[-1]
    return best


def _panel_series(
    f: VectorFunction, boundary: Callable[[int], float], cfg: OracleConfig
) -> OracleResult:
    pieces: list[float] = []
    partial_sums: list[float] = []
    estimates: list[float] = []
    window = cfg.tail_periods | 1
    for k in range(cfg.max_half_periods):
        total = math.fsum(pieces)
        piece = adaptive_integrate(
            f, boundary(k), boundary(k + 1), cfg, abs_tol=0.1 * cfg.rel_tol * abs(total)
        )
        pieces.append(piece)
        total = math.fsum(pieces)
        partial_sums.append(total)

        negligible = [abs(q) <= 0.1 * cfg.rel_tol * abs(total) for q in pieces[-2:]]
        if len(pieces) >= 2 and all(negligible):
            return OracleResult(value=total, half_periods=k + 1, accelerated=False)

        if len(partial_sums) >= window:
            estimates.append(wynn_epsilon(partial_sums[-window:]))
            recent = estimates[-STABLE_ESTIMATES:]
            if len(recent) == STABLE_ESTIMATES and max(recent) - min(recent) <= (
                cfg.rel_tol * abs(recent[-1])
            ):
                logger.debug("tail accelerated after %d half-periods", k + 1)
                return OracleResult(value=recent[-1], half_periods=k + 1, accelerated=True)

    raise OracleAccuracyError(
        f"panel series not converged after {cfg.max_half_periods} half-periods",
        best_estimate=estimates[-1] if estimates else math.fsum(pieces),
    )


def oracle_sine_integral(f: VectorFunction, v: float, cfg: OracleConfig) -> OracleResult:
    """Integral of f over (0, inf) split at the zeros n pi / v of sin(v x)."""
    period = math.pi / v
    return _panel_series(f, lambda k: k * period, cfg)


def oracle_I_s(p: IntegralParams, cfg: OracleConfig) -> float:
    """I(s) from the S-transformed sine integrand, scaled by v^-(lam+1)."""
    v = oscillation_frequency(p)
    result = oracle_sine_integral(sine_integrand(s_transform(p), p), v, cfg)
    logger.debug(
        "oracle I(s): %d half-periods, accelerated=%s", result.half_periods, result.accelerated
    )
    return result.value / v ** (p.lam + 1)


def oracle_original_I_s(p: IntegralParams, cfg: OracleConfig) -> float:
    """
    I(s) from the spherical Bessel integrand itself.

    Panels end at the asymptotic zeros (n + lam/2) pi / v of j_lam(v x).
    """
    v = oscillation_frequency(p)

    def boundary(k: int) -> float:
        return 0.0 if k == 0 else (k + 0.5 * p.lam) * math.pi / v

    result = _panel_series(original_integrand(p), boundary, cfg)
    return result.value
