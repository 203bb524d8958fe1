"""
Trapezoidal summation of DE-transformed sine integrals.

With x = (M/v) phi(t) and h = pi / M the nodes (M/v) phi(nh) approach the zeros
n pi / v of sin(v x) double exponentially as n -> +inf, so the summand decays at
both ends. The sum is (M/v) h sum_n f(x_n) phi'(nh).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.dequad.constants import ROUNDOFF_ULPS, TINY
from src.dequad.exceptions import QuadratureEvaluationError, TruncationError
from src.dequad.schemas import DEConfig, QuadratureResult
from src.dequad.transforms import Transform, transform_pair
from src.sintegrand.schemas import IntegralParams
from src.sintegrand.service import oscillation_frequency, s_transform, sine_integrand

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
SineIntegrand = Callable[[FloatArray], FloatArray]
# weighted terms, integrand values and abscissae at a block of indices
NodeEvaluator = Callable[[NDArray[np.int64]], tuple[FloatArray, FloatArray, FloatArray]]


def initial_M(eps0: float, A: float) -> float:
    """M1 = (-pi / A) ln sqrt(eps0)."""
    if not 0.0 < eps0 <= 1.0:
        raise ValueError(f"eps0 must be in (0, 1], got {eps0!r}")
    if A <= 0.0:
        raise ValueError(f"A must be positive, got {A!r}")
    return -math.pi / A * math.log(math.sqrt(eps0))


def error_model(M: float, A: float) -> float:
    """Predicted relative error exp(-A / h) of the sum at M, with h = pi / M."""
    return math.exp(-A * M / math.pi)


def next_M(reference_M: float, reference_error: float, cfg: DEConfig) -> float:
    """
    The M at which the error model predicts eps0, given the relative error of the
    sum at reference_M. From M1 with its modelled error this is 2 M1.
    """
    return reference_M + math.pi / cfg.A * math.log(reference_error / cfg.eps0)


def second_M(cfg: DEConfig) -> float:
    """M2 = 2 M1, where the error model predicts eps0."""
    m1 = initial_M(cfg.eps0, cfg.A)
    return next_M(m1, error_model(m1, cfg.A), cfg)


def m_schedule(cfg: DEConfig) -> list[float]:
    """The opening values M1 and 2 M1; later values depend on the observed changes."""
    return [initial_M(cfg.eps0, cfg.A), second_M(cfg)][: cfg.max_attempts]


def _node_evaluator(
    f: SineIntegrand,
    phi: Transform,
    dphi: Transform,
    M: float,
    v: float,
    h: float,
    theta: float,
) -> NodeEvaluator:
    def evaluate(indices: NDArray[np.int64]) -> tuple[FloatArray, FloatArray, FloatArray]:
        t = indices * h + theta / M
        x = M / v * phi(t)
        integrand = np.asarray(f(x), dtype=np.float64)
        with np.errstate(over="ignore", invalid="ignore"):
            values = integrand * dphi(t)
        return np.asarray(values, dtype=np.float64), integrand, x

    return evaluate


def _scan(
    evaluate: NodeEvaluator,
    start: int,
    step: int,
    cfg: DEConfig,
    running: float,
    keep_first: bool,
) -> tuple[list[float], list[float], int]:
    """
    Terms and abscissae from `start` in direction `step` until trunc_consecutive
    successive nodes have |f(x) sin(v x)| below eps0 |running sum|. The negligible
    run is kept and its last index is the bound.

    Testing the integrand rather than the weighted term keeps the lower tail going
    while f(x) sin(v x) stays finite as x -> 0, up to where the nodes underflow.
    """
    accepted: list[float] = []
    abscissae: list[float] = []
    pending = 0
    n = start
    while True:
        indices = np.arange(n, n + step * cfg.block_size, step, dtype=np.int64)
        values, integrand, xs = evaluate(indices)
        for index, value, g, x in zip(indices, values, integrand, xs, strict=True):
            if abs(int(index)) > cfg.max_index:
                raise TruncationError(
                    f"trapezoidal terms still significant at |n| = {cfg.max_index}",
                    best_estimate=running,
                )
            if not (math.isfinite(value) and math.isfinite(g)):
                raise QuadratureEvaluationError(int(index), float(x))
            threshold = cfg.eps0 * abs(running) if running != 0.0 else TINY
            first = keep_first and not accepted
            accepted.append(float(value))
            abscissae.append(float(x))
            running += float(value)
            if abs(g) < threshold and not first:
                pending += 1
                if pending >= cfg.trunc_consecutive:
                    return accepted, abscissae, int(index)
            else:
                pending = 0
        n += step * cfg.block_size


def _roundoff(terms: list[float], xs: list[float], v: float, total: float) -> float:
    """
    Relative rounding level of a sum of `terms` equal to `total`. Each term carries a
    few ulps of its own size, scaled by the sine argument v x whose absolute error
    grows with it.
    """
    if total == 0.0:
        return 0.0
    weights = np.abs(terms) * (1.0 + v * np.abs(xs))
    eps = float(np.finfo(np.float64).eps)
    return ROUNDOFF_ULPS * eps * math.fsum(weights.tolist()) / abs(total)


def de_sum(
    f: SineIntegrand,
    v: float,
    M: float,
    cfg: DEConfig,
    theta: float = 0.0,
) -> QuadratureResult:
    """
    (M/v) h sum_n f(x_n) phi'(t_n) with t_n = nh + theta/M, x_n = (M/v) phi(t_n)
    and h = pi / M.

    Scans upward from n = 0 and then downward from n = -1, stopping each direction
    on trunc_consecutive negligible nodes.
    """
    if v <= 0.0 or M <= 0.0:
        raise ValueError(f"v and M must be positive, got v={v!r}, M={M!r}")
    h = math.pi / M
    phi, dphi = transform_pair(cfg, M)
    evaluate = _node_evaluator(f, phi, dphi, M, v, h, theta)

    upper, upper_x, n_plus = _scan(evaluate, 0, 1, cfg, 0.0, keep_first=True)
    lower, lower_x, n_minus = _scan(
        evaluate, -1, -1, cfg, math.fsum(upper), keep_first=False
    )

    terms = [*reversed(lower), *upper]
    xs = [*reversed(lower_x), *upper_x]
    total = math.fsum(terms)
    value = M / v * h * total
    logger.debug(
        "%s sum at M=%.6g: h=%.6g, N-=%d, N+=%d, value=%.17g",
        cfg.transform,
        M,
        h,
        n_minus,
        n_plus,
        value,
    )
    return QuadratureResult(
        value=value,
        M=M,
        h=h,
        N_minus=n_minus,
        N_plus=n_plus,
        n_points=n_plus - n_minus + 1,
        roundoff=_roundoff(terms, xs, v, total),
        transform=cfg.transform,
    )


def de_sum_bounded(
    f: SineIntegrand,
    v: float,
    M: float,
    cfg: DEConfig,
    n_lo: int,
    n_hi: int,
    theta: float = 0.0,
) -> QuadratureResult:
    """The trapezoidal sum over the fixed index range n_lo..n_hi."""
    if not n_lo <= 0 <= n_hi:
        raise ValueError(f"need n_lo <= 0 <= n_hi, got {n_lo}..{n_hi}")
    if v <= 0.0 or M <= 0.0:
        raise ValueError(f"v and M must be positive, got v={v!r}, M={M!r}")
    h = math.pi / M
    phi, dphi = transform_pair(cfg, M)
    indices = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    values, _, xs = _node_evaluator(f, phi, dphi, M, v, h, theta)(indices)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise QuadratureEvaluationError(int(indices[bad[0]]), float(xs[bad[0]]))
    terms = values.tolist()
    total = math.fsum(terms)
    return QuadratureResult(
        value=M / v * h * total,
        M=M,
        h=h,
        N_minus=n_lo,
        N_plus=n_hi,
        n_points=n_hi - n_lo + 1,
        roundoff=_roundoff(terms, xs.tolist(), v, total),
        transform=cfg.transform,
    )


def point_scan(
    f: SineIntegrand, v: float, cfg: DEConfig, start_upper: int = 7
) -> list[QuadratureResult]:
    """
    Sums at M2 over index ranges growing by one on each side until they reach the
    bounds N-..N+ that de_sum finds at M2.

    The first range keeps the asymmetry of N-..N+: both ends are moved in by the
    same count so that the upper end sits at `start_upper`.
    """
    M = second_M(cfg)
    full = de_sum(f, v, M, cfg)
    offset = max(0, min(full.N_plus - start_upper, -full.N_minus))
    n_lo, n_hi = full.N_minus + offset, full.N_plus - offset
    results = [de_sum_bounded(f, v, M, cfg, n_lo, n_hi)]
    while n_lo > full.N_minus:
        n_lo, n_hi = n_lo - 1, n_hi + 1
        results.append(de_sum_bounded(f, v, M, cfg, n_lo, n_hi))
    logger.debug(
        "%s point scan at M=%.6g: %d..%d points",
        cfg.transform,
        M,
        results[0].n_points,
        results[-1].n_points,
    )
    return results


def _relative_change(current: float, previous: float) -> float:
    if current != 0.0:
        return abs(current - previous) / abs(current)
    # zero estimate: fall back to the absolute difference
    return abs(previous)


def integrate(f: SineIntegrand, v: float, cfg: DEConfig) -> QuadratureResult:
    """
    Sum at M1, M2 = 2 M1, then at values of M chosen from the observed changes.

    The change between two successive sums estimates the error of the earlier one.
    The error model exp(-A M / pi) carries that estimate to the later sum, which is
    accepted once the carried estimate is at most eps0 or the change itself is at
    the rounding level of the sums. The next M is where the model predicts eps0.
    The sum at M1 only serves as the first reference, so a converged result has
    n_M >= 2. When max_attempts is exhausted the last sum is returned unconverged.
    """
    M = initial_M(cfg.eps0, cfg.A)
    result = de_sum(f, v, M, cfg)
    reference_M, reference_error = M, error_model(M, cfg.A)
    for attempt in range(2, cfg.max_attempts + 1):
        previous = result
        M = next_M(reference_M, reference_error, cfg)
        current = de_sum(f, v, M, cfg)
        change = _relative_change(current.value, previous.value)
        estimate = change * error_model(M - previous.M, cfg.A)
        result = current.model_copy(
            update={
                "n_M": attempt,
                "est_rel_error": estimate,
                "rel_change": change,
                "roundoff": max(current.roundoff, previous.roundoff),
            }
        )
        logger.debug(
            "%s attempt %d at M=%.6g: change %.3e, estimate %.3e, roundoff %.3e",
            cfg.transform,
            attempt,
            M,
            change,
            estimate,
            result.roundoff,
        )
        if result.converged(cfg.eps0):
            return result
        reference_M, reference_error = previous.M, change
    logger.warning(
        "%s schedule did not reach eps0=%.1e after %d values of M (last estimate %.3e)",
        cfg.transform,
        cfg.eps0,
        result.n_M,
        result.est_rel_error,
    )
    return result


def integrate_I_s(p: IntegralParams, cfg: DEConfig) -> QuadratureResult:
    """I(s) = v^-(lam+1) times the DE integral of f(x) sin(v x) over (0, inf)."""
    ts = s_transform(p)
    v = oscillation_frequency(p)
    result = integrate(sine_integrand(ts, p), v, cfg)
    return result.model_copy(update={"value": result.value / v ** (p.lam + 1)})


def transformed_integrand(
    p: IntegralParams, M: float, cfg: DEConfig, t: ArrayLike
) -> FloatArray:
    """f(x) sin(v x) dx/dt at x = (M/v) phi(t), the integrand in the t variable."""
    t = np.asarray(t, dtype=np.float64)
    v = oscillation_frequency(p)
    f = sine_integrand(s_transform(p), p)
    phi, dphi = transform_pair(cfg, M)
    return np.asarray(f(M / v * phi(t)) * (M / v) * dphi(t), dtype=np.float64)
