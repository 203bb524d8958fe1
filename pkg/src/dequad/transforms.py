"""
Double exponential transformations for semi-infinite sine integrals.

Both transformations have the form phi(t) = t / (1 - exp(-u(t))) with u increasing
and u(0) = 0:

    phi1: u(t) = K sinh t
    phi2: u(t) = 2t + alpha (1 - e^-t) + beta (e^t - 1)

phi(t) tends to 0 double exponentially as t -> -inf and to t double exponentially
as t -> +inf. The removable singularity at t = 0 is handled by a Taylor series
built from the Taylor coefficients of u.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P
from numpy.typing import ArrayLike, NDArray

from src.dequad.constants import BETA, TAYLOR_DEGREE, TAYLOR_RADIUS
from src.dequad.schemas import DEConfig, Phi2Constants

FloatArray = NDArray[np.float64]
Transform = Callable[[FloatArray], FloatArray]


def _exp_series(w: list[float], degree: int) -> list[float]:
    # exp(w(t)) for w(0) = 0: E_n = (1/n) sum_k k w_k E_(n-k)
    e = [1.0] + [0.0] * degree
    for n in range(1, degree + 1):
        e[n] = sum(k * w[k] * e[n - k] for k in range(1, n + 1)) / n
    return e


def _reciprocal_series(q: list[float]) -> list[float]:
    r = [1.0 / q[0]] + [0.0] * (len(q) - 1)
    for n in range(1, len(q)):
        r[n] = -sum(q[k] * r[n - k] for k in range(1, n + 1)) / q[0]
    return r


def ratio_series(u: list[float]) -> list[float]:
    """
    Taylor coefficients of t / (1 - exp(-u(t))) given those of u.

    u[0] must be 0 and u[1] nonzero. Returns len(u) - 1 coefficients.
    """
    if u[0] != 0.0 or u[1] == 0.0:
        raise ValueError("u must vanish to first order exactly at t = 0")
    degree = len(u) - 1
    e = _exp_series([-c for c in u], degree)
    # (1 - E) / t
    q = [-c for c in e[1:]]
    return _reciprocal_series(q)


def _phi1_u_series(K: float, degree: int) -> list[float]:
    return [K / math.factorial(k) if k % 2 == 1 else 0.0 for k in range(degree + 1)]


def _phi2_u_series(alpha: float, beta: float, degree: int) -> list[float]:
    coeffs = [0.0]
    for k in range(1, degree + 1):
        c = (alpha * (-1) ** (k + 1) + beta) / math.factorial(k)
        coeffs.append(c + (2.0 if k == 1 else 0.0))
    return coeffs


@lru_cache(maxsize=256)
def _phi1_taylor(K: float) -> tuple[FloatArray, FloatArray]:
    coeffs = np.array(ratio_series(_phi1_u_series(K, TAYLOR_DEGREE + 2)))
    return coeffs[: TAYLOR_DEGREE + 1], P.polyder(coeffs)[: TAYLOR_DEGREE + 1]


@lru_cache(maxsize=256)
def _phi2_taylor(alpha: float, beta: float) -> tuple[FloatArray, FloatArray]:
    coeffs = np.array(ratio_series(_phi2_u_series(alpha, beta, TAYLOR_DEGREE + 2)))
    return coeffs[: TAYLOR_DEGREE + 1], P.polyder(coeffs)[: TAYLOR_DEGREE + 1]


def _ratio(t: FloatArray, u: FloatArray, series: FloatArray) -> FloatArray:
    small = np.abs(t) < TAYLOR_RADIUS
    a = np.abs(u)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        e = np.exp(-a)
        dm = -np.expm1(-a)
        g = np.where(u >= 0.0, 1.0 / dm, -e / dm)
        direct = t * g
    return np.where(small, P.polyval(t, series), direct)


def _ratio_prime(
    t: FloatArray, u: FloatArray, du: FloatArray, series: FloatArray
) -> FloatArray:
    # d/dt [t / (1 - e^-u)] = g - t u' e^-|u| / (1 - e^-|u|)^2
    small = np.abs(t) < TAYLOR_RADIUS
    a = np.abs(u)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        e = np.exp(-a)
        dm = -np.expm1(-a)
        g = np.where(u >= 0.0, 1.0 / dm, -e / dm)
        correction = np.where(e > 0.0, t * du * e / (dm * dm), 0.0)
        direct = g - correction
    return np.where(small, P.polyval(t, series), direct)


def phi1(t: ArrayLike, K: float) -> FloatArray:
    """t / (1 - exp(-K sinh t)), equal to 1/K at t = 0."""
    t = np.asarray(t, dtype=np.float64)
    with np.errstate(over="ignore"):
        u = K * np.sinh(t)
    return _ratio(t, u, _phi1_taylor(K)[0])


def phi1_prime(t: ArrayLike, K: float) -> FloatArray:
    t = np.asarray(t, dtype=np.float64)
    with np.errstate(over="ignore"):
        u = K * np.sinh(t)
        du = K * np.cosh(t)
    return _ratio_prime(t, u, du, _phi1_taylor(K)[1])


def phi2_constants(M: float) -> Phi2Constants:
    """beta = 1/4, alpha = beta / sqrt(1 + M log(1 + M) / (4 pi))."""
    if M <= 0.0:
        raise ValueError(f"M must be positive, got {M!r}")
    alpha = BETA / math.sqrt(1.0 + M * math.log1p(M) / (4.0 * math.pi))
    return Phi2Constants(alpha=alpha, beta=BETA)


def _phi2_u(t: FloatArray, c: Phi2Constants) -> tuple[FloatArray, FloatArray]:
    with np.errstate(over="ignore", invalid="ignore"):
        u = 2.0 * t - c.alpha * np.expm1(-t) + c.beta * np.expm1(t)
        du = 2.0 + c.alpha * np.exp(-t) + c.beta * np.exp(t)
    return u, du


def phi2(t: ArrayLike, c: Phi2Constants) -> FloatArray:
    """t / (1 - exp(-2t - alpha (1 - e^-t) - beta (e^t - 1))), 1/(2+alpha+beta) at 0."""
    t = np.asarray(t, dtype=np.float64)
    u, _ = _phi2_u(t, c)
    return _ratio(t, u, _phi2_taylor(c.alpha, c.beta)[0])


def phi2_prime(t: ArrayLike, c: Phi2Constants) -> FloatArray:
    t = np.asarray(t, dtype=np.float64)
    u, du = _phi2_u(t, c)
    return _ratio_prime(t, u, du, _phi2_taylor(c.alpha, c.beta)[1])


def transform_pair(cfg: DEConfig, M: float) -> tuple[Transform, Transform]:
    """(phi, phi') selected by the configuration; phi2's constants depend on M."""
    if cfg.transform == "phi1":
        K = cfg.K
        return (lambda t: phi1(t, K)), (lambda t: phi1_prime(t, K))
    c = phi2_constants(M)
    return (lambda t: phi2(t, c)), (lambda t: phi2_prime(t, c))
