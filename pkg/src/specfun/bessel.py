"""
Reduced Bessel functions k^_{n+1/2} and spherical Bessel functions j_l.

Both come in a scalar form (exact inputs, used for documentation-level checks)
and an array form used by the integrand evaluators.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.specfun.exceptions import SpecialFunctionDomainError
from src.specfun.schemas import HalfOddOrder

# exp(-z) underflows to zero beyond this argument
UNDERFLOW_ARGUMENT = 745.0

# below this |x| the power series of j_l is used
SERIES_CUTOFF = 1e-2


@lru_cache(maxsize=128)
def _reduced_bessel_coefficients(n: int) -> tuple[float, ...]:
    """Coefficients of z^n, z^(n-1), ..., z^0 in e^z k^_{n+1/2}(z)."""
    return tuple(
        math.factorial(n + j) / (math.factorial(j) * math.factorial(n - j) * 2**j)
        for j in range(n + 1)
    )


def reduced_bessel_array(order: HalfOddOrder, z: ArrayLike) -> NDArray[np.float64]:
    """
    Vectorised k^_nu(z) for z > 0.

    Negative orders use k^_{-nu}(z) = z^(-2nu) k^_nu(z), which follows from
    K_{-nu} = K_nu.
    """
    z = np.asarray(z, dtype=np.float64)
    if np.any(z <= 0.0):
        raise SpecialFunctionDomainError("reduced Bessel function needs z > 0")

    n = order.n
    poly = np.polyval(_reduced_bessel_coefficients(n), z)
    with np.errstate(under="ignore", over="ignore"):
        values = np.where(z > UNDERFLOW_ARGUMENT, 0.0, np.exp(-z) * poly)
        if order.is_negative:
            values = values / z ** (2 * n + 1)
    return np.asarray(values, dtype=np.float64)


def reduced_bessel(order: HalfOddOrder, z: float) -> float:
    """k^_nu(z) = sqrt(2/pi) z^nu K_nu(z) for half-odd nu and z > 0."""
    if z <= 0.0:
        raise SpecialFunctionDomainError(
            f"reduced Bessel function needs z > 0, got {z!r}"
        )
    return float(reduced_bessel_array(order, np.array([z]))[0])


def _spherical_bessel_series(lam: int, x: float) -> float:
    # x^l sum_k (-x^2/2)^k / (k! (2l+2k+1)!!)
    term = x**lam / math.prod(range(2 * lam + 1, 0, -2))
    total = term
    for k in range(1, 6):
        term *= -x * x / (2 * k * (2 * lam + 2 * k + 1))
        total += term
    return total


def _spherical_bessel_upward(lam: int, x: float) -> float:
    j_prev = math.sin(x) / x
    if lam == 0:
        return j_prev
    j_curr = math.sin(x) / (x * x) - math.cos(x) / x
    for ell in range(1, lam):
        j_prev, j_curr = j_curr, (2 * ell + 1) / x * j_curr - j_prev
    return j_curr


def _spherical_bessel_downward(lam: int, x: float) -> float:
    """Miller recurrence from l = 2 lam + 32."""
    start = 2 * lam + 32
    j_next, j_curr = 0.0, 1e-300
    j_lam = 0.0
    for ell in range(start, 0, -1):
        j_prev = (2 * ell + 1) / x * j_curr - j_next
        j_next, j_curr = j_curr, j_prev
        if ell - 1 == lam:
            j_lam = j_curr
        if abs(j_curr) > 1e200:
            j_next *= 1e-200
            j_curr *= 1e-200
            j_lam *= 1e-200
    # normalise on whichever of j_0, j_1 is further from a zero
    j0 = math.sin(x) / x
    j1 = math.sin(x) / (x * x) - math.cos(x) / x
    if abs(j0) >= abs(j1):
        return j_lam * j0 / j_curr
    return j_lam * j1 / j_next


def spherical_bessel(lam: int, x: float) -> float:
    """Spherical Bessel function j_lam(x)."""
    if lam < 0:
        raise SpecialFunctionDomainError(f"spherical Bessel order must be >= 0, got {lam}")
    if x < 0.0:
        return (-1) ** lam * spherical_bessel(lam, -x)
    if x == 0.0:
        return 1.0 if lam == 0 else 0.0
    if x < SERIES_CUTOFF:
        return _spherical_bessel_series(lam, x)
    if x >= lam:
        return _spherical_bessel_upward(lam, x)
    return _spherical_bessel_downward(lam, x)


def spherical_bessel_array(lam: int, x: ArrayLike) -> NDArray[np.float64]:
    x = np.asarray(x, dtype=np.float64)
    flat = [spherical_bessel(lam, float(value)) for value in x.ravel()]
    return np.asarray(flat, dtype=np.float64).reshape(x.shape)
