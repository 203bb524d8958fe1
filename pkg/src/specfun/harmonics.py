import cmath
import math

from src.specfun.exceptions import SpecialFunctionDomainError


def assoc_legendre(l: int, m: int, x: float) -> float:  # noqa: E741
    """
    Associated Legendre function P_l^m(x), 0 <= m <= l, without the (-1)^m phase.

    The Condon-Shortley sign enters spherical_harmonic through i^(m+|m|).
    """
    if not 0 <= m <= l:
        raise SpecialFunctionDomainError(f"assoc_legendre needs 0 <= m <= l, got l={l}, m={m}")
    if abs(x) > 1.0:
        raise SpecialFunctionDomainError(f"assoc_legendre needs |x| <= 1, got {x!r}")

    # P_m^m = (2m-1)!! (1-x^2)^(m/2)
    p_mm = math.prod(range(2 * m - 1, 0, -2)) * (1.0 - x * x) ** (m / 2)
    if l == m:
        return p_mm
    p_prev, p_curr = p_mm, x * (2 * m + 1) * p_mm
    for ell in range(m + 2, l + 1):
        p_prev, p_curr = (
            p_curr,
            ((2 * ell - 1) * x * p_curr - (ell + m - 1) * p_prev) / (ell - m),
        )
    return p_curr


def spherical_harmonic(l: int, m: int, theta: float, phi: float) -> complex:  # noqa: E741
    """Y_l^m(theta, phi) = i^(m+|m|) N_lm P_l^|m|(cos theta) e^(i m phi)."""
    if l < 0 or abs(m) > l:
        raise SpecialFunctionDomainError(f"spherical_harmonic needs |m| <= l, got l={l}, m={m}")
    am = abs(m)
    norm = math.sqrt(
        (2 * l + 1) * math.factorial(l - am) / (4.0 * math.pi * math.factorial(l + am))
    )
    # i^(m+|m|) is 1 for m <= 0 and (-1)^m for m > 0
    phase = (-1) ** m if m > 0 else 1
    x = min(1.0, max(-1.0, math.cos(theta)))
    return phase * norm * assoc_legendre(l, am, x) * cmath.exp(1j * m * phi)
