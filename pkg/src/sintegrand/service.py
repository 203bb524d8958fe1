"""
The S-transformed integrand.

I(s) = integral_0^inf x^n_x k^_nu(R2 gamma) / gamma^n_gamma j_lam(v x) dx is rewritten as

    I(s) = v^-(lam+1) integral_0^inf f(x) sin(v x) dx,
    f(x) = (d/(x dx))^lam [x^(n_x+lam-1) k^_nu(R2 gamma) / gamma^n_gamma].

f is kept as an exact RadialTermSum: the family c x^a k^_mu(R2 gamma) / gamma^b is
closed under d/(x dx) because d gamma/dx = s(1-s) x / gamma and
d/dz k^_mu(z) = -z k^_(mu-1)(z).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from src.sintegrand.exceptions import DegenerateFrequencyError, IntegrandDomainError
from src.sintegrand.schemas import IntegralParams, RadialTerm, RadialTermSum
from src.specfun.bessel import reduced_bessel_array, spherical_bessel_array
from src.specfun.schemas import HalfOddOrder

logger = logging.getLogger(__name__)

# v below this fraction of the geometry scale is treated as zero
DEGENERATE_FREQUENCY = 1e-14

Integrand = Callable[[NDArray[np.float64]], NDArray[np.float64]]


def gamma_of(p: IntegralParams, x: float) -> float:
    """gamma(s, x) = sqrt((1-s) zeta1^2 + s zeta2^2 + s(1-s) x^2)."""
    if x < 0.0:
        raise IntegrandDomainError(f"gamma(s, x) needs x >= 0, got {x!r}")
    return math.sqrt(
        (1.0 - p.s) * p.zeta1**2 + p.s * p.zeta2**2 + p.s_one_minus_s * x * x
    )


def _gamma_array(p: IntegralParams, x: NDArray[np.float64]) -> NDArray[np.float64]:
    base = (1.0 - p.s) * p.zeta1**2 + p.s * p.zeta2**2
    return np.sqrt(base + p.s_one_minus_s * x * x)


def oscillation_frequency(p: IntegralParams) -> float:
    """v = |(1-s) R2 - R1| for collinear centres, or the supplied 3-vector norm."""
    if p.frequency is not None:
        v = p.frequency
    else:
        v = abs((1.0 - p.s) * p.R2 - p.R1)
    scale = max(1.0, p.R1, p.R2)
    if v <= DEGENERATE_FREQUENCY * scale:
        raise DegenerateFrequencyError(
            f"oscillation frequency vanishes at s={p.s} (R1={p.R1}, R2={p.R2}); "
            "the sine factor annihilates the integral"
        )
    return v


def initial_term(p: IntegralParams) -> RadialTermSum:
    """x^(n_x+lam-1) k^_nu(R2 gamma) / gamma^n_gamma, before any d/(x dx)."""
    return RadialTermSum(
        terms=(
            RadialTerm(
                coeff=1.0,
                x_power=p.n_x + p.lam - 1,
                k_order=p.nu,
                gamma_power=p.n_gamma,
            ),
        )
    )


def _merge(contributions: list[tuple[int, HalfOddOrder, int, float]]) -> RadialTermSum:
    merged: dict[tuple[int, int, int], float] = {}
    for a, mu, b, c in contributions:
        key = (a, mu.twice_value, b)
        merged[key] = merged.get(key, 0.0) + c
    for key, c in merged.items():
        if not math.isfinite(c):
            raise IntegrandDomainError(f"non-finite coefficient in term {key}")
    return RadialTermSum(
        terms=tuple(
            RadialTerm(
                coeff=c,
                x_power=a,
                k_order=HalfOddOrder(twice_value=twice_mu),
                gamma_power=b,
            )
            for (a, twice_mu, b), c in sorted(merged.items())
            if c != 0.0
        )
    )


def apply_hemiderivative(ts: RadialTermSum, p: IntegralParams) -> RadialTermSum:
    """
    One application of d/(x dx).

    c x^a k^_mu / gamma^b  ->  a c x^(a-2) k^_mu / gamma^b
                              - c s(1-s) R2^2 x^a k^_(mu-1) / gamma^b
                              - b c s(1-s) x^a k^_mu / gamma^(b+2)
    """
    q = p.s_one_minus_s
    contributions: list[tuple[int, HalfOddOrder, int, float]] = []
    for term in ts.terms:
        a, b, c = term.x_power, term.gamma_power, term.coeff
        mu = term.k_order
        contributions.append((a - 2, mu, b, a * c))
        contributions.append((a, mu.lowered(), b, -c * q * p.R2**2))
        contributions.append((a, mu, b + 2, -b * c * q))
    return _merge(contributions)


def s_transform(p: IntegralParams) -> RadialTermSum:
    """f(x) as a RadialTermSum: d/(x dx) applied lam times to initial_term(p)."""
    ts = initial_term(p)
    for _ in range(p.lam):
        ts = apply_hemiderivative(ts, p)
    logger.debug(
        "S transform with lam=%d, nu=%s: %d terms", p.lam, p.nu, len(ts.terms)
    )
    return ts


@dataclass(frozen=True)
class CompiledTermSum:
    """Vectorised evaluator of a RadialTermSum for fixed IntegralParams."""

    params: IntegralParams
    orders: tuple[HalfOddOrder, ...]
    order_index: NDArray[np.intp]
    coeffs: NDArray[np.float64]
    x_powers: NDArray[np.float64]
    gamma_powers: NDArray[np.float64]

    def __call__(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=np.float64)
        if self.coeffs.size == 0:
            return np.zeros_like(x)
        gamma = _gamma_array(self.params, x)
        z = self.params.R2 * gamma
        k_values = np.stack([reduced_bessel_array(order, z) for order in self.orders])
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            terms = (
                self.coeffs[:, None]
                * np.power(x[None, :], self.x_powers[:, None])
                * k_values[self.order_index]
                * np.power(gamma[None, :], -self.gamma_powers[:, None])
            )
        return np.asarray(terms.sum(axis=0), dtype=np.float64)


def compile_term_sum(ts: RadialTermSum, p: IntegralParams) -> CompiledTermSum:
    orders = tuple(sorted({t.k_order for t in ts.terms}, key=lambda o: o.twice_value))
    position = {order: i for i, order in enumerate(orders)}
    return CompiledTermSum(
        params=p,
        orders=orders,
        order_index=np.array([position[t.k_order] for t in ts.terms], dtype=np.intp),
        coeffs=np.array([t.coeff for t in ts.terms], dtype=np.float64),
        x_powers=np.array([t.x_power for t in ts.terms], dtype=np.float64),
        gamma_powers=np.array([t.gamma_power for t in ts.terms], dtype=np.float64),
    )


def eval_f(ts: RadialTermSum, p: IntegralParams, x: float) -> float:
    """f(x) = sum of c x^a k^_mu(R2 gamma) / gamma^b, for x > 0."""
    if x <= 0.0:
        raise IntegrandDomainError(f"f(x) needs x > 0, got {x!r}")
    return float(compile_term_sum(ts, p)(np.array([x]))[0])


def sine_integrand(ts: RadialTermSum, p: IntegralParams) -> Integrand:
    """
    x -> f(x) sin(v x), vectorised.

    Points below the smallest normal double contribute 0: they only arise where the
    DE nodes have underflowed, and x^-1 terms of f would overflow there.
    """
    f = compile_term_sum(ts, p)
    v = oscillation_frequency(p)
    tiny = np.finfo(np.float64).tiny

    def integrand(x: NDArray[np.float64]) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=np.float64)
        positive = x >= tiny
        safe_x = np.where(positive, x, 1.0)
        return np.where(positive, f(safe_x) * np.sin(v * safe_x), 0.0)

    return integrand


def original_integrand(p: IntegralParams) -> Integrand:
    """Vectorised x -> x^n_x k^_nu(R2 gamma) / gamma^n_gamma j_lam(v x)."""
    v = oscillation_frequency(p)

    def integrand(x: NDArray[np.float64]) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=np.float64)
        gamma = _gamma_array(p, x)
        radial = reduced_bessel_array(p.nu, p.R2 * gamma) / gamma**p.n_gamma
        return np.asarray(
            x**p.n_x * radial * spherical_bessel_array(p.lam, v * x), dtype=np.float64
        )

    return integrand


def eval_original_integrand(p: IntegralParams, x: float) -> float:
    """The integrand of I(s) before the S transformation, for x >= 0."""
    if x < 0.0:
        raise IntegrandDomainError(f"the integrand of I(s) needs x >= 0, got {x!r}")
    return float(original_integrand(p)(np.array([x]))[0])
