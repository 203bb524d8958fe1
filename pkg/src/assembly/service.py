"""
Three-centre nuclear attraction integrals over B functions.

The Fourier-transform expression is a finite set of nested angular sums, each term
carrying an outer integral over s in (0, 1) whose kernel is the semi-infinite
spherical Bessel integral I(s). Terms sharing (nu, n_gamma, n_x, lam) reuse the
same I(s) values at each Gauss-Legendre node.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from numpy.polynomial.legendre import leggauss

from src.assembly.exceptions import DegenerateDirectionError, IndexRangeError
from src.assembly.schemas import (
    SQuadConfig,
    SummandIndices,
    ThreeCentreParams,
    ThreeCentreResult,
    Vector3,
)
from src.dequad.schemas import DEConfig
from src.dequad.service import integrate_I_s
from src.sintegrand.exceptions import DegenerateFrequencyError
from src.sintegrand.schemas import IntegralParams
from src.sintegrand.service import DEGENERATE_FREQUENCY
from src.specfun.combinatorics import binomial, double_factorial, factorial
from src.specfun.gaunt import gaunt, l_min
from src.specfun.harmonics import spherical_harmonic
from src.specfun.schemas import GauntKey, HalfOddOrder

logger = logging.getLogger(__name__)

# (n of nu = n + 1/2, n_gamma, n_x, lam, s)
InnerKey = tuple[int, int, int, int, float]


@dataclass(frozen=True)
class Summand:
    """An index tuple with its constant complex weight and the exponents of its s-integral."""

    indices: SummandIndices
    weight: complex
    nu_n: int
    n_gamma: int
    n_x: int
    mu: int
    s_power: int
    one_minus_s_power: int

    def inner_key(self, s: float) -> InnerKey:
        return (self.nu_n, self.n_gamma, self.n_x, self.indices.lam, s)


def spherical_angles(vec: Vector3) -> tuple[float, float]:
    """(theta, phi) of vec with theta in [0, pi] and phi in [0, 2 pi)."""
    x, y, z = vec
    r = math.hypot(x, y, z)
    if r == 0.0:
        raise DegenerateDirectionError("direction angles of the zero vector are undefined")
    theta = math.acos(min(1.0, max(-1.0, z / r)))
    phi = math.atan2(y, x) % (2.0 * math.pi)
    if phi >= 2.0 * math.pi:
        phi = 0.0
    return theta, phi


def frequency_vector(p3: ThreeCentreParams, s: float) -> Vector3:
    """v(s) = (1 - s) R2 - R1."""
    return (
        (1.0 - s) * p3.R2[0] - p3.R1[0],
        (1.0 - s) * p3.R2[1] - p3.R1[1],
        (1.0 - s) * p3.R2[2] - p3.R1[2],
    )


def _gaunt_or_zero(l1: int, m1: int, l2: int, m2: int, l3: int, m3: int) -> float:
    if abs(m1) > l1 or abs(m2) > l2 or abs(m3) > l3:
        return 0.0
    return gaunt(GauntKey(l1=l1, m1=m1, l2=l2, m2=m2, l3=l3, m3=m3))


def _prefactor(p3: ThreeCentreParams) -> float:
    n1, l1, n2, l2 = p3.n1, p3.l1, p3.n2, p3.l2
    numerator = (
        8.0
        * (4.0 * math.pi) ** 2
        * (-1) ** (l1 + l2)
        * double_factorial(2 * l1 + 1)
        * double_factorial(2 * l2 + 1)
        * factorial(n1 + l1 + n2 + l2 + 1)
        * p3.zeta1 ** (2 * n1 + l1 - 1)
        * p3.zeta2 ** (2 * n2 + l2 - 1)
    )
    return numerator / (factorial(n1 + l1) * factorial(n2 + l2))


def _orbital_factor(l: int, m: int, lp: int, mp: int) -> complex:  # noqa: E741
    """i^(l+l') (-1)^l' <l m|l' m'|l-l' m-m'> / ((2l'+1)!! (2(l-l')+1)!!)."""
    g = _gaunt_or_zero(l, m, lp, mp, l - lp, m - mp)
    if g == 0.0:
        return 0j
    return (
        1j ** (l + lp)
        * (-1) ** lp
        * g
        / (double_factorial(2 * lp + 1) * double_factorial(2 * (l - lp) + 1))
    )


def _check_indices(p3: ThreeCentreParams, idx: SummandIndices) -> int:
    """Assert the parity and bounds of one tuple; returns Delta l."""
    l_lo = l_min(idx.l1p, idx.l2p, idx.m1p, idx.m2p)
    if not l_lo <= idx.l <= idx.l1p + idx.l2p or (idx.l - l_lo) % 2:
        raise IndexRangeError(f"l={idx.l} outside {l_lo}..{idx.l1p + idx.l2p} step 2")
    a, b = p3.l1 - idx.l1p, p3.l2 - idx.l2p
    lam_lo = l_min(a, b, p3.m1 - idx.m1p, p3.m2 - idx.m2p)
    if not lam_lo <= idx.lam <= a + b or (idx.lam - lam_lo) % 2:
        raise IndexRangeError(f"lam={idx.lam} outside {lam_lo}..{a + b} step 2")
    if (idx.l1p + idx.l2p - idx.l) % 2:
        raise IndexRangeError(f"l1' + l2' - l is odd for {idx}")
    delta_l = (idx.l1p + idx.l2p - idx.l) // 2
    if not 0 <= idx.j <= delta_l:
        raise IndexRangeError(f"j={idx.j} outside 0..{delta_l}")
    return delta_l


def iter_summands(p3: ThreeCentreParams) -> Iterator[Summand]:
    """
    Every index tuple with a nonzero weight, in canonical order
    (l1', m1', l2', m2', l, lam, j).
    """
    n1, l1, m1, n2, l2, m2 = p3.n1, p3.l1, p3.m1, p3.n2, p3.l2, p3.m2
    prefactor = _prefactor(p3)
    theta_r2, phi_r2 = spherical_angles(p3.R2)
    big_n = n1 + n2 + l1 + l2

    for l1p in range(l1 + 1):
        for m1p in range(-l1p, l1p + 1):
            first = _orbital_factor(l1, m1, l1p, m1p)
            if first == 0:
                continue
            for l2p in range(l2 + 1):
                for m2p in range(-l2p, l2p + 1):
                    second = _orbital_factor(l2, m2, l2p, m2p)
                    if second == 0:
                        continue
                    mu = (m2 - m2p) - (m1 - m1p)
                    n_x = l1 - l1p + l2 - l2p
                    lam_lo = l_min(l1 - l1p, l2 - l2p, m1 - m1p, m2 - m2p)
                    for l in range(l_min(l1p, l2p, m1p, m2p), l1p + l2p + 1, 2):  # noqa: E741
                        g_l = _gaunt_or_zero(l2p, m2p, l1p, m1p, l, m2p - m1p)
                        if g_l == 0.0:
                            continue
                        radial = (
                            g_l
                            * p3.R2_norm**l
                            * spherical_harmonic(l, m2p - m1p, theta_r2, phi_r2)
                        )
                        for lam in range(lam_lo, n_x + 1, 2):
                            g_lam = _gaunt_or_zero(
                                l2 - l2p, m2 - m2p, l1 - l1p, m1 - m1p, lam, mu
                            )
                            if g_lam == 0.0:
                                continue
                            angular = prefactor * first * second * radial
                            angular *= (-1j) ** lam * g_lam
                            delta_l = (l1p + l2p - l) // 2
                            for j in range(delta_l + 1):
                                idx = SummandIndices(
                                    l1p=l1p, m1p=m1p, l2p=l2p, m2p=m2p, l=l, lam=lam, j=j
                                )
                                _check_indices(p3, idx)
                                radial_j = (
                                    binomial(delta_l, j)
                                    * (-1) ** j
                                    / (2.0 ** (big_n - j + 1) * factorial(big_n - j + 1))
                                )
                                yield Summand(
                                    indices=idx,
                                    weight=angular * radial_j,
                                    nu_n=big_n - l - j,
                                    n_gamma=2 * (n1 + l1 + n2 + l2) - (l1p + l2p) - l + 1,
                                    n_x=n_x,
                                    mu=mu,
                                    s_power=n2 + l2 + l1 - l1p,
                                    one_minus_s_power=n1 + l1 + l2 - l2p,
                                )


def _inner_params(
    p3: ThreeCentreParams, nu_n: int, n_gamma: int, n_x: int, lam: int, s: float
) -> IntegralParams:
    return IntegralParams(
        s=s,
        nu=HalfOddOrder.from_n(nu_n),
        n_gamma=n_gamma,
        n_x=n_x,
        lam=lam,
        R1=p3.R1_norm,
        zeta1=p3.zeta1,
        R2=p3.R2_norm,
        zeta2=p3.zeta2,
        frequency=math.hypot(*frequency_vector(p3, s)),
    )


def _inner_value(p3: ThreeCentreParams, key: InnerKey, de: DEConfig) -> float:
    nu_n, n_gamma, n_x, lam, s = key
    try:
        return integrate_I_s(_inner_params(p3, nu_n, n_gamma, n_x, lam, s), de).value
    except DegenerateFrequencyError:
        return 0.0


def inner_radial_integral(
    p3: ThreeCentreParams, idx: SummandIndices, s: float, de: DEConfig
) -> float:
    """I(s) for one index tuple; 0 where v(s) vanishes."""
    _check_indices(p3, idx)
    big_n = p3.n1 + p3.n2 + p3.l1 + p3.l2
    key: InnerKey = (
        big_n - idx.l - idx.j,
        2 * (p3.n1 + p3.l1 + p3.n2 + p3.l2) - (idx.l1p + idx.l2p) - idx.l + 1,
        p3.l1 - idx.l1p + p3.l2 - idx.l2p,
        idx.lam,
        s,
    )
    return _inner_value(p3, key, de)


def _degenerate(p3: ThreeCentreParams, v: Vector3) -> bool:
    scale = max(1.0, p3.R1_norm, p3.R2_norm)
    return math.hypot(*v) <= DEGENERATE_FREQUENCY * scale


def _angular_s_factor(p3: ThreeCentreParams, summand: Summand, s: float) -> complex:
    v = frequency_vector(p3, s)
    if _degenerate(p3, v):
        return 0j
    theta, phi = spherical_angles(v)
    return (
        s**summand.s_power
        * (1.0 - s) ** summand.one_minus_s_power
        * spherical_harmonic(summand.indices.lam, summand.mu, theta, phi)
    )


def s_integrand(
    p3: ThreeCentreParams, summand: Summand, s: float, de: DEConfig
) -> complex:
    """s^a (1-s)^b Y_lam^mu(direction of v(s)) I(s), without the summand weight."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"s must be in (0,1), got {s!r}")
    factor = _angular_s_factor(p3, summand, s)
    if factor == 0:
        return 0j
    return factor * _inner_value(p3, summand.inner_key(s), de)


def _gauss_legendre_unit(order: int) -> tuple[list[float], list[float]]:
    x, w = leggauss(order)
    return (0.5 * (x + 1.0)).tolist(), (0.5 * w).tolist()


def _fill_memo(
    p3: ThreeCentreParams,
    keys: list[InnerKey],
    de: DEConfig,
    memo: dict[InnerKey, float],
    workers: int,
) -> None:
    missing = [key for key in dict.fromkeys(keys) if key not in memo]
    if workers > 1 and len(missing) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda key: _inner_value(p3, key, de), missing))
    else:
        values = [_inner_value(p3, key, de) for key in missing]
    memo.update(zip(missing, values, strict=True))


def _s_quadrature(
    p3: ThreeCentreParams,
    summands: list[Summand],
    order: int,
    de: DEConfig,
    memo: dict[InnerKey, float],
    workers: int,
) -> complex:
    nodes, weights = _gauss_legendre_unit(order)
    factors = [[_angular_s_factor(p3, sm, s) for s in nodes] for sm in summands]
    keys = [
        sm.inner_key(s)
        for sm, row in zip(summands, factors, strict=True)
        for s, factor in zip(nodes, row, strict=True)
        if factor != 0
    ]
    _fill_memo(p3, keys, de, memo, workers)

    real_parts: list[float] = []
    imag_parts: list[float] = []
    for sm, row in zip(summands, factors, strict=True):
        for s, w, factor in zip(nodes, weights, row, strict=True):
            if factor == 0:
                continue
            term = sm.weight * w * factor * memo[sm.inner_key(s)]
            real_parts.append(term.real)
            imag_parts.append(term.imag)
    return complex(math.fsum(real_parts), math.fsum(imag_parts))


def three_centre(
    p3: ThreeCentreParams, sq: SQuadConfig, de: DEConfig, workers: int = 1
) -> ThreeCentreResult:
    """
    The full three-centre integral.

    With `sq.refine` the s-integral is repeated at twice the order and the
    relative difference is reported; the higher-order value is returned.
    """
    summands = list(iter_summands(p3))
    memo: dict[InnerKey, float] = {}
    value = _s_quadrature(p3, summands, sq.order, de, memo, workers)
    order = sq.order
    rel_diff: float | None = None
    warning = False
    if sq.refine:
        refined = _s_quadrature(p3, summands, 2 * sq.order, de, memo, workers)
        scale = abs(refined) if refined != 0 else 1.0
        rel_diff = abs(refined - value) / scale
        value, order = refined, 2 * sq.order
        if rel_diff > sq.tolerance:
            warning = True
            logger.warning(
                "s-integral orders %d and %d differ by %.3e (relative)",
                sq.order,
                2 * sq.order,
                rel_diff,
            )
    logger.debug(
        "three-centre integral: %d summands, %d distinct I(s) values",
        len(summands),
        len(memo),
    )
    return ThreeCentreResult(
        real=value.real,
        imag=value.imag,
        n_terms=len(summands),
        n_inner=len(memo),
        order=order,
        s_rel_diff=rel_diff,
        accuracy_warning=warning,
    )

