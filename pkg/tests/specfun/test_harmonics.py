"""Tests for associated Legendre functions and spherical harmonics."""

import cmath
import math

import numpy as np
import pytest
from scipy.special import lpmv

from src.specfun.exceptions import SpecialFunctionDomainError
from src.specfun.harmonics import assoc_legendre, spherical_harmonic


class TestAssocLegendre:
    @pytest.mark.parametrize("l", range(7))
    def test_matches_scipy_without_phase(self, l: int):  # noqa: E741
        """scipy includes (-1)^m; assoc_legendre does not."""
        for m in range(l + 1):
            for x in (-0.9, -0.3, 0.0, 0.4, 0.99):
                expected = (-1) ** m * float(lpmv(m, l, x))
                assert assoc_legendre(l, m, x) == pytest.approx(expected, rel=1e-12, abs=1e-14)

    def test_domain(self):
        with pytest.raises(SpecialFunctionDomainError):
            assoc_legendre(2, 3, 0.5)
        with pytest.raises(SpecialFunctionDomainError):
            assoc_legendre(2, 1, 1.5)


class TestSphericalHarmonic:
    def test_low_orders_closed_form(self):
        theta, phi = 0.7, 1.9
        assert spherical_harmonic(0, 0, theta, phi) == pytest.approx(1 / math.sqrt(4 * math.pi))
        assert spherical_harmonic(1, 0, theta, phi) == pytest.approx(
            math.sqrt(3 / (4 * math.pi)) * math.cos(theta)
        )
        assert spherical_harmonic(1, 1, theta, phi) == pytest.approx(
            -math.sqrt(3 / (8 * math.pi)) * math.sin(theta) * cmath.exp(1j * phi)
        )
        assert spherical_harmonic(1, -1, theta, phi) == pytest.approx(
            math.sqrt(3 / (8 * math.pi)) * math.sin(theta) * cmath.exp(-1j * phi)
        )

    @pytest.mark.parametrize("l", range(5))
    def test_conjugation_symmetry(self, l: int):  # noqa: E741
        """Y_l^{-m} = (-1)^m conj(Y_l^m)."""
        for m in range(-l, l + 1):
            for theta, phi in ((0.3, 0.1), (1.2, 4.0), (2.9, 5.5)):
                lhs = spherical_harmonic(l, -m, theta, phi)
                rhs = (-1) ** m * spherical_harmonic(l, m, theta, phi).conjugate()
                assert abs(lhs - rhs) <= 1e-14

    def test_orthonormality(self):
        """Inner products of Y_l^m, l <= 3, form the identity to 1e-10."""
        x, w = np.polynomial.legendre.leggauss(24)
        phis = 2 * math.pi * np.arange(32) / 32
        labels = [(l, m) for l in range(4) for m in range(-l, l + 1)]  # noqa: E741
        table = {
            (l, m): np.array(
                [[spherical_harmonic(l, m, math.acos(c), p) for p in phis] for c in x]
            )
            for l, m in labels  # noqa: E741
        }
        weights = np.outer(w, np.full(phis.size, 2 * math.pi / phis.size))
        for a in labels:
            for b in labels:
                inner = complex(np.sum(weights * np.conj(table[a]) * table[b]))
                expected = 1.0 if a == b else 0.0
                assert abs(inner - expected) <= 1e-10

    def test_domain(self):
        with pytest.raises(SpecialFunctionDomainError):
            spherical_harmonic(1, 2, 0.1, 0.1)
