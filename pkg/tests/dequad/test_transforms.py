"""Tests for the double exponential transformations."""

import math

import numpy as np
import pytest

from src.dequad.constants import BETA, TAYLOR_RADIUS
from src.dequad.schemas import DEConfig, Phi2Constants
from src.dequad.transforms import (
    phi1,
    phi1_prime,
    phi2,
    phi2_constants,
    phi2_prime,
    ratio_series,
    transform_pair,
)

K = 6.0
PHI2 = phi2_constants(4.5)


def finite_difference(fn, t: np.ndarray, h: float = 1e-6) -> np.ndarray:  # type: ignore[no-untyped-def]
    return (fn(t + h) - fn(t - h)) / (2 * h)


class TestRatioSeries:
    def test_bernoulli_generating_function(self):
        """t / (1 - e^-t) = 1 + t/2 + t^2/12 - t^4/720 + ..."""
        coeffs = ratio_series([0.0, 1.0, 0.0, 0.0, 0.0, 0.0])
        assert coeffs == pytest.approx([1.0, 0.5, 1 / 12, 0.0, -1 / 720], abs=1e-16)

    def test_u_must_vanish_at_origin(self):
        with pytest.raises(ValueError):
            ratio_series([0.1, 1.0, 0.0])
        with pytest.raises(ValueError):
            ratio_series([0.0, 0.0, 1.0])


class TestPhi1:
    def test_origin(self):
        assert phi1(0.0, K) == pytest.approx(1 / K, rel=1e-15)
        assert phi1_prime(0.0, K) == pytest.approx(0.5, rel=1e-14)

    def test_limits(self):
        assert phi1(5.0, K) == pytest.approx(5.0, rel=1e-15)
        assert 0.0 <= phi1(-5.0, K) < 1e-150

    def test_derivative_matches_finite_difference(self):
        t = np.concatenate([np.linspace(-5.0, -0.1, 25), np.linspace(0.1, 5.0, 25)])
        np.testing.assert_allclose(
            phi1_prime(t, K), finite_difference(lambda x: phi1(x, K), t), rtol=1e-7, atol=1e-300
        )

    def test_monotone(self):
        t = np.linspace(-10.0, 10.0, 2001)
        assert np.all(phi1_prime(t, K) >= 0.0)
        assert np.all(phi1_prime(np.linspace(-3.0, 3.0, 601), K) > 0.0)
        assert np.all(np.diff(phi1(np.linspace(-3.0, 10.0, 1301), K)) > 0.0)

    def test_no_overflow_far_out(self):
        values = phi1(np.array([-800.0, 800.0]), K)
        assert values[0] == 0.0
        assert values[1] == 800.0


class TestPhi2:
    def test_constants(self):
        alpha = BETA / math.sqrt(1 + 4.5 * math.log(5.5) / (4 * math.pi))
        assert PHI2.beta == BETA
        assert PHI2.alpha == pytest.approx(alpha, rel=1e-15)
        assert 0.0 < PHI2.alpha < PHI2.beta

    def test_constants_need_positive_M(self):
        with pytest.raises(ValueError):
            phi2_constants(0.0)

    def test_ordering_validated(self):
        with pytest.raises(ValueError):
            Phi2Constants(alpha=0.5, beta=0.25)

    def test_origin(self):
        """phi2(0) = 1/(2+alpha+beta), phi2'(0) = 1/2 - (beta-alpha)/(2 (2+alpha+beta)^2)."""
        c1 = 2.0 + PHI2.alpha + PHI2.beta
        c2 = (PHI2.beta - PHI2.alpha) / 2
        assert phi2(0.0, PHI2) == pytest.approx(1 / c1, rel=1e-15)
        assert phi2_prime(0.0, PHI2) == pytest.approx(0.5 - c2 / c1**2, rel=1e-14)

    def test_derivative_matches_finite_difference(self):
        t = np.concatenate([np.linspace(-5.0, -0.1, 25), np.linspace(0.1, 5.0, 25)])
        np.testing.assert_allclose(
            phi2_prime(t, PHI2),
            finite_difference(lambda x: phi2(x, PHI2), t),
            rtol=1e-7,
            atol=1e-300,
        )

    def test_monotone(self):
        t = np.linspace(-10.0, 10.0, 2001)
        assert np.all(phi2_prime(t, PHI2) >= 0.0)
        assert np.all(phi2_prime(np.linspace(-3.0, 3.0, 601), PHI2) > 0.0)

    def test_tends_to_identity(self):
        assert phi2(6.0, PHI2) == pytest.approx(6.0, rel=1e-15)


class TestTaylorSwitch:
    @pytest.mark.parametrize("sign", [1.0, -1.0])
    def test_continuous_across_radius(self, sign):
        inside = sign * TAYLOR_RADIUS * (1 - 1e-9)
        outside = sign * TAYLOR_RADIUS * (1 + 1e-9)
        assert phi1(inside, K) == pytest.approx(phi1(outside, K), rel=1e-11)
        assert phi1_prime(inside, K) == pytest.approx(phi1_prime(outside, K), rel=1e-9)
        assert phi2(inside, PHI2) == pytest.approx(phi2(outside, PHI2), rel=1e-11)
        assert phi2_prime(inside, PHI2) == pytest.approx(phi2_prime(outside, PHI2), rel=1e-9)


class TestTransformPair:
    def test_selects_phi1(self):
        phi, dphi = transform_pair(DEConfig(transform="phi1", K=4.0), 10.0)
        assert phi(np.array([0.0]))[0] == pytest.approx(0.25)
        assert dphi(np.array([1.0]))[0] == pytest.approx(float(phi1_prime(1.0, 4.0)))

    def test_phi2_constants_follow_M(self):
        phi, _ = transform_pair(DEConfig(transform="phi2"), 4.5)
        assert phi(np.array([0.7]))[0] == float(phi2(0.7, PHI2))
