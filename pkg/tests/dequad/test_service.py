"""Tests for the trapezoidal sum and the M schedule."""

import math

import numpy as np
import pytest

from src.dequad import service
from src.dequad.exceptions import QuadratureEvaluationError, TruncationError
from src.dequad.schemas import DEConfig, QuadratureResult
from src.dequad.service import (
    de_sum,
    de_sum_bounded,
    error_model,
    initial_M,
    integrate,
    integrate_I_s,
    m_schedule,
    next_M,
    point_scan,
    transformed_integrand,
)
from src.oracle.service import oracle_I_s
from src.sintegrand.service import oscillation_frequency, s_transform, sine_integrand
from tests.utils.tables import FAR_CASES, MODERATE_CASES, relative_error


def damped_sine(v: float):  # type: ignore[no-untyped-def]
    """x e^-x sin(v x); its integral over (0, inf) is 2v / (1 + v^2)^2."""

    def f(x: np.ndarray) -> np.ndarray:
        return x * np.exp(-x) * np.sin(v * x)

    return f


def damped_sine_exact(v: float) -> float:
    return 2 * v / (1 + v * v) ** 2


class TestSchedule:
    def test_initial_M(self):
        assert initial_M(1e-15, 2.0) == pytest.approx(27.126690, rel=1e-7)
        assert initial_M(1e-15, 5.0) == pytest.approx(10.850676, rel=1e-7)

    def test_initial_M_domain(self):
        with pytest.raises(ValueError):
            initial_M(0.0, 2.0)
        with pytest.raises(ValueError):
            initial_M(1e-10, 0.0)

    def test_opening_pair(self, phi1_config, phi2_config):
        phi1_schedule = m_schedule(phi1_config)
        assert len(phi1_schedule) == 2
        assert phi1_schedule[1] == pytest.approx(54.25338, rel=1e-6)
        assert phi1_schedule[1] == pytest.approx(2 * phi1_schedule[0], rel=1e-14)
        assert m_schedule(phi2_config)[1] == pytest.approx(21.70135, rel=1e-6)
        assert len(m_schedule(DEConfig(transform="phi2", max_attempts=1))) == 1

    def test_error_constant_defaults(self):
        assert DEConfig(transform="phi1").A == 2.0
        assert DEConfig(transform="phi2").A == 5.0
        assert DEConfig(transform="phi1", A=3.0).A == 3.0

    def test_error_model(self):
        """The modelled error of the sum at M1 is sqrt(eps0)."""
        for A in (2.0, 5.0):
            M1 = initial_M(1e-15, A)
            assert error_model(M1, A) == pytest.approx(math.sqrt(1e-15), rel=1e-12)
            assert error_model(2 * M1, A) == pytest.approx(1e-15, rel=1e-12)

    def test_next_M(self, phi2_config):
        M = 20.0
        assert next_M(M, 1e-6, phi2_config) == pytest.approx(
            M + math.pi / 5.0 * math.log(1e9), rel=1e-14
        )
        assert next_M(M, phi2_config.eps0, phi2_config) == pytest.approx(M, rel=1e-14)


class TestDESum:
    def test_step_size(self, phi2_config):
        v = 3.0
        result = de_sum(damped_sine(v), v, 12.0, phi2_config)
        assert result.h * result.M == pytest.approx(math.pi, rel=1e-15)

    def test_zero_integrand_keeps_negligible_run(self, phi1_config):
        result = de_sum(lambda x: np.zeros_like(x), 1.0, 10.0, phi1_config)
        assert result.value == 0.0
        assert (result.N_minus, result.N_plus, result.n_points) == (-2, 2, 5)

    def test_truncation_structure(self, phi2_config, row_two):
        f = sine_integrand(s_transform(row_two), row_two)
        v = oscillation_frequency(row_two)
        result = de_sum(f, v, m_schedule(phi2_config)[1], phi2_config)
        assert result.N_minus < 0 < result.N_plus
        assert result.n_points == result.N_plus - result.N_minus + 1

    @pytest.mark.parametrize("transform", ["phi1", "phi2"])
    def test_damped_sine(self, transform):
        cfg = DEConfig(transform=transform, eps0=1e-14)
        v = 2.5
        result = de_sum(damped_sine(v), v, m_schedule(cfg)[1], cfg)
        assert result.value == pytest.approx(damped_sine_exact(v), rel=1e-12)

    def test_non_finite_term(self, phi1_config):
        with pytest.raises(QuadratureEvaluationError) as exc_info:
            de_sum(lambda x: np.full_like(x, np.nan), 1.0, 10.0, phi1_config)
        assert exc_info.value.index == 0

    def test_runaway_terms(self):
        cfg = DEConfig(transform="phi1", max_index=16)
        with pytest.raises(TruncationError) as exc_info:
            de_sum(lambda x: np.ones_like(x), 1.0, 10.0, cfg)
        assert exc_info.value.best_estimate is not None

    def test_invalid_arguments(self, phi2_config):
        with pytest.raises(ValueError):
            de_sum(damped_sine(1.0), 0.0, 10.0, phi2_config)
        with pytest.raises(ValueError):
            de_sum(damped_sine(1.0), 1.0, -1.0, phi2_config)

    def test_offset_leaves_value(self, phi2_config):
        v = 2.0
        M = m_schedule(phi2_config)[1]
        plain = de_sum(damped_sine(v), v, M, phi2_config)
        shifted = de_sum(damped_sine(v), v, M, phi2_config, theta=0.3)
        assert shifted.value == pytest.approx(plain.value, rel=1e-12)

    def test_roundoff_level(self, phi2_config):
        v = 2.0
        result = de_sum(damped_sine(v), v, m_schedule(phi2_config)[1], phi2_config)
        assert 0.0 < result.roundoff < 1e-12


class TestTruncationBounds:
    """Bounds of the second moderate case at M2."""

    def sum_at_M2(self, cfg, p):  # type: ignore[no-untyped-def]
        f = sine_integrand(s_transform(p), p)
        return de_sum(f, oscillation_frequency(p), m_schedule(cfg)[1], cfg)

    def test_phi1_bounds(self, phi1_config, row_two):
        result = self.sum_at_M2(phi1_config, row_two)
        # the lower tail runs until the nodes underflow to 0
        assert result.N_minus == -96
        assert abs(result.N_plus - 41) <= 1
        assert abs(result.n_points - 138) <= 1

    def test_phi2_bounds(self, phi2_config, row_two):
        result = self.sum_at_M2(phi2_config, row_two)
        assert result.N_minus == -63
        assert abs(result.N_plus - 33) <= 1
        assert abs(result.n_points - 97) <= 1

    def test_phi2_needs_fewer_points(self, phi1_config, phi2_config, row_two):
        assert (
            self.sum_at_M2(phi2_config, row_two).n_points
            < self.sum_at_M2(phi1_config, row_two).n_points
        )


class TestBoundedSum:
    def test_matches_adaptive_bounds(self, phi1_config, row_nine):
        f = sine_integrand(s_transform(row_nine), row_nine)
        v = oscillation_frequency(row_nine)
        M = m_schedule(phi1_config)[1]
        adaptive = de_sum(f, v, M, phi1_config)
        bounded = de_sum_bounded(f, v, M, phi1_config, adaptive.N_minus, adaptive.N_plus)
        assert bounded.value == adaptive.value
        assert bounded.n_points == adaptive.n_points

    def test_single_point(self, phi2_config, row_nine):
        """The n = 0 term alone is h times the transformed integrand at t = 0."""
        f = sine_integrand(s_transform(row_nine), row_nine)
        v = oscillation_frequency(row_nine)
        M = 15.0
        result = de_sum_bounded(f, v, M, phi2_config, 0, 0)
        expected = result.h * transformed_integrand(row_nine, M, phi2_config, [0.0])[0]
        assert result.value == pytest.approx(expected, rel=1e-14)

    def test_range_must_contain_origin(self, phi2_config):
        with pytest.raises(ValueError):
            de_sum_bounded(damped_sine(1.0), 1.0, 10.0, phi2_config, 1, 5)


class TestIntegrate:
    def test_converged_result(self, phi2_config):
        v = 1.5
        result = integrate(damped_sine(v), v, phi2_config)
        assert isinstance(result, QuadratureResult)
        assert 2 <= result.n_M <= phi2_config.max_attempts
        assert result.converged(phi2_config.eps0)
        assert result.value == pytest.approx(damped_sine_exact(v), rel=1e-13)

    def test_single_attempt_is_flagged(self):
        cfg = DEConfig(transform="phi2", max_attempts=1)
        result = integrate(damped_sine(1.0), 1.0, cfg)
        assert result.n_M == 1
        assert not result.converged(cfg.eps0)

    def test_later_M_grow(self, phi2_config, row_four, monkeypatch):
        """The schedule opens with M1, 2 M1 and every later M exceeds the last."""
        seen: list[float] = []
        original = service.de_sum

        def recording(f, v, M, cfg, theta=0.0):  # type: ignore[no-untyped-def]
            seen.append(M)
            return original(f, v, M, cfg, theta)

        monkeypatch.setattr(service, "de_sum", recording)
        result = integrate_I_s(row_four, phi2_config)
        assert seen[:2] == pytest.approx(m_schedule(phi2_config))
        assert all(b > a for a, b in zip(seen, seen[1:]))
        assert len(seen) == result.n_M

    def test_roundoff_floor_accepts(self):
        """A change at the rounding level counts as converged."""
        result = QuadratureResult(
            value=1.0, M=20.0, h=math.pi / 20.0, N_minus=-1, N_plus=1, n_points=3,
            n_M=3, est_rel_error=1e-14, rel_change=1e-14, roundoff=5e-14,
        )  # fmt: skip
        assert result.converged(1e-15)
        assert not result.model_copy(update={"roundoff": 1e-15}).converged(1e-15)

    def test_deterministic(self, phi1_config, row_two):
        first = integrate_I_s(row_two, phi1_config)
        second = integrate_I_s(row_two, phi1_config)
        assert first.value == second.value
        assert first.n_points == second.n_points


class TestPublishedCases:
    @pytest.mark.parametrize("case", MODERATE_CASES, ids=lambda c: f"nu={c.params.nu}")
    @pytest.mark.parametrize("transform", ["phi1", "phi2"])
    def test_moderate_separation(self, case, transform, phi1_config, phi2_config):
        cfg = phi1_config if transform == "phi1" else phi2_config
        result = integrate_I_s(case.params, cfg)
        assert relative_error(result.value, case.value) < 5e-13
        assert result.n_M >= 2

    @pytest.mark.parametrize("transform", ["phi1", "phi2"])
    def test_attempt_counts(self, transform, phi1_config, phi2_config):
        """The number of values of M matches the published counts on at least 8 rows."""
        cfg = phi1_config if transform == "phi1" else phi2_config
        counts = [integrate_I_s(case.params, cfg).n_M for case in MODERATE_CASES]
        published = [
            case.nM_phi1 if transform == "phi1" else case.nM_phi2 for case in MODERATE_CASES
        ]
        matches = sum(a == b for a, b in zip(counts, published, strict=True))
        assert matches >= 8, f"n_M {counts} against published {published}"

    @pytest.mark.parametrize("case", FAR_CASES, ids=lambda c: f"nu={c.params.nu}")
    def test_large_separation(self, case, phi1_config, phi2_config):
        """Both transformations agree with each other and with the published values."""
        first = integrate_I_s(case.params, phi1_config).value
        second = integrate_I_s(case.params, phi2_config).value
        assert relative_error(first, second) < 1e-11
        assert relative_error(second, case.value_phi2) < 1e-11


class TestErrorScan:
    def test_phi2_needs_smaller_M(self, row_two, phi1_config, phi2_config, oracle_config):
        """phi2 reaches 1e-10 absolute error at a smaller M than phi1."""
        reference = oracle_I_s(row_two, oracle_config)
        f = sine_integrand(s_transform(row_two), row_two)
        v = oscillation_frequency(row_two)

        def first_accurate_M(cfg: DEConfig) -> float:
            for M in np.arange(2.0, 30.0, 0.5).tolist():
                value = de_sum(f, v, M, cfg).value / v
                if abs(value - reference) < 1e-10:
                    return M
            return math.inf

        phi2_M = first_accurate_M(phi2_config)
        assert phi2_M < first_accurate_M(phi1_config)
        assert phi2_M < math.inf

    def test_error_at_small_M(self, row_two, phi1_config, phi2_config, oracle_config):
        """Absolute errors at the left end of the default M ranges."""
        reference = oracle_I_s(row_two, oracle_config)
        f = sine_integrand(s_transform(row_two), row_two)
        v = oscillation_frequency(row_two)
        phi1_error = abs(de_sum(f, v, 10.0, phi1_config).value / v - reference)
        phi2_error = abs(de_sum(f, v, 4.0, phi2_config).value / v - reference)
        assert 1.2e-4 < phi1_error < 1.6e-4
        assert 1e-5 < phi2_error < 1e-3


class TestPointScan:
    @staticmethod
    def scan_errors(
        row_two, cfg: DEConfig, reference: float
    ) -> tuple[list[QuadratureResult], list[float]]:
        f = sine_integrand(s_transform(row_two), row_two)
        v = oscillation_frequency(row_two)
        results = point_scan(f, v, cfg)
        return results, [abs(r.value / v - reference) for r in results]

    def test_phi2_starts_asymmetric(self, row_two, phi2_config):
        """phi2 starts from -37..7 and both ends grow together to -63..N+."""
        f = sine_integrand(s_transform(row_two), row_two)
        v = oscillation_frequency(row_two)
        results = point_scan(f, v, phi2_config)
        first, last = results[0], results[-1]
        assert first.N_plus == 7
        assert first.N_minus - last.N_minus == last.N_plus - first.N_plus
        assert last.N_minus == -63
        assert abs(first.n_points - 45) <= 1
        assert all(r.M == m_schedule(phi2_config)[1] for r in results)

    def test_ends_at_own_bounds(self, row_two, phi1_config):
        f = sine_integrand(s_transform(row_two), row_two)
        v = oscillation_frequency(row_two)
        results = point_scan(f, v, phi1_config)
        full = de_sum(f, v, m_schedule(phi1_config)[1], phi1_config)
        assert (results[-1].N_minus, results[-1].N_plus) == (full.N_minus, full.N_plus)
        assert results[-1].value == full.value
        points = [r.n_points for r in results]
        assert points == list(range(points[0], points[-1] + 1, 2))

    @pytest.mark.parametrize(("transform", "from_points"), [("phi1", 80), ("phi2", 60)])
    def test_error_falls_faster_with_more_points(
        self, row_two, phi1_config, phi2_config, oracle_config, transform, from_points
    ):
        """Past the first few points log10 |error| bends downward."""
        cfg = phi1_config if transform == "phi1" else phi2_config
        reference = oracle_I_s(row_two, oracle_config)
        results, errors = self.scan_errors(row_two, cfg, reference)
        curve = [
            (r.n_points, math.log10(e))
            for r, e in zip(results, errors, strict=True)
            if r.n_points >= from_points and e > 1e-11
        ]
        assert len(curve) >= 6
        half = len(curve) // 2
        early = np.polyfit(*zip(*curve[: half + 1], strict=True), 1)[0]
        late = np.polyfit(*zip(*curve[half:], strict=True), 1)[0]
        assert early < 0.0
        assert late < early
