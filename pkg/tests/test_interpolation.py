"""Blend-path interpolant, its two derivative estimators, residual checks."""

import math

import numpy as np
import pytest

from oracles import gaussian_expectation_2d_quad

from sudfer import (
    DomainError,
    IndexOutOfRange,
    InvalidInput,
    NotCentered,
    SmoothMaxParams,
    derive_seed,
    dominated_pair,
    path_monotonicity_report,
    path_point,
    phi,
    phi_derivative_explicit,
    phi_derivative_fd,
    stein_residual,
    stein_residuals,
    validate_spec,
)
from sudfer.estimator import estimate_from_values
from sudfer.gaussian import iter_sample_shards
from sudfer.smoothmax import smooth_max


def iid_spec(n):
    return validate_spec(np.zeros(n), np.eye(n))


def zero_spec(n):
    return validate_spec(np.zeros(n), np.zeros((n, n)))


def random_centered_spec(rng, n):
    a = rng.standard_normal((n, n))
    cov = a @ a.T / n
    return validate_spec(np.zeros(n), (cov + cov.T) / 2.0)


class TestPhi:
    def test_constant_path_for_equal_specs(self):
        rng = np.random.default_rng(3)
        spec = random_centered_spec(rng, 4)
        params = SmoothMaxParams(2.0)
        ests = [phi(spec, spec, params, t, 20_000, seed=7) for t in (0.0, 0.5, 1.0)]
        for a in ests:
            for b in ests:
                assert abs(a.value - b.value) <= 3.0 * math.hypot(a.stderr, b.stderr) + 1e-9

    def test_degenerate_laws_give_exact_logn_over_beta(self):
        params = SmoothMaxParams(1.5)
        est = phi(zero_spec(5), zero_spec(5), params, 0.3, 100, seed=9)
        assert est.value == pytest.approx(math.log(5.0) / 1.5, abs=1e-14)
        assert est.stderr == 0.0

    def test_scalar_case_recovers_the_mean(self):
        x = validate_spec([1.25], [[0.6]])
        y = validate_spec([1.25], [[2.0]])
        est = phi(x, y, SmoothMaxParams(3.0), 0.4, 50_000, seed=11)
        assert abs(est.value - 1.25) <= 3.0 * est.stderr

    def test_endpoints_match_direct_estimates_bitwise(self):
        # t = 0 reproduces the X law exactly, so the same seed must give the
        # same draws and therefore identical estimates, bit for bit.
        rng = np.random.default_rng(13)
        x = random_centered_spec(rng, 3)
        y = validate_spec(x.mean, random_centered_spec(rng, 3).covariance)
        params = SmoothMaxParams(1.0)
        for t, spec in ((0.0, x), (1.0, y)):
            est = phi(x, y, params, t, 10_000, seed=17)
            parts = [smooth_max(s, params) for s in iter_sample_shards(spec, 10_000, 17)]
            direct = estimate_from_values(np.concatenate(parts), 17)
            assert est.value == direct.value
            assert est.stderr == direct.stderr

    def test_path_point_carries_the_blend(self):
        x = iid_spec(2)
        y = validate_spec(np.zeros(2), 3.0 * np.eye(2))
        point = path_point(x, y, 0.25)
        assert point.t == 0.25
        assert np.array_equal(point.blended.covariance, 1.5 * np.eye(2))


class TestExplicitDerivative:
    def test_zero_when_increments_agree(self):
        # Adding a common-shift component c*11^T changes the covariance but
        # not the increments, so the integrand vanishes identically.
        rng = np.random.default_rng(19)
        x = random_centered_spec(rng, 3)
        y = validate_spec(x.mean, x.covariance + 0.9 * np.ones((3, 3)))
        est = phi_derivative_explicit(x, y, SmoothMaxParams(2.0), 0.5, 5000, seed=23)
        assert est.value == pytest.approx(0.0, abs=1e-13)
        assert est.stderr <= 1e-13

    def test_iid_pair_vs_zero_matches_quadrature_oracle(self):
        # For X = N(0, I2), Y the zero law, the derivative at t is
        # -beta * E p1(Z) p2(Z) with Z ~ N(0, (1-t) I2); the expectation is
        # computed independently by tensor quadrature.
        beta, t = 1.0, 0.5

        def softmax_product(points):
            v1, v2 = points[..., 0], points[..., 1]
            m = np.maximum(v1, v2)
            e1 = np.exp(beta * (v1 - m))
            e2 = np.exp(beta * (v2 - m))
            return (e1 / (e1 + e2)) * (e2 / (e1 + e2))

        oracle = -beta * gaussian_expectation_2d_quad(
            softmax_product, [0.0, 0.0], (1.0 - t) * np.eye(2), nodes=300
        )
        est = phi_derivative_explicit(
            iid_spec(2), zero_spec(2), SmoothMaxParams(beta), t, 10**6, seed=29
        )
        assert est.value <= -est.stderr
        assert abs(est.value - oracle) <= 3.0 * est.stderr

    def test_dominated_pairs_never_significantly_negative(self):
        rng = np.random.default_rng(31)
        for k in range(10):
            n = int(rng.integers(2, 7))
            x, y = dominated_pair(n, seed=400 + k, generator="wishart")
            beta = 1.5
            for t in (0.2, 0.5, 0.8):
                est = phi_derivative_explicit(x, y, SmoothMaxParams(beta), t, 20_000, seed=500 + k)
                assert est.value >= -3.0 * est.stderr

    def test_magnitude_bounded_by_quarter_beta_gamma(self):
        from sudfer import certify

        rng = np.random.default_rng(37)
        for k in range(10):
            x = random_centered_spec(rng, 4)
            y = random_centered_spec(rng, 4)
            gamma = certify(x, y).gamma
            beta = 2.0
            est = phi_derivative_explicit(x, y, SmoothMaxParams(beta), 0.5, 10_000, seed=600 + k)
            assert abs(est.value) <= beta * gamma / 4.0 + 3.0 * est.stderr

    def test_interior_domain_enforced(self):
        x = iid_spec(2)
        for t in (0.0, 1.0, -0.2, 1.3):
            with pytest.raises(DomainError):
                phi_derivative_explicit(x, x, SmoothMaxParams(1.0), t, 100, seed=1)


class TestFiniteDifferenceDerivative:
    def test_exactly_zero_for_identical_iid_specs(self):
        # Identity covariances blend to exactly themselves at every t, so the
        # paired difference is exactly zero draw by draw.
        x = iid_spec(3)
        est = phi_derivative_fd(x, x, SmoothMaxParams(2.0), 0.5, 5000, seed=41)
        assert est.value == 0.0
        assert est.stderr == 0.0

    def test_near_zero_for_identical_random_specs(self):
        rng = np.random.default_rng(43)
        x = random_centered_spec(rng, 4)
        est = phi_derivative_fd(x, x, SmoothMaxParams(1.0), 0.3, 5000, seed=47)
        assert abs(est.value) <= 3.0 * est.stderr + 1e-9

    def test_scalar_case_is_statistically_zero(self):
        x = validate_spec([0.0], [[0.5]])
        y = validate_spec([0.0], [[2.5]])
        est = phi_derivative_fd(x, y, SmoothMaxParams(1.0), 0.5, 20_000, seed=53)
        assert abs(est.value) <= 3.0 * est.stderr

    def test_agrees_with_explicit_formula(self):
        rng = np.random.default_rng(59)
        for k in range(5):
            n = int(rng.integers(2, 6))
            x, y = dominated_pair(n, seed=700 + k, generator="wishart")
            beta = 2.0
            params = SmoothMaxParams(beta)
            for t in (0.1, 0.5, 0.9):
                seed = derive_seed(800 + k, int(t * 10))
                explicit = phi_derivative_explicit(x, y, params, t, 40_000, seed)
                fd = phi_derivative_fd(x, y, params, t, 40_000, seed)
                tol = 3.0 * math.hypot(explicit.stderr, fd.stderr) + 1e-4 * beta
                assert abs(explicit.value - fd.value) <= tol

    def test_interior_domain_enforced(self):
        x = iid_spec(2)
        with pytest.raises(DomainError):
            phi_derivative_fd(x, x, SmoothMaxParams(1.0), 1.0, 100, seed=1)


class TestSteinResiduals:
    def test_linear_functional_hook(self):
        # F(x) = x_j with constant gradient e_j: the identity reduces to
        # E(V_i V_j) = cov[i, j], so every coordinate must pass at 3 sigma.
        rng = np.random.default_rng(61)
        spec = random_centered_spec(rng, 4)
        j = 1
        e = np.zeros(4)
        e[j] = 1.0
        ests = stein_residuals(
            spec,
            SmoothMaxParams(1.0),
            200_000,
            seed=67,
            functional=lambda rows: rows[:, j],
            gradient=lambda rows: np.broadcast_to(e, rows.shape),
        )
        for est in ests:
            assert abs(est.value) <= 3.0 * est.stderr

    def test_zero_covariance_is_exact(self):
        ests = stein_residuals(zero_spec(3), SmoothMaxParams(1.0), 100, seed=71)
        for est in ests:
            assert est.value == 0.0
            assert est.stderr == 0.0

    def test_identity_covariance_default_functional(self):
        spec = iid_spec(4)
        ests = stein_residuals(spec, SmoothMaxParams(2.0), 10**6, seed=73)
        for est in ests:
            assert abs(est.value) <= 3.0 * est.stderr
            assert est.stderr <= 5e-3

    def test_single_coordinate_accessor(self):
        spec = iid_spec(3)
        full = stein_residuals(spec, SmoothMaxParams(1.0), 5000, seed=79)
        one = stein_residual(spec, SmoothMaxParams(1.0), 1, 5000, seed=79)
        assert one.value == full[1].value
        with pytest.raises(IndexOutOfRange):
            stein_residual(spec, SmoothMaxParams(1.0), 3, 5000, seed=79)

    def test_rejects_uncentered_laws(self):
        spec = validate_spec([0.0, 1e-6], np.eye(2))
        with pytest.raises(NotCentered):
            stein_residuals(spec, SmoothMaxParams(1.0), 100, seed=83)

    def test_functional_and_gradient_must_travel_together(self):
        spec = iid_spec(2)
        with pytest.raises(InvalidInput):
            stein_residuals(
                spec, SmoothMaxParams(1.0), 100, seed=89, functional=lambda rows: rows[:, 0]
            )


class TestPathMonotonicityReport:
    def test_dominated_pair_raises_no_flags(self):
        x, y = dominated_pair(5, seed=901, generator="wishart")
        report = path_monotonicity_report(
            x, y, SmoothMaxParams(1.0), (0.25, 0.5, 0.75), 20_000, seed=903
        )
        assert report.dominated_xy
        assert report.flagged == ()
        assert len(report.points) == 3
        for point in report.points:
            tol = 3.0 * point.combined_stderr() + 1e-4 * point.beta
            assert point.consistency_gap() <= tol

    def test_equal_specs_zero_everything(self):
        spec = iid_spec(4)
        report = path_monotonicity_report(
            spec, spec, SmoothMaxParams(2.0), (0.3, 0.7), 5000, seed=907
        )
        assert report.flagged == ()
        for point in report.points:
            assert abs(point.explicit.value) <= 3.0 * point.explicit.stderr + 1e-12

    def test_reversed_domination_is_flagged(self):
        # Swapping a strictly dominated pair makes the derivative strictly
        # negative along the path, which the 3-sigma flag must pick up.
        x, y = dominated_pair(5, seed=911, generator="wishart")
        report = path_monotonicity_report(
            y, x, SmoothMaxParams(2.0), (0.25, 0.5, 0.75), 50_000, seed=913
        )
        assert not report.dominated_xy
        assert len(report.flagged) > 0
        for point in report.points:
            assert point.explicit.value <= 3.0 * point.explicit.stderr

    def test_monotone_endpoints_for_dominated_pairs(self):
        params = SmoothMaxParams(1.0)
        for k in range(5):
            x, y = dominated_pair(4, seed=920 + k, generator="wishart")
            lo = phi(x, y, params, 0.0, 30_000, seed=930 + k)
            hi = phi(x, y, params, 1.0, 30_000, seed=930 + k)
            assert hi.value >= lo.value - 3.0 * math.hypot(lo.stderr, hi.stderr)

    def test_grid_validation(self):
        spec = iid_spec(2)
        with pytest.raises(InvalidInput):
            path_monotonicity_report(spec, spec, SmoothMaxParams(1.0), (), 100, seed=1)
        with pytest.raises(DomainError):
            path_monotonicity_report(spec, spec, SmoothMaxParams(1.0), (0.0, 0.5), 100, seed=1)
