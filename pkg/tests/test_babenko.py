import numpy as np
import pytest

from stokeslab import (
    DepthMode,
    PeriodicProfile,
    SingularJacobianError,
    SolverConfig,
    WaveState,
    crest_trough_height,
    deviation,
    diagnose,
    fixed_point_map,
    jacobian_apply,
    make_grid,
    newton_solve,
    physical_surface,
    profile_from_cosines,
    residual,
)

DEEP = DepthMode.infinite()


def _state(grid, values, c, mode=DEEP):
    return WaveState(PeriodicProfile(grid, values), c, mode)


class TestResidual:
    def test_flat_state_is_root_for_any_speed(self):
        g = make_grid(64)
        for c in (0.0, 0.5, 1.0, 2.7):
            assert residual(_state(g, np.zeros(64), c)).max_norm() == 0.0

    def test_small_cosine_closed_form(self):
        # eta = eps cos u at c = 1: residual is -eps^2 (1 + 2 cos 2u) / 2
        g = make_grid(128)
        eps = 0.01
        st = _state(g, eps * np.cos(g.points), 1.0)
        expected = -(eps**2) * (1.0 + 2.0 * np.cos(2 * g.points)) / 2.0
        assert np.abs(residual(st).values - expected).max() < 1e-14

    def test_toy_mode_linear_term_vanishes(self):
        g = make_grid(64)
        eps = 1e-4
        st = _state(g, eps * np.cos(g.points), 1.0, DepthMode.toy())
        # toy symbol is 1 at |k| = 1, so the linear part cancels at c = 1
        assert residual(st).max_norm() < 10 * eps**2


class TestDeviation:
    def test_flat(self):
        g = make_grid(16)
        dev = deviation(_state(g, np.zeros(16), 1.0))
        assert np.all(dev.values == 0.5)

    def test_constant_ceiling(self):
        g = make_grid(16)
        c = 1.7
        dev = deviation(_state(g, np.full(16, c**2 / 2), c))
        assert dev.max_norm() == 0.0

    def test_cosine(self):
        g = make_grid(16)
        dev = deviation(_state(g, np.cos(g.points), np.sqrt(2.0)))
        assert np.abs(dev.values - (1.0 - np.cos(g.points))).max() < 1e-15


class TestFixedPointMap:
    def test_constant_is_fixed_point(self):
        g = make_grid(32)
        c = 1.2
        dev = PeriodicProfile(g, np.full(32, c**2 / 2))
        out = fixed_point_map(dev, c)
        assert np.abs(out.values - c**2 / 2).max() < 1e-14

    def test_identity_with_residual(self):
        rng = np.random.default_rng(21)
        g = make_grid(128)
        for trial in range(5):
            c = 0.8 + 0.3 * trial
            dev = profile_from_cosines(
                g, np.concatenate([[0.6], 0.05 * rng.standard_normal(20)])
            )
            lhs = dev.values - fixed_point_map(dev, c).values
            rhs = residual(_state(g, c**2 / 2 - dev.values, c)).values
            scale = max(1.0, np.abs(rhs).max())
            assert np.abs(lhs - rhs).max() / scale < 1e-12


class TestJacobian:
    def test_annihilates_first_cosine_at_bifurcation(self):
        g = make_grid(64)
        st = _state(g, np.zeros(64), 1.0)
        direction = PeriodicProfile.sample(g, np.cos)
        assert jacobian_apply(st, direction).max_norm() < 1e-14

    def test_second_cosine_at_bifurcation(self):
        g = make_grid(64)
        st = _state(g, np.zeros(64), 1.0)
        direction = PeriodicProfile.sample(g, lambda u: np.cos(2 * u))
        out = jacobian_apply(st, direction)
        assert np.abs(out.values - np.cos(2 * g.points)).max() < 1e-13

    def test_matches_central_differences(self):
        rng = np.random.default_rng(33)
        g = make_grid(128)
        h = 1e-6
        for _ in range(3):
            eta = profile_from_cosines(g, 0.05 * rng.standard_normal(16))
            delta = profile_from_cosines(g, 0.5 * rng.standard_normal(16))
            c = 1.0 + 0.2 * rng.random()
            jd = jacobian_apply(WaveState(eta, c, DEEP), delta).values
            plus = residual(_state(g, eta.values + h * delta.values, c)).values
            minus = residual(_state(g, eta.values - h * delta.values, c)).values
            fd = (plus - minus) / (2 * h)
            assert np.abs(jd - fd).max() / np.abs(fd).max() <= 1e-6


class TestNewtonSolve:
    def test_small_amplitude_fixed_height(self):
        n = 256
        g = make_grid(n)
        s = 0.002
        init = WaveState(profile_from_cosines(g, [0.0, s / 2]), 1.0, DEEP)
        cfg = SolverConfig(n=n, max_iters=6)
        sol = newton_solve(init, cfg, height=s)
        assert residual(sol).max_norm() <= cfg.newton_tol
        assert crest_trough_height(sol.profile) == pytest.approx(s, abs=1e-14)
        assert sol.speed > 1.0
        assert sol.speed - 1.0 < 10 * s**2

    def test_speed_tends_to_one_with_height(self):
        n = 128
        g = make_grid(n)
        cfg = SolverConfig(n=n)
        speeds = {}
        for s in (0.004, 0.002, 0.001):
            init = WaveState(profile_from_cosines(g, [0.0, s / 2]), 1.0, DEEP)
            speeds[s] = newton_solve(init, cfg, height=s).speed
        gaps = [speeds[s] - 1.0 for s in (0.004, 0.002, 0.001)]
        assert all(x > y > 0 for x, y in zip(gaps, gaps[1:]))
        # quadratic shrinkage of c - 1 with s
        assert gaps[0] / gaps[1] == pytest.approx(4.0, rel=0.05)

    def test_trivial_solution_fixed_speed(self):
        # no resonant mode on this grid for c = 0.5, so the flat state is an
        # isolated root and is returned unchanged
        n = 8
        g = make_grid(n)
        st = WaveState(PeriodicProfile(g, np.zeros(n)), 0.5, DEEP)
        sol = newton_solve(st, SolverConfig(n=n))
        assert sol.profile.max_norm() == 0.0

    def test_singular_at_bifurcation(self):
        n = 64
        g = make_grid(n)
        st = WaveState(PeriodicProfile(g, np.zeros(n)), 1.0, DEEP)
        with pytest.raises(SingularJacobianError):
            newton_solve(st, SolverConfig(n=n))

    def test_iterates_stay_even(self):
        n = 128
        g = make_grid(n)
        s = 0.2
        init = WaveState(profile_from_cosines(g, [0.0, s / 2]), 1.0, DEEP)
        sol = newton_solve(init, SolverConfig(n=n), height=s)
        vals = sol.profile.values
        assert np.abs(vals - vals[::-1]).max() < 1e-13
        spectrum = sol.profile.spectrum()
        assert np.abs(spectrum.imag).max() < 1e-13


class TestDiagnose:
    def test_flat_state(self):
        g = make_grid(32)
        d = diagnose(_state(g, np.zeros(32), 1.0))
        assert d.residual_norm == 0.0
        assert d.mean_zero_value == 0.0
        assert d.crest_gap == pytest.approx(0.5)
        assert d.tail_fraction == 0.0

    def test_constant_corrected_cosine_satisfies_mean_zero(self):
        g = make_grid(64)
        a = 0.1
        st = _state(g, a * np.cos(g.points) - a**2 / 2, 1.0)
        d = diagnose(st)
        assert abs(d.mean_zero_value) < 1e-14

    def test_converged_state_mean_zero_within_tolerance(self):
        n = 128
        g = make_grid(n)
        cfg = SolverConfig(n=n)
        init = WaveState(profile_from_cosines(g, [0.0, 0.05]), 1.0, DEEP)
        sol = newton_solve(init, cfg, height=0.1)
        d = diagnose(sol)
        assert abs(d.mean_zero_value) <= 10 * cfg.newton_tol


class TestPhysicalSurface:
    def test_flat_surface(self):
        g = make_grid(64)
        surf = physical_surface(_state(g, np.zeros(64), 1.0))
        assert np.abs(surf.x - g.points).max() == 0.0
        assert np.all(surf.y == 0.0)
        assert surf.crest_angle_deg == pytest.approx(180.0)

    def test_cosine_surface_closed_form(self):
        g = make_grid(128)
        a = 0.1
        surf = physical_surface(_state(g, a * np.cos(g.points), 1.0))
        assert np.abs(surf.x - (g.points + a * np.sin(g.points))).max() < 1e-13
        assert np.abs(surf.y - a * np.cos(g.points)).max() == 0.0

    def test_requires_deep_water(self):
        g = make_grid(32)
        with pytest.raises(ValueError):
            physical_surface(_state(g, np.zeros(32), 1.0, DepthMode.finite(1.0)))

    def test_synthetic_wedge_angle_approaches_120(self):
        n = 16384
        g = make_grid(n)
        amp = 2.0
        st = _state(g, 0.5 - amp * np.abs(g.points) ** (2.0 / 3.0), 1.0)
        windows = (0.4, 0.1, 0.02, 0.005)
        angles = [physical_surface(st, angle_window=w).crest_angle_deg for w in windows]
        gaps = [abs(a - 120.0) for a in angles]
        assert all(x > y for x, y in zip(gaps, gaps[1:]))
        assert gaps[-1] <= 5.0
