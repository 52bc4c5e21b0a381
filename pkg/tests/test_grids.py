import numpy as np
import pytest

from stokeslab import PeriodicProfile, make_grid, profile_from_cosines, sample_power


def test_staggered_points_n4():
    g = make_grid(4)
    assert np.allclose(g.points, [-3 * np.pi / 4, -np.pi / 4, np.pi / 4, 3 * np.pi / 4])


def test_staggered_points_symmetric_n8():
    g = make_grid(8)
    assert len(g.points) == 8
    assert np.all(np.diff(g.points) > 0)
    assert np.all((g.points > -np.pi) & (g.points < np.pi))
    assert np.abs(g.points).min() > 0
    assert np.allclose(g.points, -g.points[::-1])


@pytest.mark.parametrize("n", [3, 2, 0, -4, 7])
def test_bad_grid_sizes(n):
    with pytest.raises(ValueError):
        make_grid(n)


def test_profile_requires_finite_values():
    g = make_grid(8)
    with pytest.raises(ValueError):
        PeriodicProfile(g, np.full(8, np.nan))
    with pytest.raises(ValueError):
        PeriodicProfile(g, np.ones(4))


def test_profile_fft_round_trip():
    rng = np.random.default_rng(3)
    g = make_grid(64)
    vals = rng.standard_normal(64)
    back = np.fft.irfft(np.fft.rfft(vals), 64)
    assert np.abs(back - vals).max() <= 1e-12 * np.abs(vals).max()


def test_interpolation_exact_at_nodes_and_for_modes():
    g = make_grid(32)
    f = PeriodicProfile.sample(g, lambda u: 0.3 + np.cos(u) - 2.0 * np.sin(3 * u))
    at_nodes = f.interpolate(g.points)
    assert np.abs(at_nodes - f.values).max() < 1e-13
    pts = np.array([0.0, 0.1234, -2.5, np.pi - 1e-3])
    exact = 0.3 + np.cos(pts) - 2.0 * np.sin(3 * pts)
    assert np.abs(f.interpolate(pts) - exact).max() < 1e-12


def test_cosine_round_trip():
    rng = np.random.default_rng(5)
    g = make_grid(32)
    coeffs = rng.standard_normal(16)
    prof = profile_from_cosines(g, coeffs)
    assert np.abs(prof.cosine_coeffs() - coeffs).max() < 1e-13
    # even symmetry on the staggered grid
    assert np.abs(prof.values - prof.values[::-1]).max() < 1e-13


def test_sample_power_values():
    g = make_grid(8)
    p = sample_power(2.0 / 3.0, g)
    j = np.argmin(np.abs(g.points - np.pi / 2))
    assert p.values[j] == pytest.approx(np.abs(g.points[j]) ** (2.0 / 3.0))

    flat = sample_power(0.0, g)
    assert np.all(flat.values == 1.0)

    signed = sample_power(-1.0 / 3.0, g, signed=True)
    j = np.argmin(np.abs(g.points + 1.0))
    assert signed.values[j] == pytest.approx(-np.abs(g.points[j]) ** (-1.0 / 3.0))
    assert signed.values[j] < 0


def test_sample_power_rejects_nonintegrable():
    g = make_grid(8)
    with pytest.raises(ValueError):
        sample_power(-1.0, g)
    with pytest.raises(ValueError):
        sample_power(-1.5, g)
