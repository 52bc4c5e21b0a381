import math

import numpy as np
import pytest

from stokeslab import (
    DepthMode,
    PeriodicProfile,
    apply_multiplier,
    dealiased_product,
    derivative_multiplier,
    hilbert_multiplier,
    hilbert_pv_quadrature,
    k_multiplier,
    make_grid,
    profile_from_cosines,
    sample_power,
)


class TestDepthMode:
    def test_finite_requires_positive_depth(self):
        with pytest.raises(ValueError):
            DepthMode.finite(0.0)
        with pytest.raises(ValueError):
            DepthMode.finite(-1.0)

    def test_tokens_round_trip(self):
        for mode in (DepthMode.infinite(), DepthMode.toy(), DepthMode.finite(2.5)):
            assert DepthMode.from_token(mode.token()) == mode
        with pytest.raises(ValueError):
            DepthMode.from_token("wet")


class TestKMultiplier:
    def test_deep_water_symbol_is_abs(self):
        m = k_multiplier(DepthMode.infinite(), 16)
        assert m.symbol(3) == 3.0
        assert m.symbol(-3) == 3.0
        assert m.symbol(0) == 0.0

    def test_finite_depth_coth(self):
        # independent scalar evaluation of coth(1)
        coth1 = math.cosh(1.0) / math.sinh(1.0)
        m = k_multiplier(DepthMode.finite(1.0), 16)
        assert m.symbol(1) == pytest.approx(coth1, abs=1e-15)
        assert m.symbol(1) == pytest.approx(1.3130352855, abs=1e-9)
        assert m.symbol(0) == 0.0

    def test_toy_symbol_is_square(self):
        m = k_multiplier(DepthMode.toy(), 16)
        assert m.symbol(2) == 4.0
        assert m.symbol(-2) == 4.0
        assert m.symbol(0) == 0.0

    def test_deep_limit_of_finite_depth(self):
        shallow = k_multiplier(DepthMode.finite(50.0), 16)
        deep = k_multiplier(DepthMode.infinite(), 16)
        for k in range(1, 9):
            assert shallow.symbol(k) == pytest.approx(deep.symbol(k), rel=1e-12)

    def test_symbol_conjugate_symmetry(self):
        h = hilbert_multiplier(16)
        for k in range(1, 8):
            assert h.symbol(-k) == np.conj(h.symbol(k))
        assert h.symbol(0) == 0.0


class TestApplyMultiplier:
    def test_hilbert_of_cos_is_minus_sin(self):
        g = make_grid(64)
        f = PeriodicProfile.sample(g, np.cos)
        out = apply_multiplier(f, hilbert_multiplier(64))
        assert np.abs(out.values + np.sin(g.points)).max() < 1e-13

    def test_deep_operator_on_cos2(self):
        g = make_grid(64)
        f = PeriodicProfile.sample(g, lambda u: np.cos(2 * u))
        out = apply_multiplier(f, k_multiplier(DepthMode.infinite(), 64))
        assert np.abs(out.values - 2 * np.cos(2 * g.points)).max() < 1e-12

    def test_constant_annihilated(self):
        g = make_grid(32)
        one = PeriodicProfile(g, np.ones(32))
        for m in (
            k_multiplier(DepthMode.infinite(), 32),
            k_multiplier(DepthMode.finite(0.7), 32),
            k_multiplier(DepthMode.toy(), 32),
            hilbert_multiplier(32),
        ):
            assert apply_multiplier(one, m).max_norm() < 1e-14

    def test_size_mismatch(self):
        g = make_grid(32)
        f = PeriodicProfile.sample(g, np.cos)
        with pytest.raises(ValueError):
            apply_multiplier(f, hilbert_multiplier(64))

    def test_linearity(self):
        rng = np.random.default_rng(11)
        g = make_grid(64)
        f = profile_from_cosines(g, rng.standard_normal(12))
        h = profile_from_cosines(g, rng.standard_normal(12))
        m = k_multiplier(DepthMode.infinite(), 64)
        a, b = 0.37, -2.1
        combined = apply_multiplier(PeriodicProfile(g, a * f.values + b * h.values), m)
        split = a * apply_multiplier(f, m).values + b * apply_multiplier(h, m).values
        assert np.abs(combined.values - split).max() < 1e-12

    def test_hilbert_squared_is_minus_identity(self):
        rng = np.random.default_rng(12)
        g = make_grid(128)
        # zero-mean band-limited input (no Nyquist)
        coeffs = np.concatenate([[0.0], rng.standard_normal(40)])
        f = profile_from_cosines(g, coeffs)
        h = hilbert_multiplier(128)
        twice = apply_multiplier(apply_multiplier(f, h), h)
        assert np.abs(twice.values + f.values).max() <= 1e-12

    def test_deep_operator_is_minus_hilbert_derivative(self):
        n = 64
        k_inf = k_multiplier(DepthMode.infinite(), n)
        h = hilbert_multiplier(n)
        d = derivative_multiplier(n)
        for k in range(0, n // 2):
            assert (-h.symbol(k)) * d.symbol(k) == k_inf.symbol(k)

    def test_parseval(self):
        rng = np.random.default_rng(13)
        g = make_grid(128)
        coeffs = np.concatenate([[1.3], rng.standard_normal(40)])
        f = profile_from_cosines(g, coeffs)
        hf = apply_multiplier(f, hilbert_multiplier(128))
        energy_h = np.mean(hf.values**2)
        zero_mean = f.values - f.values.mean()
        assert energy_h == pytest.approx(np.mean(zero_mean**2), rel=1e-12)


class TestDealiasedProduct:
    def test_matches_exact_product_for_low_modes(self):
        g = make_grid(64)
        f = np.cos(g.points)
        exact = (1.0 + np.cos(2 * g.points)) / 2.0
        assert np.abs(dealiased_product(f, f) - exact).max() < 1e-13

    def test_removes_aliased_energy(self):
        n = 64
        g = make_grid(n)
        k = n // 2 - 1
        f = np.cos(k * g.points)
        # true product is (1 + cos(2k u))/2 with 2k beyond the band: only the
        # constant survives projection
        out = dealiased_product(f, f)
        assert np.abs(out - 0.5).max() < 1e-12
        # the plain pointwise product aliases cos(2k u) into the band
        naive = np.fft.irfft(np.fft.rfft(f * f)[: n // 2 + 1], n)
        assert np.abs(naive - 0.5).max() > 0.4


class TestHilbertPvQuadrature:
    def test_cos_against_closed_form(self):
        g = make_grid(512)
        f = PeriodicProfile.sample(g, np.cos)
        got = hilbert_pv_quadrature(f, 0.7, 64)
        assert got == pytest.approx(-np.sin(0.7), abs=1e-6)

    def test_constant_annihilated(self):
        g = make_grid(512)
        f = PeriodicProfile(g, np.full(512, 2.2))
        assert abs(hilbert_pv_quadrature(f, 0.3, 64)) < 1e-10

    def test_singular_profile_cross_validation(self):
        g = make_grid(512)
        f = sample_power(-1.0 / 3.0, g)
        symbol = apply_multiplier(f, hilbert_multiplier(512))
        j = int(np.argmin(np.abs(g.points - 0.5)))
        got = hilbert_pv_quadrature(f, float(g.points[j]), 64)
        assert got == pytest.approx(symbol.values[j], abs=1e-3)

    def test_domain_and_terms_validation(self):
        g = make_grid(64)
        f = PeriodicProfile.sample(g, np.cos)
        with pytest.raises(ValueError):
            hilbert_pv_quadrature(f, np.pi, 8)
        with pytest.raises(ValueError):
            hilbert_pv_quadrature(f, -4.0, 8)
        with pytest.raises(ValueError):
            hilbert_pv_quadrature(f, 0.5, 0)

    def test_symbol_agreement_and_terms_convergence(self):
        # trig polynomial of degree n/4; agreement to 1e-8 at terms=128 and
        # monotone improvement as the image count doubles
        rng = np.random.default_rng(42)
        n = 512
        g = make_grid(n)
        deg = n // 4
        a = rng.standard_normal(deg + 1)
        b = rng.standard_normal(deg + 1)
        ks = np.arange(deg + 1)

        def trig(u):
            ang = np.outer(u, ks)
            return (a * np.cos(ang) + b * np.sin(ang)).sum(axis=1)

        f = PeriodicProfile(g, trig(g.points))
        ref = apply_multiplier(f, hilbert_multiplier(n))
        probes_idx = [10, 100, 256, 400, 505]
        probes_off = [-2.5, -1.1, 0.33, 2.9]

        def max_err(terms):
            errs = [
                abs(hilbert_pv_quadrature(f, float(g.points[i]), terms) - ref.values[i])
                for i in probes_idx
            ]
            errs += [
                abs(hilbert_pv_quadrature(f, u, terms) - float(ref.interpolate(u)))
                for u in probes_off
            ]
            return max(errs)

        errors = [max_err(t) for t in (8, 16, 32, 64, 128)]
        assert errors[-1] <= 1e-8
        assert all(e1 > e2 for e1, e2 in zip(errors, errors[1:]))
