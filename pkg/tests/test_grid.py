import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfbounds.errors import AliasingError, GridError, ParameterError
from tfbounds.grid import (DEFAULT_GRID, GridSpec, SampledSignal,
                           default_battery, fourier_transform,
                           inverse_fourier_transform, make_signal,
                           parse_signal_spec, refine, reverse, shift)


def gaussian(grid=DEFAULT_GRID, **kw):
    return make_signal("gaussian", grid, **kw)


class TestGridSpec:
    def test_centered_covers_half_open_interval(self):
        g = GridSpec.centered(20.0, 1024)
        x = g.points()
        assert x[0] == -20.0
        assert x[-1] == pytest.approx(20.0 - g.dx)

    def test_dual_is_centered_and_involutive_for_centered_grids(self):
        g = DEFAULT_GRID
        d = g.dual()
        assert d.x0 == pytest.approx(-np.pi / g.dx)
        assert d.dx * g.dx * g.M == pytest.approx(2 * np.pi)
        assert d.dual() == g

    def test_rejects_non_power_of_two(self):
        with pytest.raises(GridError):
            GridSpec(0.0, 0.1, 100)


class TestFourierTransform:
    def test_gaussian_closed_form(self):
        fh = fourier_transform(gaussian())
        xi = fh.grid.points()
        exact = np.sqrt(2 * np.pi) * np.exp(-xi ** 2 / 2)
        assert np.max(np.abs(fh.values - exact)) <= 1e-8

    def test_zero_maps_to_zero(self):
        z = SampledSignal(DEFAULT_GRID, np.zeros(DEFAULT_GRID.M))
        assert np.all(fourier_transform(z).values == 0)

    def test_parseval(self):
        # ||Ff||_2 = sqrt(2 pi) ||f||_2 for every battery signal
        for _, f in default_battery():
            fh = fourier_transform(f)
            assert fh.l2norm() == pytest.approx(np.sqrt(2 * np.pi) * f.l2norm(), rel=1e-8)

    def test_roundtrip_gaussian_and_hermite(self):
        for f in (gaussian(), make_signal("hermite", DEFAULT_GRID, n=3)):
            back = inverse_fourier_transform(fourier_transform(f))
            assert back.grid == f.grid
            scale = np.max(np.abs(f.values))
            assert np.max(np.abs(back.values - f.values)) <= 1e-10 * scale

    def test_inverse_of_gaussian_spectrum(self):
        xig = DEFAULT_GRID.dual()
        F = SampledSignal(xig, np.sqrt(2 * np.pi) * np.exp(-xig.points() ** 2 / 2))
        f = inverse_fourier_transform(F)
        exact = np.exp(-f.grid.points() ** 2 / 2)
        assert np.max(np.abs(f.values - exact)) <= 1e-8

    def test_hermite_eigenfunction_property(self):
        # F(H_n e^{-x^2/2}) = sqrt(2 pi) (-i)^n H_n e^{-xi^2/2}
        for n in range(5):
            f = make_signal("hermite", DEFAULT_GRID, n=n)
            fh = fourier_transform(f)
            k = fh.grid.index_of(0.0) + 7
            g = make_signal("hermite", fh.grid, guard=False, n=n)
            expect = np.sqrt(2 * np.pi) * (-1j) ** n * g.values[k]
            assert fh.values[k] == pytest.approx(expect, abs=1e-8)

    @settings(max_examples=20, deadline=None)
    @given(st.complex_numbers(max_magnitude=10, min_magnitude=0.01),
           st.complex_numbers(max_magnitude=10, min_magnitude=0.01))
    def test_linearity(self, a, b):
        f = gaussian()
        g = make_signal("hermite", DEFAULT_GRID, n=2)
        lhs = fourier_transform(SampledSignal(DEFAULT_GRID, a * f.values + b * g.values)).values
        rhs = a * fourier_transform(f).values + b * fourier_transform(g).values
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(rhs))

    def test_domain_doubling_stability(self):
        # doubling the domain (and M) moves the computed transform by <= 1e-8
        big = GridSpec.centered(40.0, 2048)
        for name, f in default_battery():
            fb = make_signal(**_battery_kwargs(name), grid=big)
            small = fourier_transform(f)
            large = fourier_transform(fb)
            # the doubled domain halves the frequency step: common points interleave
            common = large.values[::2]
            assert np.max(np.abs(large.grid.points()[::2] - small.grid.points())) < 1e-12
            assert np.max(np.abs(common - small.values)) <= 1e-8

    def test_guard_failure_names_tail_mass(self):
        wide = make_signal("gaussian", DEFAULT_GRID, guard=False, width=15.0)
        with pytest.raises(AliasingError, match="tail/peak"):
            fourier_transform(wide)


def _battery_kwargs(name):
    from tfbounds.grid import BATTERY_SPECS
    return dict(dict(BATTERY_SPECS)[name])


class TestRefine:
    def test_identity_for_r_equal_one(self):
        f = gaussian()
        assert refine(f, 1) is f

    def test_agrees_at_original_nodes(self):
        f = make_signal("hermite", DEFAULT_GRID, n=4)
        fr = refine(f, 4)
        assert np.max(np.abs(fr.values[::4] - f.values)) <= 1e-10

    def test_gaussian_midpoints_match_closed_form(self):
        f = gaussian()
        fr = refine(f, 4)
        x = fr.grid.points()
        assert np.max(np.abs(fr.values - np.exp(-x ** 2 / 2))) <= 1e-8

    def test_linear_phase_signal(self):
        f = make_signal("gaussian", DEFAULT_GRID, modulation=5.0)
        fr = refine(f, 2)
        x = fr.grid.points()
        exact = np.exp(-x ** 2 / 2) * np.exp(1j * 5.0 * x)
        assert np.max(np.abs(fr.values - exact)) <= 1e-8

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ParameterError):
            refine(gaussian(), 3)


class TestMakeSignal:
    def test_gaussian_peak_value(self):
        f = gaussian()
        assert f.values[DEFAULT_GRID.index_of(0.0)] == pytest.approx(1.0)

    def test_hermite_odd_symmetry(self):
        f = make_signal("hermite", DEFAULT_GRID, n=1)
        v = f.values[1:]
        assert np.array_equal(v[::-1], -v)

    def test_two_gaussian_center_value(self):
        from tfbounds.grid import SCAN_GRID
        f = make_signal("two_gaussian", SCAN_GRID, s=2.0)
        assert f.values[SCAN_GRID.index_of(0.0)] == pytest.approx(5.0)

    def test_grid_too_small_raises(self):
        with pytest.raises(AliasingError):
            make_signal("gaussian", DEFAULT_GRID, width=12.0)

    def test_power_of_two_guard_parameters(self):
        with pytest.raises(ParameterError):
            make_signal("hermite", DEFAULT_GRID, n=9)
        with pytest.raises(ParameterError):
            make_signal("two_gaussian", DEFAULT_GRID, s=0.5)

    def test_parse_signal_spec(self):
        f = parse_signal_spec("gaussian:c=2,w=0.8", DEFAULT_GRID)
        g = make_signal("gaussian", DEFAULT_GRID, center=2.0, width=0.8)
        assert np.array_equal(f.values, g.values)
        h = parse_signal_spec("hermite:3", DEFAULT_GRID)
        assert np.max(np.abs(h.values)) > 0

    def test_battery_signals_pass_guard(self):
        for _, f in default_battery():
            f.require_guard()


class TestHelpers:
    def test_reverse_is_involution_off_edge(self):
        f = make_signal("gaussian", DEFAULT_GRID, center=1.5)
        rr = reverse(reverse(f))
        assert np.max(np.abs(rr.values[1:] - f.values[1:])) == 0

    def test_shift_matches_translated_samples(self):
        f = gaussian()
        s = shift(f, 128)  # 128 * dx = 5.0
        x = DEFAULT_GRID.points()
        assert np.max(np.abs(s.values - np.exp(-(x - 5.0) ** 2 / 2))) <= 1e-12
