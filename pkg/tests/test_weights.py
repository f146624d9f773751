import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfbounds.errors import ParameterError
from tfbounds.weights import (WeightFunction, builtin_weight,
                              check_weight_conditions, default_condition_grid,
                              parse_weight_spec, young_conjugate, YOUNG_T_CAP)

LOG = builtin_weight("log")
HALF = builtin_weight("power", s=0.5)


class TestBuiltins:
    def test_log_weight_vanishes_on_unit_interval(self):
        assert LOG(1.0) == 0.0
        assert LOG(0.3) == 0.0

    def test_log_weight_alpha_bound_on_grid(self):
        # analytic: log(1+2t) <= log 2 + log(1+t), so K = 1 certifies (alpha)
        t = np.linspace(0.0, 1e4, 200001)
        assert np.all(LOG(2 * t) - 1.0 * (1.0 + LOG(t)) <= 1e-12)

    def test_power_half_constants(self):
        assert HALF.K == pytest.approx(math.sqrt(2.0))
        assert HALF.b == 1.0
        # min of t^0.5 - 1 - log(1+t) sits at t = 0 with value -1
        assert HALF.a == pytest.approx(-1.0, abs=1e-9)
        assert HALF.gamma_prime

    def test_power_half_alpha_margin_on_grid(self):
        # algebraic: (2t)^s - 1 <= 2^s (1 + t^s - 1)
        t = np.linspace(0.0, 1e4, 200001)
        assert np.all(HALF.K * (1.0 + HALF(t)) - HALF(2 * t) >= -1e-12)

    def test_power_exponent_domain(self):
        for bad in (0.0, 1.0, -0.2, 1.7):
            with pytest.raises(ParameterError):
                builtin_weight("power", s=bad)

    def test_parse_weight_spec(self):
        assert parse_weight_spec("log").name == "log"
        assert parse_weight_spec("power:0.5").K == pytest.approx(2 ** 0.5)


class TestConditionReports:
    @pytest.mark.parametrize("w", [LOG, HALF], ids=["log", "power"])
    def test_builtin_weights_pass_all_conditions(self, w):
        rep = check_weight_conditions(w)
        assert rep.passed, rep.to_dict()
        assert rep.alpha_margin >= -1e-12
        assert rep.gamma_margin >= -1e-12
        assert rep.delta_margin >= -1e-12
        assert np.isfinite(rep.alpha_margin)

    def test_constant_weight_fails_gamma(self):
        w = WeightFunction(name="const0", fn=lambda t: np.zeros_like(t),
                           K=1.0, a=0.0, b=1.0, gamma_prime=False)
        rep = check_weight_conditions(w)
        assert not rep.gamma_ok
        assert not rep.passed
        assert any(v[0] == "gamma" for v in rep.violations)

    def test_non_monotone_weight_reported_not_raised(self):
        w = WeightFunction(name="dip", fn=lambda t: np.where(t > 10, 0.0, np.log1p(t)),
                           K=1.0, a=-1.0, b=1.0, gamma_prime=False)
        rep = check_weight_conditions(w)
        assert not rep.monotone_ok

    def test_grid_must_start_at_zero(self):
        with pytest.raises(ParameterError):
            check_weight_conditions(LOG, grid=np.array([1.0, 2.0]))


class TestYoungConjugate:
    @pytest.mark.parametrize("w", [LOG, HALF], ids=["log", "power"])
    def test_zero_at_zero(self, w):
        assert young_conjugate(w, 0.0) == 0.0

    @pytest.mark.parametrize("w", [LOG, HALF], ids=["log", "power"])
    def test_monotone_in_s(self, w):
        assert young_conjugate(w, 2.0) >= young_conjugate(w, 1.0)

    @pytest.mark.parametrize("w,s", [(LOG, 0.5), (LOG, 2.0), (HALF, 1.0), (HALF, 3.0)])
    def test_matches_brute_force_grid_sup(self, w, s):
        # oracle: dense sup over the same documented bracket [0, YOUNG_T_CAP]
        t = np.linspace(0.0, YOUNG_T_CAP, 1_000_001)
        brute = float(np.max(s * t - w(np.exp(t))))
        assert young_conjugate(w, s) == pytest.approx(brute, abs=1e-6)

    @pytest.mark.parametrize("w", [LOG, HALF], ids=["log", "power"])
    def test_convex_in_s_midpoint(self, w):
        s = np.linspace(0.0, 4.0, 17)
        vals = [young_conjugate(w, float(v)) for v in s]
        mids = [(vals[i] + vals[i + 2]) / 2 - vals[i + 1] for i in range(len(s) - 2)]
        assert min(mids) >= -1e-9

    def test_rejects_negative_s(self):
        with pytest.raises(ParameterError):
            young_conjugate(LOG, -1.0)


class TestWeightInvariants:
    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=0.0, max_value=1e4),
           st.floats(min_value=0.0, max_value=1e4))
    def test_two_point_subadditivity_surrogate(self, t1, t2):
        # omega(t1+t2) <= K (1 + omega(t1) + omega(t2)) for both builtins
        for w in (LOG, HALF):
            assert w(t1 + t2) <= w.K * (1.0 + w(t1) + w(t2)) + 1e-12

    @pytest.mark.parametrize("w,lam,p", [(LOG, 5.0, 1.0), (LOG, 3.0, 2.0),
                                         (HALF, 2.0, 1.0), (HALF, 1.0, 2.0)])
    def test_exponential_weight_integrable_tail(self, w, lam, p):
        # integral of e^{-lam p omega} stabilizes when the domain doubles; lam is
        # taken comfortably above N/(b p) so the doubling criterion is meaningful
        assert lam > 1.0 / (w.b * p)

        def quad(T):
            t = np.linspace(-T, T, 2_000_001)
            return np.trapz(np.exp(-lam * p * w(t)), t)

        assert quad(2e3) - quad(1e3) < 1e-8 * max(quad(1e3), 1.0)
