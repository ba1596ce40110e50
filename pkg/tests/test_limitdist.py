"""Limiting density of position/time: values, quadrature, entropy constants."""

from __future__ import annotations

import math

import numpy as np
import pytest

import qwentropy as qw
from qwentropy import BadOrder, CoinDegenerate, DivergentIntegral, NonConvergedQuadrature

INV_SQRT2 = 2**-0.5


class TestMakeLimitDensity:
    def test_symmetric_hadamard_parameters(self, hadamard, symmetric_state):
        ld = qw.make_limit_density(hadamard, symmetric_state)
        assert ld.absA == pytest.approx(INV_SQRT2, abs=1e-15)
        assert ld.absB == pytest.approx(INV_SQRT2, abs=1e-15)
        assert ld.drift == pytest.approx(0.0, abs=1e-15)

    def test_left_start_has_unit_drift_coefficient(self, hadamard, left_state):
        ld = qw.make_limit_density(hadamard, left_state)
        assert ld.drift == pytest.approx(1.0, abs=1e-15)

    def test_rotation_third_pi_parameters(self, rot3, left_state):
        ld = qw.make_limit_density(rot3, left_state)
        assert ld.absA == pytest.approx(0.5, abs=1e-15)
        assert ld.absB == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
        assert ld.drift == pytest.approx(1.0, abs=1e-15)

    def test_degenerate_coin_rejected(self, left_state):
        with pytest.raises(CoinDegenerate):
            qw.make_limit_density(qw.make_coin(1, 0, 1), left_state)


class TestDensityAt:
    def test_zero_outside_the_support(self, hadamard, symmetric_state):
        ld = qw.make_limit_density(hadamard, symmetric_state)
        for x in (-1.0, -ld.absA, ld.absA, 0.99, 37.0):
            assert qw.density_at(ld, x) == 0.0

    def test_symmetric_value_at_origin(self, hadamard, symmetric_state):
        # f(0) = |b| / (pi |a| sqrt(|a|^2)) with the drift term absent: 1/pi
        ld = qw.make_limit_density(hadamard, symmetric_state)
        assert qw.density_at(ld, 0.0) == pytest.approx(1.0 / math.pi, rel=1e-12)

    def test_symmetric_density_is_even(self, hadamard, symmetric_state):
        ld = qw.make_limit_density(hadamard, symmetric_state)
        for x in np.linspace(0.01, 0.69, 12):
            assert qw.density_at(ld, x) == pytest.approx(qw.density_at(ld, -x), rel=1e-12)

    def test_unit_drift_tilts_mass_to_the_left(self, hadamard, left_state):
        ld = qw.make_limit_density(hadamard, left_state)
        for x in (0.1, 0.3, 0.6):
            assert qw.density_at(ld, -x) > qw.density_at(ld, x) > 0.0


class TestIntegralFalpha:
    def test_order_zero_is_support_length(self, hadamard, rot3, symmetric_state):
        value, err = qw.integral_falpha(qw.make_limit_density(hadamard, symmetric_state), 0.0)
        assert value == pytest.approx(math.sqrt(2), abs=1e-10)
        assert err == 0.0
        value, _ = qw.integral_falpha(qw.make_limit_density(rot3, symmetric_state), 0.0)
        assert value == pytest.approx(1.0, abs=1e-10)

    def test_order_one_is_total_mass(self, hadamard, symmetric_state, left_state):
        for state in (symmetric_state, left_state):
            value, err = qw.integral_falpha(qw.make_limit_density(hadamard, state), 1.0)
            assert value == pytest.approx(1.0, abs=1e-10)
            assert err < 1e-8

    def test_total_mass_on_random_inputs(self, rng):
        for _ in range(25):
            ld = qw.make_limit_density(qw.random_coin(rng), qw.random_state(rng))
            value, err = qw.integral_falpha(ld, 1.0)
            assert abs(value - 1.0) < 1e-8
            assert err < 1e-8

    def test_golden_integral_values(self, hadamard, symmetric_state, left_state, golden):
        states = {"sym": symmetric_state, "left": left_state}
        for state_key, by_alpha in golden["limits"].items():
            ld = qw.make_limit_density(hadamard, states[state_key])
            for alpha_text, entry in by_alpha.items():
                value, err = qw.integral_falpha(ld, float(alpha_text))
                assert value == pytest.approx(entry["integral"], abs=1e-9), (
                    state_key,
                    alpha_text,
                )
                assert err < 1e-8

    @pytest.mark.parametrize("alpha", [2.0, 2.5, 100.0])
    def test_divergent_orders_rejected(self, hadamard, symmetric_state, alpha):
        ld = qw.make_limit_density(hadamard, symmetric_state)
        with pytest.raises(DivergentIntegral):
            qw.integral_falpha(ld, alpha)

    def test_negative_order_rejected(self, hadamard, symmetric_state):
        with pytest.raises(BadOrder):
            qw.integral_falpha(qw.make_limit_density(hadamard, symmetric_state), -0.5)

    def test_near_divergent_order_converges_or_reports(self, hadamard, symmetric_state):
        # alpha close to 2 keeps the integral finite but nearly singular; the
        # quadrature either meets its error budget or refuses loudly.
        ld = qw.make_limit_density(hadamard, symmetric_state)
        value, err = qw.integral_falpha(ld, 1.9)
        assert value > 1.0 and err <= 1e-8
        with pytest.raises(NonConvergedQuadrature):
            qw.integral_falpha(ld, 1.99)


class TestEntropyConstants:
    def test_renyi_limit_order_zero_closed_form(self, hadamard, rot3, symmetric_state):
        assert qw.renyi_limit(
            qw.make_limit_density(hadamard, symmetric_state), 0.0
        ) == pytest.approx(0.5, abs=1e-12)
        assert qw.renyi_limit(
            qw.make_limit_density(rot3, symmetric_state), 0.0
        ) == pytest.approx(0.0, abs=1e-12)

    def test_tsallis_limit_order_zero_closed_form(self, hadamard, rot3, symmetric_state):
        assert qw.tsallis_limit_const(
            qw.make_limit_density(hadamard, symmetric_state), 0.0
        ) == pytest.approx(math.sqrt(2) - 1.0, abs=1e-12)
        assert qw.tsallis_limit_const(
            qw.make_limit_density(rot3, symmetric_state), 0.0
        ) == pytest.approx(0.0, abs=1e-12)

    def test_golden_entropy_constants(self, hadamard, symmetric_state, left_state, golden):
        states = {"sym": symmetric_state, "left": left_state}
        for state_key, by_alpha in golden["limits"].items():
            ld = qw.make_limit_density(hadamard, states[state_key])
            for alpha_text, entry in by_alpha.items():
                alpha = float(alpha_text)
                assert qw.renyi_limit(ld, alpha) == pytest.approx(entry["renyi"], abs=1e-9)
                assert qw.tsallis_limit_const(ld, alpha) == pytest.approx(
                    entry["tsallis"], abs=1e-9
                )

    def test_excluded_order_rejected(self, hadamard, symmetric_state):
        ld = qw.make_limit_density(hadamard, symmetric_state)
        with pytest.raises(BadOrder):
            qw.renyi_limit(ld, 1.0)
        with pytest.raises(BadOrder):
            qw.tsallis_limit_const(ld, 1.0)


class TestConditionalLimits:
    def test_singleton_prior_equals_plain_limit(self, hadamard, symmetric_state):
        prior = qw.make_prior([(symmetric_state, 1.0)])
        ref = qw.renyi_limit(qw.make_limit_density(hadamard, symmetric_state), 0.5)
        for variant in qw.VARIANTS:
            assert qw.conditional_renyi_limit(variant, hadamard, prior, 0.5) == pytest.approx(
                ref, abs=1e-12
            )

    def test_worst_case_variant_takes_the_larger_constant(
        self, hadamard, left_state, symmetric_state
    ):
        prior = qw.make_prior([(left_state, 0.5), (symmetric_state, 0.5)])
        limits = [
            qw.renyi_limit(qw.make_limit_density(hadamard, s), 0.5)
            for s in (left_state, symmetric_state)
        ]
        got = qw.conditional_renyi_limit("RW", hadamard, prior, 0.5)
        assert got == pytest.approx(max(limits), abs=1e-12)

    def test_averaged_variant_is_the_weighted_mean(self, hadamard, left_state, symmetric_state):
        prior = qw.make_prior([(left_state, 0.25), (symmetric_state, 0.75)])
        limits = [
            qw.renyi_limit(qw.make_limit_density(hadamard, s), 0.5)
            for s in (left_state, symmetric_state)
        ]
        got = qw.conditional_renyi_limit("C", hadamard, prior, 0.5)
        assert got == pytest.approx(0.25 * limits[0] + 0.75 * limits[1], abs=1e-12)


class TestMixtureDensity:
    def test_drift_coefficient_averages_by_weight(self, hadamard, left_state, right_state):
        prior = qw.make_prior([(left_state, 0.3), (right_state, 0.7)])
        md = qw.mixture_density(hadamard, prior)
        assert md.drift == pytest.approx(0.3 * 1.0 + 0.7 * -1.0, abs=1e-12)
        assert md.absA == pytest.approx(INV_SQRT2, abs=1e-15)

    def test_mixture_integrates_to_one(self, hadamard, left_state, right_state):
        prior = qw.make_prior([(left_state, 0.5), (right_state, 0.5)])
        value, _ = qw.integral_falpha(qw.mixture_density(hadamard, prior), 1.0)
        assert value == pytest.approx(1.0, abs=1e-8)

    def test_uniform_two_state_mixture_is_drift_free(self, hadamard, left_state, right_state):
        prior = qw.make_prior([(left_state, 0.5), (right_state, 0.5)])
        md = qw.mixture_density(hadamard, prior)
        assert md.drift == pytest.approx(0.0, abs=1e-15)
