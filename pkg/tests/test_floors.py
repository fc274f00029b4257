"""Error probabilities, dissipation floors, and the first-passage Monte Carlo.

Expected values were frozen from independent 40-digit evaluation; the
correlated first-passage references come from tests/ar1_oracle.py (density
recursion on a Gauss-Legendre grid), itself pinned here against constants that
were cross-validated with a direct 2e6-trial simulation.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ar1_oracle import exceedance_probability
from ktfloor import (
    ErrorSpec,
    OuProcess,
    PhysicalEnvironment,
    RcStage,
    first_passage_mc,
    floor_long,
    floor_short,
    instantaneous_error_prob,
    multi_sample_error,
    observation_count,
    required_swing,
    stationary_path,
    tail_probability,
    tail_quantile,
)

ENV300 = PhysicalEnvironment(temperature=300.0)
SIGMA_1FF_300K = 2.0351773878460816e-3

# Upper-tail values of the unit normal, 40-digit references.
TAIL_AT_3 = 1.3498980316300945e-3
TAIL_AT_5 = 2.8665157187919391e-7
QUANTILE_AT_1E30 = 11.464024688443616

# ln(1/1e-30) and the long-floor example at (eps=1e-25, t_o=3.156e7 s, tau=1e-10 s).
FLOOR_KT_1E30 = 69.07755278982137
FLOOR_KT_LONG_EXAMPLE = 97.85787930873355

# AR(1) exceedance probabilities at lag-1 correlation 1/e (stationary start),
# from the density-recursion oracle, cross-validated by direct simulation.
AR1_EXCEEDANCE = {
    (2.0, 10): 0.187016571,
    (2.0, 100): 0.870105417,
    (2.5, 10): 0.057114147,
    (2.5, 100): 0.442178679,
    (3.0, 10): 0.013060572,
    (3.0, 100): 0.122807268,
}


def make_stage(cap=1e-15, res=1e6, swing=0.0):
    return RcStage(capacitance=cap, resistance=res, swing_voltage=swing, env=ENV300)


class TestTailFunctions:
    def test_tail_at_zero_is_half(self):
        assert tail_probability(0.0) == 0.5

    def test_tail_reference_points(self):
        assert tail_probability(3.0) == pytest.approx(TAIL_AT_3, rel=1e-13)
        assert tail_probability(5.0) == pytest.approx(TAIL_AT_5, rel=1e-13)
        assert tail_probability(QUANTILE_AT_1E30) == pytest.approx(1e-30, rel=1e-12)

    def test_quantile_reference_point(self):
        assert tail_quantile(1e-30) == pytest.approx(QUANTILE_AT_1E30, rel=1e-13)

    def test_quantile_inverts_tail_across_range(self):
        for x in (0.5, 1.0, 3.0, 5.0, 8.0, 12.0):
            assert tail_quantile(float(tail_probability(x))) == pytest.approx(
                x, rel=1e-10
            )

    def test_quantile_domain(self):
        assert tail_quantile(0.5) == 0.0
        for bad in (0.0, -1e-3, 0.6, 1.0):
            with pytest.raises(ValueError):
                tail_quantile(bad)


class TestErrorSpec:
    def test_open_interval_enforced(self):
        for bad in (0.0, -1e-6, 0.5, 0.7, 1.0):
            with pytest.raises(ValueError):
                ErrorSpec(epsilon=bad)
        assert ErrorSpec(epsilon=0.499999).epsilon == 0.499999
        assert ErrorSpec(epsilon=1e-300).epsilon == 1e-300

    def test_time_fields_validated(self):
        with pytest.raises(ValueError):
            ErrorSpec(epsilon=0.1, observation_time=-1.0)
        with pytest.raises(ValueError):
            ErrorSpec(epsilon=0.1, correlation_time=0.0)


class TestFloorShort:
    def test_seventy_kt_scale_example(self):
        result = floor_short(ErrorSpec(epsilon=1e-30), ENV300)
        assert result.floor_kt == pytest.approx(FLOOR_KT_1E30, rel=1e-12)
        assert result.regime == "short"

    def test_joule_and_kt_views_agree_exactly(self):
        result = floor_short(ErrorSpec(epsilon=1e-30), ENV300)
        assert ENV300.joules_to_kt(result.floor_joule) == pytest.approx(
            result.floor_kt, rel=1e-15
        )

    def test_inverse_e_gives_exactly_one_kt(self):
        result = floor_short(ErrorSpec(epsilon=math.exp(-1.0)), ENV300)
        assert result.floor_kt == pytest.approx(1.0, abs=1e-15)

    def test_coin_flip_limit_is_ln_two(self):
        result = floor_short(ErrorSpec(epsilon=0.4999999999), ENV300)
        assert result.floor_kt == pytest.approx(math.log(2.0), rel=1e-8)


class TestFloorLong:
    def test_hundred_kt_scale_example(self):
        spec = ErrorSpec(epsilon=1e-25, observation_time=3.156e7, correlation_time=1e-10)
        result = floor_long(spec, ENV300)
        assert result.floor_kt == pytest.approx(FLOOR_KT_LONG_EXAMPLE, rel=1e-12)
        assert result.regime == "long"

    def test_window_of_one_tau_reduces_to_short_floor(self):
        spec = ErrorSpec(epsilon=1e-9, observation_time=1e-9, correlation_time=1e-9)
        assert floor_long(spec, ENV300).floor_kt == floor_short(spec, ENV300).floor_kt

    def test_doubling_window_adds_ln_two(self):
        base = floor_long(
            ErrorSpec(epsilon=1e-9, observation_time=2e-6, correlation_time=1e-9),
            ENV300,
        )
        doubled = floor_long(
            ErrorSpec(epsilon=1e-9, observation_time=4e-6, correlation_time=1e-9),
            ENV300,
        )
        assert doubled.floor_kt - base.floor_kt == pytest.approx(
            math.log(2.0), rel=1e-9
        )

    def test_equivalent_to_short_floor_at_rescaled_epsilon(self):
        spec = ErrorSpec(epsilon=1e-25, observation_time=3.156e7, correlation_time=1e-10)
        rescaled = ErrorSpec(epsilon=1e-25 * 1e-10 / 3.156e7)
        assert floor_long(spec, ENV300).floor_kt == pytest.approx(
            floor_short(rescaled, ENV300).floor_kt, rel=1e-12
        )

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            floor_long(ErrorSpec(epsilon=1e-9, observation_time=1.0), ENV300)
        with pytest.raises(ValueError):
            floor_long(
                ErrorSpec(
                    epsilon=1e-9, observation_time=0.5e-9, correlation_time=1e-9
                ),
                ENV300,
            )


class TestInstantaneousErrorProb:
    def test_zero_threshold_is_fair_coin(self):
        assert instantaneous_error_prob(0.0, SIGMA_1FF_300K) == 0.5

    def test_three_sigma_example(self):
        eps = instantaneous_error_prob(3.0 * SIGMA_1FF_300K, SIGMA_1FF_300K)
        assert eps == pytest.approx(TAIL_AT_3, rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            instantaneous_error_prob(1e-3, 0.0)
        with pytest.raises(ValueError):
            instantaneous_error_prob(-1e-3, 1e-3)


class TestMultiSampleError:
    def test_single_sample_identity(self):
        assert multi_sample_error(1e-9, 1) == pytest.approx(1e-9, rel=1e-15)

    def test_tiny_probability_large_n_avoids_cancellation(self):
        assert multi_sample_error(1e-9, 1_000_000) == pytest.approx(
            9.995001671245e-4, rel=1e-11
        )

    def test_moderate_example(self):
        assert multi_sample_error(1.3499e-3, 100) == pytest.approx(
            0.12635502555302, rel=1e-12
        )

    def test_edge_probabilities(self):
        assert multi_sample_error(0.0, 1000) == 0.0
        assert multi_sample_error(1.0, 3) == 1.0

    def test_integer_n_enforced(self):
        with pytest.raises(TypeError):
            multi_sample_error(1e-3, 2.5)
        with pytest.raises(ValueError):
            multi_sample_error(1e-3, 0)
        with pytest.raises(ValueError):
            multi_sample_error(1.5, 10)

    @given(
        st.floats(min_value=1e-12, max_value=0.99),
        st.integers(min_value=1, max_value=10_000),
    )
    def test_union_bound_and_monotonicity(self, p, n):
        value = multi_sample_error(p, n)
        assert 0.0 < value <= 1.0
        assert value <= n * p * (1.0 + 1e-12)
        assert value >= multi_sample_error(p, max(1, n - 1)) - 1e-15


class TestRequiredSwing:
    def test_frozen_example(self):
        # Target the 3-sigma tail: swing must be 6 sigma, energy 2*9 = 18 kT.
        need = required_swing(1.3499e-3, make_stage())
        assert need.swing_voltage == pytest.approx(12.21106252e-3, rel=1e-8)
        assert need.energy_kt == pytest.approx(17.99999467, rel=1e-8)
        assert need.energy_joule == pytest.approx(
            ENV300.kt_to_joules(need.energy_kt), rel=1e-15
        )

    def test_energy_exceeds_floor_everywhere(self):
        stage = make_stage()
        for eps in np.geomspace(1e-30, 1e-2, 57):
            e_kt = required_swing(float(eps), stage).energy_kt
            assert e_kt > -math.log(eps)

    def test_ratio_to_floor_approaches_four(self):
        stage = make_stage()
        ratio_1e30 = required_swing(1e-30, stage).energy_kt / FLOOR_KT_1E30
        assert ratio_1e30 == pytest.approx(3.8051105, rel=1e-7)
        ratios = [
            required_swing(float(eps), stage).energy_kt / -math.log(eps)
            for eps in np.geomspace(1e-30, 1e-2, 29)
        ]
        # Grid runs toward larger epsilon, so the ratio must fall.
        assert all(r1 > r2 for r1, r2 in zip(ratios, ratios[1:]))
        assert all(r < 4.0 for r in ratios)

    def test_swing_vanishes_at_coin_flip_limit(self):
        need = required_swing(0.4999999, make_stage())
        assert need.swing_voltage < 1e-5 * SIGMA_1FF_300K

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            required_swing(0.5, make_stage())
        with pytest.raises(ValueError):
            required_swing(0.0, make_stage())
        cold = RcStage(
            1e-15, 1e6, 0.0,
            PhysicalEnvironment(temperature=0.0, allow_zero_temperature=True),
        )
        with pytest.raises(ValueError):
            required_swing(1e-9, cold)


class TestObservationCount:
    def test_float_quotient_near_integer_is_that_integer(self):
        # 1e-7/1e-9 is 99.99999999999999 in floats; the count is 100.
        assert observation_count(1e-7, 1e-9) == 100
        assert observation_count(1e-8, 1e-9) == 10

    def test_fractional_windows_floor(self):
        assert observation_count(1.05e-8, 1e-9) == 10
        assert observation_count(1.999e-9, 1e-9) == 1

    def test_huge_exact_multiple(self):
        assert observation_count(3.156e7, 1e-10) == 315_600_000_000_000_000

    def test_window_shorter_than_tau_rejected(self):
        with pytest.raises(ValueError):
            observation_count(0.999e-9, 1e-9)


class TestFirstPassageMc:
    def test_oracle_reference_values_regenerate(self):
        rho = math.exp(-1.0)
        for (threshold, n_obs), expected in AR1_EXCEEDANCE.items():
            assert exceedance_probability(threshold, n_obs, rho) == pytest.approx(
                expected, rel=1e-6
            )

    def test_deterministic_given_seed(self):
        stage = make_stage()
        kwargs = dict(
            threshold=2.0 * SIGMA_1FF_300K,
            observation_time=1e-8,
            trials=5000,
            seed=99,
        )
        r1 = first_passage_mc(stage, **kwargs)
        r2 = first_passage_mc(stage, **kwargs)
        assert r1.hits == r2.hits
        assert r1.epsilon_hat == r2.epsilon_hat

    def test_worker_count_does_not_change_results(self):
        stage = make_stage()
        results = [
            first_passage_mc(
                stage,
                threshold=2.0 * SIGMA_1FF_300K,
                observation_time=1e-8,
                trials=20_000,
                seed=31,
                workers=w,
            )
            for w in (1, 2, 3)
        ]
        assert results[0].hits == results[1].hits == results[2].hits

    def test_trials_consume_per_path_streams(self):
        # Trial i of the Monte Carlo must see exactly the path that
        # stationary_path(seed, path_index=i) produces.
        stage = make_stage()
        process = OuProcess.from_stage(stage)
        threshold = 0.5 * SIGMA_1FF_300K
        trials, n_obs, seed = 64, 7, 17
        expected_hits = 0
        for i in range(trials):
            path = stationary_path(process, 1e-9, n_obs, seed=seed, path_index=i)
            expected_hits += bool(np.any(path.samples > threshold))
        result = first_passage_mc(
            stage, threshold, observation_time=7e-9, trials=trials, seed=seed
        )
        assert result.n_observations == n_obs
        assert result.hits == expected_hits

    def test_estimate_matches_correlated_oracle(self):
        stage = make_stage()
        result = first_passage_mc(
            stage,
            threshold=2.0 * SIGMA_1FF_300K,
            observation_time=1e-8,
            trials=20_000,
            seed=12345,
        )
        exact = AR1_EXCEEDANCE[(2.0, 10)]
        band = 4.0 * math.sqrt(exact * (1.0 - exact) / result.trials)
        assert abs(result.epsilon_hat - exact) < band
        # Correlation between once-per-tau observations can only lower the
        # exceedance below the independent-sample analytic value.
        assert result.epsilon_hat < result.analytic_epsilon

    def test_zero_threshold_fair_coin_window(self):
        stage = make_stage()
        result = first_passage_mc(
            stage, threshold=0.0, observation_time=1e-8, trials=20_000, seed=5
        )
        # Independent coins would give 1 - 0.5**10 = 0.99902; correlation
        # drags the exact value down to 0.991929 (oracle).
        exact = exceedance_probability(0.0, 10, math.exp(-1.0))
        band = 4.0 * math.sqrt(exact * (1.0 - exact) / result.trials)
        assert abs(result.epsilon_hat - exact) < band
        assert abs(result.epsilon_hat - (1.0 - 0.5**10)) < 0.02

    def test_analytic_field_is_the_independence_prediction(self):
        stage = make_stage()
        threshold = 2.5 * SIGMA_1FF_300K
        result = first_passage_mc(
            stage, threshold, observation_time=1e-8, trials=100, seed=1
        )
        assert result.analytic_epsilon == multi_sample_error(
            instantaneous_error_prob(threshold, SIGMA_1FF_300K), 10
        )

    def test_low_confidence_flag(self):
        stage = make_stage()
        result = first_passage_mc(
            stage,
            threshold=6.0 * SIGMA_1FF_300K,
            observation_time=1e-8,
            trials=2000,
            seed=8,
        )
        assert result.low_confidence is True
        assert result.hits == 0
        confident = first_passage_mc(
            stage,
            threshold=2.0 * SIGMA_1FF_300K,
            observation_time=1e-8,
            trials=2000,
            seed=8,
        )
        assert confident.low_confidence is False

    def test_domain_errors(self):
        stage = make_stage()
        with pytest.raises(ValueError):
            first_passage_mc(stage, 1e-3, observation_time=1e-10, trials=10, seed=1)
        with pytest.raises(ValueError):
            first_passage_mc(stage, 1e-3, observation_time=1e-8, trials=0, seed=1)
        with pytest.raises(ValueError):
            first_passage_mc(
                stage, 1e-3, observation_time=1e-8, trials=10, seed=1, workers=0
            )
        with pytest.raises(ValueError):
            first_passage_mc(stage, -1e-3, observation_time=1e-8, trials=10, seed=1)
        cold = RcStage(
            1e-15, 1e6, 0.0,
            PhysicalEnvironment(temperature=0.0, allow_zero_temperature=True),
        )
        with pytest.raises(ValueError):
            first_passage_mc(cold, 1e-3, observation_time=1e-8, trials=10, seed=1)
