"""Diffusion recursion against independent oracles (rational arithmetic,
closed form, direct quadratic evaluation)."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from avdiff import (
    AutomationLevel,
    BassParams,
    CoverageError,
    bass_closed_form,
    bass_increment,
    simulate_level,
)
from conftest import make_flat_series

L3_BASELINE = BassParams(
    p=0.002, q=0.335, market_potential=143_879_000, period_start=2025, period_end=2041
)


def quadratic_oracle(p, q, nbar, cumulative):
    """Direct evaluation of p*nbar + (q-p)*N - (q/nbar)*N^2 in exact arithmetic."""
    p, q, nbar, N = map(Fraction, (repr(p), repr(q), nbar, cumulative))
    return float(p * nbar + (q - p) * N - (q / nbar) * N * N)


class TestBassIncrement:
    def test_zero_cumulative_reduces_to_p_nbar(self):
        assert bass_increment(L3_BASELINE, 0.0) == pytest.approx(287_758.0, rel=1e-12)

    def test_saturated_market_yields_zero(self):
        assert bass_increment(L3_BASELINE, 143_879_000.0) == 0.0

    def test_matches_direct_quadratic_evaluation(self):
        got = bass_increment(L3_BASELINE, 10_000_000.0)
        expected = quadratic_oracle(0.002, 0.335, 143_879_000, 10_000_000)
        assert expected == pytest.approx(3_384_923.4654258094, rel=1e-12)
        assert got == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("bad", [-1.0, 143_879_001.0])
    def test_domain_errors(self, bad):
        with pytest.raises(ValueError, match="outside"):
            bass_increment(L3_BASELINE, bad)

    @given(
        q=st.floats(min_value=0.0, max_value=2.0),
        fraction=st.floats(min_value=0.0, max_value=1.0, exclude_max=True),
    )
    def test_strictly_positive_below_saturation(self, q, fraction):
        params = BassParams(
            p=0.002, q=q, market_potential=1e8, period_start=2020, period_end=2040
        )
        assert bass_increment(params, fraction * 1e8) > 0.0

    @given(fraction=st.floats(min_value=0.0, max_value=1.0))
    def test_oracle_agreement_across_states(self, fraction):
        cumulative = fraction * L3_BASELINE.market_potential
        got = bass_increment(L3_BASELINE, cumulative)
        expected = quadratic_oracle(0.002, 0.335, 143_879_000, cumulative)
        assert got == pytest.approx(expected, rel=1e-9, abs=1e-6)

    def test_unset_q_is_rejected(self):
        params = BassParams(
            p=0.002, q=None, market_potential=1e6, period_start=2020, period_end=2030
        )
        with pytest.raises(ValueError, match="calibrate"):
            bass_increment(params, 0.0)


class TestParamValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(p=0.0, q=0.3, market_potential=1e6, period_start=2020, period_end=2030),
            dict(p=0.002, q=-0.1, market_potential=1e6, period_start=2020, period_end=2030),
            dict(p=0.002, q=0.3, market_potential=0.0, period_start=2020, period_end=2030),
            dict(p=0.002, q=0.3, market_potential=1e6, period_start=2031, period_end=2030),
        ],
    )
    def test_invalid_params(self, kwargs):
        with pytest.raises(ValueError):
            BassParams(**kwargs)


def rational_recursion(p, q, nbar, years):
    """Independent re-implementation of the clamped recursion in rational
    arithmetic.  Denominators are re-limited to 50 significant digits each
    year (exact rationals double their bit length every step); the retained
    precision still exceeds doubles by ~34 digits."""
    p, q, nbar = Fraction(repr(p)), Fraction(repr(q)), Fraction(nbar)
    cumulative = Fraction(0)
    out = []
    for _ in years:
        increment = p * nbar + (q - p) * cumulative - (q / nbar) * cumulative**2
        adopters = max(Fraction(0), min(increment, nbar - cumulative))
        cumulative = min(cumulative + adopters, nbar).limit_denominator(10**50)
        adopters = adopters.limit_denominator(10**50)
        out.append((adopters, cumulative))
    return out


class TestSimulateLevel:
    def test_covers_period_and_matches_registrations(self, flat_series):
        trajectory = simulate_level(AutomationLevel.L3, L3_BASELINE, flat_series)
        assert trajectory.years == tuple(range(2025, 2042))
        for state in trajectory.states:
            assert trajectory.raw_share[state.year] == state.new_adopters / 1e7

    def test_conservation_is_exact(self, flat_series):
        trajectory = simulate_level(
            AutomationLevel.L3, L3_BASELINE, flat_series, through_year=2050
        )
        total = 0.0
        for state in trajectory.states:
            total += state.new_adopters
            assert state.cumulative_adopters == total
        assert trajectory.final_cumulative <= L3_BASELINE.market_potential

    def test_cumulative_monotone_and_increments_nonnegative(self, flat_series):
        trajectory = simulate_level(
            AutomationLevel.L3, L3_BASELINE, flat_series, through_year=2050
        )
        previous = 0.0
        for state in trajectory.states:
            assert state.new_adopters >= 0.0
            assert state.cumulative_adopters >= previous
            previous = state.cumulative_adopters

    def test_against_rational_oracle(self, flat_series):
        trajectory = simulate_level(
            AutomationLevel.L3, L3_BASELINE, flat_series, through_year=2050
        )
        oracle = rational_recursion(0.002, 0.335, 143_879_000, trajectory.years)
        for state, (adopters, cumulative) in zip(trajectory.states, oracle):
            assert state.new_adopters == pytest.approx(float(adopters), rel=1e-9, abs=1e-3)
            assert state.cumulative_adopters == pytest.approx(
                float(cumulative), rel=1e-9
            )

    def test_no_imitation_decays_geometrically(self):
        series = make_flat_series(2020, 2040, 1e9)
        params = BassParams(
            p=0.002, q=0.0, market_potential=1e15, period_start=2020, period_end=2040
        )
        trajectory = simulate_level(AutomationLevel.L2, params, series)
        for t, state in enumerate(trajectory.states):
            expected = 0.002 * 1e15 * (1 - 0.002) ** t
            assert state.new_adopters == pytest.approx(expected, rel=1e-9)
            # with a huge potential the increment is near-constant p * nbar
            assert state.new_adopters == pytest.approx(0.002 * 1e15, rel=0.05)

    def test_missing_registration_year_names_the_year(self):
        series = make_flat_series(2025, 2035)
        with pytest.raises(CoverageError, match="2036") as err:
            simulate_level(AutomationLevel.L3, L3_BASELINE, series, through_year=2036)
        assert 2036 in err.value.missing_years

    def test_share_monotone_in_q_before_saturation(self, flat_series):
        # early in the curve the share response rises with q
        year = 2030
        shares = []
        for i in range(25):
            q = 0.02 * i
            params = BassParams(
                p=0.002, q=q, market_potential=2e8, period_start=2025, period_end=2041
            )
            trajectory = simulate_level(AutomationLevel.L3, params, flat_series)
            shares.append(trajectory.raw_share[year])
        assert all(b >= a for a, b in zip(shares, shares[1:]))

    def test_saturation_clamps_exactly(self):
        series = make_flat_series(2020, 2060, 1e6)
        params = BassParams(
            p=0.01, q=1.5, market_potential=5e6, period_start=2020, period_end=2060
        )
        trajectory = simulate_level(AutomationLevel.L2, params, series)
        assert trajectory.final_cumulative == 5e6
        assert trajectory.states[-1].new_adopters == 0.0


class TestClosedForm:
    def test_zero_at_launch(self):
        assert bass_closed_form(0.002, 0.3, 0.0) == 0.0

    def test_asymptote(self):
        assert bass_closed_form(0.002, 0.3, 200.0) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("p,q,t", [(0.0, 0.3, 1.0), (0.002, -0.002, 1.0), (0.002, 0.3, -1.0)])
    def test_domain_errors(self, p, q, t):
        with pytest.raises(ValueError):
            bass_closed_form(p, q, t)

    @pytest.mark.parametrize("p,q,horizon", [(0.002, 0.3, 40), (0.002, 0.335, 30), (0.05, 0.5, 25)])
    def test_fine_step_recursion_converges_to_closed_form(self, p, q, horizon):
        # 1000 sub-steps per year; agreement within 0.5 percentage points
        params = BassParams(
            p=p, q=q, market_potential=1.0, period_start=0, period_end=horizon
        )
        dt = 1e-3
        cumulative = 0.0
        for year in range(1, horizon + 1):
            for _ in range(1000):
                increment = bass_increment(params, cumulative) * dt
                cumulative = min(cumulative + max(0.0, increment), 1.0)
            assert abs(cumulative - bass_closed_form(p, q, year)) < 0.005

    def test_fifteen_year_value_cross_checked(self):
        fine = _fine_step_fraction(0.002, 0.3, 15)
        assert abs(fine - bass_closed_form(0.002, 0.3, 15)) < 0.005


def _fine_step_fraction(p, q, years, steps_per_year=1000):
    params = BassParams(
        p=p, q=q, market_potential=1.0, period_start=0, period_end=years
    )
    dt = 1.0 / steps_per_year
    cumulative = 0.0
    for _ in range(years * steps_per_year):
        cumulative = min(cumulative + max(0.0, bass_increment(params, cumulative) * dt), 1.0)
    return cumulative
