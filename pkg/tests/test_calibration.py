"""Calibration solver: roundtrips, bracket handling, grid-search agreement."""

import numpy as np
import pytest

from avdiff import (
    AutomationLevel,
    BassParams,
    BracketError,
    ConvergenceError,
    CoverageError,
    FixedPoint,
    RegistrationSeries,
    calibrate_q,
    derive_market_potential,
    simulate_level,
)


def grid_search_q(p, nbar, period, series, year, target, step=1e-4, q_max=2.0):
    """Vectorized exhaustive search over the q grid (independent oracle)."""
    qs = np.arange(0.0, q_max + step / 2, step)
    cumulative = np.zeros_like(qs)
    shares = np.zeros_like(qs)
    for y in range(period[0], year + 1):
        increment = p * nbar + (qs - p) * cumulative - (qs / nbar) * cumulative**2
        adopters = np.clip(increment, 0.0, nbar - cumulative)
        cumulative = np.minimum(cumulative + adopters, nbar)
        if y == year:
            shares = adopters / series[y]
    return qs[int(np.argmin(np.abs(shares - target)))]


class TestCalibrateQ:
    def test_roundtrip_recovers_q(self, flat_series):
        params = BassParams(
            p=0.002, q=0.3, market_potential=1.5e8, period_start=2020, period_end=2040
        )
        trajectory = simulate_level(AutomationLevel.L3, params, flat_series)
        target = trajectory.raw_share[2030]
        result = calibrate_q(
            p=0.002,
            market_potential=1.5e8,
            period=(2020, 2040),
            registrations=flat_series,
            fixed_point=FixedPoint(year=2030, target_share=target),
        )
        assert result.residual <= 1e-6
        assert result.q == pytest.approx(0.3, abs=1e-6)
        assert result.achieved_share == pytest.approx(target, abs=1e-6)
        assert result.iterations >= 1

    def test_published_l2_coefficient_recovered(self, ref_series):
        result = calibrate_q(
            p=0.002,
            market_potential=238_186_000,
            period=(2015, 2030),
            registrations=ref_series,
            fixed_point=FixedPoint(year=2025, target_share=0.39),
        )
        assert result.q == pytest.approx(0.285, abs=0.05)

    def test_published_l3_coefficient_recovered(self, ref_series):
        result = calibrate_q(
            p=0.002,
            market_potential=143_879_000,
            period=(2025, 2041),
            registrations=ref_series,
            fixed_point=FixedPoint(year=2030, target_share=0.08),
        )
        assert result.q == pytest.approx(0.335, abs=0.05)

    def test_upper_bound_past_saturation_is_handled(self, ref_series):
        # at q=2 the market saturates long before 2025, so the raw bracket
        # fails; the solver must restrict itself to the rising branch
        result = calibrate_q(
            p=0.002,
            market_potential=238_186_000,
            period=(2015, 2030),
            registrations=ref_series,
            fixed_point=FixedPoint(year=2025, target_share=0.39),
            q_bounds=(0.0, 2.0),
        )
        assert result.q == pytest.approx(0.285, abs=1e-3)

    def test_unattainable_target_raises_bracket_error(self, flat_series):
        # the potential caps the share at year start+1 far below 90%
        with pytest.raises(BracketError, match="unattainable"):
            calibrate_q(
                p=0.002,
                market_potential=2e6,
                period=(2020, 2030),
                registrations=flat_series,
                fixed_point=FixedPoint(year=2021, target_share=0.9),
            )

    def test_target_below_floor_raises_bracket_error(self, flat_series):
        # even q=0 overshoots a vanishing target at a late year
        with pytest.raises(BracketError, match="below"):
            calibrate_q(
                p=0.002,
                market_potential=1e8,
                period=(2020, 2040),
                registrations=flat_series,
                fixed_point=FixedPoint(year=2030, target_share=1e-6),
            )

    def test_agrees_with_grid_search(self, flat_series):
        for q_true in (0.12, 0.27, 0.42):
            params = BassParams(
                p=0.002, q=q_true, market_potential=1.2e8,
                period_start=2020, period_end=2040,
            )
            target = simulate_level(
                AutomationLevel.L3, params, flat_series
            ).raw_share[2029]
            result = calibrate_q(
                p=0.002,
                market_potential=1.2e8,
                period=(2020, 2040),
                registrations=flat_series,
                fixed_point=FixedPoint(year=2029, target_share=target),
            )
            oracle = grid_search_q(
                0.002, 1.2e8, (2020, 2040), flat_series, 2029, target
            )
            assert result.q == pytest.approx(oracle, abs=1e-4)

    @pytest.mark.parametrize(
        "kwargs,match",
        [
            (dict(tolerance=0.0), "tolerance"),
            (dict(q_bounds=(-0.1, 2.0)), "bounds"),
            (dict(q_bounds=(1.0, 1.0)), "bounds"),
            (dict(fixed_point=FixedPoint(year=2020, target_share=0.2)), "inside"),
            (dict(fixed_point=FixedPoint(year=2045, target_share=0.2)), "inside"),
        ],
    )
    def test_argument_validation(self, flat_series, kwargs, match):
        base = dict(
            p=0.002,
            market_potential=1e8,
            period=(2020, 2040),
            registrations=flat_series,
            fixed_point=FixedPoint(year=2030, target_share=0.2),
        )
        base.update(kwargs)
        with pytest.raises(ValueError, match=match):
            calibrate_q(**base)

    def test_fixed_point_share_bounds(self):
        with pytest.raises(ValueError):
            FixedPoint(year=2030, target_share=0.0)
        with pytest.raises(ValueError):
            FixedPoint(year=2030, target_share=1.0)

    def test_exhausted_iteration_budget_is_distinct(self, flat_series):
        with pytest.raises(ConvergenceError, match="bisection steps"):
            calibrate_q(
                p=0.002,
                market_potential=1e8,
                period=(2020, 2040),
                registrations=flat_series,
                fixed_point=FixedPoint(year=2030, target_share=0.2),
                max_iterations=2,
            )


class TestDeriveMarketPotential:
    def test_toy_half_share(self):
        series = RegistrationSeries(years=(2020, 2021), counts=(10.0, 20.0))
        assert derive_market_potential(series, (2020, 2021), 0.5) == 15.0

    def test_full_share_over_reference_window(self, ref_series):
        got = derive_market_potential(ref_series, (2015, 2029), 1.0)
        assert got == pytest.approx(181_040_000, rel=0.02)

    @pytest.mark.parametrize("share", [0.0, -0.5, 1.5])
    def test_share_out_of_range(self, flat_series, share):
        with pytest.raises(ValueError, match="potential share"):
            derive_market_potential(flat_series, (2020, 2021), share)

    def test_missing_years(self, flat_series):
        with pytest.raises(CoverageError):
            derive_market_potential(flat_series, (2010, 2020), 1.0)
