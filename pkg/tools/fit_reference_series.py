"""Regenerate the bundled reference registration series (dev tool).

The EU27+UK new-registration projection behind the bundled scenarios is not
redistributable, so the package ships a reconstruction: the smoothest annual
series over 2015-2050 that

  * reproduces the four preliminary market potentials as period sums
    (within 1.25%, well inside the 2% the tests allow),
  * passes exactly through the two registration levels implied by the
    baseline calibration fixed points (39% L2 share in 2025 and 8% L3 share
    in 2030 at the published q values), and
  * changes by at most 2.95% year over year (margin for integer rounding
    under the 3% bound the tests assert).

Smoothness is the sum of squared second differences.  Requires cvxpy (dev
only; the result is frozen into src/avdiff/data/reference_registrations.csv).

Run from the repository root:  python tools/fit_reference_series.py
"""

import pathlib
import sys

import cvxpy as cp
import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from avdiff.diffusion import BassParams, bass_increment  # noqa: E402
from avdiff.scenario import builtin_preset  # noqa: E402
from avdiff.levels import AutomationLevel  # noqa: E402

FIRST, LAST = 2015, 2050
SUM_BAND = 0.0125
YOY_BAND = 0.0295

OUT = (
    pathlib.Path(__file__).resolve().parents[1]
    / "src" / "avdiff" / "data" / "reference_registrations.csv"
)


def increments_at_fixed_point(spec_name, level):
    """Adopter increment of a preset level at its fixed-point year."""
    cfg = builtin_preset(spec_name).level_config(level)
    params = cfg.bass
    cumulative = 0.0
    for year in range(params.period_start, cfg.fixed_point.year + 1):
        n = bass_increment(params, cumulative)
        if year == cfg.fixed_point.year:
            return n, cfg.fixed_point
        cumulative = min(cumulative + n, params.market_potential)
    raise AssertionError("fixed-point year not reached")


def main():
    years = np.arange(FIRST, LAST + 1)
    n = len(years)

    prelim = builtin_preset("preliminary-baseline")
    period_sums = {
        (cfg.bass.period_start, cfg.bass.period_end): cfg.bass.market_potential
        for cfg in prelim.levels
    }

    anchors = {}
    for level in (AutomationLevel.L2, AutomationLevel.L3):
        increment, fp = increments_at_fixed_point("baseline", level)
        anchors[fp.year] = increment / fp.target_share

    r = cp.Variable(n)
    cons = [r >= 9e6, r <= 17e6]
    for year, value in anchors.items():
        cons.append(r[years == year] == value)
    cons += [r[1:] - r[:-1] <= YOY_BAND * r[:-1]]
    cons += [r[:-1] - r[1:] <= YOY_BAND * r[:-1]]
    deviations = []
    for (a, b), total in period_sums.items():
        w = ((years >= a) & (years <= b)).astype(float)
        cons.append(cp.abs(w @ r - total) <= SUM_BAND * total)
        deviations.append((w @ r - total) / total)

    curvature = r[2:] - 2 * r[1:-1] + r[:-2]
    objective = cp.Minimize(
        cp.sum_squares(curvature / 1e5) + 40.0 * cp.sum_squares(cp.hstack(deviations))
    )
    problem = cp.Problem(objective, cons)
    problem.solve(solver=cp.CLARABEL)
    if problem.status != cp.OPTIMAL:
        raise SystemExit(f"fit failed: {problem.status}")

    values = np.round(r.value).astype(np.int64)
    for (a, b), total in period_sums.items():
        got = values[(years >= a) & (years <= b)].sum()
        print(f"sum {a}-{b}: {got:,} vs {total:,.0f} ({100 * (got / total - 1):+.3f}%)")
    yoy = np.abs(np.diff(values) / values[:-1]).max()
    print(f"max |YoY| = {yoy:.4%}")

    lines = ["year,new_registrations"]
    lines += [f"{y},{v}" for y, v in zip(years, values)]
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
