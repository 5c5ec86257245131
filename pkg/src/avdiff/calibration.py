"""Exogenous calibration of the imitation coefficient.

The imitation coefficient of a level is solved so that its simulated share of
new registrations hits a literature fixed point (for example 39% in 2025, or
8% in 2030).  The share at the target year responds monotonically to q up to
the value where the market saturates before that year, so the solver bisects
on the rising branch; if the supplied upper bound lies past the peak it is
first pulled back to the peak by a golden-section scan.

Market potentials are derived from the registration series as a share of the
total registrations over the level's market window.
"""

import dataclasses
import math

from .diffusion import BassParams, run_recursion
from .errors import BracketError, ConvergenceError

__all__ = [
    "FixedPoint",
    "CalibrationResult",
    "calibrate_q",
    "derive_market_potential",
]

DEFAULT_TOLERANCE = 1e-6
DEFAULT_Q_BOUNDS = (0.0, 2.0)
MAX_ITERATIONS = 200

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclasses.dataclass(frozen=True)
class FixedPoint:
    """A literature anchor: the level reaches ``target_share`` in ``year``."""

    year: int
    target_share: float

    def __post_init__(self):
        if not 0 < self.target_share < 1:
            raise ValueError(
                f"target share must lie in (0, 1), got {self.target_share}"
            )


@dataclasses.dataclass(frozen=True)
class CalibrationResult:
    q: float
    achieved_share: float
    iterations: int
    residual: float


def _share_at(q, p, market_potential, period, registrations, year):
    params = BassParams(
        p=p,
        q=q,
        market_potential=market_potential,
        period_start=period[0],
        period_end=period[1],
    )
    _, raw = run_recursion(params, registrations, through_year=year)
    return raw[year]


def _peak_q(share, q_lo, q_hi, evaluations=60):
    """Golden-section maximiser of the (unimodal) share response."""
    a, b = q_lo, q_hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = share(c), share(d)
    for _ in range(evaluations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = share(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = share(d)
    return (a + b) / 2.0


def calibrate_q(
    p,
    market_potential,
    period,
    registrations,
    fixed_point,
    tolerance=DEFAULT_TOLERANCE,
    q_bounds=DEFAULT_Q_BOUNDS,
    max_iterations=MAX_ITERATIONS,
):
    """Solve q so the simulated raw share hits the fixed point.

    Bisection on the monotone map q -> raw_share(fixed_point.year); the
    returned residual is |achieved - target| from a full simulation at the
    solution.  Raises BracketError when the target is not attainable within
    ``q_bounds`` (for example, a target above the ceiling implied by the
    market potential) and ConvergenceError if the iteration budget runs out.
    """
    if not tolerance > 0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    q_lo, q_hi = q_bounds
    if q_lo < 0 or q_hi <= q_lo:
        raise ValueError(f"invalid q bounds {q_bounds}")
    year = fixed_point.year
    if not period[0] < year <= period[1]:
        raise ValueError(
            f"fixed-point year {year} must lie inside the period {period}"
        )
    target = fixed_point.target_share

    def share(q):
        return _share_at(q, p, market_potential, period, registrations, year)

    share_lo = share(q_lo)
    if target < share_lo - tolerance:
        raise BracketError(
            f"target share {target} below {share_lo:.6f}, the share reached "
            f"already at q={q_lo}"
        )
    share_hi = share(q_hi)
    if share_hi < target:
        # Past saturation the response falls again; restrict to the rising
        # branch ending at the peak.
        q_peak = _peak_q(share, q_lo, q_hi)
        share_peak = share(q_peak)
        if share_peak < target:
            raise BracketError(
                f"target share {target} unattainable within q bounds "
                f"{q_bounds}: maximum share {share_peak:.6f} at q={q_peak:.6f}"
            )
        q_hi, share_hi = q_peak, share_peak

    _assert_monotone(share, q_lo, q_hi, tolerance)

    lo, hi = q_lo, q_hi
    q_mid = lo
    for iteration in range(1, max_iterations + 1):
        q_mid = 0.5 * (lo + hi)
        s = share(q_mid)
        if abs(s - target) <= tolerance:
            return CalibrationResult(
                q=q_mid,
                achieved_share=s,
                iterations=iteration,
                residual=abs(s - target),
            )
        if s < target:
            lo = q_mid
        else:
            hi = q_mid
    raise ConvergenceError(
        f"no q with share residual <= {tolerance} after {max_iterations} "
        f"bisection steps (last q={q_mid})"
    )


def _assert_monotone(share, q_lo, q_hi, tolerance, samples=8):
    qs = [q_lo + (q_hi - q_lo) * i / samples for i in range(samples + 1)]
    values = [share(q) for q in qs]
    slack = 10 * tolerance
    for a, b in zip(values, values[1:]):
        if b < a - slack:
            raise BracketError(
                "share response is not monotone over the calibration bracket; "
                "the fixed-point year probably lies past market saturation"
            )


def derive_market_potential(registrations, period, potential_share):
    """Market potential as a share of total registrations over the window."""
    if not 0 < potential_share <= 1:
        raise ValueError(
            f"potential share must lie in (0, 1], got {potential_share}"
        )
    return potential_share * registrations.total(period[0], period[1])
