"""Discrete Bass diffusion of driving-automation technology.

One automation level diffuses toward its market potential ``nbar`` driven by
an innovation coefficient ``p`` (spontaneous adoption) and an imitation
coefficient ``q`` (adoption induced by existing adopters).  The annual
adopter increment is

    n = p * nbar + (q - p) * N - (q / nbar) * N**2

where ``N`` is the cumulative number of adopters at the start of the year.
The recursion steps annually, starting from N = 0 in the launch year, and
clamps each increment into [0, nbar - N] so the cumulative count saturates
exactly at the market potential.

A continuous closed form of the same dynamics is provided as an independent
validation oracle.
"""

import dataclasses
import math

from .errors import CoverageError
from .levels import AutomationLevel

__all__ = [
    "BassParams",
    "AdoptionState",
    "LevelTrajectory",
    "bass_increment",
    "simulate_level",
    "bass_closed_form",
]


@dataclasses.dataclass(frozen=True)
class BassParams:
    """Diffusion parameters for one automation level in one scenario.

    ``q`` may be left as None for configurations that are calibrated against
    a literature fixed point before simulation.
    """

    p: float
    q: float | None
    market_potential: float
    period_start: int
    period_end: int

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"innovation coefficient p must be > 0, got {self.p}")
        if self.q is not None and self.q < 0:
            raise ValueError(f"imitation coefficient q must be >= 0, got {self.q}")
        if not self.market_potential > 0:
            raise ValueError(
                f"market potential must be > 0, got {self.market_potential}"
            )
        if self.period_start > self.period_end:
            raise ValueError(
                f"period start {self.period_start} after end {self.period_end}"
            )

    def require_q(self):
        if self.q is None:
            raise ValueError(
                "imitation coefficient q is unset; calibrate the level first"
            )
        return self.q


@dataclasses.dataclass(frozen=True)
class AdoptionState:
    """Adopters in one year: the annual increment and the running total."""

    year: int
    new_adopters: float
    cumulative_adopters: float


@dataclasses.dataclass(frozen=True)
class LevelTrajectory:
    """Adoption path of one automation level.

    ``raw_share`` is the unconstrained fraction of new registrations implied
    by the diffusion increments (it may exceed 1 for aggressive parameters);
    ``allocated_share`` is the share after scenario-level displacement.  For a
    freshly simulated level the two are equal.
    """

    level: AutomationLevel
    states: tuple[AdoptionState, ...]
    raw_share: dict[int, float]
    allocated_share: dict[int, float]

    @property
    def years(self):
        return tuple(s.year for s in self.states)

    @property
    def final_cumulative(self):
        return self.states[-1].cumulative_adopters if self.states else 0.0

    def with_allocated(self, allocated_share):
        return dataclasses.replace(self, allocated_share=dict(allocated_share))


def bass_increment(params, cumulative):
    """Raw annual adopter increment at cumulative adoption ``cumulative``.

    Evaluates the quadratic in the factored form
    ``(nbar - N) * (p*nbar + q*N) / nbar``, which is algebraically identical
    but is exactly zero at N = nbar and strictly positive on [0, nbar).

    Raises ValueError if ``cumulative`` lies outside [0, market_potential].
    """
    q = params.require_q()
    nbar = params.market_potential
    if cumulative < 0 or cumulative > nbar:
        raise ValueError(
            f"cumulative adopters {cumulative} outside [0, {nbar}]"
        )
    if cumulative == 0:
        return params.p * nbar
    return (nbar - cumulative) * (params.p * nbar + q * cumulative) / nbar


def run_recursion(params, registrations, through_year=None, context=""):
    """Annual recursion from zero adoption at the period start.

    Returns (states, raw_share).  Raises CoverageError if the registration
    series misses any simulated year.
    """
    params.require_q()
    end = params.period_end if through_year is None else through_year
    if end < params.period_start:
        raise ValueError(f"through_year {end} precedes period start")
    years = range(params.period_start, end + 1)
    missing = [y for y in years if y not in registrations]
    if missing:
        raise CoverageError(missing, context=context or "simulating level")

    nbar = params.market_potential
    states = []
    raw = {}
    cumulative = 0.0
    for year in years:
        increment = bass_increment(params, cumulative)
        adopters = max(0.0, min(increment, nbar - cumulative))
        cumulative = min(cumulative + adopters, nbar)
        states.append(AdoptionState(year, adopters, cumulative))
        raw[year] = adopters / registrations[year]
    return tuple(states), raw


def simulate_level(level, params, registrations, through_year=None):
    """Adoption trajectory of one level as shares of new registrations.

    Starts from zero cumulative adoption in ``params.period_start`` and steps
    through ``through_year`` (default: the period end; scenario runs extend
    levels to the scenario horizon so displaced levels keep evolving).  Each
    increment is clamped into [0, nbar - N], so the final cumulative count
    equals the sum of all increments and never exceeds the market potential.
    """
    states, raw = run_recursion(
        params, registrations, through_year, context=f"simulating {level}"
    )
    return LevelTrajectory(
        level=level,
        states=states,
        raw_share=raw,
        allocated_share=dict(raw),
    )


def bass_closed_form(p, q, t):
    """Continuous-time adopted fraction F(t) of the market potential.

        F(t) = (1 - exp(-(p+q) t)) / (1 + (q/p) exp(-(p+q) t))

    Defined for p > 0, p + q > 0, t >= 0; F(0) = 0 and F(t) -> 1.  Used as an
    independent oracle for the annual recursion (fine-step integration of the
    recursion converges to this curve).
    """
    if not p > 0:
        raise ValueError(f"p must be > 0, got {p}")
    if not p + q > 0:
        raise ValueError(f"p + q must be > 0, got {p + q}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    decay = math.exp(-(p + q) * t)
    return (1.0 - decay) / (1.0 + (q / p) * decay)
