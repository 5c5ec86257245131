"""Per-vehicle automation-package costs along an experience curve.

Unit production cost falls by a fixed fraction (default 20%) for each
doubling of cumulative production volume, anchored at the mass-market entry
point (the first year the level holds 10% of new registrations) and floored
at a fraction of the anchor cost.  The same power law runs backwards: before
mass-market entry, smaller volumes mean higher costs.  A markup (default 50%)
turns production cost into the unit price used for value-added accounting,
and the price splits into hardware and software components.
"""

import dataclasses
import math

from .errors import AnchorError
from .levels import AutomationLevel

__all__ = [
    "CostParams",
    "CostCurve",
    "unit_cost",
    "build_cost_curve",
    "default_cost_params",
]

DEFAULT_LEARNING_RATE = 0.20
DEFAULT_FLOOR_RATIO = 0.30
DEFAULT_MARKUP = 0.50
MASS_MARKET_SHARE = 0.10

# Mass-market production cost anchors (EUR/vehicle) and hardware/software
# shares of the package price.  Hardware dominates for the assistance levels;
# the split evens out as software complexity grows with the automation level.
MASS_MARKET_COSTS = {
    AutomationLevel.L1: 814.0,
    AutomationLevel.L2: 1_628.0,
    AutomationLevel.L3: 3_579.0,
    AutomationLevel.L4: 6_301.0,
    AutomationLevel.L5: 10_934.0,
}
HW_SHARES = {
    AutomationLevel.L1: 0.80,
    AutomationLevel.L2: 0.80,
    AutomationLevel.L3: 0.65,
    AutomationLevel.L4: 0.50,
    AutomationLevel.L5: 0.50,
}


@dataclasses.dataclass(frozen=True)
class CostParams:
    level: AutomationLevel
    mass_market_cost: float
    learning_rate: float = DEFAULT_LEARNING_RATE
    floor_ratio: float = DEFAULT_FLOOR_RATIO
    markup: float = DEFAULT_MARKUP
    hw_share: float = 0.50
    sw_share: float = 0.50

    def __post_init__(self):
        if not self.mass_market_cost > 0:
            raise ValueError(f"mass-market cost must be > 0, got {self.mass_market_cost}")
        if not 0 < self.learning_rate < 1:
            raise ValueError(f"learning rate must lie in (0, 1), got {self.learning_rate}")
        if not 0 < self.floor_ratio <= 1:
            raise ValueError(f"floor ratio must lie in (0, 1], got {self.floor_ratio}")
        if self.markup < 0:
            raise ValueError(f"markup must be >= 0, got {self.markup}")
        if abs(self.hw_share + self.sw_share - 1.0) > 1e-9:
            raise ValueError(
                f"hardware and software shares must sum to 1, got "
                f"{self.hw_share} + {self.sw_share}"
            )


def default_cost_params(level, **overrides):
    """Bundled cost assumptions for one level (no package for L0)."""
    level = AutomationLevel(level)
    if level not in MASS_MARKET_COSTS:
        raise ValueError(f"no cost assumptions for {level}")
    hw = HW_SHARES[level]
    fields = dict(
        level=level,
        mass_market_cost=MASS_MARKET_COSTS[level],
        hw_share=hw,
        sw_share=1.0 - hw,
    )
    fields.update(overrides)
    return CostParams(**fields)


def unit_cost(params, cumulative_volume, mass_market_volume):
    """Unit production cost at ``cumulative_volume`` units produced.

    ``max(floor_ratio * C, C * (1 - learning_rate) ** log2(V / V_mm))`` where
    C is the mass-market anchor cost.  Doubling the volume multiplies the
    unfloored cost by exactly ``1 - learning_rate``; below the anchor volume
    the same law yields costs above C, uncapped.
    """
    if not cumulative_volume > 0:
        raise ValueError(f"cumulative volume must be > 0, got {cumulative_volume}")
    if not mass_market_volume > 0:
        raise ValueError(f"mass-market volume must be > 0, got {mass_market_volume}")
    doublings = math.log2(cumulative_volume / mass_market_volume)
    cost = params.mass_market_cost * (1.0 - params.learning_rate) ** doublings
    return max(params.floor_ratio * params.mass_market_cost, cost)


@dataclasses.dataclass(frozen=True)
class CostCurve:
    """Per-year unit economics of one level's automation package."""

    level: AutomationLevel
    years: tuple[int, ...]
    unit_production_cost: dict[int, float]
    unit_price: dict[int, float]
    hw_price: dict[int, float]
    sw_price: dict[int, float]
    hw_share: float
    mass_market_year: int | None
    anchor_volume: float


def build_cost_curve(
    params,
    trajectory,
    registrations,
    mass_market_year_override=None,
    declared_entry_year=None,
    anchor_volume_override=None,
):
    """Cost curve along a level's trajectory.

    The production volume through year t is the cumulative count of vehicles
    equipped with the level (allocated share times registrations), clamped to
    at least one vehicle.  The anchor volume is resolved, in order, from an
    explicit volume override, an override year, the detected mass-market year
    (first year the allocated share reaches 10%), or the fallback of 10% of
    the registrations five years after market entry.  Prices carry the markup
    and split exactly into hardware + software.
    """
    years = trajectory.years
    volumes = {}
    cumulative = 0.0
    for year in years:
        cumulative += trajectory.allocated_share.get(year, 0.0) * registrations[year]
        volumes[year] = max(cumulative, 1.0)

    anchor = _resolve_anchor(
        params, trajectory, registrations, volumes,
        mass_market_year_override, declared_entry_year, anchor_volume_override,
    )
    anchor_volume, mm_year = anchor

    cost = {}
    price = {}
    hw = {}
    sw = {}
    factor = 1.0 + params.markup
    for year in years:
        c = unit_cost(params, volumes[year], anchor_volume)
        p = c * factor
        h = p * params.hw_share
        cost[year] = c
        price[year] = p
        hw[year] = h
        sw[year] = p - h
    return CostCurve(
        level=trajectory.level,
        years=years,
        unit_production_cost=cost,
        unit_price=price,
        hw_price=hw,
        sw_price=sw,
        hw_share=params.hw_share,
        mass_market_year=mm_year,
        anchor_volume=anchor_volume,
    )


def _first_year_at_share(trajectory, threshold):
    for year in trajectory.years:
        if trajectory.allocated_share.get(year, 0.0) >= threshold:
            return year
    return None


def _resolve_anchor(
    params, trajectory, registrations, volumes,
    mass_market_year_override, declared_entry_year, anchor_volume_override,
):
    mm = _first_year_at_share(trajectory, MASS_MARKET_SHARE)
    if anchor_volume_override is not None:
        if not anchor_volume_override > 0:
            raise AnchorError(
                f"anchor volume override must be > 0, got {anchor_volume_override}"
            )
        return anchor_volume_override, mm
    if mass_market_year_override is not None:
        if mass_market_year_override not in volumes:
            raise AnchorError(
                f"{trajectory.level}: mass-market year override "
                f"{mass_market_year_override} outside the trajectory"
            )
        return volumes[mass_market_year_override], mass_market_year_override
    if mm is not None:
        return volumes[mm], mm
    entry = declared_entry_year
    if entry is None:
        entry = _first_year_at_share(trajectory, 0.01)
    if entry is None:
        raise AnchorError(
            f"{trajectory.level}: no mass-market year, no entry year; cannot "
            "resolve a cost anchor"
        )
    fallback_year = entry + 5
    if fallback_year not in registrations:
        raise AnchorError(
            f"{trajectory.level}: fallback anchor year {fallback_year} outside "
            "the registration series"
        )
    return MASS_MARKET_SHARE * registrations[fallback_year], None
