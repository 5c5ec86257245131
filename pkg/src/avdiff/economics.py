"""Value added from producing automation hardware and software.

Per year and level, value added is the number of newly registered vehicles
equipped with the level times the unit price of its automation package (the
marked-up production cost; a cost-only basis is available as a switch).  The
L0 pool carries no package and contributes nothing; levels L1-L5 are summed
over the horizon, and every cell splits exactly into hardware and software.
"""

import dataclasses
import math

from .costs import build_cost_curve, default_cost_params
from .levels import AutomationLevel

__all__ = [
    "ValueAddedCell",
    "ValueAddedTable",
    "value_added",
    "scenario_value_added",
    "compare_scenarios",
    "ScenarioComparison",
]

VA_BASES = ("price", "cost")


@dataclasses.dataclass(frozen=True)
class ValueAddedCell:
    year: int
    level: AutomationLevel
    vehicles: float
    unit_value: float
    va_total: float
    va_hw: float
    va_sw: float


@dataclasses.dataclass(frozen=True)
class ValueAddedTable:
    scenario_name: str
    basis: str
    horizon: tuple[int, int]
    cells: tuple[ValueAddedCell, ...]

    @property
    def horizon_total(self):
        return math.fsum(cell.va_total for cell in self.cells)

    @property
    def hw_total(self):
        return math.fsum(cell.va_hw for cell in self.cells)

    @property
    def sw_total(self):
        return math.fsum(cell.va_sw for cell in self.cells)

    def total_by_level(self):
        totals = {}
        for cell in self.cells:
            totals[cell.level] = totals.get(cell.level, 0.0) + cell.va_total
        return totals

    def total_by_year(self):
        totals = {}
        for cell in self.cells:
            totals[cell.year] = totals.get(cell.year, 0.0) + cell.va_total
        return totals


def value_added(
    trajectories,
    cost_curves,
    registrations,
    horizon,
    scenario_name="",
    basis="price",
):
    """Assemble the value-added table for one scenario run.

    ``trajectories`` and ``cost_curves`` are keyed by level; both must cover
    the same set of levels among L1-L5 (an L0 trajectory is ignored).  Cells
    are emitted for every horizon year a level's trajectory covers, zero
    shares included.
    """
    if basis not in VA_BASES:
        raise ValueError(f"basis must be one of {VA_BASES}, got {basis!r}")
    first, last = horizon
    if first > last:
        raise ValueError(f"horizon start {first} after end {last}")
    registrations.require_coverage(first, last, context="value added")

    levels = sorted(
        lv for lv in trajectories if lv is not AutomationLevel.L0
    )
    curve_levels = sorted(cost_curves)
    if levels != curve_levels:
        raise ValueError(
            f"trajectory levels {[str(l) for l in levels]} do not match "
            f"cost-curve levels {[str(l) for l in curve_levels]}"
        )

    cells = []
    for year in range(first, last + 1):
        for level in levels:
            trajectory = trajectories[level]
            share = trajectory.allocated_share.get(year)
            if share is None:
                continue
            curve = cost_curves[level]
            vehicles = share * registrations[year]
            unit_value = (
                curve.unit_price[year]
                if basis == "price"
                else curve.unit_production_cost[year]
            )
            va_total = vehicles * unit_value
            va_hw = va_total * curve.hw_share
            cells.append(
                ValueAddedCell(
                    year=year,
                    level=level,
                    vehicles=vehicles,
                    unit_value=unit_value,
                    va_total=va_total,
                    va_hw=va_hw,
                    va_sw=va_total - va_hw,
                )
            )
    return ValueAddedTable(
        scenario_name=scenario_name,
        basis=basis,
        horizon=(first, last),
        cells=tuple(cells),
    )


def scenario_value_added(result, registrations, horizon=None, basis="price"):
    """Cost curves plus value added for a finished scenario run.

    Returns (table, curves).  Levels L2-L5 use their configured cost
    parameters and anchor overrides; the L1 pool uses the bundled defaults.
    """
    spec = result.spec
    if horizon is None:
        horizon = spec.horizon
    curves = {}
    trajectories = {}
    for level, trajectory in result.trajectories.items():
        if level is AutomationLevel.L0:
            continue
        if level is AutomationLevel.L1:
            params = default_cost_params(level)
            declared_entry = None
            mm_override = None
        else:
            cfg = spec.level_config(level)
            params = cfg.cost_params()
            declared_entry = cfg.declared_entry_year
            mm_override = cfg.mass_market_year_override
        curves[level] = build_cost_curve(
            params,
            trajectory,
            registrations,
            mass_market_year_override=mm_override,
            declared_entry_year=declared_entry,
        )
        trajectories[level] = trajectory
    table = value_added(
        trajectories,
        curves,
        registrations,
        horizon,
        scenario_name=spec.name,
        basis=basis,
    )
    return table, curves


_CANONICAL_ORDER = ("slow", "baseline", "fast")


@dataclasses.dataclass(frozen=True)
class ScenarioComparison:
    totals: tuple[tuple[str, float], ...]
    ordering_ok: bool
    horizon: tuple[int, int]
    basis: str

    def lines(self):
        out = []
        for name, total in self.totals:
            out.append(f"{name:22s} {total / 1e9:10.2f} billion EUR")
        ordered = "yes" if self.ordering_ok else "NO"
        out.append(f"ordering slow <= baseline <= fast: {ordered}")
        return out


def compare_scenarios(tables):
    """Totals across scenario tables plus the slow/baseline/fast order flag.

    All tables must share the same horizon and basis; fewer than two tables
    is an error.
    """
    tables = list(tables)
    if len(tables) < 2:
        raise ValueError("need at least two value-added tables to compare")
    horizon = tables[0].horizon
    basis = tables[0].basis
    for table in tables[1:]:
        if table.horizon != horizon:
            raise ValueError(
                f"horizon mismatch: {table.scenario_name!r} covers "
                f"{table.horizon}, expected {horizon}"
            )
        if table.basis != basis:
            raise ValueError(
                f"basis mismatch: {table.scenario_name!r} uses {table.basis!r}, "
                f"expected {basis!r}"
            )
    by_name = {t.scenario_name: t.horizon_total for t in tables}
    if all(name in by_name for name in _CANONICAL_ORDER):
        sequence = [by_name[name] for name in _CANONICAL_ORDER]
    else:
        sequence = [t.horizon_total for t in tables]
    ordering_ok = all(a <= b for a, b in zip(sequence, sequence[1:]))
    totals = tuple((t.scenario_name, t.horizon_total) for t in tables)
    return ScenarioComparison(
        totals=totals, ordering_ok=ordering_ok, horizon=horizon, basis=basis
    )
