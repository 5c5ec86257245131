"""CSV serialization of trajectories and value-added tables.

Column order and headers are fixed.  Vehicle counts are rounded half-up to
whole vehicles at emission; shares and monetary values keep full precision
(shortest round-tripping float representation).  Every file starts with a
``# manifest: <hash>`` comment tying it to the run manifest.
"""

import math

from .scenario import entry_year, mass_market_year, off_market_year

__all__ = [
    "TRAJECTORY_HEADER",
    "VA_HEADER",
    "write_trajectories_csv",
    "write_va_csv",
    "write_summary_csv",
    "write_entry_years_csv",
]

TRAJECTORY_HEADER = "year,level,new_adopters,cumulative,raw_share,allocated_share"
VA_HEADER = "year,level,vehicles,unit_price_eur,va_eur,va_hw_eur,va_sw_eur"
SUMMARY_HEADER = (
    "scenario,basis,horizon_start,horizon_end,va_total_eur,va_hw_eur,va_sw_eur"
)
ENTRY_YEARS_HEADER = (
    "scenario,level,declared_entry_year,entry_year,mass_market_year,off_market_year"
)


def round_half_up(value):
    """Round a non-negative vehicle count half-up to a whole number."""
    return int(math.floor(value + 0.5))


def _fmt(value):
    return repr(float(value))


def _write(path, manifest_hash, header, rows):
    lines = [f"# manifest: {manifest_hash}", header]
    lines.extend(rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def write_trajectories_csv(path, result, manifest_hash):
    by_level = result.trajectories
    states = {
        level: {s.year: s for s in trajectory.states}
        for level, trajectory in by_level.items()
    }
    years = sorted({y for t in by_level.values() for y in t.years})
    rows = []
    for year in years:
        for level in sorted(by_level):
            state = states[level].get(year)
            if state is None:
                continue
            trajectory = by_level[level]
            rows.append(
                ",".join(
                    (
                        str(year),
                        level.name,
                        str(round_half_up(state.new_adopters)),
                        str(round_half_up(state.cumulative_adopters)),
                        _fmt(trajectory.raw_share[year]),
                        _fmt(trajectory.allocated_share.get(year, 0.0)),
                    )
                )
            )
    return _write(path, manifest_hash, TRAJECTORY_HEADER, rows)


def write_va_csv(path, table, manifest_hash):
    rows = [
        ",".join(
            (
                str(cell.year),
                cell.level.name,
                str(round_half_up(cell.vehicles)),
                _fmt(cell.unit_value),
                _fmt(cell.va_total),
                _fmt(cell.va_hw),
                _fmt(cell.va_sw),
            )
        )
        for cell in table.cells
    ]
    return _write(path, manifest_hash, VA_HEADER, rows)


def write_summary_csv(path, tables, manifest_hash):
    rows = [
        ",".join(
            (
                table.scenario_name,
                table.basis,
                str(table.horizon[0]),
                str(table.horizon[1]),
                _fmt(table.horizon_total),
                _fmt(table.hw_total),
                _fmt(table.sw_total),
            )
        )
        for table in tables
    ]
    return _write(path, manifest_hash, SUMMARY_HEADER, rows)


def write_entry_years_csv(path, results, manifest_hash):
    rows = []
    for result in results:
        for cfg in result.spec.levels:
            trajectory = result.trajectories[cfg.level]
            rows.append(
                ",".join(
                    (
                        result.spec.name,
                        cfg.level.name,
                        str(cfg.declared_entry_year),
                        _none_or(entry_year(trajectory)),
                        _none_or(mass_market_year(trajectory)),
                        _none_or(off_market_year(trajectory)),
                    )
                )
            )
    return _write(path, manifest_hash, ENTRY_YEARS_HEADER, rows)


def _none_or(value):
    return "" if value is None else str(value)
