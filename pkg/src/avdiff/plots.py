"""Static SVG charts: market-share lines and stacked value-added areas.

Output is deterministic for identical inputs: the SVG id hash salt is pinned
and no creation date is embedded.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .levels import AutomationLevel  # noqa: E402

__all__ = ["share_chart_svg", "value_added_chart_svg"]

plt.rcParams["svg.hashsalt"] = "avdiff"

LEVEL_COLORS = {
    AutomationLevel.L0: "#b0b0b0",
    AutomationLevel.L1: "#8c8c5a",
    AutomationLevel.L2: "#4c78a8",
    AutomationLevel.L3: "#f58518",
    AutomationLevel.L4: "#54a24b",
    AutomationLevel.L5: "#b279a2",
}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def share_chart_svg(result, path, title=""):
    """Allocated market shares per level over the scenario horizon."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for level in sorted(result.trajectories):
        trajectory = result.trajectories[level]
        years = trajectory.years
        shares = [100.0 * trajectory.allocated_share.get(y, 0.0) for y in years]
        ax.plot(years, shares, label=level.name, color=LEVEL_COLORS[level])
    ax.set_xlabel("year")
    ax.set_ylabel("share of new registrations [%]")
    ax.set_ylim(0, 100)
    ax.set_title(title or f"Market uptake: {result.spec.name}")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper left", ncol=3, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def value_added_chart_svg(table, path, title=""):
    """Stacked annual value added per level, in billion EUR."""
    levels = sorted({cell.level for cell in table.cells})
    years = list(range(table.horizon[0], table.horizon[1] + 1))
    by_level = {lv: dict.fromkeys(years, 0.0) for lv in levels}
    for cell in table.cells:
        by_level[cell.level][cell.year] = cell.va_total / 1e9
    stacks = [[by_level[lv][y] for y in years] for lv in levels]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.stackplot(
        years,
        stacks,
        labels=[lv.name for lv in levels],
        colors=[LEVEL_COLORS[lv] for lv in levels],
    )
    ax.set_xlabel("year")
    ax.set_ylabel("value added [billion EUR / year]")
    ax.set_title(title or f"Value added: {table.scenario_name} ({table.basis} basis)")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper left", fontsize=9)
    fig.tight_layout()
    return _save(fig, path)
