"""Scenario assembly: per-level diffusion runs combined into market shares.

A scenario configures one Bass process per automation level (L2-L5).  Each
level is simulated from its launch year through the scenario horizon; shares
are then allocated year by year, top-down by level rank: the highest level
keeps its raw share (capped at 100%), each lower level keeps what fits into
the remaining capacity, and the residual is attributed to the L0/L1 pool,
with L1 taking a fixed fraction of the residual.  Allocated shares therefore
never sum above 1, and a level's allocated share never exceeds its raw share.

Four scenarios ship as presets: ``preliminary-baseline``, ``slow``,
``baseline`` and ``fast``.
"""

import dataclasses

from .calibration import CalibrationResult, FixedPoint, calibrate_q
from .costs import CostParams, default_cost_params
from .diffusion import BassParams, LevelTrajectory, AdoptionState, simulate_level
from .errors import ConfigError
from .levels import AutomationLevel, parse_level

__all__ = [
    "LevelConfig",
    "ScenarioSpec",
    "ScenarioResult",
    "run_scenario",
    "entry_year",
    "mass_market_year",
    "off_market_year",
    "builtin_preset",
    "preset_names",
    "spec_to_dict",
    "spec_from_dict",
]

REPORT_MIN_YEAR = 2015
REPORT_MAX_YEAR = 2050

ENTRY_SHARE = 0.01
MASS_MARKET_SHARE = 0.10
OFF_MARKET_SHARE = 0.005
OFF_MARKET_RUN = 2

DEFAULT_L1_SHARE_OF_RESIDUAL = 0.69


@dataclasses.dataclass(frozen=True)
class LevelConfig:
    """One level's diffusion setup within a scenario.

    ``entry_year`` is the declared market-introduction year (the year the
    share is expected to reach 1%); the achieved year is computed from the
    trajectory.  ``fixed_point`` documents the calibration anchor and is
    required when ``bass.q`` is left unset.
    """

    level: AutomationLevel
    bass: BassParams
    fixed_point: FixedPoint | None = None
    entry_year: int | None = None
    mass_market_year_override: int | None = None
    costs: CostParams | None = None

    def __post_init__(self):
        if self.entry_year is not None and not (
            self.bass.period_start <= self.entry_year <= self.bass.period_end
        ):
            raise ConfigError(
                f"{self.level}: entry year {self.entry_year} outside the "
                f"period {self.bass.period_start}-{self.bass.period_end}"
            )
        if self.bass.q is None and self.fixed_point is None:
            raise ConfigError(
                f"{self.level}: either q or a fixed point must be given"
            )

    @property
    def declared_entry_year(self):
        return self.entry_year if self.entry_year is not None else self.bass.period_start

    def cost_params(self):
        return self.costs if self.costs is not None else default_cost_params(self.level)


@dataclasses.dataclass(frozen=True)
class ScenarioSpec:
    name: str
    levels: tuple[LevelConfig, ...]
    horizon: tuple[int, int]
    l1_share_of_residual: float = DEFAULT_L1_SHARE_OF_RESIDUAL
    description: str = ""

    def __post_init__(self):
        seen = set()
        for cfg in self.levels:
            if cfg.level in seen:
                raise ConfigError(f"duplicate configuration for {cfg.level}")
            if cfg.level in (AutomationLevel.L0, AutomationLevel.L1):
                raise ConfigError(
                    f"{cfg.level} is covered by the residual pool, not a "
                    "diffusion process"
                )
            seen.add(cfg.level)
        if not self.levels:
            raise ConfigError("scenario configures no levels")
        first, last = self.horizon
        if first > last:
            raise ConfigError(f"horizon start {first} after end {last}")
        if first < REPORT_MIN_YEAR or last > REPORT_MAX_YEAR:
            raise ConfigError(
                f"horizon {self.horizon} outside the reporting window "
                f"{REPORT_MIN_YEAR}-{REPORT_MAX_YEAR}"
            )
        for cfg in self.levels:
            a = max(cfg.bass.period_start, REPORT_MIN_YEAR)
            b = min(cfg.bass.period_end, REPORT_MAX_YEAR)
            if a > b:
                raise ConfigError(
                    f"{cfg.level}: period lies outside the reporting window"
                )
            if not (first <= a and b <= last):
                raise ConfigError(
                    f"horizon {self.horizon} does not cover the {cfg.level} "
                    f"period clipped to the reporting window ({a}-{b})"
                )
        if not 0 <= self.l1_share_of_residual <= 1:
            raise ConfigError(
                "L1 share of the residual pool must lie in [0, 1], got "
                f"{self.l1_share_of_residual}"
            )

    def level_config(self, level):
        for cfg in self.levels:
            if cfg.level == level:
                return cfg
        raise KeyError(level)

    @property
    def configured_levels(self):
        return tuple(cfg.level for cfg in self.levels)


@dataclasses.dataclass(frozen=True)
class ScenarioResult:
    """Trajectories with allocated shares, plus the residual L0/L1 pool."""

    spec: ScenarioSpec
    trajectories: dict[AutomationLevel, LevelTrajectory]
    residual_share: dict[int, float]
    calibrations: dict[AutomationLevel, CalibrationResult]

    def trajectory(self, level):
        return self.trajectories[AutomationLevel(level)]

    def sorted_trajectories(self):
        return [self.trajectories[lv] for lv in sorted(self.trajectories)]


def _resolve_q(spec, registrations, tolerance):
    """Calibrate every level whose q is unset against its fixed point."""
    resolved = []
    calibrations = {}
    for cfg in spec.levels:
        if cfg.bass.q is not None:
            resolved.append(cfg)
            continue
        result = calibrate_q(
            p=cfg.bass.p,
            market_potential=cfg.bass.market_potential,
            period=(cfg.bass.period_start, cfg.bass.period_end),
            registrations=registrations,
            fixed_point=cfg.fixed_point,
            tolerance=tolerance,
        )
        calibrations[cfg.level] = result
        resolved.append(
            dataclasses.replace(
                cfg, bass=dataclasses.replace(cfg.bass, q=result.q)
            )
        )
    return dataclasses.replace(spec, levels=tuple(resolved)), calibrations


def run_scenario(spec, registrations, calibration_tolerance=1e-6):
    """Simulate all configured levels and fill allocated shares.

    Levels run from their own launch years through the horizon end; the
    top-down allocation walks levels from L5 down to L2 each year, and the
    residual goes to the L0/L1 pool, which is emitted as two synthetic
    trajectories so reports can show the full market split.
    """
    spec, calibrations = _resolve_q(spec, registrations, calibration_tolerance)
    horizon_end = spec.horizon[1]
    sim_start = min(cfg.bass.period_start for cfg in spec.levels)
    registrations.require_coverage(
        sim_start, horizon_end, context=f"scenario {spec.name!r}"
    )

    raw = {
        cfg.level: simulate_level(cfg.level, cfg.bass, registrations, horizon_end)
        for cfg in spec.levels
    }

    years = range(sim_start, horizon_end + 1)
    allocated = {level: {} for level in raw}
    residual = {}
    for year in years:
        remaining = 1.0
        for level in sorted(raw, reverse=True):
            share = raw[level].raw_share.get(year)
            if share is None:
                continue
            take = min(share, remaining)
            allocated[level][year] = take
            remaining -= take
        residual[year] = remaining

    trajectories = {
        level: raw[level].with_allocated(allocated[level]) for level in raw
    }
    l1_fraction = spec.l1_share_of_residual
    trajectories[AutomationLevel.L1] = _pool_trajectory(
        AutomationLevel.L1, years, residual, l1_fraction, registrations
    )
    trajectories[AutomationLevel.L0] = _pool_trajectory(
        AutomationLevel.L0, years, residual, 1.0 - l1_fraction, registrations
    )
    return ScenarioResult(
        spec=spec,
        trajectories=trajectories,
        residual_share=residual,
        calibrations=calibrations,
    )


def _pool_trajectory(level, years, residual, fraction, registrations):
    states = []
    shares = {}
    cumulative = 0.0
    for year in years:
        share = fraction * residual[year]
        vehicles = share * registrations[year]
        cumulative += vehicles
        states.append(AdoptionState(year, vehicles, cumulative))
        shares[year] = share
    return LevelTrajectory(
        level=level,
        states=tuple(states),
        raw_share=dict(shares),
        allocated_share=shares,
    )


def _first_year_reaching(trajectory, threshold):
    for year in trajectory.years:
        if trajectory.allocated_share.get(year, 0.0) >= threshold:
            return year
    return None


def entry_year(trajectory, threshold=ENTRY_SHARE):
    """First year the allocated share reaches 1%; None if never."""
    return _first_year_reaching(trajectory, threshold)


def mass_market_year(trajectory, threshold=MASS_MARKET_SHARE):
    """First year the allocated share reaches 10%; None if never."""
    return _first_year_reaching(trajectory, threshold)


def off_market_year(trajectory, threshold=OFF_MARKET_SHARE, run_length=OFF_MARKET_RUN):
    """Reporting convention: the year a level leaves the market.

    A level is off market from the year after its allocated share last held
    at least ``threshold`` (0.5%), provided the share then stays below the
    threshold for at least ``run_length`` consecutive years inside the
    trajectory.  Returns None for levels that never reached the threshold or
    are still on the market.
    """
    years = trajectory.years
    last_active = None
    for year in years:
        if trajectory.allocated_share.get(year, 0.0) >= threshold:
            last_active = year
    if last_active is None:
        return None
    trailing = years[-1] - last_active
    if trailing >= run_length:
        return last_active + 1
    return None


# --- bundled presets -------------------------------------------------------

def _level(level, p, q, nbar, period, entry=None, fixed_point=None):
    level = AutomationLevel[level]
    return LevelConfig(
        level=level,
        bass=BassParams(
            p=p, q=q, market_potential=nbar,
            period_start=period[0], period_end=period[1],
        ),
        fixed_point=fixed_point,
        entry_year=entry,
        costs=default_cost_params(level),
    )


_FP_L2 = FixedPoint(year=2025, target_share=0.39)
_FP_L3 = FixedPoint(year=2030, target_share=0.08)

_PRESETS = {
    "preliminary-baseline": ScenarioSpec(
        name="preliminary-baseline",
        description=(
            "Central pathway as fitted from the literature alone, before "
            "expert review reshaped the level-2 market potential."
        ),
        horizon=(2015, 2050),
        levels=(
            _level("L2", 0.002, 0.325, 181_040_000, (2015, 2029), 2015, _FP_L2),
            _level("L3", 0.002, 0.300, 206_769_000, (2025, 2039), 2025, _FP_L3),
            _level("L4", 0.002, 0.300, 220_949_000, (2035, 2049), 2035),
            _level("L5", 0.002, 0.300, 164_194_000, (2040, 2050), 2040),
        ),
    ),
    "slow": ScenarioSpec(
        name="slow",
        description=(
            "Hesitant uptake: thin investment and a fragmented legal "
            "framework delay high automation; level 4 arrives in 2040 and "
            "level 5 not before 2050."
        ),
        horizon=(2015, 2050),
        levels=(
            _level("L2", 0.002, 0.260, 285_823_000, (2015, 2030), 2015),
            _level("L3", 0.002, 0.260, 146_134_000, (2030, 2050), 2030),
            _level("L4", 0.002, 0.260, 146_134_000, (2040, 2050), 2040),
        ),
    ),
    "baseline": ScenarioSpec(
        name="baseline",
        description=(
            "Central pathway: steady technology, regulation and acceptance "
            "bring level 4 in 2035 and level 5 in 2045."
        ),
        horizon=(2015, 2050),
        levels=(
            _level("L2", 0.002, 0.285, 238_186_000, (2015, 2030), 2015, _FP_L2),
            _level("L3", 0.002, 0.335, 143_879_000, (2025, 2041), 2025, _FP_L3),
            _level("L4", 0.002, 0.335, 111_026_000, (2035, 2050), 2035),
            _level("L5", 0.002, 0.335, 111_026_000, (2045, 2050), 2045),
        ),
    ),
    "fast": ScenarioSpec(
        name="fast",
        description=(
            "Accelerated uptake: strong investment and supportive rules pull "
            "level 4 to 2030 and level 5 to 2035; assistance levels phase "
            "out quickly."
        ),
        horizon=(2015, 2050),
        levels=(
            _level("L2", 0.002, 0.400, 163_321_000, (2015, 2027), 2015),
            _level("L3", 0.002, 0.400, 170_148_000, (2023, 2035), 2023),
            _level("L4", 0.002, 0.400, 146_134_000, (2030, 2043), 2030),
            _level("L5", 0.002, 0.400, 133_231_000, (2035, 2050), 2035),
        ),
    ),
}


def preset_names():
    return tuple(_PRESETS)


def builtin_preset(name):
    """Bundled scenario by name; raises ConfigError for unknown names."""
    try:
        return _PRESETS[name]
    except KeyError:
        known = ", ".join(_PRESETS)
        raise ConfigError(f"unknown preset {name!r} (known: {known})") from None


# --- (de)serialization ------------------------------------------------------

def spec_to_dict(spec):
    """JSON-ready dict; floats survive a round trip bit-exactly."""
    return {
        "name": spec.name,
        "description": spec.description,
        "horizon": list(spec.horizon),
        "l1_share_of_residual": spec.l1_share_of_residual,
        "levels": [_level_to_dict(cfg) for cfg in spec.levels],
    }


def _level_to_dict(cfg):
    out = {
        "level": cfg.level.name,
        "p": cfg.bass.p,
        "q": cfg.bass.q,
        "market_potential": cfg.bass.market_potential,
        "period": [cfg.bass.period_start, cfg.bass.period_end],
        "entry_year": cfg.entry_year,
        "mass_market_year_override": cfg.mass_market_year_override,
    }
    if cfg.fixed_point is not None:
        out["fixed_point"] = {
            "year": cfg.fixed_point.year,
            "target_share": cfg.fixed_point.target_share,
        }
    else:
        out["fixed_point"] = None
    costs = cfg.cost_params()
    out["costs"] = {
        "mass_market_cost": costs.mass_market_cost,
        "learning_rate": costs.learning_rate,
        "floor_ratio": costs.floor_ratio,
        "markup": costs.markup,
        "hw_share": costs.hw_share,
        "sw_share": costs.sw_share,
    }
    return out


def spec_from_dict(data):
    try:
        levels = tuple(_level_from_dict(item) for item in data["levels"])
        horizon = tuple(data["horizon"])
        return ScenarioSpec(
            name=data["name"],
            description=data.get("description", ""),
            horizon=horizon,
            l1_share_of_residual=data.get(
                "l1_share_of_residual", DEFAULT_L1_SHARE_OF_RESIDUAL
            ),
            levels=levels,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid scenario document: {exc}") from exc


def _level_from_dict(item):
    level = parse_level(item["level"])
    fp = item.get("fixed_point")
    fixed_point = (
        FixedPoint(year=fp["year"], target_share=fp["target_share"]) if fp else None
    )
    costs = item.get("costs")
    cost_params = (
        CostParams(level=level, **costs) if costs is not None else None
    )
    return LevelConfig(
        level=level,
        bass=BassParams(
            p=item["p"],
            q=item.get("q"),
            market_potential=item["market_potential"],
            period_start=item["period"][0],
            period_end=item["period"][1],
        ),
        fixed_point=fixed_point,
        entry_year=item.get("entry_year"),
        mass_market_year_override=item.get("mass_market_year_override"),
        costs=cost_params,
    )
