"""avdiff: automated-vehicle uptake scenarios and value added, EU27+UK to 2050.

Per-level technology diffusion (innovation/imitation dynamics toward a market
potential), exogenous calibration against literature fixed points, scenario
assembly with top-down share displacement, experience-curve package costs and
value-added accounting, with a CLI that reproduces the bundled scenario
report.
"""

from .levels import AutomationLevel, parse_level
from .diffusion import (
    AdoptionState,
    BassParams,
    LevelTrajectory,
    bass_closed_form,
    bass_increment,
    simulate_level,
)
from .calibration import (
    CalibrationResult,
    FixedPoint,
    calibrate_q,
    derive_market_potential,
)
from .registrations import (
    RegistrationSeries,
    build_reference_series,
    load_registrations,
)
from .scenario import (
    LevelConfig,
    ScenarioResult,
    ScenarioSpec,
    builtin_preset,
    entry_year,
    mass_market_year,
    off_market_year,
    preset_names,
    run_scenario,
    spec_from_dict,
    spec_to_dict,
)
from .costs import CostCurve, CostParams, build_cost_curve, default_cost_params, unit_cost
from .economics import (
    ScenarioComparison,
    ValueAddedCell,
    ValueAddedTable,
    compare_scenarios,
    scenario_value_added,
    value_added,
)
from .errors import (
    AnchorError,
    AvdiffError,
    BracketError,
    CalibrationError,
    ConfigError,
    ConvergenceError,
    CoverageError,
    SeriesParseError,
)

__version__ = "0.1.0"

__all__ = [
    "AutomationLevel",
    "parse_level",
    "AdoptionState",
    "BassParams",
    "LevelTrajectory",
    "bass_closed_form",
    "bass_increment",
    "simulate_level",
    "CalibrationResult",
    "FixedPoint",
    "calibrate_q",
    "derive_market_potential",
    "RegistrationSeries",
    "build_reference_series",
    "load_registrations",
    "LevelConfig",
    "ScenarioResult",
    "ScenarioSpec",
    "builtin_preset",
    "entry_year",
    "mass_market_year",
    "off_market_year",
    "preset_names",
    "run_scenario",
    "spec_from_dict",
    "spec_to_dict",
    "CostCurve",
    "CostParams",
    "build_cost_curve",
    "default_cost_params",
    "unit_cost",
    "ScenarioComparison",
    "ValueAddedCell",
    "ValueAddedTable",
    "compare_scenarios",
    "scenario_value_added",
    "value_added",
    "AnchorError",
    "AvdiffError",
    "BracketError",
    "CalibrationError",
    "ConfigError",
    "ConvergenceError",
    "CoverageError",
    "SeriesParseError",
    "__version__",
]
