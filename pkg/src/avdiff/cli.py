"""Command-line surface.

Subcommands: ``simulate`` (trajectories CSV + share chart), ``calibrate``
(solve q for a fixed point), ``va`` (value-added CSV + stacked chart),
``report`` (all three final presets end to end) and ``presets`` (list or dump
the bundled scenarios).  Exit codes: 0 success, 1 validation error, 2 solver
failure.
"""

import argparse
import json
import os
import sys

from . import __version__
from .economics import compare_scenarios, scenario_value_added
from .errors import AvdiffError, CalibrationError, ConfigError
from .calibration import FixedPoint, calibrate_q
from .levels import parse_level
from .manifest import build_manifest, write_manifest
from .output import (
    write_entry_years_csv,
    write_summary_csv,
    write_trajectories_csv,
    write_va_csv,
)
from .registrations import (
    build_reference_series,
    load_registrations,
    reference_series_bytes,
)
from .scenario import (
    builtin_preset,
    entry_year,
    mass_market_year,
    off_market_year,
    preset_names,
    run_scenario,
    spec_from_dict,
    spec_to_dict,
)

REPORT_PRESETS = ("slow", "baseline", "fast")
DEFAULT_VA_HORIZON = (2020, 2050)


def _load_series(source):
    if source == "ref":
        return build_reference_series(), reference_series_bytes()
    if not os.path.isfile(source):
        raise ConfigError(f"registration file not found: {source}")
    try:
        series = load_registrations(source)
        with open(source, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read registration file {source}: {exc}") from exc
    return series, raw


def _load_scenario(ref):
    if ref in preset_names():
        return builtin_preset(ref)
    if os.path.isfile(ref):
        try:
            with open(ref, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read scenario file {ref}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"scenario file {ref} is not valid JSON: {exc}") from exc
        return spec_from_dict(data)
    raise ConfigError(f"unknown scenario file or preset: {ref}")


def _out_dir(args):
    out = args.out or os.environ.get("AVDIFF_OUT") or "out"
    os.makedirs(out, exist_ok=True)
    return out


def _parse_horizon(text):
    try:
        first, last = text.split(":")
        return int(first), int(last)
    except ValueError:
        raise ConfigError(
            f"horizon must look like 2020:2050, got {text!r}"
        ) from None


def _append_svg_comment(path, manifest_hash):
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(f"<!-- manifest: {manifest_hash} -->\n")


def _milestone_lines(result):
    lines = []
    for cfg in result.spec.levels:
        trajectory = result.trajectories[cfg.level]
        entry = entry_year(trajectory)
        mass = mass_market_year(trajectory)
        off = off_market_year(trajectory)
        lines.append(
            f"  {cfg.level.name}: entry {entry or '-'} "
            f"(declared {cfg.declared_entry_year}), mass market {mass or '-'}, "
            f"off market {off or '-'}"
        )
    return lines


def cmd_simulate(args):
    spec = _load_scenario(args.scenario)
    series, raw_bytes = _load_series(args.registrations)
    out = _out_dir(args)
    result = run_scenario(spec, series)
    manifest = build_manifest(
        scenarios=[spec.name],
        registrations_source=args.registrations,
        registrations_bytes=raw_bytes,
        scenario_docs=[spec_to_dict(spec)],
        overrides={},
        out_dir=out,
        tool_version=__version__,
    )
    write_manifest(manifest, out)
    csv_path = os.path.join(out, f"{spec.name}_trajectories.csv")
    write_trajectories_csv(csv_path, result, manifest.input_hash)
    from .plots import share_chart_svg

    svg_path = os.path.join(out, f"{spec.name}_shares.svg")
    share_chart_svg(result, svg_path)
    _append_svg_comment(svg_path, manifest.input_hash)
    print(f"scenario {spec.name!r}: wrote {csv_path} and {svg_path}")
    for line in _milestone_lines(result):
        print(line)
    return 0


def cmd_calibrate(args):
    spec = _load_scenario(args.scenario)
    series, _ = _load_series(args.registrations)
    level = parse_level(args.level)
    try:
        cfg = spec.level_config(level)
    except KeyError:
        raise ConfigError(
            f"scenario {spec.name!r} does not configure level {level}"
        ) from None
    fixed_point = FixedPoint(year=args.target_year, target_share=args.target_share)
    result = calibrate_q(
        p=cfg.bass.p,
        market_potential=cfg.bass.market_potential,
        period=(cfg.bass.period_start, cfg.bass.period_end),
        registrations=series,
        fixed_point=fixed_point,
        tolerance=args.tolerance,
    )
    print(f"level {level.name} in scenario {spec.name!r}:")
    print(f"  q = {result.q:.6f}")
    print(f"  achieved share = {result.achieved_share:.6f} in {args.target_year}")
    print(f"  iterations = {result.iterations}")
    print(f"  residual = {result.residual:.2e}")
    return 0


def cmd_va(args):
    spec = _load_scenario(args.scenario)
    series, raw_bytes = _load_series(args.registrations)
    out = _out_dir(args)
    horizon = _parse_horizon(args.horizon)
    result = run_scenario(spec, series)
    table, _ = scenario_value_added(result, series, horizon, basis=args.va_basis)
    manifest = build_manifest(
        scenarios=[spec.name],
        registrations_source=args.registrations,
        registrations_bytes=raw_bytes,
        scenario_docs=[spec_to_dict(spec)],
        overrides={"horizon": list(horizon), "va_basis": args.va_basis},
        out_dir=out,
        tool_version=__version__,
    )
    write_manifest(manifest, out)
    csv_path = os.path.join(out, f"{spec.name}_va.csv")
    write_va_csv(csv_path, table, manifest.input_hash)
    from .plots import value_added_chart_svg

    svg_path = os.path.join(out, f"{spec.name}_va.svg")
    value_added_chart_svg(table, svg_path)
    _append_svg_comment(svg_path, manifest.input_hash)
    print(f"scenario {spec.name!r}: wrote {csv_path} and {svg_path}")
    print(
        f"  value added {horizon[0]}-{horizon[1]} ({table.basis} basis): "
        f"{table.horizon_total / 1e9:.2f} billion EUR"
    )
    return 0


def cmd_report(args):
    series, raw_bytes = _load_series(args.registrations)
    out = _out_dir(args)
    horizon = _parse_horizon(args.horizon)
    specs = [builtin_preset(name) for name in REPORT_PRESETS]
    manifest = build_manifest(
        scenarios=[spec.name for spec in specs],
        registrations_source=args.registrations,
        registrations_bytes=raw_bytes,
        scenario_docs=[spec_to_dict(spec) for spec in specs],
        overrides={"horizon": list(horizon), "va_basis": args.va_basis},
        out_dir=out,
        tool_version=__version__,
    )
    write_manifest(manifest, out)
    from .plots import share_chart_svg, value_added_chart_svg

    other_basis = "cost" if args.va_basis == "price" else "price"
    results = []
    tables = []
    other_tables = []
    for spec in specs:
        result = run_scenario(spec, series)
        table, _ = scenario_value_added(result, series, horizon, basis=args.va_basis)
        other, _ = scenario_value_added(result, series, horizon, basis=other_basis)
        results.append(result)
        tables.append(table)
        other_tables.append(other)
        write_trajectories_csv(
            os.path.join(out, f"{spec.name}_trajectories.csv"),
            result,
            manifest.input_hash,
        )
        write_va_csv(
            os.path.join(out, f"{spec.name}_va.csv"), table, manifest.input_hash
        )
        shares_svg = os.path.join(out, f"{spec.name}_shares.svg")
        share_chart_svg(result, shares_svg)
        _append_svg_comment(shares_svg, manifest.input_hash)
        va_svg = os.path.join(out, f"{spec.name}_va.svg")
        value_added_chart_svg(table, va_svg)
        _append_svg_comment(va_svg, manifest.input_hash)
    write_summary_csv(os.path.join(out, "summary.csv"), tables, manifest.input_hash)
    write_entry_years_csv(
        os.path.join(out, "entry_years.csv"), results, manifest.input_hash
    )
    comparison = compare_scenarios(tables)
    print(f"report written to {out}")
    print(f"value added {horizon[0]}-{horizon[1]} ({args.va_basis} basis):")
    for line in comparison.lines():
        print(f"  {line}")
    others = ", ".join(
        f"{t.scenario_name} {t.horizon_total / 1e9:.2f}" for t in other_tables
    )
    print(f"  ({other_basis} basis: {others} billion EUR)")
    return 0


def cmd_presets(args):
    if args.dump:
        spec = builtin_preset(args.dump)
        print(json.dumps(spec_to_dict(spec), indent=2))
        return 0
    for name in preset_names():
        spec = builtin_preset(name)
        print(f"{name}: {spec.description}")
        for cfg in spec.levels:
            bass = cfg.bass
            fp = (
                f", fixed point {cfg.fixed_point.target_share:.0%} in "
                f"{cfg.fixed_point.year}"
                if cfg.fixed_point
                else ""
            )
            print(
                f"  {cfg.level.name}: p={bass.p}, q={bass.q}, "
                f"potential={bass.market_potential:,.0f}, "
                f"period {bass.period_start}-{bass.period_end}, "
                f"entry {cfg.declared_entry_year}{fp}"
            )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="avdiff",
        description=(
            "Scenario engine for automated-vehicle market uptake in EU27+UK "
            "to 2050, with experience-curve costs and value-added accounting."
        ),
    )
    parser.add_argument("--version", action="version", version=f"avdiff {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenario=True):
        if scenario:
            p.add_argument(
                "--scenario",
                default="baseline",
                help="preset name or scenario JSON file (default: baseline)",
            )
        p.add_argument(
            "--registrations",
            default="ref",
            help="'ref' for the bundled reference series or a CSV path",
        )

    p = sub.add_parser("simulate", help="run one scenario and emit trajectories")
    add_common(p)
    p.add_argument("--out", default=None, help="output directory (or $AVDIFF_OUT)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("calibrate", help="solve q for a share fixed point")
    add_common(p)
    p.add_argument("--level", required=True, help="automation level, e.g. L3")
    p.add_argument("--target-share", type=float, required=True)
    p.add_argument("--target-year", type=int, required=True)
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("va", help="value added for one scenario")
    add_common(p)
    p.add_argument("--out", default=None)
    p.add_argument("--horizon", default="2020:2050", help="as first:last")
    p.add_argument("--va-basis", choices=("price", "cost"), default="price")
    p.set_defaults(func=cmd_va)

    p = sub.add_parser("report", help="slow, baseline and fast end to end")
    add_common(p, scenario=False)
    p.add_argument("--out", default=None)
    p.add_argument("--horizon", default="2020:2050")
    p.add_argument("--va-basis", choices=("price", "cost"), default="price")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("presets", help="list bundled scenarios")
    p.add_argument("--dump", default=None, metavar="NAME", help="print one as JSON")
    p.set_defaults(func=cmd_presets)

    return parser


def run_cli(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CalibrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AvdiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())
