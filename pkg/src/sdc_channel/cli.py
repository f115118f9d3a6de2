"""Command-line interface for SDC-Channel.

Usage:
    sdc-channel simulate reference --out out/
    sdc-channel reference-scenario > scenario.json
    sdc-channel trace scenario.json --trp TRP3
    sdc-channel cir scenario.json --trp 3 --snapshot 726
    sdc-channel position scenario.json --out positions.csv
    sdc-channel validate scenario.json

``reference`` in place of a scenario file selects the built-in scenario.
Exit code 0 = success, 1 = any error (logged at ERROR level).
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import get_settings
from .errors import SdcError
from .models import Scenario
from .scenario import (
    OUTPUTS,
    dump_cir,
    load_scenario,
    reference_scenario,
    resolve_trp_id,
    run,
    scenario_from_data,
    scenario_hash,
    serialize_scenario,
    simulate_traces,
    solve_positions,
    trace_link,
    write_positions,
    write_trace,
)
from .utils import get_logger, setup_logging

logger = get_logger(__name__)

REFERENCE = "reference"


def _scenario(args: argparse.Namespace) -> Scenario:
    scenario = (
        reference_scenario() if args.scenario == REFERENCE else load_scenario(args.scenario)
    )
    if getattr(args, "seed", None) is not None:
        scenario = scenario_from_data({**scenario.model_dump(mode="json"), "seed": args.seed})
    return scenario


def cmd_simulate(args: argparse.Namespace) -> None:
    scenario = _scenario(args)
    out_dir = Path(args.out or get_settings().output.SDC_OUTPUT_DIR)
    result = run(scenario, out_dir, args.outputs, max_workers=args.workers)
    for path in result.files:
        print(path)


def cmd_reference_scenario(args: argparse.Namespace) -> None:
    sys.stdout.write(serialize_scenario(reference_scenario(seed=args.seed)))


def cmd_trace(args: argparse.Namespace) -> None:
    scenario = _scenario(args)
    trace = trace_link(scenario, resolve_trp_id(scenario, args.trp))
    digest = scenario_hash(scenario)
    if args.out is None:
        write_trace(sys.stdout, trace, digest, scenario.seed)
        return
    with Path(args.out).open("w", encoding="utf-8", newline="") as f:
        write_trace(f, trace, digest, scenario.seed)
    print(args.out)


def cmd_cir(args: argparse.Namespace) -> None:
    scenario = _scenario(args)
    out_dir = Path(args.out or get_settings().output.SDC_OUTPUT_DIR)
    for path in dump_cir(scenario, resolve_trp_id(scenario, args.trp), args.snapshot, out_dir):
        print(path)


def cmd_position(args: argparse.Namespace) -> None:
    scenario = _scenario(args)
    track = solve_positions(scenario, simulate_traces(scenario, max_workers=args.workers))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as f:
        write_positions(f, track, scenario_hash(scenario), scenario.seed)
    report = track.report()
    logger.info(
        "Positioning done",
        median_error_m=report.median,
        p90_error_m=report.p90,
        los_median_m=report.los.median if report.los else None,
        olos_median_m=report.olos.median if report.olos else None,
    )
    print(out)


def cmd_validate(args: argparse.Namespace) -> None:
    scenario = _scenario(args)
    print(
        f"{scenario.name}: {len(scenario.trps)} TRPs, {len(scenario.sdcs)} SDCs, "
        f"{scenario.snapshots} snapshots, hash {scenario_hash(scenario)}"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdc-channel",
        description="Channel simulation with semi-deterministic clusters",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="Override LOG_LEVEL")
    parser.add_argument("--json-logs", action="store_true", help="Emit JSON log lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("scenario", help=f"Scenario file (JSON or YAML) or '{REFERENCE}'")
        p.add_argument("--seed", type=int, help="Override the scenario seed")
        return p

    p = scenario_command("simulate", "Simulate all links and write traces and positions")
    p.add_argument("--out", help="Output directory (default: SDC_OUTPUT_DIR)")
    p.add_argument("--outputs", nargs="+", choices=OUTPUTS, default=list(OUTPUTS))
    p.add_argument("--workers", type=int, help="Threads (default: SDC_MAX_WORKERS)")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("reference-scenario", help="Print the built-in scenario as JSON")
    p.add_argument("--seed", type=int, default=7, help="Scenario seed")
    p.set_defaults(handler=cmd_reference_scenario)

    p = scenario_command("trace", "Power trace of one link")
    p.add_argument("--trp", required=True, help="TRP id or number")
    p.add_argument("--out", help="Output CSV file (default: stdout)")
    p.set_defaults(handler=cmd_trace)

    p = scenario_command("cir", "CIR and correlation profile of one link at one snapshot")
    p.add_argument("--trp", required=True, help="TRP id or number")
    p.add_argument("--snapshot", type=int, required=True, help="Snapshot index")
    p.add_argument("--out", help="Output directory (default: SDC_OUTPUT_DIR)")
    p.set_defaults(handler=cmd_cir)

    p = scenario_command("position", "Least-squares positions from all links")
    p.add_argument("--out", required=True, help="Output CSV file")
    p.add_argument("--workers", type=int, help="Threads (default: SDC_MAX_WORKERS)")
    p.set_defaults(handler=cmd_position)

    p = scenario_command("validate", "Parse and validate a scenario")
    p.set_defaults(handler=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(
        log_level=args.log_level or settings.logging.LOG_LEVEL,
        development=not (args.json_logs or settings.logging.LOG_JSON),
    )
    try:
        args.handler(args)
    except SdcError as exc:
        logger.error("Command failed", command=args.command, error=str(exc))
        return 1
    except OSError as exc:
        logger.error("I/O error", command=args.command, error=str(exc))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
