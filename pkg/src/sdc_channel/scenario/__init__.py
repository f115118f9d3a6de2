"""Scenario files, the built-in reference scenario, batch runs and CSV exports."""

from .export import (
    CIR_HEADER,
    POSITION_HEADER,
    PROFILE_HEADER,
    TRACE_HEADER,
    write_cir,
    write_positions,
    write_profile,
    write_trace,
)
from .loader import (
    load_scenario,
    parse_scenario,
    scenario_from_data,
    scenario_hash,
    serialize_scenario,
)
from .reference import reference_scenario
from .runner import (
    OUTPUTS,
    RunResult,
    dump_cir,
    resolve_trp_id,
    run,
    simulate_traces,
    snapshot_profile,
    solve_positions,
    trace_link,
)

__all__ = [
    "CIR_HEADER",
    "OUTPUTS",
    "POSITION_HEADER",
    "PROFILE_HEADER",
    "RunResult",
    "TRACE_HEADER",
    "dump_cir",
    "load_scenario",
    "parse_scenario",
    "reference_scenario",
    "resolve_trp_id",
    "run",
    "scenario_from_data",
    "scenario_hash",
    "serialize_scenario",
    "simulate_traces",
    "snapshot_profile",
    "solve_positions",
    "trace_link",
    "write_cir",
    "write_positions",
    "write_profile",
    "write_trace",
]
