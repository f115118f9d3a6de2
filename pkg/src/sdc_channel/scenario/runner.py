"""Batch simulation: all links of a scenario, selected outputs on disk.

Links are simulated on a thread pool; results are gathered and written in
canonical order (TRP id, then snapshot), so outputs do not depend on
scheduling.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from ..config import get_settings
from ..drifting import SnapshotChannel, simulate_track
from ..errors import ConfigurationError
from ..metrics import CorrelationProfile, PowerTrace, band_limited_profile, power_trace
from ..models import Scenario
from ..positioning import PositionTrack, solve_track
from ..utils import get_logger, link_context
from ..utils.seeding import StreamPurpose, stream, text_key
from .export import write_cir, write_positions, write_profile, write_trace
from .loader import scenario_hash

logger = get_logger(__name__)

Output = Literal["trace", "position"]
OUTPUTS: tuple[Output, ...] = ("trace", "position")


@dataclass
class RunResult:
    """What a run produced."""

    traces: dict[str, PowerTrace]
    positions: Optional[PositionTrack] = None
    files: list[Path] = field(default_factory=list)


def resolve_trp_id(scenario: Scenario, given: str) -> str:
    """Accept a TRP id or its number (``3`` for ``TRP3``).

    Raises:
        ConfigurationError: If no TRP matches
    """
    ids = [trp.id for trp in scenario.trps]
    for candidate in (given, f"TRP{given}"):
        if candidate in ids:
            return candidate
    raise ConfigurationError(f"unknown TRP '{given}' (known: {', '.join(ids)})")


def trace_link(
    scenario: Scenario, trp_id: str, snapshots: Optional[Iterable[int]] = None
) -> PowerTrace:
    """Simulate one link and evaluate its power trace."""
    with link_context(scenario.name, trp_id):
        channels = simulate_track(scenario, trp_id, snapshots)
        return power_trace(channels, scenario.rf, scenario.metrics, seed=scenario.seed)


def simulate_traces(
    scenario: Scenario,
    snapshots: Optional[Sequence[int]] = None,
    max_workers: Optional[int] = None,
) -> dict[str, PowerTrace]:
    """Power traces of every link, keyed by TRP id in sorted order."""
    workers = max_workers or get_settings().output.SDC_MAX_WORKERS
    trp_ids = sorted(trp.id for trp in scenario.trps)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {t: pool.submit(trace_link, scenario, t, snapshots) for t in trp_ids}
        return {t: futures[t].result() for t in trp_ids}


def solve_positions(scenario: Scenario, traces: dict[str, PowerTrace]) -> PositionTrack:
    """Least-squares UE positions from the FAP ranges of all links."""
    first = next(iter(traces.values()))
    truth = scenario.ue.positions(scenario.snapshots)[first.snapshots]
    positions = {trp.id: np.asarray(trp.position) for trp in scenario.trps}
    return solve_track(traces, positions, truth)


def run(
    scenario: Scenario,
    out_dir: Path,
    outputs: Sequence[Output] = OUTPUTS,
    *,
    snapshots: Optional[Sequence[int]] = None,
    max_workers: Optional[int] = None,
) -> RunResult:
    """Simulate all links and write the selected outputs.

    Writes ``trace_<trp>.csv`` per TRP and ``positions.csv``.

    Raises:
        SimulationError: With link/snapshot context
        OSError: If an output cannot be written
    """
    unknown = set(outputs) - set(OUTPUTS)
    if unknown:
        raise ConfigurationError(f"unknown outputs: {', '.join(sorted(unknown))}")
    digest = scenario_hash(scenario)
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info("Run started", scenario=scenario.name, seed=scenario.seed, out_dir=str(out_dir))

    result = RunResult(traces=simulate_traces(scenario, snapshots, max_workers))
    if "trace" in outputs:
        for trp_id, trace in result.traces.items():
            path = out_dir / f"trace_{trp_id}.csv"
            with path.open("w", encoding="utf-8", newline="") as f:
                write_trace(f, trace, digest, scenario.seed)
            result.files.append(path)
    if "position" in outputs:
        result.positions = solve_positions(scenario, result.traces)
        path = out_dir / "positions.csv"
        with path.open("w", encoding="utf-8", newline="") as f:
            write_positions(f, result.positions, digest, scenario.seed)
        result.files.append(path)

    logger.info("Run finished", files=len(result.files))
    return result


def snapshot_profile(
    scenario: Scenario, trp_id: str, snapshot: int
) -> tuple[SnapshotChannel, CorrelationProfile]:
    """Channel and correlation profile of one link at one snapshot."""
    if not 0 <= snapshot < scenario.snapshots:
        raise ConfigurationError(f"snapshot {snapshot} outside 0..{scenario.snapshots - 1}")
    (channel,) = simulate_track(scenario, trp_id, [snapshot])
    metrics = scenario.metrics
    rng = None
    if metrics.noise_floor_db is not None:
        rng = stream(scenario.seed, StreamPurpose.NOISE, text_key(trp_id), snapshot)
    profile = band_limited_profile(
        channel,
        scenario.rf,
        metrics.oversampling,
        pulse=metrics.pulse,
        rolloff=metrics.rolloff,
        noise_floor_db=metrics.noise_floor_db,
        rng=rng,
    )
    return channel, profile


def dump_cir(scenario: Scenario, trp_id: str, snapshot: int, out_dir: Path) -> list[Path]:
    """Write the CIR and profile of one link at one snapshot."""
    channel, profile = snapshot_profile(scenario, trp_id, snapshot)
    digest = scenario_hash(scenario)
    out_dir.mkdir(parents=True, exist_ok=True)
    cir_path = out_dir / f"cir_{trp_id}_{snapshot}.csv"
    profile_path = out_dir / f"profile_{trp_id}_{snapshot}.csv"
    with cir_path.open("w", encoding="utf-8", newline="") as f:
        write_cir(f, channel, digest, scenario.seed)
    with profile_path.open("w", encoding="utf-8", newline="") as f:
        write_profile(f, profile, digest, scenario.seed)
    logger.info("CIR written", trp_id=trp_id, snapshot=snapshot, paths=len(channel))
    return [cir_path, profile_path]
