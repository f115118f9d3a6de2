"""CSV writers for traces, CIR dumps, correlation profiles and position tracks.

Every file starts with ``# scenario_hash=<sha256> seed=<n>`` so outputs of
different runs cannot be mixed unnoticed. Floats carry 9 significant digits.
"""

import csv
import math
from typing import Any, TextIO

import numpy as np

from ..drifting.channel import SnapshotChannel
from ..metrics import CorrelationProfile, PowerTrace
from ..positioning import PositionTrack

TRACE_HEADER = (
    "snapshot",
    "trp_id",
    "fap_delay_ns",
    "fap_power_db",
    "total_power_db",
    "los_delay_ns",
    "olos_flag",
)
CIR_HEADER = (
    "path_id",
    "origin",
    "delay_ns",
    "power_db",
    "phase_rad",
    "aod_az_deg",
    "aod_el_deg",
    "aoa_az_deg",
    "aoa_el_deg",
    "fbs_x",
    "fbs_y",
    "fbs_z",
    "lbs_x",
    "lbs_y",
    "lbs_z",
    "blocked",
)
PROFILE_HEADER = ("delay_ns", "re", "im", "mag_db")
POSITION_HEADER = (
    "snapshot",
    "x_m",
    "y_m",
    "z_m",
    "error_m",
    "residual_rms_m",
    "iterations",
    "converged",
    "olos_flag",
)


def fmt(value: float) -> str:
    """Format a float with 9 significant digits."""
    return f"{value:.9g}"


def header_comment(scenario_hash: str, seed: int) -> str:
    return f"# scenario_hash={scenario_hash} seed={seed}\n"


def _writer(stream: TextIO, header: tuple[str, ...], scenario_hash: str, seed: int) -> Any:
    stream.write(header_comment(scenario_hash, seed))
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    return writer


def write_trace(stream: TextIO, trace: PowerTrace, scenario_hash: str, seed: int) -> None:
    """Write one link's power trace, sorted by snapshot."""
    writer = _writer(stream, TRACE_HEADER, scenario_hash, seed)
    for i in np.argsort(trace.snapshots, kind="stable"):
        writer.writerow(
            (
                int(trace.snapshots[i]),
                trace.trp_id,
                fmt(trace.fap_delay[i] * 1e9),
                fmt(trace.fap_power_db[i]),
                fmt(trace.total_power_db[i]),
                fmt(trace.los_delay[i] * 1e9),
                int(trace.olos[i]),
            )
        )


def write_cir(stream: TextIO, channel: SnapshotChannel, scenario_hash: str, seed: int) -> None:
    """Write every path of one snapshot channel."""
    writer = _writer(stream, CIR_HEADER, scenario_hash, seed)
    for path in channel.paths():
        dep_az, dep_el = path.departure.degrees()
        arr_az, arr_el = path.arrival.degrees()
        power_db = 20.0 * math.log10(abs(path.amplitude)) if path.amplitude else -math.inf
        writer.writerow(
            (
                f"{path.path_index}-{path.subpath_index}",
                path.origin,
                fmt(path.delay * 1e9),
                fmt(power_db),
                fmt(float(np.angle(path.amplitude))),
                fmt(dep_az),
                fmt(dep_el),
                fmt(arr_az),
                fmt(arr_el),
                *(fmt(float(c)) for c in path.fbs),
                *(fmt(float(c)) for c in path.lbs),
                int(path.blocked),
            )
        )


def write_profile(
    stream: TextIO, profile: CorrelationProfile, scenario_hash: str, seed: int
) -> None:
    """Write the complex correlation profile samples."""
    writer = _writer(stream, PROFILE_HEADER, scenario_hash, seed)
    power_db = profile.power_db
    for delay, sample, mag_db in zip(profile.delays, profile.samples, power_db):
        writer.writerow((fmt(delay * 1e9), fmt(sample.real), fmt(sample.imag), fmt(mag_db)))


def write_positions(stream: TextIO, track: PositionTrack, scenario_hash: str, seed: int) -> None:
    """Write a position track, one row per snapshot."""
    writer = _writer(stream, POSITION_HEADER, scenario_hash, seed)
    errors = track.errors
    for i in np.argsort(track.snapshots, kind="stable"):
        writer.writerow(
            (
                int(track.snapshots[i]),
                *(fmt(float(c)) for c in track.estimates[i]),
                fmt(errors[i]),
                fmt(track.residual_rms[i]),
                int(track.iterations[i]),
                int(track.converged[i]),
                int(track.olos[i]),
            )
        )
