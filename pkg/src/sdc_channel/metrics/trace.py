"""Per-snapshot power traces: FAP power/delay and total received power."""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from ..clusters.types import ResolvedPath
from ..constants import C0
from ..drifting.channel import SnapshotChannel
from ..errors import DetectionFailure, DomainError
from ..models import MetricsConfig, RfConfig
from ..utils import get_logger
from ..utils.seeding import StreamPurpose, stream, text_key
from .profile import band_limited_profile, detect_fap

logger = get_logger(__name__)

Paths = Union[SnapshotChannel, Sequence[ResolvedPath]]


def total_power_db(paths: Paths) -> float:
    """Incoherent total power ``10*log10(sum |A|^2)`` of a snapshot's paths.

    Raises:
        DomainError: If there are no paths or all amplitudes are zero
    """
    if isinstance(paths, SnapshotChannel):
        amplitudes = paths.amplitudes
    else:
        amplitudes = np.asarray([p.amplitude for p in paths], dtype=np.complex128)
    power = float(np.sum(np.abs(amplitudes) ** 2))
    if amplitudes.size == 0 or power == 0.0:
        raise DomainError("total power of an empty path set is undefined")
    return 10.0 * float(np.log10(power))


@dataclass(frozen=True, eq=False)
class PowerTrace:
    """Per-snapshot metrics of one link.

    ``fap_delay``/``fap_power_db`` are NaN at snapshots where detection failed.
    """

    trp_id: str
    snapshots: NDArray[np.int64]
    fap_delay: NDArray[np.float64]
    fap_power_db: NDArray[np.float64]
    total_power_db: NDArray[np.float64]
    los_delay: NDArray[np.float64]
    olos: NDArray[np.bool_]

    def __len__(self) -> int:
        return int(self.snapshots.size)

    @property
    def fap_range(self) -> NDArray[np.float64]:
        """Pseudo-range of the FAP, ``c0 * delay``."""
        return C0 * self.fap_delay

    def at(self, snapshot: int) -> int:
        """Row index of ``snapshot``."""
        rows = np.flatnonzero(self.snapshots == snapshot)
        if rows.size == 0:
            raise KeyError(f"snapshot {snapshot} not in the trace of {self.trp_id}")
        return int(rows[0])


def power_trace(
    channels: Iterable[SnapshotChannel],
    rf: RfConfig,
    metrics: Optional[MetricsConfig] = None,
    *,
    seed: int = 0,
) -> PowerTrace:
    """Evaluate FAP and total power for each snapshot channel of one link.

    Args:
        channels: Snapshot channels of a single link, in snapshot order
        rf: RF parameters (bandwidth for the profile)
        metrics: Profile and detection parameters (defaults if omitted)
        seed: Scenario seed for the noise stream

    Returns:
        Power trace of the link
    """
    metrics = metrics or MetricsConfig()
    rows: list[tuple[int, float, float, float, float, bool]] = []
    trp_id = ""
    for channel in channels:
        trp_id = channel.link.trp_id
        rng = None
        if metrics.noise_floor_db is not None:
            rng = stream(seed, StreamPurpose.NOISE, text_key(trp_id), channel.snapshot)
        profile = band_limited_profile(
            channel,
            rf,
            metrics.oversampling,
            pulse=metrics.pulse,
            rolloff=metrics.rolloff,
            noise_floor_db=metrics.noise_floor_db,
            rng=rng,
        )
        try:
            fap = detect_fap(profile, metrics.fap_threshold_db, metrics.clean_depth_db)
            fap_delay, fap_power = fap.delay, fap.power_db
        except DetectionFailure as exc:
            logger.warning(
                "FAP detection failed",
                trp_id=trp_id,
                snapshot=channel.snapshot,
                error=str(exc),
            )
            fap_delay, fap_power = float("nan"), float("nan")
        rows.append(
            (
                channel.snapshot,
                fap_delay,
                fap_power,
                total_power_db(channel),
                channel.los.delay,
                channel.los_blocked,
            )
        )

    columns = list(zip(*rows)) if rows else [[]] * 6
    return PowerTrace(
        trp_id=trp_id,
        snapshots=np.asarray(columns[0], dtype=np.int64),
        fap_delay=np.asarray(columns[1], dtype=np.float64),
        fap_power_db=np.asarray(columns[2], dtype=np.float64),
        total_power_db=np.asarray(columns[3], dtype=np.float64),
        los_delay=np.asarray(columns[4], dtype=np.float64),
        olos=np.asarray(columns[5], dtype=np.bool_),
    )
