"""Per-snapshot positioning from the FAP ranges of all links."""

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from numpy.typing import NDArray

from ..errors import GeometryError
from ..metrics import PowerTrace
from ..utils import get_logger
from .report import ErrorReport, error_report
from .solver import RangeSet, ls_position

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class PositionTrack:
    """Position estimates per snapshot; NaN rows where no solve was possible."""

    snapshots: NDArray[np.int64]
    estimates: NDArray[np.float64]
    truth: NDArray[np.float64]
    residual_rms: NDArray[np.float64]
    iterations: NDArray[np.int64]
    converged: NDArray[np.bool_]
    olos: NDArray[np.bool_]

    @property
    def errors(self) -> NDArray[np.float64]:
        return np.linalg.norm(self.estimates - self.truth, axis=-1)

    def report(self) -> ErrorReport:
        return error_report(self.estimates, self.truth, self.olos)


def solve_track(
    traces: Mapping[str, PowerTrace],
    trp_positions: Mapping[str, NDArray[np.float64]],
    truth: NDArray[np.float64],
) -> PositionTrack:
    """Solve one position per snapshot from the FAP ranges of every link.

    Args:
        traces: Power traces keyed by TRP id, all over the same snapshots
        trp_positions: TRP positions keyed by TRP id
        truth: True UE position per trace row, shape ``(S, 3)``

    Returns:
        Position track; a snapshot is OLOS if any contributing link is
    """
    trp_ids = sorted(traces)
    snapshots = traces[trp_ids[0]].snapshots
    for trp_id in trp_ids[1:]:
        if not np.array_equal(traces[trp_id].snapshots, snapshots):
            raise GeometryError("traces must cover the same snapshots")

    ranges = np.stack([traces[t].fap_range for t in trp_ids], axis=1)
    olos = np.stack([traces[t].olos for t in trp_ids], axis=1)
    positions = np.stack([np.asarray(trp_positions[t], dtype=np.float64) for t in trp_ids])

    n = snapshots.size
    estimates = np.full((n, 3), np.nan)
    residuals = np.full(n, np.nan)
    iterations = np.zeros(n, dtype=np.int64)
    converged = np.zeros(n, dtype=bool)
    for row in range(n):
        valid = np.isfinite(ranges[row]) & (ranges[row] > 0)
        try:
            fix = ls_position(
                RangeSet(
                    trp_ids=tuple(t for t, ok in zip(trp_ids, valid) if ok),
                    positions=positions[valid],
                    ranges=ranges[row, valid],
                    olos=olos[row, valid],
                )
            )
        except GeometryError as exc:
            logger.warning("Position solve skipped", snapshot=int(snapshots[row]), error=str(exc))
            continue
        estimates[row] = fix.position
        residuals[row] = fix.residual_rms
        iterations[row] = fix.iterations
        converged[row] = fix.converged

    return PositionTrack(
        snapshots=snapshots,
        estimates=estimates,
        truth=np.broadcast_to(np.asarray(truth, dtype=np.float64), (n, 3)).copy(),
        residual_rms=residuals,
        iterations=iterations,
        converged=converged,
        olos=olos.any(axis=1),
    )
