"""UE track and its segmentation into drifting segments."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..errors import ConfigurationError


@dataclass(frozen=True)
class Segment:
    """Contiguous snapshot range sharing one random cluster draw.

    The segment owns snapshots ``[start, stop)``. It is drawn at
    ``start - overlap`` and fades in over the ``overlap`` snapshots before
    ``start``, while the previous segment fades out.
    """

    index: int
    start: int
    stop: int
    overlap: int = 0

    @property
    def active_start(self) -> int:
        """First snapshot at which the segment contributes."""
        return self.start - self.overlap

    def __len__(self) -> int:
        return self.stop - self.start


@dataclass(frozen=True, eq=False)
class Track:
    """UE positions per snapshot with their segmentation."""

    positions: NDArray[np.float64]
    segments: tuple[Segment, ...]

    @property
    def snapshots(self) -> int:
        return int(self.positions.shape[0])

    @property
    def travelled(self) -> NDArray[np.float64]:
        """Cumulative travelled distance per snapshot."""
        steps = np.linalg.norm(np.diff(self.positions, axis=0), axis=-1)
        return np.concatenate([[0.0], np.cumsum(steps)])

    @property
    def spacing(self) -> float:
        """Mean distance between consecutive snapshots."""
        if self.snapshots < 2:
            return 0.0
        return float(self.travelled[-1] / (self.snapshots - 1))

    def segment_of(self, snapshot: int) -> Segment:
        """Segment owning ``snapshot``."""
        for segment in self.segments:
            if segment.start <= snapshot < segment.stop:
                return segment
        raise IndexError(f"snapshot {snapshot} outside the track (0..{self.snapshots - 1})")

    def fade_weight(self, snapshot: int, segment: Segment) -> float:
        """Cross-fade weight of ``segment`` at a snapshot in its fade-in region."""
        k = snapshot - segment.active_start
        return (k + 0.5) / segment.overlap


def build_track(
    positions: NDArray[np.float64], segment_length_m: float, overlap_fraction: float
) -> Track:
    """Split a UE track into segments of roughly ``segment_length_m`` travelled.

    Segment boundaries fall where the travelled distance crosses a multiple
    of the segment length. The overlap at each boundary is
    ``floor(overlap_fraction * shorter adjacent segment)`` snapshots. A static
    track is a single segment.

    Raises:
        ConfigurationError: On a bad track shape or parameters
    """
    positions = np.asarray(positions, dtype=np.float64)
    if positions.ndim != 2 or positions.shape[1] != 3 or positions.shape[0] < 1:
        raise ConfigurationError(f"track positions must have shape (S, 3), got {positions.shape}")
    if not segment_length_m > 0:
        raise ConfigurationError("segment length must be > 0")
    if not 0.0 <= overlap_fraction < 1.0:
        raise ConfigurationError("overlap fraction must be in [0, 1)")

    steps = np.linalg.norm(np.diff(positions, axis=0), axis=-1)
    travelled = np.concatenate([[0.0], np.cumsum(steps)])
    ids = np.floor(travelled / segment_length_m).astype(np.int64)
    starts = [0] + [int(i) for i in np.flatnonzero(np.diff(ids)) + 1]
    stops = starts[1:] + [positions.shape[0]]

    segments: list[Segment] = []
    for index, (start, stop) in enumerate(zip(starts, stops)):
        overlap = 0
        if index > 0:
            shorter = min(stop - start, len(segments[-1]))
            overlap = math.floor(overlap_fraction * shorter)
        segments.append(Segment(index=index, start=start, stop=stop, overlap=overlap))
    return Track(positions=positions, segments=tuple(segments))
