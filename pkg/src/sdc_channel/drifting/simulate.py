"""Per-snapshot link simulation with drifting and segment cross-fading.

Random clusters are drawn once per segment and then drift: their scatterers
stay put and the path lengths, delays and phases follow the UE. Fixed SDCs
drift the same way. LOS, GR, reflector, relative and diffraction paths have
moving effective scatterers and are re-resolved at every snapshot.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

import numpy as np
from numpy.typing import NDArray

from ..clusters import (
    FieldDraws,
    LinkId,
    ResolvedPath,
    generate_random_clusters,
    ground_reflection_path,
    los_path,
    resolve_cluster,
    split_subpaths,
)
from ..constants import C0
from ..errors import DegenerateGeometryError, DomainError, SdcError, SimulationError
from ..geometry import Vec3, vec3
from ..models import FixedCluster, Scenario
from ..propagation import ObstacleState, evaluate_path, obstacle_pose, random_amplitudes
from ..utils import get_logger
from ..utils.seeding import StreamPurpose, stream, text_key
from .channel import RandomPathBlock, SnapshotChannel
from .track import Segment, Track, build_track

logger = get_logger(__name__)

LOS_INDEX = 0
GR_INDEX = 1
SDC_BASE_INDEX = 2


def update_path(path: ResolvedPath, new_rx: Vec3, wavelength: float) -> ResolvedPath:
    """Move the receiver of a drifting path, keeping its scatterers fixed.

    The delay follows the new length and the phase advances by
    ``-2*pi*(new length - old length)/wavelength``.

    Raises:
        DomainError: For path kinds that are re-resolved instead of drifted
        DegenerateGeometryError: If the receiver lands on the last-bounce scatterer
    """
    if not path.kind.drifts:
        raise DomainError(f"{path.kind.value} paths are re-resolved, not drifted")
    new_rx = vec3(new_rx)
    if not np.any(path.lbs - new_rx):
        raise DegenerateGeometryError("receiver coincides with its last-bounce scatterer")
    moved = replace(path, rx=new_rx)
    length = moved.length
    rotation = np.exp(-2j * math.pi * (length - path.length) / wavelength)
    return replace(moved, delay=length / C0, amplitude=complex(path.amplitude * rotation))


def cross_fade(a: SnapshotChannel, b: SnapshotChannel, w: float) -> SnapshotChannel:
    """Merge two segments' channels at one snapshot of their overlap.

    Deterministic paths are taken from ``a``; random sub-paths of ``a`` are
    scaled by ``sqrt(1 - w)`` and those of ``b`` by ``sqrt(w)``, so the
    expected random power is preserved.

    Raises:
        DomainError: If ``w`` is outside [0, 1]
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"cross-fade weight must be in [0, 1], got {w}")
    if w == 0.0:
        return a
    if w == 1.0:
        return b
    random = tuple(block.scaled(math.sqrt(1.0 - w)) for block in a.random) + tuple(
        block.scaled(math.sqrt(w)) for block in b.random
    )
    return replace(a, random=random)


def scenario_track(scenario: Scenario) -> Track:
    """Segmented UE track of a scenario."""
    return build_track(
        scenario.ue.positions(scenario.snapshots),
        scenario.segment_length_m,
        scenario.drifting.overlap_fraction,
    )


@dataclass(frozen=True, eq=False)
class _RandomSegment:
    path_index: NDArray[np.int64]
    subpath_index: NDArray[np.int64]
    fbs: NDArray[np.float64]
    lbs: NDArray[np.float64]
    extra_loss_db: NDArray[np.float64]
    phases: NDArray[np.float64]
    reference_length: NDArray[np.float64]


class LinkSimulator:
    """Simulates one TRP-UE link of a scenario.

    Random segments and fixed-cluster anchors are cached, so one instance
    must not be shared between threads.
    """

    def __init__(self, scenario: Scenario, trp_id: str, track: Optional[Track] = None):
        self.scenario = scenario
        self.trp_id = trp_id
        self.tx = vec3(scenario.trp(trp_id).position)
        self.link = LinkId(trp_id, scenario.ue.id)
        self.track = track if track is not None else scenario_track(scenario)
        self._link_key = text_key(trp_id)
        self._random_base = SDC_BASE_INDEX + len(scenario.sdcs)
        self._segments: dict[int, Optional[_RandomSegment]] = {}
        self._anchors: dict[int, ResolvedPath] = {}

    def obstacle_at(self, snapshot: int) -> Optional[ObstacleState]:
        """Obstacle pose at ``snapshot``, if the scenario has an obstacle."""
        if self.scenario.obstacle is None:
            return None
        return obstacle_pose(self.scenario.obstacle, snapshot, self.scenario.obstacle_span)

    def deterministic_paths(
        self, snapshot: int, obstacle: Optional[ObstacleState]
    ) -> list[ResolvedPath]:
        """LOS, GR and SDC paths at ``snapshot`` with amplitudes evaluated."""
        sc = self.scenario
        rx = self.track.positions[snapshot]
        ground = sc.ground_reflection

        def evaluate(path: ResolvedPath) -> ResolvedPath:
            return evaluate_path(path, sc.rf, obstacle, ground)

        paths = [evaluate(los_path(self.tx, rx, snapshot, link=self.link, path_index=LOS_INDEX))]
        if ground.enabled:
            gr = ground_reflection_path(self.tx, rx, snapshot, link=self.link, path_index=GR_INDEX)
            paths.append(evaluate(gr))

        for j, spec in enumerate(sc.sdcs):
            index = SDC_BASE_INDEX + j
            path: Optional[ResolvedPath]
            if isinstance(spec, FixedCluster) and index in self._anchors:
                path = update_path(self._anchors[index], rx, sc.wavelength_m)
                path = replace(path, snapshot=snapshot)
            else:
                path = resolve_cluster(
                    spec, self.tx, rx, obstacle, snapshot, link=self.link, path_index=index
                )
                if path is not None and isinstance(spec, FixedCluster):
                    self._anchors[index] = path
            if path is not None:
                paths.extend(split_subpaths(evaluate(path), spec.subpaths))
        return paths

    def random_segment(self, segment: Segment) -> Optional[_RandomSegment]:
        """Random cluster draw of ``segment`` (cached); None when disabled."""
        if segment.index not in self._segments:
            self._segments[segment.index] = self._draw_segment(segment)
            # keep the current segment and the one fading out
            for index in [i for i in self._segments if i < segment.index - 1]:
                del self._segments[index]
        return self._segments[segment.index]

    def _draw_segment(self, segment: Segment) -> Optional[_RandomSegment]:
        sc = self.scenario
        params = sc.random_clusters
        if not params.enabled:
            return None
        rx0 = self.track.positions[segment.active_start]
        rng = stream(sc.seed, StreamPurpose.CLUSTERS, self._link_key, segment.index)
        spatial = sc.spatial_consistency
        draws = (
            FieldDraws(
                sc.seed,
                (self._link_key,),
                rx0,
                spatial.decorrelation_distance_m,
                spatial.sinusoids,
            )
            if spatial.enabled
            else None
        )
        state = generate_random_clusters(params, self.tx, rx0, rng, draws)

        n, m = state.n_clusters, state.subpaths
        fbs = state.fbs[1:].reshape(-1, 3)
        lbs = state.lbs[1:].reshape(-1, 3)
        lengths = (
            np.linalg.norm(fbs - self.tx, axis=-1)
            + np.linalg.norm(lbs - fbs, axis=-1)
            + np.linalg.norm(lbs - rx0, axis=-1)
        )
        # per sub-path power relative to the LOS path at the segment start
        share = np.repeat(state.powers[1:], m) / (m * state.powers[0])
        extra = -10.0 * np.log10(share) - 20.0 * np.log10(lengths / state.los_length)

        logger.debug(
            "segment_drawn",
            trp_id=self.trp_id,
            segment=segment.index,
            start=segment.active_start,
            clusters=n,
        )
        return _RandomSegment(
            path_index=self._random_base + (segment.index % 2) * n + np.repeat(np.arange(n), m),
            subpath_index=np.tile(np.arange(m), n),
            fbs=fbs,
            lbs=lbs,
            extra_loss_db=extra,
            phases=state.phases[1:].ravel(),
            reference_length=lengths,
        )

    def random_block(
        self, drawn: _RandomSegment, snapshot: int, obstacle: Optional[ObstacleState]
    ) -> RandomPathBlock:
        """Random sub-paths of a drawn segment drifted to ``snapshot``."""
        rx = self.track.positions[snapshot]
        if np.any(np.all(drawn.lbs == rx, axis=-1)):
            raise DegenerateGeometryError("receiver coincides with a last-bounce scatterer")
        amplitudes, blocked, lengths = random_amplitudes(
            self.tx,
            drawn.fbs,
            drawn.lbs,
            rx,
            drawn.extra_loss_db,
            drawn.phases,
            drawn.reference_length,
            self.scenario.rf,
            obstacle,
        )
        return RandomPathBlock(
            path_index=drawn.path_index,
            subpath_index=drawn.subpath_index,
            fbs=drawn.fbs,
            lbs=drawn.lbs,
            delays=lengths / C0,
            amplitudes=amplitudes,
            blocked=blocked,
        )

    def channel(self, snapshot: int, segment: Segment) -> SnapshotChannel:
        """Unfaded channel of one segment at ``snapshot``."""
        obstacle = self.obstacle_at(snapshot)
        drawn = self.random_segment(segment)
        blocks = () if drawn is None else (self.random_block(drawn, snapshot, obstacle),)
        return SnapshotChannel(
            link=self.link,
            snapshot=snapshot,
            tx=self.tx,
            rx=self.track.positions[snapshot],
            deterministic=tuple(self.deterministic_paths(snapshot, obstacle)),
            random=blocks,
        )

    def merged_channel(self, snapshot: int) -> SnapshotChannel:
        """Channel at ``snapshot`` with the next segment cross-faded in when overlapping."""
        segment = self.track.segment_of(snapshot)
        following = self.track.segments[segment.index + 1 : segment.index + 2]
        current = self.channel(snapshot, segment)
        if following and snapshot >= following[0].active_start:
            incoming = self.channel(snapshot, following[0])
            return cross_fade(current, incoming, self.track.fade_weight(snapshot, following[0]))
        return current


def simulate_link(
    scenario: Scenario, trp_id: str, segment: int = 0, track: Optional[Track] = None
) -> list[SnapshotChannel]:
    """Unfaded channels of one segment over its active snapshot range.

    Raises:
        SimulationError: Wrapping any simulator error, with TRP and snapshot
    """
    sim = LinkSimulator(scenario, trp_id, track)
    seg = sim.track.segments[segment]
    return _collect(trp_id, range(seg.active_start, seg.stop), lambda s: sim.channel(s, seg))


def simulate_track(
    scenario: Scenario,
    trp_id: str,
    snapshots: Optional[Iterable[int]] = None,
    track: Optional[Track] = None,
) -> list[SnapshotChannel]:
    """Channels of one link over the track (or the given snapshots), cross-faded.

    Raises:
        SimulationError: Wrapping any simulator error, with TRP and snapshot
    """
    sim = LinkSimulator(scenario, trp_id, track)
    wanted = range(sim.track.snapshots) if snapshots is None else sorted(set(snapshots))
    channels = _collect(trp_id, wanted, sim.merged_channel)
    logger.info(
        "Link simulated",
        trp_id=trp_id,
        snapshots=len(channels),
        segments=len(sim.track.segments),
    )
    return channels


def _collect(
    trp_id: str, snapshots: Iterable[int], build: Callable[[int], SnapshotChannel]
) -> list[SnapshotChannel]:
    channels = []
    for snapshot in snapshots:
        try:
            channels.append(build(snapshot))
        except SimulationError:
            raise
        except SdcError as exc:
            raise SimulationError(str(exc), trp_id, snapshot) from exc
    return channels
