"""Path and cluster types shared by the simulation pipeline."""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from ..geometry import DirectionAngles, Vec3, vector_to_angles


class PathKind(str, Enum):
    """Origin class of a resolved path."""

    LOS = "LOS"
    GR = "GR"
    FIXED = "fixed"
    SPECULAR_REFLECTOR = "specular_reflector"
    RELATIVE = "relative"
    DIFFRACTION_EDGE = "diffraction_edge"
    RANDOM = "random"

    @property
    def is_sdc(self) -> bool:
        """Whether this kind comes from a semi-deterministic cluster."""
        return self in _SDC_KINDS

    @property
    def drifts(self) -> bool:
        """Whether the scatterers stay put while the UE moves within a segment."""
        return self in (PathKind.FIXED, PathKind.RANDOM)


_SDC_KINDS = frozenset(
    {
        PathKind.FIXED,
        PathKind.SPECULAR_REFLECTOR,
        PathKind.RELATIVE,
        PathKind.DIFFRACTION_EDGE,
    }
)


class LinkId(NamedTuple):
    """One TRP-UE pair."""

    trp_id: str
    ue_id: str


@dataclass(frozen=True, eq=False)
class ResolvedPath:
    """One propagation path (or sub-path) at one snapshot.

    Every path is described by its first and last bounce scatterers: the
    geometric length is ``|b| + |c| + |a|`` with ``b = fbs - tx``,
    ``c = lbs - fbs`` and ``a = lbs - rx``. Single-bounce paths have
    ``fbs == lbs``; the LOS path uses the TX-RX midpoint for both.

    ``initial_phase`` and ``reference_length`` anchor the carrier phase:
    ``phase = initial_phase - 2*pi*(length - reference_length)/wavelength``.
    """

    link: LinkId
    path_index: int
    subpath_index: int
    snapshot: int
    kind: PathKind
    origin: str
    tx: Vec3
    rx: Vec3
    fbs: Vec3
    lbs: Vec3
    delay: float
    amplitude: complex = 0j
    blocked: bool = False
    extra_loss_db: float = 0.0
    knife_edge: bool = False
    initial_phase: float = 0.0
    reference_length: float = 0.0

    @property
    def b(self) -> Vec3:
        return self.fbs - self.tx

    @property
    def c(self) -> Vec3:
        return self.lbs - self.fbs

    @property
    def a(self) -> Vec3:
        return self.lbs - self.rx

    @property
    def length(self) -> float:
        """Geometric path length in meters."""
        return float(np.linalg.norm(self.b) + np.linalg.norm(self.c) + np.linalg.norm(self.a))

    @property
    def departure(self) -> DirectionAngles:
        """Direction of departure at the TX."""
        return vector_to_angles(self.b)

    @property
    def arrival(self) -> DirectionAngles:
        """Direction of arrival at the RX (pointing from RX toward the LBS)."""
        return vector_to_angles(self.a)

    @property
    def power_db(self) -> float:
        """Path power ``20*log10(|amplitude|)``."""
        return float(20.0 * np.log10(abs(self.amplitude))) if self.amplitude else -np.inf


@dataclass(frozen=True, eq=False)
class RandomClusterState:
    """Random clusters drawn at the start of a drifting segment.

    Arrays are indexed ``[cluster]`` or ``[cluster, subpath]``. Cluster 0 is
    the zero-delay cluster merged with the LOS path; its scatterers sit at
    the TX-RX midpoint. ``powers`` sum to 1 and already include the LOS
    share of the K-factor.
    """

    delays: NDArray[np.float64]
    powers: NDArray[np.float64]
    departure_azimuth: NDArray[np.float64]
    departure_elevation: NDArray[np.float64]
    arrival_azimuth: NDArray[np.float64]
    arrival_elevation: NDArray[np.float64]
    fbs: NDArray[np.float64]
    lbs: NDArray[np.float64]
    phases: NDArray[np.float64]
    los_length: float

    @property
    def n_clusters(self) -> int:
        """Number of NLOS clusters (cluster 0 excluded)."""
        return int(self.delays.shape[0]) - 1

    @property
    def subpaths(self) -> int:
        return int(self.fbs.shape[1])
