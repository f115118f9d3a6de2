"""Pydantic models for scenario documents.

A scenario is the immutable description of everything that determines a
simulation: RF parameters, the hall, TRPs, the UE track, the obstacle, the
semi-deterministic cluster (SDC) list and the statistical parameter blocks.
"""

from typing import Annotated, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..constants import C0
from ..geometry import RectPlane, vec3

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]
Point = tuple[FiniteFloat, FiniteFloat, FiniteFloat]


class _Frozen(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class RfConfig(_Frozen):
    """Carrier and bandwidth of the positioning signal."""

    carrier_frequency_hz: float = Field(3.75e9, gt=0, description="Carrier frequency f_c")
    bandwidth_hz: float = Field(100e6, gt=0, description="Signal bandwidth B")

    @model_validator(mode="after")
    def check_bandwidth(self) -> "RfConfig":
        """Validate that the bandwidth is below the carrier."""
        if self.bandwidth_hz >= self.carrier_frequency_hz:
            raise ValueError("bandwidth_hz must be smaller than carrier_frequency_hz")
        return self

    @property
    def wavelength_m(self) -> float:
        """Carrier wavelength c0 / f_c."""
        return C0 / self.carrier_frequency_hz


class PowerRule(_Frozen):
    """How an SDC's power is derived.

    ``fspl_relative`` applies free-space loss plus ``extra_loss_db``;
    ``knife_edge`` additionally applies single knife-edge diffraction loss.
    """

    mode: Literal["fspl_relative", "knife_edge"] = "fspl_relative"
    extra_loss_db: float = Field(0.0, ge=0, allow_inf_nan=False)


class ReflectorPlane(_Frozen):
    """Rectangle (or infinite plane) of a specular reflector."""

    center: Point
    u_axis: Point
    v_axis: Point
    half_u: Optional[float] = Field(None, gt=0)
    half_v: Optional[float] = Field(None, gt=0)
    infinite: bool = False

    @model_validator(mode="after")
    def check_plane(self) -> "ReflectorPlane":
        """Validate orthonormal axes and extents."""
        u, v = np.asarray(self.u_axis), np.asarray(self.v_axis)
        if abs(np.linalg.norm(u) - 1.0) > 1e-9 or abs(np.linalg.norm(v) - 1.0) > 1e-9:
            raise ValueError("u_axis and v_axis must be unit vectors")
        if abs(float(u @ v)) > 1e-9:
            raise ValueError("u_axis and v_axis must be orthogonal")
        if not self.infinite and (self.half_u is None or self.half_v is None):
            raise ValueError("finite reflector needs half_u and half_v")
        return self

    def to_rect(self) -> RectPlane:
        """Geometry-module rectangle."""
        if self.infinite:
            return RectPlane.unbounded(vec3(self.center), vec3(self.u_axis), vec3(self.v_axis))
        return RectPlane(
            center=vec3(self.center),
            u_axis=vec3(self.u_axis),
            v_axis=vec3(self.v_axis),
            half_u=float(self.half_u),  # type: ignore[arg-type]
            half_v=float(self.half_v),  # type: ignore[arg-type]
        )


class _ClusterBase(_Frozen):
    name: str = Field(..., min_length=1)
    power: PowerRule = PowerRule()
    subpaths: int = Field(1, ge=1)

    @model_validator(mode="after")
    def check_power_rule(self) -> "_ClusterBase":
        """Only diffraction edges may use the knife-edge power rule."""
        if self.power.mode == "knife_edge" and not isinstance(self, DiffractionEdgeCluster):
            raise ValueError(f"cluster '{self.name}': knife_edge power needs a diffraction edge")
        return self


class FixedCluster(_ClusterBase):
    """Scatterer at a fixed world position shared by all links."""

    kind: Literal["fixed"] = "fixed"
    position: Point


class SpecularReflectorCluster(_ClusterBase):
    """Specular reflector; either a fixed plane or the obstacle's reflective face."""

    kind: Literal["specular_reflector"] = "specular_reflector"
    plane: Optional[ReflectorPlane] = None
    on_obstacle: bool = False

    @model_validator(mode="after")
    def check_payload(self) -> "SpecularReflectorCluster":
        """Exactly one of ``plane`` and ``on_obstacle``."""
        if (self.plane is None) == (not self.on_obstacle):
            raise ValueError(
                f"reflector '{self.name}' needs exactly one of 'plane' or 'on_obstacle: true'"
            )
        return self


class RelativeCluster(_ClusterBase):
    """Scatterer rigidly attached to the UE or the TRP."""

    kind: Literal["relative"] = "relative"
    anchor: Literal["ue", "trp"]
    offset: Point


class DiffractionEdgeCluster(_ClusterBase):
    """Diffraction point on the obstacle.

    ``edge_offset`` is given in the obstacle frame: along the panel width,
    up, and along the panel normal, relative to the bottom-center point.
    """

    kind: Literal["diffraction_edge"] = "diffraction_edge"
    power: PowerRule = PowerRule(mode="knife_edge")
    edge_offset: Point


ClusterSpec = Annotated[
    Union[FixedCluster, SpecularReflectorCluster, RelativeCluster, DiffractionEdgeCluster],
    Field(discriminator="kind"),
]


class RandomClusterParams(_Frozen):
    """Statistical parameters of the random (TR38.901-style) clusters.

    ``n_clusters`` counts NLOS scatter clusters; one more, zero-delay cluster
    is drawn and merged with the deterministic LOS path.
    """

    enabled: bool = True
    n_clusters: int = Field(24, ge=1)
    subpaths: int = Field(20, ge=1)
    delay_spread_s: float = Field(43e-9, gt=0)
    delay_scaling: float = Field(2.7, gt=1)
    shadowing_std_db: float = Field(4.0, ge=0)
    k_factor_db: Optional[float] = Field(7.0, allow_inf_nan=False)
    asd_deg: float = Field(36.0, ge=0)
    asa_deg: float = Field(45.0, ge=0)
    zsd_deg: float = Field(22.0, ge=0)
    zsa_deg: float = Field(23.0, ge=0)
    cluster_asd_deg: float = Field(5.0, ge=0)
    cluster_asa_deg: float = Field(8.0, ge=0)
    cluster_zsd_deg: float = Field(3.0, ge=0)
    cluster_zsa_deg: float = Field(9.0, ge=0)
    c_phi: dict[int, float] = Field(default_factory=dict)
    c_theta: dict[int, float] = Field(default_factory=dict)

    @field_validator("c_phi", "c_theta")
    @classmethod
    def check_scaling_table(cls, v: dict[int, float]) -> dict[int, float]:
        """Scaling constants must be positive."""
        bad = [n for n, c in v.items() if not c > 0]
        if bad:
            raise ValueError(f"scaling constants must be > 0 (cluster counts {bad})")
        return v


class SpatialConsistencyConfig(_Frozen):
    """Correlated random fields feeding the random cluster draws."""

    enabled: bool = True
    decorrelation_distance_m: float = Field(10.0, gt=0)
    sinusoids: int = Field(64, ge=1)


class GroundReflectionConfig(_Frozen):
    """Ground reflection on the plane z = 0."""

    enabled: bool = True
    permittivity: float = Field(5.0, ge=1)
    polarization: Literal["perpendicular", "parallel"] = "perpendicular"


class HallConfig(_Frozen):
    """Axis-aligned bounding box with one corner at the origin."""

    size: Point

    @field_validator("size")
    @classmethod
    def check_size(cls, v: Point) -> Point:
        """All dimensions positive."""
        if min(v) <= 0:
            raise ValueError("hall dimensions must be > 0")
        return v

    def contains(self, p: Point, tol: float = 1e-9) -> bool:
        """Whether ``p`` lies inside the box (boundary included)."""
        return all(-tol <= c <= s + tol for c, s in zip(p, self.size))


class TrpConfig(_Frozen):
    """Transmission-reception point."""

    id: str = Field(..., min_length=1)
    position: Point


class UeTrackConfig(_Frozen):
    """Straight UE track from ``start`` to ``end``; static when ``end`` is omitted."""

    id: str = Field("ue", min_length=1)
    start: Point
    end: Optional[Point] = None

    def positions(self, snapshots: int) -> np.ndarray:
        """UE position per snapshot, shape ``(snapshots, 3)``."""
        start = np.asarray(self.start, dtype=np.float64)
        end = start if self.end is None else np.asarray(self.end, dtype=np.float64)
        frac = np.linspace(0.0, 1.0, snapshots) if snapshots > 1 else np.zeros(1)
        return start + frac[:, None] * (end - start)


class ObstacleConfig(_Frozen):
    """Rectangular panel moving on a straight line.

    ``start``/``end`` are bottom-center positions; ``heading_deg`` is the
    horizontal direction of the panel width. The panel normal is
    ``width_axis x up``; ``reflective_side`` names the face on the +normal
    (``front``) or -normal (``back``) side, the other face absorbs.
    """

    width_m: float = Field(2.0, gt=0)
    height_m: float = Field(4.0, gt=0)
    start: Point
    end: Point
    heading_deg: FiniteFloat = 0.0
    start_snapshot: int = Field(0, ge=0)
    end_snapshot: Optional[int] = Field(None, ge=0)
    blockage_loss_db: float = Field(30.0, gt=0)
    reflective_side: Literal["front", "back"] = "front"

    @model_validator(mode="after")
    def check_span(self) -> "ObstacleConfig":
        """Snapshot span must be ordered."""
        if self.end_snapshot is not None and self.end_snapshot < self.start_snapshot:
            raise ValueError("obstacle end_snapshot must be >= start_snapshot")
        return self


class DriftingConfig(_Frozen):
    """Track segmentation."""

    segment_length_wavelengths: float = Field(20.0, gt=0)
    overlap_fraction: float = Field(0.25, ge=0, lt=1)


class MetricsConfig(_Frozen):
    """Correlation profile synthesis and FAP detection."""

    oversampling: int = Field(16, ge=1)
    fap_threshold_db: float = Field(25.0, gt=0)
    pulse: Literal["sinc", "raised_cosine"] = "sinc"
    rolloff: float = Field(0.25, ge=0, le=1)
    clean_depth_db: float = Field(6.0, gt=0)
    noise_floor_db: Optional[float] = Field(None, allow_inf_nan=False)


class Scenario(_Frozen):
    """Immutable world description."""

    name: str = Field("scenario", min_length=1)
    seed: int = Field(..., ge=0)
    snapshots: int = Field(..., ge=1)
    rf: RfConfig = RfConfig()
    hall: HallConfig
    trps: list[TrpConfig] = Field(..., min_length=1)
    ue: UeTrackConfig
    obstacle: Optional[ObstacleConfig] = None
    sdcs: list[ClusterSpec] = Field(default_factory=list)
    random_clusters: RandomClusterParams = RandomClusterParams()
    spatial_consistency: SpatialConsistencyConfig = SpatialConsistencyConfig()
    ground_reflection: GroundReflectionConfig = GroundReflectionConfig()
    drifting: DriftingConfig = DriftingConfig()
    metrics: MetricsConfig = MetricsConfig()

    @model_validator(mode="after")
    def check_world(self) -> "Scenario":
        """Unique names and all positions inside the hall."""
        problems: list[str] = []

        seen: set[str] = set()
        for i, trp in enumerate(self.trps):
            if trp.id in seen:
                problems.append(f"trps.{i}: duplicate TRP id '{trp.id}'")
            seen.add(trp.id)
            if not self.hall.contains(trp.position):
                problems.append(
                    f"trps.{i}: TRP '{trp.id}' at {list(trp.position)} is outside the hall"
                )

        names: set[str] = set()
        for i, sdc in enumerate(self.sdcs):
            if sdc.name in names:
                problems.append(f"sdcs.{i}: duplicate SDC name '{sdc.name}'")
            names.add(sdc.name)
            if isinstance(sdc, FixedCluster) and not self.hall.contains(sdc.position):
                problems.append(f"sdcs.{i}: fixed cluster '{sdc.name}' is outside the hall")
            if isinstance(sdc, DiffractionEdgeCluster) and self.obstacle is None:
                problems.append(f"sdcs.{i}: diffraction edge '{sdc.name}' needs an obstacle")
            orphan = isinstance(sdc, SpecularReflectorCluster) and sdc.on_obstacle
            if orphan and self.obstacle is None:
                problems.append(f"sdcs.{i}: reflector '{sdc.name}' is on an absent obstacle")

        for key, point in (("ue.start", self.ue.start), ("ue.end", self.ue.end)):
            if point is not None and not self.hall.contains(point):
                problems.append(f"{key}: UE position {list(point)} is outside the hall")

        if self.obstacle is not None:
            ends = (("obstacle.start", self.obstacle.start), ("obstacle.end", self.obstacle.end))
            for key, point in ends:
                if not self.hall.contains(point):
                    problems.append(f"{key}: obstacle position {list(point)} is outside the hall")
            end = self.obstacle.end_snapshot
            if end is not None and end >= self.snapshots:
                problems.append("obstacle.end_snapshot: beyond the last snapshot")

        if problems:
            raise ValueError("; ".join(problems))
        return self

    def trp(self, trp_id: str) -> TrpConfig:
        """Look up a TRP by id.

        Raises:
            KeyError: If no TRP has this id
        """
        for trp in self.trps:
            if trp.id == trp_id:
                return trp
        raise KeyError(f"unknown TRP id '{trp_id}'")

    @property
    def wavelength_m(self) -> float:
        """Carrier wavelength."""
        return self.rf.wavelength_m

    @property
    def segment_length_m(self) -> float:
        """Drifting segment length in meters."""
        return self.drifting.segment_length_wavelengths * self.rf.wavelength_m

    @property
    def obstacle_span(self) -> tuple[int, int]:
        """Snapshot interval over which the obstacle moves from start to end."""
        if self.obstacle is None:
            return (0, 0)
        end = self.obstacle.end_snapshot
        return self.obstacle.start_snapshot, self.snapshots - 1 if end is None else end


__all__ = [
    "ClusterSpec",
    "DiffractionEdgeCluster",
    "DriftingConfig",
    "FixedCluster",
    "GroundReflectionConfig",
    "HallConfig",
    "MetricsConfig",
    "ObstacleConfig",
    "PowerRule",
    "RandomClusterParams",
    "ReflectorPlane",
    "RelativeCluster",
    "RfConfig",
    "Scenario",
    "SpatialConsistencyConfig",
    "SpecularReflectorCluster",
    "TrpConfig",
    "UeTrackConfig",
]
