"""Turn SDC specifications and the deterministic LOS/GR paths into resolved paths."""

from dataclasses import replace
from functools import lru_cache
from typing import Optional

import numpy as np

from ..constants import C0
from ..errors import DegenerateGeometryError, DomainError
from ..geometry import RectPlane, Vec3, specular_reflection_point, vec3
from ..models import (
    ClusterSpec,
    DiffractionEdgeCluster,
    FixedCluster,
    ReflectorPlane,
    RelativeCluster,
    SpecularReflectorCluster,
)
from ..propagation.obstacle import ObstacleState
from ..utils import get_logger
from .types import LinkId, PathKind, ResolvedPath

logger = get_logger(__name__)

GROUND = RectPlane.unbounded(vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0))

_DEFAULT_LINK = LinkId("trp", "ue")


@lru_cache(maxsize=256)
def _reflector_rect(plane: ReflectorPlane) -> RectPlane:
    return plane.to_rect()


def _path(
    link: LinkId,
    path_index: int,
    snapshot: int,
    kind: PathKind,
    origin: str,
    tx: Vec3,
    rx: Vec3,
    fbs: Vec3,
    lbs: Vec3,
    **extra: object,
) -> ResolvedPath:
    length = float(np.linalg.norm(fbs - tx) + np.linalg.norm(lbs - fbs) + np.linalg.norm(lbs - rx))
    return ResolvedPath(
        link=link,
        path_index=path_index,
        subpath_index=0,
        snapshot=snapshot,
        kind=kind,
        origin=origin,
        tx=tx,
        rx=rx,
        fbs=fbs,
        lbs=lbs,
        delay=length / C0,
        **extra,  # type: ignore[arg-type]
    )


def los_path(
    tx: Vec3,
    rx: Vec3,
    snapshot: int = 0,
    *,
    link: LinkId = _DEFAULT_LINK,
    path_index: int = 0,
) -> ResolvedPath:
    """Direct path; both bounce points sit at the TX-RX midpoint.

    Raises:
        DegenerateGeometryError: If ``tx`` and ``rx`` coincide
    """
    tx, rx = vec3(tx), vec3(rx)
    if np.array_equal(tx, rx):
        raise DegenerateGeometryError("TRP and UE coincide")
    mid = 0.5 * (tx + rx)
    return _path(link, path_index, snapshot, PathKind.LOS, "LOS", tx, rx, mid, mid.copy())


def ground_reflection_path(
    tx: Vec3,
    rx: Vec3,
    snapshot: int = 0,
    *,
    link: LinkId = _DEFAULT_LINK,
    path_index: int = 1,
) -> ResolvedPath:
    """Specular path off the infinite ground plane ``z = 0``.

    Raises:
        DomainError: If either endpoint is not above the ground
    """
    tx, rx = vec3(tx), vec3(rx)
    if tx[2] <= 0.0 or rx[2] <= 0.0:
        raise DomainError("ground reflection needs both endpoints above z = 0")
    point = specular_reflection_point(tx, rx, GROUND)
    assert point is not None  # infinite plane
    return _path(link, path_index, snapshot, PathKind.GR, "GR", tx, rx, point, point.copy())


def _specular_point(
    spec: SpecularReflectorCluster, tx: Vec3, rx: Vec3, obstacle: Optional[ObstacleState]
) -> Optional[Vec3]:
    if spec.on_obstacle:
        if obstacle is None:
            return None
        if not (obstacle.on_reflective_side(tx) and obstacle.on_reflective_side(rx)):
            return None
        return specular_reflection_point(tx, rx, obstacle.face)

    assert spec.plane is not None
    rect = _reflector_rect(spec.plane)
    if float(rect.signed_distance(tx)) * float(rect.signed_distance(rx)) < 0.0:
        return None
    return specular_reflection_point(tx, rx, rect)


def resolve_cluster(
    spec: ClusterSpec,
    tx: Vec3,
    rx: Vec3,
    obstacle: Optional[ObstacleState],
    snapshot: int = 0,
    *,
    link: LinkId = _DEFAULT_LINK,
    path_index: int = 0,
) -> Optional[ResolvedPath]:
    """Resolve one SDC for one link at one snapshot.

    Args:
        spec: Cluster specification
        tx: TRP position
        rx: UE position
        obstacle: Obstacle state at this snapshot, if the scenario has one
        snapshot: Snapshot index
        link: Link identifier stored on the path
        path_index: Path index stored on the path

    Returns:
        The resolved path, or None when the cluster is not visible (reflection
        point outside the reflector, endpoints on different sides, or no
        obstacle for an obstacle-attached cluster)

    Raises:
        DegenerateGeometryError: If an endpoint lies on a reflector plane
    """
    tx, rx = vec3(tx), vec3(rx)
    kind: PathKind
    extra: dict[str, object] = {"extra_loss_db": spec.power.extra_loss_db}

    if isinstance(spec, FixedCluster):
        kind, point = PathKind.FIXED, vec3(spec.position)
    elif isinstance(spec, SpecularReflectorCluster):
        kind, found = PathKind.SPECULAR_REFLECTOR, _specular_point(spec, tx, rx, obstacle)
        if found is None:
            logger.debug("reflector_not_visible", cluster=spec.name, snapshot=snapshot)
            return None
        point = found
    elif isinstance(spec, RelativeCluster):
        anchor = rx if spec.anchor == "ue" else tx
        kind, point = PathKind.RELATIVE, anchor + vec3(spec.offset)
    elif isinstance(spec, DiffractionEdgeCluster):
        if obstacle is None:
            return None
        kind, point = PathKind.DIFFRACTION_EDGE, obstacle.frame_point(spec.edge_offset)
        extra["knife_edge"] = spec.power.mode == "knife_edge"
    else:  # pragma: no cover
        raise DomainError(f"unknown cluster kind {type(spec).__name__}")

    return _path(link, path_index, snapshot, kind, spec.name, tx, rx, point, point.copy(), **extra)


def split_subpaths(path: ResolvedPath, subpaths: int) -> list[ResolvedPath]:
    """Split an SDC path into ``subpaths`` copies carrying ``1/M`` of its amplitude.

    The copies share the geometry, so their coherent sum equals ``path``.
    """
    if subpaths == 1:
        return [path]
    loss = path.extra_loss_db + 20.0 * float(np.log10(subpaths))
    amplitude = path.amplitude / subpaths
    return [
        replace(path, subpath_index=m, extra_loss_db=loss, amplitude=amplitude)
        for m in range(subpaths)
    ]
