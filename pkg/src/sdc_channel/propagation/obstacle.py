"""Moving rectangular obstacle: pose per snapshot and segment blockage tests."""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from ..geometry import RectPlane, Vec3, segments_intersect_rect, vec3
from ..models import ObstacleConfig

UP = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True, eq=False)
class ObstacleState:
    """Obstacle pose at one snapshot.

    The local frame has its origin at the bottom-center of the panel, ``u``
    along the width, ``v`` up and ``normal = u x v``.
    """

    snapshot: int
    origin: Vec3
    u_axis: Vec3
    width: float
    height: float
    blockage_loss_db: float
    reflective_sign: float
    face: RectPlane

    @property
    def v_axis(self) -> Vec3:
        return self.face.v_axis

    @property
    def normal(self) -> Vec3:
        return self.face.normal

    def frame_point(self, offset: Sequence[float]) -> Vec3:
        """World position of an obstacle-frame offset ``(along u, up, along normal)``."""
        du, dv, dn = offset
        return self.origin + du * self.u_axis + dv * self.v_axis + dn * self.normal

    def on_reflective_side(self, p: Vec3) -> bool:
        """Whether ``p`` lies on the side of the reflective face."""
        return bool(self.reflective_sign * float(self.face.signed_distance(p)) > 0.0)


def obstacle_pose(config: ObstacleConfig, snapshot: int, span: tuple[int, int]) -> ObstacleState:
    """Obstacle state at ``snapshot``, interpolated linearly over ``span``.

    Before the span the obstacle rests at ``start``, after it at ``end``.
    """
    first, last = span
    if last > first:
        frac = min(max((snapshot - first) / (last - first), 0.0), 1.0)
    else:
        frac = 0.0 if snapshot < first else 1.0
    start = np.asarray(config.start, dtype=np.float64)
    end = np.asarray(config.end, dtype=np.float64)
    origin = start + frac * (end - start)

    heading = math.radians(config.heading_deg)
    u = vec3(math.cos(heading), math.sin(heading), 0.0)
    face = RectPlane(
        center=origin + 0.5 * config.height_m * UP,
        u_axis=u,
        v_axis=UP,
        half_u=0.5 * config.width_m,
        half_v=0.5 * config.height_m,
    )
    return ObstacleState(
        snapshot=snapshot,
        origin=vec3(origin),
        u_axis=u,
        width=config.width_m,
        height=config.height_m,
        blockage_loss_db=config.blockage_loss_db,
        reflective_sign=1.0 if config.reflective_side == "front" else -1.0,
        face=face,
    )


def polyline_blocked(
    points: Sequence[NDArray[np.float64]], obstacle: ObstacleState
) -> NDArray[np.bool_]:
    """Whether any leg of the polyline(s) through ``points`` crosses the panel.

    Each entry of ``points`` has shape ``(..., 3)``; zero-length legs never
    intersect.
    """
    blocked = np.zeros(np.broadcast_shapes(*(np.shape(p)[:-1] for p in points)), dtype=bool)
    for p1, p2 in zip(points[:-1], points[1:]):
        blocked |= segments_intersect_rect(p1, p2, obstacle.face)
    return blocked
