"""Geometric value types.

Positions are plain ``numpy`` arrays of shape ``(3,)`` in meters; ``Vec3`` is
an alias used for annotations.
"""

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from numpy.typing import NDArray

from ..errors import DomainError

Vec3 = NDArray[np.float64]

ORTHONORMAL_TOL = 1e-9


def vec3(x: float | Iterable[float], y: Optional[float] = None, z: Optional[float] = None) -> Vec3:
    """Build a finite 3-vector from components or from any length-3 iterable."""
    if y is None and z is None:
        values = x if isinstance(x, np.ndarray) else tuple(x)  # type: ignore[arg-type]
        arr = np.array(values, dtype=np.float64)
    else:
        arr = np.array([x, y, z], dtype=np.float64)
    if arr.shape != (3,):
        raise DomainError(f"Vec3 needs exactly 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"Vec3 components must be finite, got {arr.tolist()}")
    return arr


def wrap_angle(a: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    w = math.remainder(a, 2.0 * math.pi)
    return math.pi if w <= -math.pi else w


@dataclass(frozen=True)
class DirectionAngles:
    """Azimuth in (-pi, pi] and elevation in [-pi/2, pi/2], radians.

    Out-of-range input is folded over the poles on construction. At the poles
    the azimuth is fixed to 0.
    """

    azimuth: float
    elevation: float

    def __post_init__(self) -> None:
        az, el = float(self.azimuth), float(self.elevation)
        if not (math.isfinite(az) and math.isfinite(el)):
            raise DomainError("direction angles must be finite")
        el = wrap_angle(el)
        if el > math.pi / 2:
            el = math.pi - el
            az += math.pi
        elif el < -math.pi / 2:
            el = -math.pi - el
            az += math.pi
        az = wrap_angle(az)
        if abs(el) == math.pi / 2:
            az = 0.0
        object.__setattr__(self, "azimuth", az)
        object.__setattr__(self, "elevation", el)

    @classmethod
    def from_degrees(cls, azimuth_deg: float, elevation_deg: float) -> "DirectionAngles":
        """Build from degrees."""
        return cls(math.radians(azimuth_deg), math.radians(elevation_deg))

    def degrees(self) -> tuple[float, float]:
        """Return ``(azimuth, elevation)`` in degrees."""
        return math.degrees(self.azimuth), math.degrees(self.elevation)


@dataclass(frozen=True, eq=False)
class RectPlane:
    """Oriented rectangle in 3D (or an infinite plane when ``infinite``).

    The normal is ``u_axis x v_axis``; half extents are measured along
    ``u_axis`` and ``v_axis`` from ``center``.
    """

    center: Vec3
    u_axis: Vec3
    v_axis: Vec3
    half_u: float = math.inf
    half_v: float = math.inf
    infinite: bool = False
    normal: Vec3 = field(init=False)

    def __post_init__(self) -> None:
        center = vec3(self.center)
        u = vec3(self.u_axis)
        v = vec3(self.v_axis)
        if max(abs(np.linalg.norm(u) - 1.0), abs(np.linalg.norm(v) - 1.0)) > ORTHONORMAL_TOL:
            raise DomainError("plane axes must be unit vectors")
        if abs(float(u @ v)) > ORTHONORMAL_TOL:
            raise DomainError("plane axes must be orthogonal")
        if not self.infinite and not (self.half_u > 0 and self.half_v > 0):
            raise DomainError("finite plane half extents must be > 0")
        if not self.infinite and not (math.isfinite(self.half_u) and math.isfinite(self.half_v)):
            raise DomainError("finite plane needs finite half extents; use infinite=True instead")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "u_axis", u)
        object.__setattr__(self, "v_axis", v)
        object.__setattr__(self, "normal", np.cross(u, v))

    @classmethod
    def unbounded(cls, point: Vec3, u_axis: Vec3, v_axis: Vec3) -> "RectPlane":
        """Infinite plane through ``point`` spanned by the two axes."""
        return cls(center=point, u_axis=u_axis, v_axis=v_axis, infinite=True)

    def signed_distance(self, p: NDArray[np.float64]) -> NDArray[np.float64]:
        """Signed distance of point(s) ``p`` (shape ``(..., 3)``) to the plane."""
        return np.asarray((np.asarray(p) - self.center) @ self.normal)

    def contains_projection(self, q: NDArray[np.float64], tol: float = 1e-9) -> NDArray[np.bool_]:
        """Whether in-plane point(s) ``q`` fall inside the rectangle extent."""
        if self.infinite:
            return np.ones(np.shape(q)[:-1], dtype=bool)
        rel = np.asarray(q) - self.center
        return (np.abs(rel @ self.u_axis) <= self.half_u + tol) & (
            np.abs(rel @ self.v_axis) <= self.half_v + tol
        )
