"""Vector/angle algebra, image-method reflections and segment-rectangle tests.

The array variants (``unit_vectors``, ``vectors_to_angles``,
``segments_intersect_rect``) broadcast over leading axes and back the scalar
operations, so batched and single-path code share one implementation.
"""

import math
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..errors import DegenerateGeometryError, DomainError
from .types import DirectionAngles, RectPlane, Vec3, vec3

PLANE_EPS = 1e-12


def unit_vectors(
    azimuth: NDArray[np.float64], elevation: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Unit vectors for arrays of azimuth/elevation, shape ``(..., 3)``."""
    az = np.asarray(azimuth, dtype=np.float64)
    el = np.asarray(elevation, dtype=np.float64)
    cos_el = np.cos(el)
    return np.stack([cos_el * np.cos(az), cos_el * np.sin(az), np.sin(el)], axis=-1)


def vectors_to_angles(
    v: NDArray[np.float64],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Azimuth/elevation arrays for vectors of shape ``(..., 3)``.

    Zero-length vectors yield (0, 0); callers that must reject them check the
    norm themselves.
    """
    v = np.asarray(v, dtype=np.float64)
    horizontal = np.hypot(v[..., 0], v[..., 1])
    az = np.where(horizontal > 0.0, np.arctan2(v[..., 1], v[..., 0]), 0.0)
    az = np.where(az <= -math.pi, math.pi, az)
    el = np.arctan2(v[..., 2], horizontal)
    return az, el


def angles_to_unit_vector(d: DirectionAngles) -> Vec3:
    """Unit vector ``(cos el cos az, cos el sin az, sin el)``."""
    return unit_vectors(np.float64(d.azimuth), np.float64(d.elevation))


def vector_to_angles(v: Vec3) -> DirectionAngles:
    """Direction angles of a nonzero vector.

    Raises:
        DomainError: If ``v`` is the zero vector
    """
    v = vec3(v)
    if not np.any(v):
        raise DomainError("cannot take the direction of a zero vector")
    az, el = vectors_to_angles(v)
    return DirectionAngles(float(az), float(el))


def mirror_point(p: Vec3, plane: RectPlane) -> Vec3:
    """Reflect ``p`` across the infinite extension of ``plane``."""
    p = np.asarray(p, dtype=np.float64)
    return p - 2.0 * plane.signed_distance(p)[..., None] * plane.normal


def specular_reflection_point(tx: Vec3, rx: Vec3, plane: RectPlane) -> Optional[Vec3]:
    """Specular reflection point on ``plane`` for the path ``tx -> plane -> rx``.

    The segment from the image of ``tx`` to ``rx`` is intersected with the
    plane; the path length equals ``|mirror(tx) - rx|``.

    Returns:
        The reflection point, or None if it falls outside the rectangle extent

    Raises:
        DegenerateGeometryError: If tx or rx lies on the plane
        DomainError: If tx and rx are on opposite sides of the plane
    """
    d_tx = float(plane.signed_distance(tx))
    d_rx = float(plane.signed_distance(rx))
    if abs(d_tx) <= PLANE_EPS or abs(d_rx) <= PLANE_EPS:
        raise DegenerateGeometryError("reflection endpoint lies on the reflecting plane")
    if d_tx * d_rx < 0.0:
        raise DomainError("reflection endpoints lie on opposite sides of the plane")

    image = mirror_point(tx, plane)
    t = d_tx / (d_tx + d_rx)
    q = image + t * (np.asarray(rx, dtype=np.float64) - image)
    if not bool(plane.contains_projection(q)):
        return None
    return q


def specular_path_length(tx: Vec3, rx: Vec3, plane: RectPlane) -> float:
    """Length of the specular path, ``|mirror(tx) - rx|``."""
    return float(np.linalg.norm(mirror_point(tx, plane) - np.asarray(rx)))


def segments_intersect_rect(
    p1: NDArray[np.float64], p2: NDArray[np.float64], rect: RectPlane
) -> NDArray[np.bool_]:
    """Vectorised ``segment_intersects_rect`` over leading axes."""
    p1 = np.asarray(p1, dtype=np.float64)
    p2 = np.asarray(p2, dtype=np.float64)
    d1 = rect.signed_distance(p1)
    d2 = rect.signed_distance(p2)
    # open segment: endpoints on the plane and coplanar segments never count
    crosses = (d1 * d2 < 0.0) & (np.abs(d1) > PLANE_EPS) & (np.abs(d2) > PLANE_EPS)
    # crossing point, symmetric in (p1, p2)
    denom = np.where(crosses, d1 - d2, 1.0)[..., None]
    q = (d1[..., None] * p2 - d2[..., None] * p1) / denom
    return crosses & rect.contains_projection(q)


def segment_intersects_rect(p1: Vec3, p2: Vec3, rect: RectPlane) -> bool:
    """Whether the open segment ``p1 -> p2`` crosses the rectangle.

    Segments lying in the plane do not intersect.
    """
    if np.array_equal(np.asarray(p1), np.asarray(p2)):
        raise DomainError("segment endpoints must differ")
    return bool(segments_intersect_rect(p1, p2, rect))
