"""3D vector/angle algebra, image-method reflections and blockage tests."""

from .ops import (
    angles_to_unit_vector,
    mirror_point,
    segment_intersects_rect,
    segments_intersect_rect,
    specular_path_length,
    specular_reflection_point,
    unit_vectors,
    vector_to_angles,
    vectors_to_angles,
)
from .types import DirectionAngles, RectPlane, Vec3, vec3, wrap_angle

__all__ = [
    "DirectionAngles",
    "RectPlane",
    "Vec3",
    "angles_to_unit_vector",
    "mirror_point",
    "segment_intersects_rect",
    "segments_intersect_rect",
    "specular_path_length",
    "specular_reflection_point",
    "unit_vectors",
    "vec3",
    "vector_to_angles",
    "vectors_to_angles",
    "wrap_angle",
]
