"""Unit tests for vector/angle algebra and image-method reflections."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize

from sdc_channel.errors import DegenerateGeometryError, DomainError
from sdc_channel.geometry import (
    DirectionAngles,
    RectPlane,
    angles_to_unit_vector,
    mirror_point,
    segment_intersects_rect,
    segments_intersect_rect,
    specular_path_length,
    specular_reflection_point,
    vec3,
    vector_to_angles,
    wrap_angle,
)

FLOOR = RectPlane.unbounded(vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0))

angles = st.floats(min_value=-math.pi + 1e-6, max_value=math.pi)
elevations = st.floats(min_value=-math.pi / 2 + 1e-6, max_value=math.pi / 2 - 1e-6)
coords = st.floats(min_value=-10.0, max_value=10.0)
points = st.tuples(coords, coords, coords)


def _random_plane(rng: np.random.Generator) -> RectPlane:
    normal = rng.normal(size=3)
    normal /= np.linalg.norm(normal)
    u = np.cross(normal, rng.normal(size=3))
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)
    return RectPlane.unbounded(rng.uniform(-5, 5, size=3), u, v)


def test_vec3_rejects_non_finite() -> None:
    """Test that NaN and wrong lengths are rejected."""
    with pytest.raises(DomainError, match="finite"):
        vec3(1.0, float("nan"), 0.0)
    with pytest.raises(DomainError, match="3 components"):
        vec3([1.0, 2.0])


def test_wrap_angle_range() -> None:
    """Test wrapping into (-pi, pi]."""
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert wrap_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert wrap_angle(0.25) == pytest.approx(0.25)


def test_direction_angles_fold_over_pole() -> None:
    """Test that elevations beyond the pole are folded back."""
    d = DirectionAngles(0.0, math.radians(100.0))
    assert d.elevation == pytest.approx(math.radians(80.0))
    assert d.azimuth == pytest.approx(math.pi)


def test_direction_at_pole_has_zero_azimuth() -> None:
    """Test that straight up yields azimuth 0."""
    assert vector_to_angles(vec3(0, 0, 2)) == DirectionAngles(0.0, math.pi / 2)


def test_unit_vector_examples() -> None:
    """Test the axis-aligned directions."""
    np.testing.assert_allclose(angles_to_unit_vector(DirectionAngles(0, 0)), [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(
        angles_to_unit_vector(DirectionAngles.from_degrees(90, 0)), [0, 1, 0], atol=1e-15
    )


def test_vector_to_angles_rejects_zero() -> None:
    """Test that the zero vector has no direction."""
    with pytest.raises(DomainError):
        vector_to_angles(vec3(0, 0, 0))


@given(angles, elevations)
def test_angles_round_trip(az: float, el: float) -> None:
    """Test angles -> unit vector -> angles."""
    d = DirectionAngles(az, el)
    back = vector_to_angles(angles_to_unit_vector(d))
    assert back.elevation == pytest.approx(d.elevation, abs=1e-9)
    assert math.cos(back.azimuth - d.azimuth) == pytest.approx(1.0, abs=1e-9)


def test_mirror_point_floor() -> None:
    """Test mirroring across z = 0."""
    np.testing.assert_allclose(mirror_point(vec3(1, 2, 3), FLOOR), [1, 2, -3])


def test_mirror_point_is_involution(rng: np.random.Generator) -> None:
    """Test that mirroring twice returns the point."""
    for _ in range(50):
        plane = _random_plane(rng)
        p = rng.uniform(-10, 10, size=3)
        np.testing.assert_allclose(mirror_point(mirror_point(p, plane), plane), p, atol=1e-9)


def test_specular_point_example() -> None:
    """Test tx=(0,0,2), rx=(4,0,2) over the floor."""
    tx, rx = vec3(0, 0, 2), vec3(4, 0, 2)
    q = specular_reflection_point(tx, rx, FLOOR)
    assert q is not None
    np.testing.assert_allclose(q, [2, 0, 0], atol=1e-12)
    assert specular_path_length(tx, rx, FLOOR) == pytest.approx(2 * math.sqrt(8))


def test_specular_point_outside_extent() -> None:
    """Test that a finite rectangle missing the reflection point yields None."""
    patch = RectPlane(vec3(10, 10, 0), vec3(1, 0, 0), vec3(0, 1, 0), half_u=1.0, half_v=1.0)
    assert specular_reflection_point(vec3(0, 0, 2), vec3(4, 0, 2), patch) is None


def test_specular_point_degenerate_and_opposite() -> None:
    """Test endpoints on the plane and on opposite sides."""
    with pytest.raises(DegenerateGeometryError):
        specular_reflection_point(vec3(0, 0, 0), vec3(4, 0, 2), FLOOR)
    with pytest.raises(DomainError, match="opposite sides"):
        specular_reflection_point(vec3(0, 0, -1), vec3(4, 0, 2), FLOOR)


def test_specular_length_matches_brute_force(rng: np.random.Generator) -> None:
    """Test image-method lengths against direct minimization over the plane."""
    for _ in range(1000):
        plane = _random_plane(rng)
        side = rng.choice([-1.0, 1.0])

        def point(plane: RectPlane = plane, side: float = side) -> np.ndarray:
            uv = rng.uniform(-5, 5, size=2)
            h = side * rng.uniform(0.5, 5.0)
            return plane.center + uv[0] * plane.u_axis + uv[1] * plane.v_axis + h * plane.normal

        tx, rx = point(), point()

        def length(uv: np.ndarray, plane: RectPlane = plane) -> float:
            q = plane.center + uv[0] * plane.u_axis + uv[1] * plane.v_axis
            return float(np.linalg.norm(q - tx) + np.linalg.norm(rx - q))

        oracle = minimize(length, np.zeros(2), method="BFGS", options={"gtol": 1e-10}).fun
        assert specular_path_length(tx, rx, plane) == pytest.approx(oracle, rel=1e-6)
        q = specular_reflection_point(tx, rx, plane)
        assert q is not None
        assert float(np.linalg.norm(q - tx) + np.linalg.norm(rx - q)) == pytest.approx(
            oracle, rel=1e-6
        )


def test_segment_crosses_rectangle() -> None:
    """Test crossing, missing and touching segments."""
    wall = RectPlane(vec3(0, 5, 1), vec3(1, 0, 0), vec3(0, 0, 1), half_u=1.0, half_v=1.0)
    assert segment_intersects_rect(vec3(0, 0, 1), vec3(0, 10, 1), wall)
    assert not segment_intersects_rect(vec3(3, 0, 1), vec3(3, 10, 1), wall)
    # ends on the plane: open segment does not count
    assert not segment_intersects_rect(vec3(0, 0, 1), vec3(0, 5, 1), wall)
    # lies in the plane
    assert not segment_intersects_rect(vec3(-0.5, 5, 1), vec3(0.5, 5, 1), wall)


@given(points, points)
def test_segment_crossing_ignores_direction(p1, p2) -> None:
    """Test that a segment and its reverse cross the same rectangles."""
    wall = RectPlane(vec3(0, 5, 1), vec3(1, 0, 0), vec3(0, 0, 1), half_u=2.0, half_v=1.5)
    a, b = vec3(p1), vec3(p2)
    if np.array_equal(a, b):
        return
    assert segment_intersects_rect(a, b, wall) == segment_intersects_rect(b, a, wall)


def test_segment_batch_ignores_direction(rng: np.random.Generator) -> None:
    """Test direction symmetry over many random segments and tilted rectangles."""
    for _ in range(5):
        normal = rng.normal(size=3)
        normal /= np.linalg.norm(normal)
        u = np.cross(normal, rng.normal(size=3))
        u /= np.linalg.norm(u)
        rect = RectPlane(rng.uniform(-2, 2, 3), u, np.cross(normal, u), half_u=3.0, half_v=2.0)
        p1 = rng.uniform(-8, 8, (2000, 3))
        p2 = rng.uniform(-8, 8, (2000, 3))
        forward = segments_intersect_rect(p1, p2, rect)
        assert forward.any() and not forward.all()
        np.testing.assert_array_equal(forward, segments_intersect_rect(p2, p1, rect))


def test_segment_requires_distinct_endpoints() -> None:
    """Test that a zero-length segment is rejected."""
    with pytest.raises(DomainError):
        segment_intersects_rect(vec3(1, 1, 1), vec3(1, 1, 1), FLOOR)


def test_segments_intersect_rect_broadcasts() -> None:
    """Test the vectorised form over a batch of segments."""
    wall = RectPlane(vec3(0, 5, 1), vec3(1, 0, 0), vec3(0, 0, 1), half_u=1.0, half_v=1.0)
    p1 = np.array([[0, 0, 1], [3, 0, 1], [0, 0, 1.5]], dtype=float)
    p2 = np.array([[0, 10, 1], [3, 10, 1], [0, 10, 1.5]], dtype=float)
    np.testing.assert_array_equal(segments_intersect_rect(p1, p2, wall), [True, False, True])


def test_rect_plane_rejects_bad_axes() -> None:
    """Test axis validation."""
    with pytest.raises(DomainError, match="orthogonal"):
        RectPlane(vec3(0, 0, 0), vec3(1, 0, 0), vec3(1, 0, 0), half_u=1, half_v=1)
    with pytest.raises(DomainError, match="unit"):
        RectPlane(vec3(0, 0, 0), vec3(2, 0, 0), vec3(0, 1, 0), half_u=1, half_v=1)


def test_closed_form_direction_examples() -> None:
    """Test the 45/45 degree direction and its inverse."""
    u = angles_to_unit_vector(DirectionAngles(math.pi / 4, math.pi / 4))
    np.testing.assert_allclose(u, [0.5, 0.5, math.sqrt(0.5)], atol=1e-12)
    d = vector_to_angles(vec3(0.5, 0.5, 0.70711))
    assert d.azimuth == pytest.approx(math.pi / 4)
    assert d.elevation == pytest.approx(math.pi / 4, abs=1e-5)
    flat = vector_to_angles(vec3(1, 1, 0))
    assert (flat.azimuth, flat.elevation) == pytest.approx((math.pi / 4, 0.0))


def test_mirror_point_examples() -> None:
    """Test mirroring across x = 5 and a point lying on the plane."""
    plane = RectPlane.unbounded(vec3(5, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1))
    np.testing.assert_allclose(mirror_point(vec3(1, 2, 3), plane), [9, 2, 3])
    np.testing.assert_allclose(mirror_point(vec3(5, 7, -1), plane), [5, 7, -1])
    np.testing.assert_allclose(mirror_point(vec3(0, 0, 1.5), FLOOR), [0, 0, -1.5])


@pytest.mark.parametrize(
    ("rx", "expected_point", "expected_length"),
    [
        ((10.0, 0.0, 2.0), (5.0, 0.0, 0.0), 2 * math.sqrt(29)),
        ((10.0, 0.0, 4.0), (10 / 3, 0.0, 0.0), math.sqrt(136)),
    ],
)
def test_floor_reflection_examples(rx, expected_point, expected_length) -> None:
    """Test reflection points and lengths off the floor."""
    tx = vec3(0, 0, 2)
    q = specular_reflection_point(tx, vec3(rx), FLOOR)
    assert q is not None
    np.testing.assert_allclose(q, expected_point, atol=1e-12)
    assert specular_path_length(tx, vec3(rx), FLOOR) == pytest.approx(expected_length)


def test_far_wall_has_no_reflection_point() -> None:
    """Test a small wall far away from both endpoints."""
    wall = RectPlane(vec3(50, 0, 2), vec3(0, 1, 0), vec3(0, 0, 1), half_u=1.0, half_v=1.0)
    assert specular_reflection_point(vec3(0, 0, 2), vec3(1, 0, 2), wall) is None


def test_segment_examples_through_centered_rectangle() -> None:
    """Test crossing, passing above and coplanar segments."""
    rect = RectPlane(vec3(0, 0, 1), vec3(0, 1, 0), vec3(0, 0, 1), half_u=1.0, half_v=1.0)
    assert segment_intersects_rect(vec3(-1, 0, 1), vec3(1, 0, 1), rect)
    assert not segment_intersects_rect(vec3(-1, 0, 5), vec3(1, 0, 5), rect)
    assert not segment_intersects_rect(vec3(0, -0.5, 1), vec3(0, 0.5, 1), rect)
