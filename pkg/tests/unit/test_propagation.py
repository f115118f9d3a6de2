"""Unit tests for losses, blockage, path amplitudes and the moving obstacle."""

import cmath
import math

import numpy as np
import pytest

from sdc_channel.clusters import ground_reflection_path, los_path, resolve_cluster
from sdc_channel.errors import DomainError
from sdc_channel.geometry import vec3
from sdc_channel.models import (
    DiffractionEdgeCluster,
    FixedCluster,
    ObstacleConfig,
    ReflectorPlane,
    RfConfig,
    SpecularReflectorCluster,
)
from sdc_channel.propagation import (
    blockage_attenuation_db,
    evaluate_path,
    fresnel_parameter,
    fresnel_reflection,
    fspl_db,
    fspl_db_array,
    knife_edge_loss_db,
    obstacle_pose,
    path_amplitude,
    path_blocked,
    random_amplitudes,
)

RF = RfConfig(carrier_frequency_hz=3.75e9, bandwidth_hz=100e6)


def _panel(start=(5.0, 5.0, 0.0), end=None, loss=20.0):
    # 2 m x 4 m panel in the plane y = start[1], centered on x = start[0]
    config = ObstacleConfig(start=start, end=end or start, blockage_loss_db=loss)
    return obstacle_pose(config, 0, (0, 0))


# --- free-space loss ---


def test_fspl_examples() -> None:
    """Test FSPL at 1 m and 10 m for 3.75 GHz."""
    assert fspl_db(1.0, 3.75e9) == pytest.approx(43.93, abs=0.01)
    assert fspl_db(10.0, 3.75e9) == pytest.approx(63.93, abs=0.01)


def test_fspl_log_law() -> None:
    """Test that 10x distance adds exactly 20 dB."""
    assert fspl_db(70.0, 2e9) - fspl_db(7.0, 2e9) == pytest.approx(20.0, abs=1e-12)
    np.testing.assert_allclose(
        fspl_db_array(np.array([1.0, 10.0]), 3.75e9), [fspl_db(1.0, 3.75e9), fspl_db(10.0, 3.75e9)]
    )


def test_fspl_rejects_non_positive_distance() -> None:
    """Test the FSPL domain."""
    with pytest.raises(DomainError):
        fspl_db(0.0, 3.75e9)
    with pytest.raises(DomainError):
        fspl_db_array(np.array([1.0, -1.0]), 3.75e9)


# --- Fresnel reflection ---


def test_fresnel_normal_incidence() -> None:
    """Test |R| = (sqrt(5) - 1) / (sqrt(5) + 1) at normal incidence for eps_r = 5."""
    expected = (1 - math.sqrt(5)) / (1 + math.sqrt(5))
    perpendicular = fresnel_reflection(math.pi / 2, 5.0, "perpendicular")
    parallel = fresnel_reflection(math.pi / 2, 5.0, "parallel")
    assert perpendicular.real == pytest.approx(expected)
    assert perpendicular.real == pytest.approx(-0.38197, abs=1e-5)
    # the parallel convention flips the sign at normal incidence
    assert parallel.real == pytest.approx(-expected)
    assert parallel.real == pytest.approx(0.38197, abs=1e-5)
    assert parallel.imag == perpendicular.imag == 0.0


@pytest.mark.parametrize("polarization", ["perpendicular", "parallel"])
def test_fresnel_grazing_limit(polarization) -> None:
    """Test R -> -1 at grazing incidence."""
    assert fresnel_reflection(0.0, 5.0, polarization) == pytest.approx(-1.0)
    assert fresnel_reflection(1e-6, 5.0, polarization).real == pytest.approx(-1.0, abs=1e-5)


@pytest.mark.parametrize("polarization", ["perpendicular", "parallel"])
def test_fresnel_no_contrast(polarization) -> None:
    """Test that eps_r = 1 does not reflect."""
    assert abs(fresnel_reflection(0.7, 1.0, polarization)) == pytest.approx(0.0, abs=1e-12)


def test_fresnel_rejects_bad_input() -> None:
    """Test the Fresnel domain checks."""
    with pytest.raises(DomainError):
        fresnel_reflection(-0.1, 5.0, "perpendicular")
    with pytest.raises(DomainError):
        fresnel_reflection(0.5, 0.5, "perpendicular")
    with pytest.raises(DomainError):
        fresnel_reflection(0.5, 5.0, "circular")  # type: ignore[arg-type]


# --- knife-edge diffraction ---


def test_fresnel_parameter_examples() -> None:
    """Test nu for the closed-form example, zero height and sign symmetry."""
    assert fresnel_parameter(1.0, 100.0, 100.0, 0.08) == pytest.approx(0.7071, abs=1e-4)
    assert fresnel_parameter(0.0, 100.0, 100.0, 0.08) == 0.0
    assert fresnel_parameter(-1.0, 100.0, 100.0, 0.08) == pytest.approx(
        -fresnel_parameter(1.0, 100.0, 100.0, 0.08)
    )
    with pytest.raises(DomainError):
        fresnel_parameter(1.0, 0.0, 100.0, 0.08)


def test_knife_edge_examples() -> None:
    """Test J(nu) at the reference points."""
    assert knife_edge_loss_db(-5.0) == 0.0
    assert knife_edge_loss_db(0.0) == pytest.approx(6.03, abs=0.01)
    assert knife_edge_loss_db(1.0) == pytest.approx(13.93, abs=0.01)
    assert knife_edge_loss_db(-0.78) == 0.0


def test_knife_edge_monotone() -> None:
    """Test that J is nondecreasing on [-0.78, 5]."""
    nu = np.arange(-0.78, 5.0 + 1e-9, 0.01)
    loss = knife_edge_loss_db(nu)
    assert np.all(np.diff(loss) >= 0.0)
    assert np.all(loss >= 0.0)


# --- blockage ---


def test_los_through_obstacle_is_blocked() -> None:
    """Test a direct hit and a clear miss."""
    obstacle = _panel()
    through = los_path(vec3(5, 0, 2), vec3(5, 10, 2))
    assert path_blocked(through, obstacle)
    assert blockage_attenuation_db(through, obstacle) == 20.0
    far = _panel(start=(25.0, 5.0, 0.0))
    assert blockage_attenuation_db(through, far) == 0.0
    assert blockage_attenuation_db(through, None) == 0.0


def test_ground_reflection_blocked_on_ascending_leg() -> None:
    """Test a GR path whose only blocked leg is the one rising to the UE."""
    obstacle = _panel()
    tx, rx = vec3(5, 0, 1), vec3(5, 10, 8)
    assert not path_blocked(los_path(tx, rx), obstacle)
    gr = ground_reflection_path(tx, rx)
    assert gr.fbs[1] < 5.0  # reflection point before the panel
    assert blockage_attenuation_db(gr, obstacle) == 20.0


def test_obstacle_pose_interpolates_and_clamps() -> None:
    """Test linear motion over the span and rest before/after it."""
    config = ObstacleConfig(start=(0.0, 5.0, 0.0), end=(10.0, 5.0, 0.0))
    np.testing.assert_allclose(obstacle_pose(config, 50, (0, 100)).origin, [5, 5, 0])
    np.testing.assert_allclose(obstacle_pose(config, 150, (0, 100)).origin, [10, 5, 0])
    np.testing.assert_allclose(obstacle_pose(config, 5, (10, 100)).origin, [0, 5, 0])
    pose = obstacle_pose(config, 0, (0, 100))
    np.testing.assert_allclose(pose.face.center, [0, 5, 2])
    np.testing.assert_allclose(pose.normal, [0, -1, 0])


# --- amplitudes ---


def test_los_phase_whole_wavelengths() -> None:
    """Test that k whole wavelengths give zero phase and half a wavelength gives pi."""
    lam = RF.wavelength_m
    tx = vec3(0, 0, 0)
    whole = path_amplitude(los_path(tx, vec3(100 * lam, 0, 0)), RF)
    half = path_amplitude(los_path(tx, vec3(100.5 * lam, 0, 0)), RF)
    assert math.cos(cmath.phase(whole)) == pytest.approx(1.0, abs=1e-9)
    assert math.cos(cmath.phase(half)) == pytest.approx(-1.0, abs=1e-9)
    assert 20 * math.log10(abs(whole)) == pytest.approx(-fspl_db(100 * lam, 3.75e9))


def test_diffraction_edge_on_direct_line() -> None:
    """Test an edge with nu = 0: loss is FSPL plus 6.03 dB."""
    obstacle = _panel()
    spec = DiffractionEdgeCluster(name="edge", edge_offset=(0.0, 2.0, 0.0))
    tx, rx = vec3(5, 0, 2), vec3(5, 10, 2)
    path = resolve_cluster(spec, tx, rx, obstacle)
    assert path is not None
    evaluated = evaluate_path(path, RF, obstacle)
    assert not evaluated.blocked
    expected = -fspl_db(10.0, 3.75e9) - knife_edge_loss_db(0.0)
    assert evaluated.power_db == pytest.approx(expected, abs=1e-9)


def test_ground_reflection_amplitude_includes_fresnel() -> None:
    """Test the GR magnitude against FSPL and the Fresnel coefficient."""
    path = ground_reflection_path(vec3(0, 0, 2), vec3(10, 0, 2))
    grazing = math.atan2(2.0, 5.0)
    coefficient = abs(fresnel_reflection(grazing, 5.0, "perpendicular"))
    expected = -fspl_db(2 * math.sqrt(29), 3.75e9) + 20 * math.log10(coefficient)
    assert 20 * math.log10(abs(path_amplitude(path, RF))) == pytest.approx(expected)


def test_random_amplitudes_match_scalar_model(rng: np.random.Generator) -> None:
    """Test the vectorised amplitudes against FSPL, extra loss and phase."""
    tx, rx = vec3(0, 0, 3), vec3(12, 4, 1.5)
    fbs = rng.uniform(0, 10, (4, 3, 3))
    lbs = rng.uniform(0, 10, (4, 3, 3))
    extra = np.full((4, 3), 6.0)
    phase0 = rng.uniform(-np.pi, np.pi, (4, 3))
    reference = np.zeros((4, 3))
    amps, blocked, lengths = random_amplitudes(tx, fbs, lbs, rx, extra, phase0, reference, RF)
    assert not blocked.any()
    np.testing.assert_allclose(20 * np.log10(np.abs(amps)), -fspl_db_array(lengths, 3.75e9) - 6.0)
    expected_phase = phase0 - 2 * np.pi * (lengths - reference) / RF.wavelength_m
    np.testing.assert_allclose(np.cos(np.angle(amps) - expected_phase), 1.0, atol=1e-9)


WALL = SpecularReflectorCluster(
    name="wall",
    plane=ReflectorPlane(
        center=(5.0, 10.0, 2.0),
        u_axis=(1.0, 0.0, 0.0),
        v_axis=(0.0, 0.0, 1.0),
        half_u=10.0,
        half_v=3.0,
    ),
    power={"extra_loss_db": 3.0},
)


@pytest.mark.parametrize(
    "spec", [FixedCluster(name="pillar", position=(6.0, 7.0, 3.5)), WALL], ids=["fixed", "wall"]
)
def test_path_amplitude_is_reciprocal(spec) -> None:
    """Test that swapping transmitter and receiver leaves the amplitude unchanged."""
    a, b = vec3(1.0, 2.0, 4.0), vec3(8.5, 3.0, 1.5)
    forward = resolve_cluster(spec, a, b, None)
    reverse = resolve_cluster(spec, b, a, None)
    assert forward is not None and reverse is not None
    assert reverse.length == pytest.approx(forward.length, rel=1e-12)
    assert path_amplitude(reverse, RF) == pytest.approx(path_amplitude(forward, RF), rel=1e-9)


def test_blockage_never_moves_a_path() -> None:
    """Test that an obstacle attenuates a path but keeps its delay."""
    obstacle = _panel()
    tx, rx = vec3(5, 0, 2), vec3(5, 10, 2)
    paths = [
        los_path(tx, rx),
        resolve_cluster(FixedCluster(name="pillar", position=(5.5, 8.0, 2.0)), tx, rx, None),
    ]
    for path in paths:
        assert path is not None
        clear = evaluate_path(path, RF)
        blocked = evaluate_path(path, RF, obstacle)
        assert blocked.blocked and not clear.blocked
        assert blocked.delay == clear.delay
        assert abs(blocked.amplitude) == pytest.approx(abs(clear.amplitude) * 0.1, rel=1e-9)
