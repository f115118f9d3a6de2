"""Unit tests for track segmentation, drifting paths and segment cross-fading."""

import math
from dataclasses import replace

import numpy as np
import pytest

from sdc_channel.clusters import PathKind, los_path, resolve_cluster
from sdc_channel.constants import C0
from sdc_channel.drifting import (
    LinkSimulator,
    RandomPathBlock,
    SnapshotChannel,
    build_track,
    cross_fade,
    simulate_link,
    simulate_track,
    update_path,
)
from sdc_channel.errors import (
    ConfigurationError,
    DegenerateGeometryError,
    DomainError,
    SimulationError,
)
from sdc_channel.geometry import vec3
from sdc_channel.models import FixedCluster, GroundReflectionConfig, RandomClusterParams, Scenario

LAMBDA = C0 / 3.75e9


def _fixed_path(position=(5.0, 5.0, 0.0), rx=(10.0, 0.0, 0.0)):
    path = resolve_cluster(FixedCluster(name="p", position=position), vec3(0, 0, 0), vec3(rx), None)
    assert path is not None
    return replace(path, amplitude=1.0 + 0.0j)


def _block(amplitudes: np.ndarray, base: int = 10) -> RandomPathBlock:
    n = amplitudes.size
    return RandomPathBlock(
        path_index=np.full(n, base, dtype=np.int64),
        subpath_index=np.arange(n, dtype=np.int64),
        fbs=np.zeros((n, 3)),
        lbs=np.zeros((n, 3)),
        delays=np.linspace(1e-7, 2e-7, n),
        amplitudes=amplitudes,
        blocked=np.zeros(n, dtype=bool),
    )


def _channel(*blocks: RandomPathBlock) -> SnapshotChannel:
    los = replace(los_path(vec3(0, 0, 3), vec3(10, 0, 1.5)), amplitude=1e-3 + 0j)
    return SnapshotChannel(
        link=los.link, snapshot=0, tx=los.tx, rx=los.rx, deterministic=(los,), random=blocks
    )


def _walk(small_scenario: Scenario, **update) -> Scenario:
    return small_scenario.model_copy(update=update)


# --- track segmentation ---


def test_static_track_is_one_segment() -> None:
    """Test that a UE that never moves never starts a new segment."""
    track = build_track(np.tile([1.0, 2.0, 1.5], (50, 1)), 1.6, 0.25)
    assert len(track.segments) == 1
    assert track.segments[0].start == 0 and track.segments[0].stop == 50
    assert track.spacing == 0.0


def test_moving_track_segments_and_overlap() -> None:
    """Test segment boundaries every segment length and the overlap rule."""
    positions = np.column_stack([np.linspace(0, 16, 1001), np.zeros(1001), np.full(1001, 1.5)])
    track = build_track(positions, 1.59, 0.25)
    assert len(track.segments) == 11
    first, second = track.segments[:2]
    assert first.start == 0 and second.start == first.stop == 100
    assert len(second) == 99
    assert second.overlap == math.floor(0.25 * 99)
    assert second.active_start == 76
    assert track.segment_of(150) is second
    assert track.fade_weight(76, second) == pytest.approx(0.5 / 24)
    assert track.spacing == pytest.approx(0.016)
    with pytest.raises(IndexError):
        track.segment_of(1001)


def test_build_track_rejects_bad_input() -> None:
    """Test shape and parameter validation."""
    with pytest.raises(ConfigurationError):
        build_track(np.zeros((10, 2)), 1.0, 0.25)
    with pytest.raises(ConfigurationError):
        build_track(np.zeros((10, 3)), 0.0, 0.25)
    with pytest.raises(ConfigurationError):
        build_track(np.zeros((10, 3)), 1.0, 1.0)


# --- drifting paths ---


def test_update_path_zero_displacement() -> None:
    """Test that an unchanged receiver leaves the path unchanged."""
    path = _fixed_path()
    moved = update_path(path, path.rx, LAMBDA)
    assert moved.delay == pytest.approx(path.delay, rel=1e-15)
    assert moved.amplitude == pytest.approx(path.amplitude)


def test_update_path_one_wavelength_away() -> None:
    """Test a one-wavelength step away from the last-bounce scatterer."""
    path = _fixed_path()
    away = path.rx - path.lbs
    moved = update_path(path, path.rx + LAMBDA * away / np.linalg.norm(away), LAMBDA)
    assert (moved.delay - path.delay) * 1e9 == pytest.approx(LAMBDA / C0 * 1e9)
    assert (moved.delay - path.delay) * 1e9 == pytest.approx(0.2667, abs=1e-4)
    assert moved.amplitude == pytest.approx(path.amplitude, abs=1e-9)


def test_update_path_perpendicular_step_is_second_order() -> None:
    """Test the length change of a small step perpendicular to the arrival direction."""
    path = _fixed_path()
    a = path.lbs - path.rx
    normal = np.cross(a, [0.0, 0.0, 1.0])
    normal /= np.linalg.norm(normal)
    for delta in (1e-3, 1e-2):
        moved = update_path(path, path.rx + delta * normal, LAMBDA)
        change = moved.length - path.length
        assert change == pytest.approx(delta**2 / (2 * np.linalg.norm(a)), rel=1e-3)


@pytest.mark.parametrize("substeps", [2, 10, 37])
def test_update_path_does_not_depend_on_subdivision(substeps: int) -> None:
    """Test that many small moves accumulate the same phase as one large move."""
    path = _fixed_path()
    target = path.rx + np.array([0.31, -0.47, 0.05])
    direct = update_path(path, target, LAMBDA)
    walked = path
    for rx in np.linspace(path.rx, target, substeps + 1)[1:]:
        walked = update_path(walked, rx, LAMBDA)
    assert walked.delay == pytest.approx(direct.delay, rel=1e-13)
    assert abs(walked.amplitude - direct.amplitude) < 1e-9 * abs(direct.amplitude)


def test_update_path_rejects_re_resolved_kinds() -> None:
    """Test that LOS paths are not drifted."""
    with pytest.raises(DomainError):
        update_path(los_path(vec3(0, 0, 0), vec3(1, 0, 0)), vec3(2, 0, 0), LAMBDA)


def test_update_path_receiver_on_scatterer() -> None:
    """Test the degenerate receiver position."""
    path = _fixed_path()
    with pytest.raises(DegenerateGeometryError):
        update_path(path, path.lbs, LAMBDA)


def test_doppler_rate_toward_fixed_cluster() -> None:
    """Test phase rotation v/lambda for a UE walking at 1 m/s toward a scatterer."""
    dt = 1e-3
    speed = 1.0
    path = _fixed_path(position=(10.0, 8.0, 0.0), rx=(10.0, 0.0, 0.0))
    phases = [0.0]
    for step in range(1, 101):
        moved = update_path(path, vec3(10.0, speed * dt * step, 0.0), LAMBDA)
        phases.append(np.angle(moved.amplitude))
    rate = np.polyfit(np.arange(101) * dt, np.unwrap(phases), 1)[0] / (2 * math.pi)
    assert rate == pytest.approx(speed / LAMBDA, rel=0.01)


def test_simulated_doppler_rate(small_scenario: Scenario) -> None:
    """Test the Doppler rate of a fixed SDC path through the link simulator."""
    scenario = _walk(
        small_scenario,
        ue=small_scenario.ue.model_copy(
            update={"start": (10.0, 10.0, 1.5), "end": (10.0, 10.1, 1.5)}
        ),
        snapshots=101,
        obstacle=None,
        sdcs=[FixedCluster(name="pillar", position=(10.0, 18.0, 1.5))],
        random_clusters=RandomClusterParams(enabled=False),
        ground_reflection=GroundReflectionConfig(enabled=False),
    )
    channels = simulate_track(scenario, "TRP1")
    phases = [np.angle(c.amplitudes[c.path_index == 2][0]) for c in channels]
    dt = 1e-3  # 1 mm per snapshot at 1 m/s
    rate = np.polyfit(np.arange(101) * dt, np.unwrap(phases), 1)[0] / (2 * math.pi)
    assert abs(rate) == pytest.approx(1.0 / scenario.wavelength_m, rel=0.01)


# --- cross-fading ---


def test_cross_fade_boundaries() -> None:
    """Test that w = 0 and w = 1 return the pure channels."""
    a = _channel(_block(np.ones(4, dtype=complex)))
    b = _channel(_block(np.full(4, 2.0 + 0j), base=20))
    assert cross_fade(a, b, 0.0) is a
    assert cross_fade(a, b, 1.0) is b
    with pytest.raises(DomainError):
        cross_fade(a, b, 1.5)


def test_cross_fade_preserves_power(rng: np.random.Generator) -> None:
    """Test that the expected random power at w = 0.5 equals either set's power."""
    n, trials = 40, 4000
    totals = np.empty(trials)
    for t in range(trials):
        a = _channel(_block(np.exp(1j * rng.uniform(-np.pi, np.pi, n))))
        b = _channel(_block(np.exp(1j * rng.uniform(-np.pi, np.pi, n)), base=20))
        merged = cross_fade(a, b, 0.5)
        random_amps = np.concatenate([blk.amplitudes for blk in merged.random])
        totals[t] = abs(random_amps.sum()) ** 2
    assert totals.mean() == pytest.approx(n, rel=0.05)


# --- link simulation ---


def test_path_count_and_indices(small_scenario: Scenario) -> None:
    """Test LOS, GR, SDC and random path bookkeeping."""
    (channel,) = simulate_link(small_scenario, "TRP1")[:1]
    n, m = small_scenario.random_clusters.n_clusters, small_scenario.random_clusters.subpaths
    kinds = channel.kinds
    assert kinds.count(PathKind.LOS) == 1
    assert kinds.count(PathKind.GR) == 1
    assert kinds.count(PathKind.RANDOM) == n * m
    sdc_paths = [p for p in channel.deterministic if p.kind.is_sdc]
    assert 1 <= len(sdc_paths) <= len(small_scenario.sdcs)
    assert channel.path_index[0] == 0
    assert {p.path_index for p in sdc_paths} <= {2, 3, 4}
    assert channel.path_index[-1] >= 2 + len(small_scenario.sdcs)
    assert channel.cluster_count() == 2 + len(sdc_paths) + n


def test_world_scatterers_are_shared(small_scenario: Scenario) -> None:
    """Test that fixed and wall scatterers sit at one world position for every link."""
    seen = {"pillar": 0, "wall-north": 0}
    for trp_id in ("TRP1", "TRP2"):
        for channel in simulate_track(small_scenario, trp_id, range(0, 40, 7)):
            for path in channel.deterministic:
                if path.origin == "pillar":
                    np.testing.assert_allclose(path.fbs, [14.0, 15.0, 2.0], atol=1e-12)
                    np.testing.assert_allclose(path.lbs, [14.0, 15.0, 2.0], atol=1e-12)
                elif path.origin == "wall-north":
                    assert path.fbs[1] == pytest.approx(20.0, abs=1e-9)
                    assert abs(path.fbs[0] - 10.0) <= 10.0 and abs(path.fbs[2] - 3.0) <= 3.0
                else:
                    continue
                seen[path.origin] += 1
    assert seen == {"pillar": 12, "wall-north": 12}


def test_static_scene_is_constant(small_scenario: Scenario) -> None:
    """Test that a static UE and no obstacle give identical snapshots."""
    scenario = _walk(
        small_scenario,
        ue=small_scenario.ue.model_copy(update={"end": None}),
        obstacle=None,
        sdcs=[sdc for sdc in small_scenario.sdcs if sdc.kind != "diffraction_edge"],
    )
    channels = simulate_track(scenario, "TRP2")
    for channel in channels[1:]:
        np.testing.assert_allclose(channel.amplitudes, channels[0].amplitudes, rtol=1e-12)
        np.testing.assert_allclose(channel.delays, channels[0].delays, rtol=1e-12)


def test_simulation_is_deterministic(small_scenario: Scenario) -> None:
    """Test that repeated runs are bit-identical and the seed only moves random paths."""
    a = simulate_track(small_scenario, "TRP1", range(0, 40, 7))
    b = simulate_track(small_scenario, "TRP1", range(0, 40, 7))
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.amplitudes, y.amplitudes)

    reseeded = simulate_track(small_scenario.model_copy(update={"seed": 12}), "TRP1", [0])[0]
    det = len(a[0].deterministic)
    np.testing.assert_array_equal(reseeded.amplitudes[:det], a[0].amplitudes[:det])
    assert not np.array_equal(reseeded.amplitudes[det:], a[0].amplitudes[det:])


def test_overlap_snapshots_carry_both_segments(small_scenario: Scenario) -> None:
    """Test that the fade-in region of a segment merges two random blocks."""
    scenario = _walk(
        small_scenario,
        ue=small_scenario.ue.model_copy(update={"end": (14.0, 12.0, 1.5)}),
        snapshots=200,
    )
    sim = LinkSimulator(scenario, "TRP1")
    second = sim.track.segments[1]
    assert second.overlap > 0
    inside = sim.merged_channel(second.active_start)
    before = sim.merged_channel(second.active_start - 1)
    assert len(inside.random) == 2
    assert len(before.random) == 1


def test_segment_draws_are_released(small_scenario: Scenario) -> None:
    """Test that a long walk holds at most two segment draws and can revisit old ones."""
    scenario = _walk(
        small_scenario,
        ue=small_scenario.ue.model_copy(update={"end": (14.0, 12.0, 1.5)}),
        snapshots=200,
    )
    sim = LinkSimulator(scenario, "TRP1")
    assert len(sim.track.segments) >= 3
    first = sim.merged_channel(0)
    for snapshot in range(1, 200, 3):
        sim.merged_channel(snapshot)
        assert len(sim._segments) <= 2
    assert max(sim._segments) == len(sim.track.segments) - 1
    again = sim.merged_channel(0)
    np.testing.assert_array_equal(again.amplitudes, first.amplitudes)


def test_errors_carry_link_and_snapshot(small_scenario: Scenario) -> None:
    """Test that a degenerate snapshot is reported with its TRP and snapshot."""
    scenario = _walk(
        small_scenario,
        ue=small_scenario.ue.model_copy(update={"start": (14.0, 15.0, 2.0), "end": None}),
        random_clusters=RandomClusterParams(enabled=False),
    )
    with pytest.raises(SimulationError) as excinfo:
        simulate_track(scenario, "TRP1")
    assert excinfo.value.trp_id == "TRP1"
    assert excinfo.value.snapshot == 1
