"""Pytest configuration and shared fixtures."""

import numpy as np
import pytest

from sdc_channel.models import (
    DiffractionEdgeCluster,
    FixedCluster,
    HallConfig,
    ObstacleConfig,
    PowerRule,
    RandomClusterParams,
    ReflectorPlane,
    Scenario,
    SpecularReflectorCluster,
    TrpConfig,
    UeTrackConfig,
)
from sdc_channel.scenario import reference_scenario


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for test inputs."""
    return np.random.default_rng(20240917)


@pytest.fixture
def small_scenario() -> Scenario:
    """A fast scenario: two TRPs, a short UE walk, one wall, one edge, a fixed scatterer."""
    return Scenario(
        name="small-hall",
        seed=11,
        snapshots=40,
        hall=HallConfig(size=(20.0, 20.0, 6.0)),
        trps=[
            TrpConfig(id="TRP1", position=(2.0, 2.0, 4.0)),
            TrpConfig(id="TRP2", position=(18.0, 2.0, 4.0)),
        ],
        ue=UeTrackConfig(id="UE", start=(10.0, 12.0, 1.5), end=(10.4, 12.0, 1.5)),
        obstacle=ObstacleConfig(
            start=(4.0, 8.0, 0.0),
            end=(16.0, 8.0, 0.0),
            blockage_loss_db=20.0,
        ),
        sdcs=[
            SpecularReflectorCluster(
                name="wall-north",
                plane=ReflectorPlane(
                    center=(10.0, 20.0, 3.0),
                    u_axis=(1.0, 0.0, 0.0),
                    v_axis=(0.0, 0.0, 1.0),
                    half_u=10.0,
                    half_v=3.0,
                ),
                power=PowerRule(extra_loss_db=3.0),
            ),
            FixedCluster(name="pillar", position=(14.0, 15.0, 2.0)),
            DiffractionEdgeCluster(name="edge-top", edge_offset=(1.0, 4.0, 0.0)),
        ],
        random_clusters=RandomClusterParams(n_clusters=6, subpaths=4),
    )


@pytest.fixture(scope="session")
def reference() -> Scenario:
    """The built-in reference scenario."""
    return reference_scenario()
