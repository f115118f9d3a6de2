"""Built-in reference scenario: an industrial hall with a passing obstacle.

The hall size (30 m x 45 m x 10 m), the 2 m x 4 m obstacle, the six TRPs,
the carrier/bandwidth, the InF-LOS random-cluster parameters and the SDC
set (four walls, the ceiling and six obstacle edges) follow the measurement
setup this simulator reproduces.

Placeholders (not taken from the measurement campaign, which does not
publish them): the TRP coordinates, the UE position, the obstacle
trajectory, the material losses and the seed. They are chosen so that
the obstacle passes between TRP3 and the UE around snapshots 700-800.
"""

from ..models import (
    DiffractionEdgeCluster,
    GroundReflectionConfig,
    HallConfig,
    ObstacleConfig,
    PowerRule,
    RandomClusterParams,
    ReflectorPlane,
    RfConfig,
    Scenario,
    SpatialConsistencyConfig,
    SpecularReflectorCluster,
    TrpConfig,
    UeTrackConfig,
)

HALL = (30.0, 45.0, 10.0)

TRP_POSITIONS = {
    "TRP1": (3.0, 3.0, 7.0),
    "TRP2": (27.0, 3.0, 5.0),
    "TRP3": (18.0, 2.0, 6.0),
    "TRP4": (27.0, 42.0, 8.0),
    "TRP5": (3.0, 42.0, 4.0),
    "TRP6": (15.0, 44.0, 9.0),
}

UE_POSITION = (18.0, 22.0, 1.5)

# Obstacle bottom-center moves along y = 20 and crosses the TRP3-UE line at x = 18
OBSTACLE_START = (3.0, 20.0, 0.0)
OBSTACLE_END = (23.0, 20.0, 0.0)

SNAPSHOTS = 1000

# C_phi / C_theta keyed by total cluster count (NLOS clusters + LOS cluster)
C_PHI = {
    4: 0.779,
    5: 0.860,
    8: 1.018,
    10: 1.090,
    11: 1.123,
    12: 1.146,
    14: 1.190,
    15: 1.211,
    16: 1.226,
    19: 1.273,
    20: 1.289,
    25: 1.358,
}
C_THETA = {
    8: 0.889,
    10: 0.957,
    11: 1.031,
    12: 1.104,
    15: 1.1088,
    19: 1.184,
    20: 1.178,
    25: 1.282,
}

WALL_LOSS_DB = 3.0
METAL_LOSS_DB = 1.0
EDGE_LOSS_DB = 12.0
BLOCKAGE_LOSS_DB = 20.0


def _walls() -> list[SpecularReflectorCluster]:
    x, y, z = HALL
    # name, center, u axis, v axis, half extents, loss
    table = [
        ("wall-south", (x / 2, 0.0, z / 2), (1, 0, 0), (0, 0, 1), (x / 2, z / 2), WALL_LOSS_DB),
        ("wall-east", (x, y / 2, z / 2), (0, 1, 0), (0, 0, 1), (y / 2, z / 2), METAL_LOSS_DB),
        ("wall-north", (x / 2, y, z / 2), (1, 0, 0), (0, 0, 1), (x / 2, z / 2), METAL_LOSS_DB),
        ("wall-west", (0.0, y / 2, z / 2), (0, 1, 0), (0, 0, 1), (y / 2, z / 2), METAL_LOSS_DB),
        ("ceiling", (x / 2, y / 2, z), (1, 0, 0), (0, 1, 0), (x / 2, y / 2), WALL_LOSS_DB),
    ]
    return [
        SpecularReflectorCluster(
            name=name,
            plane=ReflectorPlane(
                center=center, u_axis=u, v_axis=v, half_u=half[0], half_v=half[1]
            ),
            power=PowerRule(extra_loss_db=loss),
        )
        for name, center, u, v, half, loss in table
    ]


def _edges() -> list[DiffractionEdgeCluster]:
    # panel corners and vertical-edge midpoints in the obstacle frame
    edges = []
    for side, du in (("left", -1.0), ("right", 1.0)):
        for level, dv in (("base", 0.0), ("mid", 2.0), ("top", 4.0)):
            edges.append(
                DiffractionEdgeCluster(
                    name=f"edge-{side}-{level}",
                    edge_offset=(du, dv, 0.0),
                    power=PowerRule(mode="knife_edge", extra_loss_db=EDGE_LOSS_DB),
                )
            )
    return edges


def reference_scenario(seed: int = 7) -> Scenario:
    """The built-in reference scenario (11 SDCs, GR enabled, 1000 snapshots)."""
    return Scenario(
        name="reference-hall",
        seed=seed,
        snapshots=SNAPSHOTS,
        rf=RfConfig(carrier_frequency_hz=3.75e9, bandwidth_hz=100e6),
        hall=HallConfig(size=HALL),
        trps=[TrpConfig(id=trp_id, position=pos) for trp_id, pos in TRP_POSITIONS.items()],
        ue=UeTrackConfig(id="UE", start=UE_POSITION),
        obstacle=ObstacleConfig(
            width_m=2.0,
            height_m=4.0,
            start=OBSTACLE_START,
            end=OBSTACLE_END,
            heading_deg=0.0,
            start_snapshot=0,
            end_snapshot=SNAPSHOTS - 1,
            blockage_loss_db=BLOCKAGE_LOSS_DB,
        ),
        sdcs=[*_walls(), *_edges()],
        random_clusters=RandomClusterParams(
            n_clusters=24,
            subpaths=20,
            delay_spread_s=43e-9,
            delay_scaling=2.7,
            shadowing_std_db=4.0,
            k_factor_db=7.0,
            asd_deg=36.0,
            asa_deg=45.0,
            zsd_deg=22.0,
            zsa_deg=23.0,
            cluster_asd_deg=5.0,
            cluster_asa_deg=8.0,
            cluster_zsd_deg=3.0,
            cluster_zsa_deg=9.0,
            c_phi=C_PHI,
            c_theta=C_THETA,
        ),
        spatial_consistency=SpatialConsistencyConfig(decorrelation_distance_m=10.0, sinusoids=64),
        ground_reflection=GroundReflectionConfig(permittivity=5.0, polarization="perpendicular"),
    )
