"""Cluster model: path types, dual-bounce inversion, random clusters, SDC resolution."""

from .types import LinkId, PathKind, RandomClusterState, ResolvedPath

# resolve/random_clusters import propagation, which imports .types; keep types first
from .dual_bounce import dual_bounce_positions, positions_from_angles_delay  # noqa: E402
from .random_clusters import (  # noqa: E402
    ClusterDraws,
    FieldDraws,
    RngDraws,
    angle_scaling,
    cluster_delays_powers,
    generate_random_clusters,
    ray_offsets,
)
from .resolve import (  # noqa: E402
    ground_reflection_path,
    los_path,
    resolve_cluster,
    split_subpaths,
)

__all__ = [
    "ClusterDraws",
    "FieldDraws",
    "LinkId",
    "PathKind",
    "RandomClusterState",
    "ResolvedPath",
    "RngDraws",
    "angle_scaling",
    "cluster_delays_powers",
    "dual_bounce_positions",
    "generate_random_clusters",
    "ground_reflection_path",
    "los_path",
    "positions_from_angles_delay",
    "ray_offsets",
    "resolve_cluster",
    "split_subpaths",
]
