"""Scenario data models."""

from .scenario import (
    ClusterSpec,
    DiffractionEdgeCluster,
    DriftingConfig,
    FixedCluster,
    GroundReflectionConfig,
    HallConfig,
    MetricsConfig,
    ObstacleConfig,
    PowerRule,
    RandomClusterParams,
    ReflectorPlane,
    RelativeCluster,
    RfConfig,
    Scenario,
    SpatialConsistencyConfig,
    SpecularReflectorCluster,
    TrpConfig,
    UeTrackConfig,
)

__all__ = [
    "ClusterSpec",
    "DiffractionEdgeCluster",
    "DriftingConfig",
    "FixedCluster",
    "GroundReflectionConfig",
    "HallConfig",
    "MetricsConfig",
    "ObstacleConfig",
    "PowerRule",
    "RandomClusterParams",
    "ReflectorPlane",
    "RelativeCluster",
    "RfConfig",
    "Scenario",
    "SpatialConsistencyConfig",
    "SpecularReflectorCluster",
    "TrpConfig",
    "UeTrackConfig",
]
