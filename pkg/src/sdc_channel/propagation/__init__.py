"""Losses, correlated fields, the moving obstacle and path amplitudes."""

from .field import CorrelatedField, correlated_gaussian
from .losses import (
    fresnel_parameter,
    fresnel_reflection,
    fspl_db,
    fspl_db_array,
    knife_edge_loss_db,
)
from .obstacle import ObstacleState, obstacle_pose, polyline_blocked

# amplitude imports clusters.types; keep it after obstacle
from .amplitude import (  # noqa: E402
    blockage_attenuation_db,
    diffraction_loss_db,
    evaluate_path,
    path_amplitude,
    path_blocked,
    random_amplitudes,
)

__all__ = [
    "CorrelatedField",
    "ObstacleState",
    "blockage_attenuation_db",
    "correlated_gaussian",
    "diffraction_loss_db",
    "evaluate_path",
    "fresnel_parameter",
    "fresnel_reflection",
    "fspl_db",
    "fspl_db_array",
    "knife_edge_loss_db",
    "obstacle_pose",
    "path_amplitude",
    "path_blocked",
    "polyline_blocked",
    "random_amplitudes",
]
