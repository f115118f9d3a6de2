"""Complex path amplitudes.

``|A| = -(FSPL(length) + extra loss + blockage + diffraction)`` in dB, with
ground reflections scaled by the Fresnel coefficient. The carrier phase is
``initial_phase - 2*pi*(length - reference_length)/wavelength`` (plus the
reflection phase), so a path's phase advances continuously with its length.
"""

import math
from dataclasses import replace
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..clusters.types import PathKind, ResolvedPath
from ..errors import DomainError
from ..geometry import Vec3, segment_intersects_rect
from ..models import GroundReflectionConfig, RfConfig
from .losses import (
    fresnel_parameter,
    fresnel_reflection,
    fspl_db,
    fspl_db_array,
    knife_edge_loss_db,
)
from .obstacle import ObstacleState, polyline_blocked

_DEFAULT_GROUND = GroundReflectionConfig()


def path_blocked(path: ResolvedPath, obstacle: Optional[ObstacleState]) -> bool:
    """Whether the obstacle intersects the path.

    Diffraction paths around the obstacle are never blocked by it; the LOS
    path is tested on the direct TX-RX segment.
    """
    if obstacle is None or path.kind is PathKind.DIFFRACTION_EDGE:
        return False
    if path.kind is PathKind.LOS:
        points = [path.tx, path.rx]
    else:
        points = [path.tx, path.fbs, path.lbs, path.rx]
    return bool(polyline_blocked(points, obstacle))


def blockage_attenuation_db(path: ResolvedPath, obstacle: Optional[ObstacleState]) -> float:
    """Blockage loss of ``path``: the obstacle's loss if it is blocked, else 0."""
    if obstacle is None or not path_blocked(path, obstacle):
        return 0.0
    return obstacle.blockage_loss_db


def diffraction_loss_db(
    edge: Vec3, tx: Vec3, rx: Vec3, obstacle: Optional[ObstacleState], wavelength: float
) -> float:
    """Knife-edge loss of an edge point relative to the direct TX-RX line.

    ``h`` is the edge's distance from the direct line, positive when the
    direct line crosses the obstacle. Edges whose projection falls outside
    the TX-RX segment contribute no loss.
    """
    line = np.asarray(rx) - np.asarray(tx)
    distance = float(np.linalg.norm(line))
    if distance == 0.0:
        raise DomainError("diffraction needs distinct TX and RX")
    t = float((np.asarray(edge) - tx) @ line) / distance**2
    if t <= 0.0 or t >= 1.0:
        return 0.0
    h = float(np.linalg.norm(np.asarray(edge) - (tx + t * line)))
    obstructed = obstacle is not None and segment_intersects_rect(tx, rx, obstacle.face)
    nu = fresnel_parameter(h if obstructed else -h, t * distance, (1.0 - t) * distance, wavelength)
    return knife_edge_loss_db(nu)


def _carrier_phase(path: ResolvedPath, length: float, wavelength: float) -> float:
    return path.initial_phase - 2.0 * math.pi * (length - path.reference_length) / wavelength


def path_amplitude(
    path: ResolvedPath,
    rf: RfConfig,
    obstacle: Optional[ObstacleState] = None,
    ground: Optional[GroundReflectionConfig] = None,
) -> complex:
    """Complex amplitude of a resolved path.

    Args:
        path: Resolved path
        rf: Carrier frequency and wavelength
        obstacle: Obstacle at this snapshot, if any
        ground: Ground material for GR paths (default concrete-like, eps_r 5)

    Returns:
        Complex amplitude
    """
    length = path.length
    loss_db = fspl_db(length, rf.carrier_frequency_hz) + path.extra_loss_db
    loss_db += blockage_attenuation_db(path, obstacle)
    if path.kind is PathKind.DIFFRACTION_EDGE and path.knife_edge:
        loss_db += diffraction_loss_db(path.fbs, path.tx, path.rx, obstacle, rf.wavelength_m)
    amplitude = 10.0 ** (-loss_db / 20.0) * np.exp(
        1j * _carrier_phase(path, length, rf.wavelength_m)
    )
    if path.kind is PathKind.GR:
        ground = ground or _DEFAULT_GROUND
        b = path.b
        grazing = math.asin(min(1.0, abs(float(b[2])) / float(np.linalg.norm(b))))
        amplitude *= fresnel_reflection(grazing, ground.permittivity, ground.polarization)
    return complex(amplitude)


def evaluate_path(
    path: ResolvedPath,
    rf: RfConfig,
    obstacle: Optional[ObstacleState] = None,
    ground: Optional[GroundReflectionConfig] = None,
) -> ResolvedPath:
    """Copy of ``path`` with its amplitude and blocked flag filled in."""
    return replace(
        path,
        amplitude=path_amplitude(path, rf, obstacle, ground),
        blocked=path_blocked(path, obstacle),
    )


def random_amplitudes(
    tx: Vec3,
    fbs: NDArray[np.float64],
    lbs: NDArray[np.float64],
    rx: Vec3,
    extra_loss_db: NDArray[np.float64],
    initial_phase: NDArray[np.float64],
    reference_length: NDArray[np.float64],
    rf: RfConfig,
    obstacle: Optional[ObstacleState] = None,
) -> tuple[NDArray[np.complex128], NDArray[np.bool_], NDArray[np.float64]]:
    """Vectorised amplitudes for random sub-paths.

    Returns:
        ``(amplitudes, blocked, lengths)``
    """
    lengths = (
        np.linalg.norm(fbs - tx, axis=-1)
        + np.linalg.norm(lbs - fbs, axis=-1)
        + np.linalg.norm(lbs - rx, axis=-1)
    )
    loss_db = fspl_db_array(lengths, rf.carrier_frequency_hz) + extra_loss_db
    if obstacle is not None:
        blocked = polyline_blocked([np.asarray(tx), fbs, lbs, np.asarray(rx)], obstacle)
        loss_db = loss_db + np.where(blocked, obstacle.blockage_loss_db, 0.0)
    else:
        blocked = np.zeros(lengths.shape, dtype=bool)
    phase = initial_phase - 2.0 * np.pi * (lengths - reference_length) / rf.wavelength_m
    return 10.0 ** (-loss_db / 20.0) * np.exp(1j * phase), blocked, lengths
