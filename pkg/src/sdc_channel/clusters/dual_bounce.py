"""Scatterer positions from departure/arrival directions and path delay.

Both bounces are placed at the same distance ``d`` from their end points:
``FBS = tx + d * u_dep`` and ``LBS = rx + d * u_arr``. The path length
``f(d) = 2d + |tx + d*u_dep - rx - d*u_arr|`` is nondecreasing in ``d``, with
``f(0) = |tx - rx|`` and ``f(L/2) >= L``, so bisection always finds the root.
"""

import math

import numpy as np
from numpy.typing import NDArray

from ..constants import C0
from ..errors import InfeasibleDelayError
from ..geometry import DirectionAngles, Vec3, angles_to_unit_vector, vec3

BISECTION_TOL_M = 1e-12


def dual_bounce_positions(
    tx: Vec3,
    rx: Vec3,
    u_dep: NDArray[np.float64],
    u_arr: NDArray[np.float64],
    lengths: NDArray[np.float64],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Solve for FBS/LBS for arrays of directions and path lengths.

    Args:
        tx: Transmitter position
        rx: Receiver position
        u_dep: Departure unit vectors, shape ``(..., 3)``
        u_arr: Arrival unit vectors, shape ``(..., 3)``
        lengths: Total path lengths, broadcastable to ``u_dep.shape[:-1]``

    Returns:
        ``(fbs, lbs)`` arrays of shape ``(..., 3)``

    Raises:
        InfeasibleDelayError: If any length is shorter than ``|tx - rx|``
    """
    tx = np.asarray(tx, dtype=np.float64)
    rx = np.asarray(rx, dtype=np.float64)
    u_dep = np.asarray(u_dep, dtype=np.float64)
    u_arr = np.asarray(u_arr, dtype=np.float64)
    shape = np.broadcast_shapes(u_dep.shape[:-1], u_arr.shape[:-1], np.shape(lengths))
    lengths = np.broadcast_to(np.asarray(lengths, dtype=np.float64), shape)

    w = tx - rx
    direct = float(np.linalg.norm(w))
    if np.any(lengths < direct * (1.0 - 1e-12) - 1e-12):
        raise InfeasibleDelayError(
            f"path length {float(lengths.min()):.6g} m is shorter than the direct "
            f"distance {direct:.6g} m"
        )

    du = np.broadcast_to(u_dep - u_arr, shape + (3,))

    def excess(d: NDArray[np.float64]) -> NDArray[np.float64]:
        return 2.0 * d + np.linalg.norm(w + d[..., None] * du, axis=-1) - lengths

    lo = np.zeros(shape)
    hi = 0.5 * lengths.copy()
    span = float(hi.max()) if hi.size else 0.0
    iterations = math.ceil(math.log2(max(span, BISECTION_TOL_M) / BISECTION_TOL_M)) + 2
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        below = excess(mid) < 0.0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)

    d = np.where(lengths - direct <= 1e-12 * max(direct, 1.0), 0.0, 0.5 * (lo + hi))
    fbs = tx + d[..., None] * u_dep
    lbs = rx + d[..., None] * u_arr
    return fbs, lbs


def positions_from_angles_delay(
    tx: Vec3,
    rx: Vec3,
    departure: DirectionAngles,
    arrival: DirectionAngles,
    delay: float,
) -> tuple[Vec3, Vec3]:
    """First/last bounce scatterers for one path of total delay ``delay``.

    Args:
        tx: Transmitter position
        rx: Receiver position
        departure: Direction of departure at ``tx``
        arrival: Direction of arrival at ``rx``
        delay: Total propagation delay in seconds (length ``delay * c0``)

    Returns:
        ``(fbs, lbs)``

    Raises:
        InfeasibleDelayError: If ``delay * c0 < |tx - rx|``
    """
    fbs, lbs = dual_bounce_positions(
        vec3(tx),
        vec3(rx),
        angles_to_unit_vector(departure),
        angles_to_unit_vector(arrival),
        np.float64(delay * C0),
    )
    return vec3(fbs), vec3(lbs)
