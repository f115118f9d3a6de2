"""Free-space loss, Fresnel reflection and knife-edge diffraction."""

import math
from typing import Literal, overload

import numpy as np
from numpy.typing import NDArray

from ..constants import C0
from ..errors import DomainError

Polarization = Literal["perpendicular", "parallel"]


def fspl_db(distance: float, frequency: float) -> float:
    """Free-space path loss ``20*log10(4*pi*d*f/c0)`` in dB.

    Raises:
        DomainError: If distance or frequency is not positive
    """
    if not (distance > 0 and frequency > 0):
        raise DomainError(f"FSPL needs distance > 0 and frequency > 0, got {distance}, {frequency}")
    return 20.0 * math.log10(4.0 * math.pi * distance * frequency / C0)


def fspl_db_array(distance: NDArray[np.float64], frequency: float) -> NDArray[np.float64]:
    """Vectorised ``fspl_db``; distances must be positive."""
    distance = np.asarray(distance, dtype=np.float64)
    if np.any(distance <= 0) or frequency <= 0:
        raise DomainError("FSPL needs distance > 0 and frequency > 0")
    return 20.0 * np.log10(4.0 * np.pi * distance * frequency / C0)


def fresnel_reflection(
    grazing_angle: float, permittivity: float, polarization: Polarization
) -> complex:
    """Fresnel reflection coefficient of a lossless dielectric half-space.

    Args:
        grazing_angle: Angle between the ray and the surface, radians in [0, pi/2]
        permittivity: Relative permittivity (>= 1)
        polarization: ``perpendicular`` (E normal to the plane of incidence)
            or ``parallel``

    Returns:
        Complex coefficient; real for a lossless dielectric, tending to -1 at
        grazing incidence for both polarizations

    Sign convention: with ``root = sqrt(eps - cos^2)``, ``parallel`` is
    ``(eps*sin - root) / (eps*sin + root)``. At normal incidence it is positive
    (+0.382 for eps_r 5) while ``perpendicular`` is negative (-0.382); both
    reach -1 at grazing.
    """
    if not 0.0 <= grazing_angle <= math.pi / 2 + 1e-12:
        raise DomainError(f"grazing angle must be in [0, pi/2], got {grazing_angle}")
    if permittivity < 1.0:
        raise DomainError(f"relative permittivity must be >= 1, got {permittivity}")
    s = math.sin(grazing_angle)
    root = complex(permittivity - math.cos(grazing_angle) ** 2) ** 0.5
    if polarization == "perpendicular":
        num, den = s - root, s + root
    elif polarization == "parallel":
        num, den = permittivity * s - root, permittivity * s + root
    else:
        raise DomainError(f"unknown polarization '{polarization}'")
    if den == 0:
        # permittivity 1 at grazing incidence
        return complex(-1.0)
    return num / den


def fresnel_parameter(h: float, d1: float, d2: float, wavelength: float) -> float:
    """Fresnel-Kirchhoff parameter ``nu = h * sqrt(2*(d1 + d2) / (lambda*d1*d2))``.

    ``h`` is positive when the edge obstructs the direct line.

    Raises:
        DomainError: If a distance or the wavelength is not positive
    """
    if not (d1 > 0 and d2 > 0 and wavelength > 0):
        raise DomainError("fresnel_parameter needs d1, d2 and wavelength > 0")
    return h * math.sqrt(2.0 * (d1 + d2) / (wavelength * d1 * d2))


@overload
def knife_edge_loss_db(nu: float) -> float: ...


@overload
def knife_edge_loss_db(nu: NDArray[np.float64]) -> NDArray[np.float64]: ...


def knife_edge_loss_db(nu: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
    """Single knife-edge diffraction loss ``J(nu)`` in dB.

    ``J = 6.9 + 20*log10(sqrt((nu - 0.1)**2 + 1) + nu - 0.1)`` for
    ``nu > -0.78`` and 0 otherwise.
    """
    arr = np.asarray(nu, dtype=np.float64)
    shifted = arr - 0.1
    with np.errstate(divide="ignore", invalid="ignore"):
        loss = 6.9 + 20.0 * np.log10(np.sqrt(shifted**2 + 1.0) + shifted)
    loss = np.where(arr > -0.78, loss, 0.0)
    if np.ndim(nu) == 0:
        return float(loss)
    return loss
