"""Spatially correlated Gaussian fields.

Each field is a sum of ``K`` sinusoids, ``sqrt(2/K) * sum_k cos(k_k . p + phi_k)``,
with uniform phases and wavevectors ``k = z / (d_corr * |g|)`` where ``z`` is
a standard normal 3-vector and ``g`` a standard normal scalar. That
wavevector law is a 3D Cauchy distribution, whose characteristic function
gives the exponential autocorrelation ``exp(-|delta| / d_corr)``. The field
is unit variance and tends to Gaussian as ``K`` grows.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from ..errors import DomainError
from ..utils.seeding import StreamPurpose, stream


@dataclass(frozen=True)
class CorrelatedField:
    """A bank of ``size`` independent correlated fields over 3D space.

    The realization is fixed by ``(seed, keys)``; sampling the same position
    always returns the same values.
    """

    seed: int
    decorrelation_distance: float
    keys: tuple[int, ...] = ()
    sinusoids: int = 64
    size: int = 1
    _draw: tuple[NDArray[np.float64], NDArray[np.float64]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not self.decorrelation_distance > 0:
            raise DomainError("decorrelation_distance must be > 0")
        if self.sinusoids < 1 or self.size < 1:
            raise DomainError("sinusoids and size must be >= 1")
        rng = stream(self.seed, StreamPurpose.FIELDS, *self.keys)
        z = rng.standard_normal((self.size, self.sinusoids, 3))
        g = np.abs(rng.standard_normal((self.size, self.sinusoids, 1)))
        g = np.maximum(g, np.finfo(np.float64).tiny)
        wavevectors = z / (self.decorrelation_distance * g)
        phases = rng.uniform(0.0, 2.0 * np.pi, (self.size, self.sinusoids))
        object.__setattr__(self, "_draw", (wavevectors, phases))

    def sample(self, position: NDArray[np.float64]) -> NDArray[np.float64]:
        """Field values at ``position``, shape ``(size,)``."""
        wavevectors, phases = self._draw
        arg = wavevectors @ np.asarray(position, dtype=np.float64) + phases
        return np.sqrt(2.0 / self.sinusoids) * np.cos(arg).sum(axis=-1)


def correlated_gaussian(
    field_seed: int,
    position: NDArray[np.float64],
    decorrelation_distance: float,
    *,
    keys: tuple[int, ...] = (),
    sinusoids: int = 64,
) -> float:
    """Sample one unit-variance correlated field at ``position``."""
    bank = CorrelatedField(
        seed=field_seed,
        decorrelation_distance=decorrelation_distance,
        keys=keys,
        sinusoids=sinusoids,
    )
    return float(bank.sample(position)[0])
