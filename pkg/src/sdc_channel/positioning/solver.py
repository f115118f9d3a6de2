"""Time-of-arrival trilateration by Gauss-Newton least squares."""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from ..errors import GeometryError
from ..geometry import Vec3, vec3
from ..utils import get_logger

logger = get_logger(__name__)

STEP_TOLERANCE_M = 1e-6
MAX_ITERATIONS = 50
# Normal equations with a larger condition number count as singular
MAX_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class RangeSet:
    """Pseudo-ranges from several TRPs to one UE position.

    Attributes:
        trp_ids: TRP identifiers
        positions: TRP positions, shape ``(K, 3)``
        ranges: Estimated ranges in meters, shape ``(K,)``
        olos: Whether each link's LOS was obstructed, shape ``(K,)``
    """

    trp_ids: tuple[str, ...]
    positions: NDArray[np.float64]
    ranges: NDArray[np.float64]
    olos: NDArray[np.bool_]

    def __post_init__(self) -> None:
        k = len(self.trp_ids)
        if self.positions.shape != (k, 3) or self.ranges.shape != (k,) or self.olos.shape != (k,):
            raise GeometryError("range set arrays must agree with the TRP list")
        if not np.all(np.isfinite(self.ranges)) or np.any(self.ranges <= 0):
            raise GeometryError("ranges must be finite and > 0")

    @classmethod
    def build(
        cls,
        trp_ids: Sequence[str],
        positions: Sequence[Sequence[float]],
        ranges: Sequence[float],
        olos: Optional[Sequence[bool]] = None,
    ) -> "RangeSet":
        """Build from plain sequences; ``olos`` defaults to all False."""
        return cls(
            trp_ids=tuple(trp_ids),
            positions=np.asarray(positions, dtype=np.float64).reshape(-1, 3),
            ranges=np.asarray(ranges, dtype=np.float64),
            olos=np.zeros(len(trp_ids), dtype=bool) if olos is None else np.asarray(olos, bool),
        )

    def __len__(self) -> int:
        return len(self.trp_ids)

    @property
    def any_olos(self) -> bool:
        return bool(self.olos.any())


@dataclass(frozen=True, eq=False)
class PositionFix:
    """Least-squares position estimate."""

    position: Vec3
    residual_rms: float
    iterations: int
    converged: bool


def _cost(
    x: NDArray[np.float64], positions: NDArray[np.float64], ranges: NDArray[np.float64]
) -> float:
    return float(np.sum((np.linalg.norm(x - positions, axis=1) - ranges) ** 2))


def ls_position(
    ranges: RangeSet,
    initial_guess: Optional[Vec3] = None,
    *,
    fixed_height: Optional[float] = None,
    max_iterations: int = MAX_ITERATIONS,
    step_tolerance: float = STEP_TOLERANCE_M,
) -> PositionFix:
    """Minimize ``sum(|p - TRP_i| - r_i)^2`` by Gauss-Newton.

    Args:
        ranges: TRP positions and pseudo-ranges
        initial_guess: Starting point (default: TRP centroid)
        fixed_height: Known UE height; solves for x/y only (needs 3 TRPs)
        max_iterations: Iteration cap
        step_tolerance: Convergence threshold on the step norm, meters

    Returns:
        Best iterate with its residual RMS; ``converged`` is False when the
        iteration cap was hit

    Raises:
        GeometryError: On too few TRPs, coplanar TRPs in 3D mode, or
            singular normal equations
    """
    positions, r = ranges.positions, ranges.ranges
    dims = 3 if fixed_height is None else 2
    needed = dims + 1
    if len(ranges) < needed:
        raise GeometryError(f"{dims}D positioning needs at least {needed} TRPs, got {len(ranges)}")
    if dims == 3:
        singular_values = np.linalg.svd(positions - positions.mean(axis=0), compute_uv=False)
        if singular_values[-1] <= 1e-9 * max(singular_values[0], 1.0):
            raise GeometryError("TRPs are coplanar; use the height-constrained mode")

    x = vec3(initial_guess) if initial_guess is not None else positions.mean(axis=0)
    if fixed_height is not None:
        x = np.array([x[0], x[1], fixed_height])

    best, best_cost = x.copy(), _cost(x, positions, r)
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        diff = x - positions
        dist = np.linalg.norm(diff, axis=1)
        if np.any(dist == 0.0):
            raise GeometryError("iterate coincides with a TRP position")
        jacobian = (diff / dist[:, None])[:, :dims]
        normal = jacobian.T @ jacobian
        if np.linalg.cond(normal) > MAX_CONDITION:
            raise GeometryError("normal equations are singular for this TRP geometry")
        step = np.linalg.solve(normal, -jacobian.T @ (dist - r))
        x = x.copy()
        x[:dims] += step
        cost = _cost(x, positions, r)
        if cost < best_cost:
            best, best_cost = x.copy(), cost
        if np.linalg.norm(step) < step_tolerance:
            converged = True
            break

    if not converged:
        logger.warning("Position solve did not converge", iterations=iterations, residual=best_cost)
    return PositionFix(
        position=best,
        residual_rms=float(np.sqrt(best_cost / len(ranges))),
        iterations=iterations,
        converged=converged,
    )
