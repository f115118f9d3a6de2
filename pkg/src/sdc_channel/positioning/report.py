"""Positioning error statistics."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..errors import DomainError


@dataclass(frozen=True)
class ErrorStats:
    count: int
    median: float
    p90: float

    @classmethod
    def of(cls, errors: NDArray[np.float64]) -> Optional["ErrorStats"]:
        if errors.size == 0:
            return None
        return cls(
            count=int(errors.size),
            median=float(np.median(errors)),
            p90=float(np.percentile(errors, 90)),
        )


@dataclass(frozen=True, eq=False)
class ErrorReport:
    """Per-snapshot errors with overall, fully-LOS and OLOS summaries."""

    errors: NDArray[np.float64]
    overall: ErrorStats
    los: Optional[ErrorStats]
    olos: Optional[ErrorStats]

    @property
    def median(self) -> float:
        return self.overall.median

    @property
    def p90(self) -> float:
        return self.overall.p90


def error_report(
    estimates: NDArray[np.float64],
    truth: NDArray[np.float64],
    olos: Optional[NDArray[np.bool_]] = None,
) -> ErrorReport:
    """Summarize position errors.

    Args:
        estimates: Estimated positions, shape ``(S, 3)``
        truth: True positions, shape ``(S, 3)`` or ``(3,)``
        olos: Whether any contributing link was OLOS, per estimate

    Returns:
        Error report; NaN estimates are excluded from the statistics
    """
    estimates = np.atleast_2d(np.asarray(estimates, dtype=np.float64))
    if estimates.shape[0] < 1:
        raise DomainError("error report needs at least one estimate")
    errors = np.linalg.norm(estimates - np.asarray(truth, dtype=np.float64), axis=-1)
    flags = np.zeros(errors.shape, dtype=bool) if olos is None else np.asarray(olos, dtype=bool)
    valid = np.isfinite(errors)
    overall = ErrorStats.of(errors[valid])
    if overall is None:
        raise DomainError("no finite position estimate to report")
    return ErrorReport(
        errors=errors,
        overall=overall,
        los=ErrorStats.of(errors[valid & ~flags]),
        olos=ErrorStats.of(errors[valid & flags]),
    )
