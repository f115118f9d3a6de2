"""Exception hierarchy for SDC-Channel.

Every error also derives from the builtin it refines, so callers that only
catch ``ValueError`` keep working.
"""

from typing import Optional


class SdcError(Exception):
    """Base class for all simulator errors."""


class DomainError(SdcError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class DegenerateGeometryError(DomainError):
    """Geometry collapses (point on a plane, receiver on its scatterer)."""


class InfeasibleDelayError(DomainError):
    """Requested path length is shorter than the direct TX-RX distance."""


class GeometryError(SdcError, ValueError):
    """Positioning geometry is singular or underdetermined."""


class ConfigurationError(SdcError, ValueError):
    """Statistical or scenario parameters are invalid."""


class ScenarioError(ConfigurationError):
    """Scenario document failed to parse or validate.

    Attributes:
        problems: ``(key_path, message)`` pairs, one per offending key
    """

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = problems
        lines = [f"{path}: {message}" if path else message for path, message in problems]
        super().__init__("Invalid scenario:\n  " + "\n  ".join(lines))


class DetectionFailure(SdcError):
    """No peak of a correlation profile qualifies as first arriving path."""


class SimulationError(SdcError):
    """Error raised while simulating one link, with link/snapshot context."""

    def __init__(self, message: str, trp_id: str, snapshot: Optional[int] = None):
        self.trp_id = trp_id
        self.snapshot = snapshot
        where = f"trp={trp_id}" if snapshot is None else f"trp={trp_id} snapshot={snapshot}"
        super().__init__(f"{message} ({where})")
