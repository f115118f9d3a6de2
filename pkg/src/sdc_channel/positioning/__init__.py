"""Positioning evaluation: TOA least squares and error statistics."""

from .evaluate import PositionTrack, solve_track
from .report import ErrorReport, ErrorStats, error_report
from .solver import PositionFix, RangeSet, ls_position

__all__ = [
    "ErrorReport",
    "ErrorStats",
    "PositionFix",
    "PositionTrack",
    "RangeSet",
    "error_report",
    "ls_position",
    "solve_track",
]
