"""Drifting: track segmentation, per-snapshot channels and cross-fading."""

from .channel import RandomPathBlock, SnapshotChannel
from .simulate import (
    LinkSimulator,
    cross_fade,
    scenario_track,
    simulate_link,
    simulate_track,
    update_path,
)
from .track import Segment, Track, build_track

__all__ = [
    "LinkSimulator",
    "RandomPathBlock",
    "Segment",
    "SnapshotChannel",
    "Track",
    "build_track",
    "cross_fade",
    "scenario_track",
    "simulate_link",
    "simulate_track",
    "update_path",
]
