"""Counter-based random stream derivation.

A stream is identified by the scenario seed plus a tuple of integer keys, so
the same (seed, link, segment) always yields the same numbers regardless of
the order or the thread in which links are simulated.
"""

import zlib
from enum import IntEnum

import numpy as np


class StreamPurpose(IntEnum):
    """Disjoint stream families."""

    CLUSTERS = 1
    FIELDS = 2
    NOISE = 3


def text_key(text: str) -> int:
    """Map an identifier (e.g. a TRP id) to a stable non-negative integer."""
    return zlib.crc32(text.encode("utf-8"))


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Return the generator for stream ``(seed, *keys)``.

    Args:
        seed: Scenario seed (non-negative)
        *keys: Non-negative integer stream keys

    Returns:
        Independent numpy Generator
    """
    if seed < 0 or any(k < 0 for k in keys):
        raise ValueError("seed and stream keys must be non-negative")
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(keys)))
