"""Per-snapshot channel: deterministic paths plus vectorised random sub-paths."""

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any, Iterator

import numpy as np
from numpy.typing import NDArray

from ..clusters.types import LinkId, PathKind, ResolvedPath
from ..geometry import Vec3


@dataclass(frozen=True, eq=False)
class RandomPathBlock:
    """Random sub-paths of one drifting segment at one snapshot."""

    path_index: NDArray[np.int64]
    subpath_index: NDArray[np.int64]
    fbs: NDArray[np.float64]
    lbs: NDArray[np.float64]
    delays: NDArray[np.float64]
    amplitudes: NDArray[np.complex128]
    blocked: NDArray[np.bool_]

    def scaled(self, factor: float) -> "RandomPathBlock":
        """Copy with amplitudes multiplied by ``factor``."""
        return replace(self, amplitudes=self.amplitudes * factor)

    def __len__(self) -> int:
        return int(self.delays.shape[0])


@dataclass(frozen=True, eq=False)
class SnapshotChannel:
    """All paths of one link at one snapshot.

    Holds exactly one LOS path and at most one GR path. Array views
    (``delays``, ``amplitudes``, ...) list deterministic paths first, then the
    random blocks in order.
    """

    link: LinkId
    snapshot: int
    tx: Vec3
    rx: Vec3
    deterministic: tuple[ResolvedPath, ...]
    random: tuple[RandomPathBlock, ...] = ()

    def __post_init__(self) -> None:
        kinds = [p.kind for p in self.deterministic]
        if kinds.count(PathKind.LOS) != 1:
            raise ValueError("a snapshot channel holds exactly one LOS path")
        if kinds.count(PathKind.GR) > 1:
            raise ValueError("a snapshot channel holds at most one GR path")

    def __len__(self) -> int:
        return len(self.deterministic) + sum(len(b) for b in self.random)

    def _stack(self, attr: str, det: list[object], dtype: type) -> NDArray[Any]:
        parts = [np.asarray(det, dtype=dtype)] + [getattr(b, attr) for b in self.random]
        return np.concatenate(parts)

    @cached_property
    def delays(self) -> NDArray[np.float64]:
        return self._stack("delays", [p.delay for p in self.deterministic], np.float64)

    @cached_property
    def amplitudes(self) -> NDArray[np.complex128]:
        return self._stack("amplitudes", [p.amplitude for p in self.deterministic], np.complex128)

    @cached_property
    def blocked(self) -> NDArray[np.bool_]:
        return self._stack("blocked", [p.blocked for p in self.deterministic], np.bool_)

    @cached_property
    def path_index(self) -> NDArray[np.int64]:
        return self._stack("path_index", [p.path_index for p in self.deterministic], np.int64)

    @cached_property
    def subpath_index(self) -> NDArray[np.int64]:
        return self._stack(
            "subpath_index", [p.subpath_index for p in self.deterministic], np.int64
        )

    @cached_property
    def kinds(self) -> tuple[PathKind, ...]:
        n_random = len(self) - len(self.deterministic)
        return tuple(p.kind for p in self.deterministic) + (PathKind.RANDOM,) * n_random

    @cached_property
    def origins(self) -> tuple[str, ...]:
        n_random = len(self) - len(self.deterministic)
        return tuple(p.origin for p in self.deterministic) + ("random",) * n_random

    @property
    def los(self) -> ResolvedPath:
        return next(p for p in self.deterministic if p.kind is PathKind.LOS)

    @property
    def los_blocked(self) -> bool:
        """OLOS flag: the obstacle intersects the LOS path."""
        return self.los.blocked

    def cluster_count(self) -> int:
        """Number of distinct clusters (paths counted once over their sub-paths)."""
        return int(np.unique(self.path_index).size)

    def paths(self) -> Iterator[ResolvedPath]:
        """Iterate all paths, materializing random sub-paths as ``ResolvedPath``."""
        yield from self.deterministic
        for block in self.random:
            for i in range(len(block)):
                yield ResolvedPath(
                    link=self.link,
                    path_index=int(block.path_index[i]),
                    subpath_index=int(block.subpath_index[i]),
                    snapshot=self.snapshot,
                    kind=PathKind.RANDOM,
                    origin="random",
                    tx=self.tx,
                    rx=self.rx,
                    fbs=block.fbs[i],
                    lbs=block.lbs[i],
                    delay=float(block.delays[i]),
                    amplitude=complex(block.amplitudes[i]),
                    blocked=bool(block.blocked[i]),
                )
