from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True)
class WindowStats:
    """Floored population variances around a candidate change point."""

    var_left: float
    var_right: float
    var_pooled: float


@dataclass(frozen=True, eq=False)
class ChangeCurve:
    """Change score per time index.

    `support` is the inclusive interval [t_lo, t_hi] of valid indices; scores
    outside it are exactly 0. `scale_count[t]` is the number of scales summed at t.
    """

    scores: np.ndarray
    support: tuple[int, int]
    scale_count: np.ndarray

    def __post_init__(self):
        scores = np.array(self.scores, dtype=np.float64, copy=True)
        counts = np.array(self.scale_count, dtype=np.int64, copy=True)
        scores.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "scale_count", counts)
        object.__setattr__(self, "support", (int(self.support[0]), int(self.support[1])))

    def __len__(self) -> int:
        return int(self.scores.shape[0])

    @property
    def valid(self) -> np.ndarray:
        mask = np.zeros(len(self), dtype=bool)
        lo, hi = self.support
        if lo <= hi:
            mask[lo : hi + 1] = True
        return mask

    @property
    def support_length(self) -> int:
        lo, hi = self.support
        return max(0, hi - lo + 1)


class Peak(NamedTuple):
    index: int
    score: float
    saliency: float


@dataclass(frozen=True)
class PeakSet:
    """Salient peaks sorted by descending saliency, then ascending index."""

    peaks: tuple[Peak, ...] = ()

    def __len__(self) -> int:
        return len(self.peaks)

    def __iter__(self):
        return iter(self.peaks)

    @property
    def indices(self) -> list[int]:
        return [peak.index for peak in self.peaks]
