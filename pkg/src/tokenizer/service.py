import logging
import math
from collections.abc import Sequence

import numpy as np

from ..changeSpace.service import segment_series, uniform_boundaries
from ..entities.componentSequence import ComponentSequence, MaskPlan
from ..entities.config import ChangeSpaceConfig
from ..entities.enums import SegmentationMode
from ..entities.segmentBoundaries import SegmentBoundaries
from ..entities.timeSeries import TimeSeries
from ..exceptions import MaskIndexError, PartitionMismatchError, SegmentTooLongError


def tokenize(series: TimeSeries, boundaries: SegmentBoundaries, padded_length: int) -> ComponentSequence:
    """Slice the series at the cuts and right-pad every component with zeros."""
    if boundaries.length != len(series):
        raise PartitionMismatchError(f"boundaries cover {boundaries.length} samples, series has {len(series)}")
    segments = boundaries.segments()
    tokens = np.zeros((len(segments), padded_length))
    lengths = []
    for index, (start, end) in enumerate(segments):
        if end - start > padded_length:
            raise SegmentTooLongError(index, end - start, padded_length)
        tokens[index, : end - start] = series.values[start:end]
        lengths.append(end - start)
    return ComponentSequence(tokens=tokens, true_lengths=tuple(lengths))


def padded_length(boundaries: Sequence[SegmentBoundaries]) -> int:
    """Longest segment over a whole dataset."""
    return max(max(b.segment_lengths()) for b in boundaries)


def segment_dataset(
    series: Sequence[TimeSeries],
    k: int,
    cfg: ChangeSpaceConfig,
    mode: SegmentationMode = SegmentationMode.CHANGE_SPACE,
) -> list[SegmentBoundaries]:
    if SegmentationMode(mode) == SegmentationMode.UNIFORM:
        boundaries = [uniform_boundaries(len(s), k) for s in series]
    else:
        boundaries = [segment_series(s, k, cfg) for s in series]
    logging.info(f"Segmented {len(series)} series into {k} components ({SegmentationMode(mode).value})")
    return boundaries


def tokenize_dataset(
    series: Sequence[TimeSeries], boundaries: Sequence[SegmentBoundaries], length: int
) -> list[ComponentSequence]:
    return [tokenize(s, b, length) for s, b in zip(series, boundaries)]


def mask_size(k: int, ratio: float) -> int:
    return max(1, math.floor(ratio * k))


def plan_mask(k: int, ratio: float, rng_seed: int | Sequence[int]) -> MaskPlan:
    """Pick the components to hide; interior positions only once K >= 3."""
    if k < 2:
        raise ValueError(f"masking needs at least 2 components, got {k}")
    pool = np.arange(1, k - 1) if k >= 3 else np.array([0])
    count = min(mask_size(k, ratio), len(pool))
    rng = np.random.default_rng(rng_seed)
    chosen = rng.choice(pool, size=count, replace=False)
    return MaskPlan(masked_indices=tuple(sorted(int(i) for i in chosen)), mask_ratio=ratio)


def _check_plan(sequence: ComponentSequence, plan: MaskPlan) -> None:
    for index in plan.masked_indices:
        if not 0 <= index < sequence.K:
            raise MaskIndexError(index, sequence.K)


def apply_mask(sequence: ComponentSequence, plan: MaskPlan) -> ComponentSequence:
    _check_plan(sequence, plan)
    tokens = sequence.tokens.copy()
    tokens[list(plan.masked_indices)] = 0.0
    return ComponentSequence(tokens=tokens, true_lengths=sequence.true_lengths)


def mask_targets(sequence: ComponentSequence, plan: MaskPlan) -> np.ndarray:
    """Original tokens at the masked positions, in plan order."""
    _check_plan(sequence, plan)
    return sequence.tokens[list(plan.masked_indices)].copy()
