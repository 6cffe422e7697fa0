import logging
import math

import numpy as np

from ..entities.changeCurve import ChangeCurve, Peak, PeakSet, WindowStats
from ..entities.config import ChangeSpaceConfig
from ..entities.segmentBoundaries import SegmentBoundaries
from ..entities.timeSeries import TimeSeries
from ..exceptions import (
    EmptyTrainingSetError,
    KTooLargeError,
    NoValidScaleError,
    OutOfSupportError,
    SegmentCountError,
    UnknownScaleError,
    UnlabeledSeriesError,
)

SALIENCY_EPSILON = 1e-12

# Windows up to this many samples are summed directly; prefix-sum differences
# lose too many digits on short, nearly constant stretches.
DIRECT_WINDOW_LIMIT = 16


def _variance(s1, s2, n):
    # Exact for integer-valued samples, so integer shifts give identical scores.
    return (n * s2 - s1 * s1) / (n * n)


def _centered(series: TimeSeries) -> np.ndarray:
    return series.values - series.values[0]


def window_stats(series: TimeSeries, t: int, delta: int, cfg: ChangeSpaceConfig) -> WindowStats:
    n = len(series)
    if delta < 1 or not delta <= t <= n - delta:
        raise OutOfSupportError(t, delta, n)
    if delta not in cfg.resolved_scales:
        raise UnknownScaleError(delta, cfg.resolved_scales)
    x = _centered(series)
    floor = cfg.variance_floor
    return WindowStats(
        var_left=max(float(np.var(x[t - delta : t])), floor),
        var_right=max(float(np.var(x[t : t + delta])), floor),
        var_pooled=max(float(np.var(x[t - delta : t + delta])), floor),
    )


def _score(var_left, var_right, var_pooled, delta: int, penalty_weight: float):
    return (
        delta * np.log(var_pooled)
        - 0.5 * delta * (np.log(var_left) + np.log(var_right))
        - penalty_weight * delta * math.log(2 * delta)
    )


def tscs_score(series: TimeSeries, t: int, delta: int, cfg: ChangeSpaceConfig) -> float:
    """Pooled-minus-split BIC difference at t; higher means a likelier change."""
    stats = window_stats(series, t, delta, cfg)
    return float(_score(stats.var_left, stats.var_right, stats.var_pooled, delta, cfg.penalty_weight))


def _prefix_sums(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s1 = np.concatenate(([0.0], np.cumsum(x)))
    s2 = np.concatenate(([0.0], np.cumsum(x * x)))
    return s1, s2


def _window_variances(x: np.ndarray, s1, s2, delta: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Left, right and pooled variances for every t in [delta, N - delta]."""
    if 2 * delta <= DIRECT_WINDOW_LIMIT:
        windows = np.lib.stride_tricks.sliding_window_view(x, 2 * delta)
        return windows[:, :delta].var(axis=1), windows[:, delta:].var(axis=1), windows.var(axis=1)
    n = len(x)
    t = np.arange(delta, n - delta + 1)
    left1, left2 = s1[t] - s1[t - delta], s2[t] - s2[t - delta]
    right1, right2 = s1[t + delta] - s1[t], s2[t + delta] - s2[t]
    return (
        _variance(left1, left2, delta),
        _variance(right1, right2, delta),
        _variance(left1 + right1, left2 + right2, 2 * delta),
    )


def _scale_scores(x: np.ndarray, s1, s2, delta: int, cfg: ChangeSpaceConfig) -> np.ndarray:
    floor = cfg.variance_floor
    var_left, var_right, var_pooled = (np.maximum(v, floor) for v in _window_variances(x, s1, s2, delta))
    return _score(var_left, var_right, var_pooled, delta, cfg.penalty_weight)


def tscs_curve(series: TimeSeries, delta: int, cfg: ChangeSpaceConfig) -> ChangeCurve:
    """Single-scale change curve with support [delta, N - delta]."""
    n = len(series)
    if 2 * delta > n:
        raise NoValidScaleError(n, delta)
    x = _centered(series)
    s1, s2 = _prefix_sums(x)
    scores = np.zeros(n)
    counts = np.zeros(n, dtype=np.int64)
    scores[delta : n - delta + 1] = _scale_scores(x, s1, s2, delta, cfg)
    counts[delta : n - delta + 1] = 1
    return ChangeCurve(scores=scores, support=(delta, n - delta), scale_count=counts)


def ms_tscs_curve(series: TimeSeries, cfg: ChangeSpaceConfig) -> ChangeCurve:
    """Sum of the single-scale curves over every scale that fits the series."""
    n = len(series)
    scales = cfg.valid_scales(n)
    if not scales:
        raise NoValidScaleError(n, min(cfg.resolved_scales))

    x = _centered(series)
    s1, s2 = _prefix_sums(x)
    scores = np.zeros(n)
    counts = np.zeros(n, dtype=np.int64)
    for delta in scales:
        scores[delta : n - delta + 1] += _scale_scores(x, s1, s2, delta, cfg)
        counts[delta : n - delta + 1] += 1
    smallest = scales[0]
    logging.debug(f"Change curve for '{series.id}' over {len(scales)} scales, support [{smallest}, {n - smallest}]")
    return ChangeCurve(scores=scores, support=(smallest, n - smallest), scale_count=counts)


def smooth_curve(curve: ChangeCurve, cfg: ChangeSpaceConfig) -> ChangeCurve:
    """Centered moving average over the support; the support shrinks by half a window per side."""
    lo, hi = curve.support
    length = curve.support_length
    window = min(cfg.smoothing_window, length if length % 2 == 1 else length - 1)
    if window <= 1 or length == 0:
        return curve

    half = (window - 1) // 2
    smoothed = np.convolve(curve.scores[lo : hi + 1], np.ones(window) / window, mode="valid")
    scores = np.zeros(len(curve))
    scores[lo + half : hi - half + 1] = smoothed
    return ChangeCurve(scores=scores, support=(lo + half, hi - half), scale_count=curve.scale_count)


def _plateau_maxima(values: np.ndarray) -> list[int]:
    """Leftmost index of every run that is strictly higher than both adjacent runs."""
    n = len(values)
    starts = [0] + [i for i in range(1, n) if values[i] != values[i - 1]]
    candidates = []
    for k, start in enumerate(starts):
        end = starts[k + 1] - 1 if k + 1 < len(starts) else n - 1
        if start == 0 and end == n - 1:
            continue
        left_ok = start == 0 or values[start - 1] < values[start]
        right_ok = end == n - 1 or values[end + 1] < values[start]
        if left_ok and right_ok:
            candidates.append(start)
    return candidates


def detect_peaks(curve: ChangeCurve, cfg: ChangeSpaceConfig) -> PeakSet:
    lo, hi = curve.support
    if curve.support_length < 2:
        return PeakSet()

    values = curve.scores[lo : hi + 1]
    radius = cfg.saliency_window
    peaks = []
    for offset in _plateau_maxima(values):
        window = np.concatenate(
            (values[max(0, offset - radius) : offset], values[offset + 1 : offset + radius + 1])
        )
        if window.size == 0:
            continue
        score = float(values[offset])
        mean, std = float(np.mean(window)), float(np.std(window))
        if score > mean + cfg.saliency_sigma * std:
            saliency = (score - mean) / max(std, SALIENCY_EPSILON)
            peaks.append(Peak(index=lo + offset, score=score, saliency=saliency))

    peaks.sort(key=lambda peak: (-peak.saliency, peak.index))
    return PeakSet(peaks=tuple(peaks))


def change_peaks(series: TimeSeries, cfg: ChangeSpaceConfig) -> PeakSet:
    """Multi-scale curve, low-pass filter and saliency rule in one call."""
    return detect_peaks(smooth_curve(ms_tscs_curve(series, cfg), cfg), cfg)


def aggregate_segment_counts(counts: list[int], labels: list[int], cfg: ChangeSpaceConfig) -> int:
    """Dataset-level K from per-series component counts (a count of 1 means peakless)."""
    if not counts:
        raise EmptyTrainingSetError()

    peakless = sum(1 for count in counts if count <= 1) / len(counts)
    if peakless > cfg.peakless_fraction:
        logging.info(f"{peakless:.0%} of series have no salient peak, using {cfg.fallback_segment_count} segments")
        return cfg.fallback_segment_count

    by_class: dict[int, list[int]] = {}
    for count, label in zip(counts, labels):
        by_class.setdefault(label, []).append(count)
    class_means = [sum(members) / len(members) for _, members in sorted(by_class.items())]
    average = sum(class_means) / len(class_means)
    k = min(cfg.max_segment_count, max(2, math.floor(average + 0.5)))
    logging.info(f"Selected {k} segments from class means {[round(m, 3) for m in class_means]}")
    return k


def select_segment_count(train: list[TimeSeries], cfg: ChangeSpaceConfig) -> int:
    if not train:
        raise EmptyTrainingSetError()
    counts, labels = [], []
    for series in train:
        if series.label is None:
            raise UnlabeledSeriesError(series.id)
        try:
            count = len(change_peaks(series, cfg)) + 1
        except NoValidScaleError:
            logging.warning(f"Series '{series.id}' of length {len(series)} is shorter than every scale, counted as peakless")
            count = 1
        counts.append(count)
        labels.append(series.label)
    return aggregate_segment_counts(counts, labels, cfg)


def _check_segment_count(k: int, length: int, max_count: int = 50) -> None:
    if k < 2 or k > max_count:
        raise SegmentCountError(k, f"segment count must lie in [2, {max_count}]")
    if k > length:
        raise KTooLargeError(k, length)


def uniform_boundaries(length: int, k: int) -> SegmentBoundaries:
    """K equal segments; cut j sits at the nearest integer to j*N/K (halves round up)."""
    if k > length:
        raise KTooLargeError(k, length)
    cuts = tuple((2 * j * length + k) // (2 * k) for j in range(1, k))
    return SegmentBoundaries(cuts=cuts, length=length)


def boundaries_from_peaks(peaks: PeakSet, length: int, k: int, max_count: int = 50) -> SegmentBoundaries:
    """Top K-1 peaks as cuts, topped up from the uniform grid and then by halving the longest segment."""
    _check_segment_count(k, length, max_count)
    cuts = [peak.index for peak in list(peaks)[: k - 1]]

    for j in range(1, k):
        if len(cuts) == k - 1:
            break
        grid = (2 * j * length + k) // (2 * k)
        if 0 < grid < length and all(abs(grid - cut) > 1 for cut in cuts):
            cuts.append(grid)

    while len(cuts) < k - 1:
        edges = [0, *sorted(cuts), length]
        start, end = max(zip(edges[:-1], edges[1:]), key=lambda pair: pair[1] - pair[0])
        cuts.append(start + (end - start) // 2)

    return SegmentBoundaries(cuts=tuple(sorted(cuts)), length=length)


def segment_series(series: TimeSeries, k: int, cfg: ChangeSpaceConfig) -> SegmentBoundaries:
    _check_segment_count(k, len(series), cfg.max_segment_count)
    try:
        peaks = change_peaks(series, cfg)
    except NoValidScaleError:
        logging.warning(f"Series '{series.id}' is shorter than every scale, splitting it uniformly")
        peaks = PeakSet()
    return boundaries_from_peaks(peaks, len(series), k, cfg.max_segment_count)


def cuts_from_peaks(peaks: PeakSet, length: int, max_count: int = 50) -> SegmentBoundaries:
    """Every peak becomes a cut, most salient first, up to max_count segments."""
    cuts = sorted(peak.index for peak in list(peaks)[: max_count - 1])
    return SegmentBoundaries(cuts=tuple(cuts), length=length)


def segment_by_peaks(series: TimeSeries, cfg: ChangeSpaceConfig) -> SegmentBoundaries:
    return cuts_from_peaks(change_peaks(series, cfg), len(series), cfg.max_segment_count)
