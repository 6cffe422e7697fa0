import logging
import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from ..entities.segmentBoundaries import SegmentBoundaries
from ..entities.timeSeries import TimeSeries
from ..exceptions import EmptyInputError, LengthMismatchError, PartitionMismatchError


class SegmentationResult(NamedTuple):
    predicted: SegmentBoundaries
    ground_truth: SegmentBoundaries
    covering: float


class Summary(NamedTuple):
    mean: float
    std: float
    table: list[tuple[str, float]]


def _overlap(a: tuple[int, int], b: tuple[int, int]) -> int:
    return max(0, min(a[1], b[1]) - max(a[0], b[0]))


def covering_score(ground_truth: SegmentBoundaries, predicted: SegmentBoundaries, length: int) -> float:
    """Length-weighted best interval Jaccard of each ground-truth segment against the prediction."""
    for name, partition in (("ground truth", ground_truth), ("prediction", predicted)):
        if partition.length != length:
            raise PartitionMismatchError(f"{name} covers {partition.length} samples, expected {length}")

    predicted_segments = predicted.segments()
    total = 0.0
    for a in ground_truth.segments():
        best = 0.0
        for b in predicted_segments:
            intersection = _overlap(a, b)
            if intersection:
                union = (a[1] - a[0]) + (b[1] - b[0]) - intersection
                best = max(best, intersection / union)
        total += (a[1] - a[0]) * best
    return total / length


def evaluate_segmentation(ground_truth: SegmentBoundaries, predicted: SegmentBoundaries) -> SegmentationResult:
    return SegmentationResult(predicted, ground_truth, covering_score(ground_truth, predicted, ground_truth.length))


def accuracy(predictions: Sequence[int], labels: Sequence[int]) -> float:
    if len(predictions) != len(labels):
        raise LengthMismatchError(len(predictions), len(labels))
    if not len(labels):
        raise EmptyInputError("prediction list")
    return sum(int(p) == int(y) for p, y in zip(predictions, labels)) / len(labels)


def summarize(per_dataset: Sequence[tuple[str, float]]) -> Summary:
    """Mean and population standard deviation, table sorted by name."""
    if not per_dataset:
        raise EmptyInputError("metric list")
    values = np.array([value for _, value in per_dataset], dtype=np.float64)
    return Summary(
        mean=float(values.mean()),
        std=float(values.std()),
        table=sorted(((name, float(value)) for name, value in per_dataset), key=lambda row: row[0]),
    )


def global_mean_threshold_baseline(train: Sequence[TimeSeries], test: Sequence[TimeSeries]) -> float:
    """Accuracy of thresholding each series' global mean halfway between two class means."""
    def global_mean(series: TimeSeries) -> float:
        return round(float(series.values.mean()), 9)

    classes = sorted({s.label for s in train})
    if len(classes) != 2:
        raise ValueError(f"the mean-threshold baseline needs exactly 2 classes, got {len(classes)}")
    low, high = (float(np.mean([global_mean(s) for s in train if s.label == c])) for c in classes)
    threshold = (low + high) / 2
    below, above = (classes[0], classes[1]) if low <= high else (classes[1], classes[0])

    predictions = []
    for s in test:
        value = global_mean(s)
        if math.isclose(value, threshold, abs_tol=1e-12) or low == high:
            predictions.append(classes[0])
        else:
            predictions.append(below if value < threshold else above)
    score = accuracy(predictions, [s.label for s in test])
    logging.info(f"Global mean threshold baseline accuracy {score:.4f}")
    return score
