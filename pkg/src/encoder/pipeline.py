import numpy as np

from ..entities.componentSequence import ComponentSequence
from ..entities.timeSeries import TimeSeries, validate_series
from ..ingestion.service import normalize_all
from ..tokenizer.service import segment_dataset, tokenize
from .checkpoint import Checkpoint
from .service import classify


def tokenize_for_checkpoint(checkpoint: Checkpoint, series: TimeSeries) -> ComponentSequence:
    """Normalize, segment and pad a new series exactly as the training data was."""
    series = normalize_all([validate_series(series)], checkpoint.normalize)[0]
    boundaries = segment_dataset(
        [series], checkpoint.segment_count, checkpoint.change_space, checkpoint.segmentation
    )[0]
    return tokenize(series, boundaries, checkpoint.padded_length)


def classify_series(checkpoint: Checkpoint, series: TimeSeries) -> tuple[int, int, np.ndarray]:
    """(internal class, raw archive label, class probabilities) for one series."""
    label, probabilities = classify(checkpoint.params, tokenize_for_checkpoint(checkpoint, series))
    return label, checkpoint.raw_label(label), probabilities
