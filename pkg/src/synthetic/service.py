import logging
from pathlib import Path
from typing import NamedTuple

import numpy as np

from ..entities.segmentBoundaries import SegmentBoundaries
from ..entities.timeSeries import TimeSeries
from ..ingestion.service import write_archive_file, write_boundary_file
from .models import SegmentSpec, SyntheticSpec

# Both classes use the same three levels, so every series has the same expected
# global mean; only the order of the components tells them apart.
CLASS_MEANS = {0: (0.0, 4.0, 8.0), 1: (8.0, 4.0, 0.0)}


class SyntheticSuite(NamedTuple):
    train: list[TimeSeries]
    test: list[TimeSeries]
    train_boundaries: list[SegmentBoundaries]
    test_boundaries: list[SegmentBoundaries]


def generate(spec: SyntheticSpec) -> tuple[TimeSeries, SegmentBoundaries]:
    """Piecewise Gaussian series and its exact change points."""
    rng = np.random.default_rng(spec.seed)
    lengths = [segment.length for segment in spec.segments]
    nominal = np.cumsum(lengths)[:-1]
    if spec.jitter and len(nominal):
        nominal = nominal + rng.integers(-spec.jitter, spec.jitter + 1, size=len(nominal))

    edges = [0, *(int(c) for c in nominal), spec.length]
    values = np.concatenate(
        [
            rng.normal(segment.mean, segment.std, size=end - start)
            for segment, start, end in zip(spec.segments, edges[:-1], edges[1:])
        ]
    )
    series = TimeSeries(values=values, label=spec.label, id=f"synthetic:{spec.seed}", meta={"raw_label": spec.label})
    return series, SegmentBoundaries(cuts=tuple(edges[1:-1]), length=spec.length)


def _split(seed: int, split: int, size: int, length: int, jitter: int):
    seeds = np.random.SeedSequence([seed, split]).generate_state(size)
    segment_length = length // 3
    series, boundaries = [], []
    for index in range(size):
        label = index % 2
        spec = SyntheticSpec(
            segments=[SegmentSpec(length=segment_length, mean=mean, std=1.0) for mean in CLASS_MEANS[label]],
            seed=int(seeds[index]),
            label=label,
            jitter=jitter,
        )
        s, b = generate(spec)
        series.append(TimeSeries(values=s.values, label=label, id=f"{('train', 'test')[split]}:{index}", meta=s.meta))
        boundaries.append(b)
    return series, boundaries


def make_classification_suite(seed: int = 0, size: int = 100, length: int = 600, jitter: int = 20) -> SyntheticSuite:
    """Two balanced classes that share components and differ only in their order."""
    train, train_boundaries = _split(seed, 0, size, length, jitter)
    test, test_boundaries = _split(seed, 1, size, length, jitter)
    logging.info(f"Generated synthetic suite with {len(train)} train and {len(test)} test series")
    return SyntheticSuite(train, test, train_boundaries, test_boundaries)


def write_suite(suite: SyntheticSuite, directory: str | Path) -> dict[str, Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "train": write_archive_file(suite.train, directory / "train.tsv"),
        "test": write_archive_file(suite.test, directory / "test.tsv"),
        "train_gt": write_boundary_file(
            [b.cuts for b in suite.train_boundaries], [s.label for s in suite.train], directory / "train_gt.tsv"
        ),
        "test_gt": write_boundary_file(
            [b.cuts for b in suite.test_boundaries], [s.label for s in suite.test], directory / "test_gt.tsv"
        ),
    }
    return paths
