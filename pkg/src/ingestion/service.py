import logging
import math
from pathlib import Path
from typing import NamedTuple

import numpy as np

from ..entities.enums import Normalization
from ..entities.timeSeries import TimeSeries
from ..exceptions import (
    EmptyFileError,
    MissingFileError,
    ParseError,
    TooFewSeriesError,
    UnlabeledSeriesError,
)


class Archive(NamedTuple):
    series: list[TimeSeries]
    label_map: dict[int, int]
    ragged: bool


def _read_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            lines.append((number, line.strip()))
    return lines


def _detect_delimiter(first_line: str) -> str:
    return "\t" if "\t" in first_line else ","


def _split(line: str, delimiter: str) -> list[str]:
    fields = [field.strip() for field in line.split(delimiter)]
    while fields and fields[-1] == "":
        fields.pop()
    return fields


def _parse_label(field: str, number: int) -> int:
    try:
        value = float(field)
    except ValueError:
        raise ParseError(number, 1, f"non-numeric label '{field}'")
    if not math.isfinite(value) or value != int(value):
        raise ParseError(number, 1, f"label '{field}' is not an integer")
    return int(value)


def _parse_samples(fields: list[str], number: int) -> np.ndarray:
    values = np.empty(len(fields), dtype=np.float64)
    for offset, field in enumerate(fields):
        column = offset + 2
        if field == "":
            raise ParseError(number, column, "empty field")
        try:
            values[offset] = float(field)
        except ValueError:
            raise ParseError(number, column, f"non-numeric value '{field}'")
        if not math.isfinite(values[offset]):
            raise ParseError(number, column, f"non-finite value '{field}'")
    return values


def parse_archive_text(text: str, name: str = "archive", label_map: dict[int, int] | None = None) -> Archive:
    """Parse one archive file: one series per line, label first.

    Raw labels are remapped to 0..C-1 in first-appearance order. A mapping
    from a previous file (the train split) is extended for unseen labels.
    """
    lines = _read_lines(text)
    if not lines:
        raise EmptyFileError(name)

    delimiter = _detect_delimiter(lines[0][1])
    mapping = dict(label_map) if label_map else {}
    series = []
    for number, line in lines:
        fields = _split(line, delimiter)
        raw_label = _parse_label(fields[0], number)
        if len(fields) < 3:
            raise ParseError(number, len(fields) + 1, "at least 2 samples are required")
        values = _parse_samples(fields[1:], number)
        if raw_label not in mapping:
            mapping[raw_label] = len(mapping)
            if label_map:
                logging.warning(f"Label {raw_label} on line {number} of {name} was not seen in training data")
        series.append(
            TimeSeries(values=values, label=mapping[raw_label], id=f"{name}:{number}", meta={"raw_label": raw_label})
        )

    lengths = {len(s) for s in series}
    ragged = len(lengths) > 1
    if ragged:
        logging.warning(f"{name} has ragged series lengths between {min(lengths)} and {max(lengths)}")
    logging.info(f"Parsed {len(series)} series with {len(mapping)} labels from {name}")
    return Archive(series=series, label_map=mapping, ragged=ragged)


def _read_text(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data[: e.start].count(b"\n") + 1
        prefix = data[data.rfind(b"\n", 0, e.start) + 1 : e.start]
        column = prefix.count(b"\t") + prefix.count(b",") + 1
        raise ParseError(line, column, f"byte {data[e.start]:#04x} in {path.name} is not UTF-8 text")


def read_archive(path: str | Path, label_map: dict[int, int] | None = None) -> Archive:
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(path)
    return parse_archive_text(_read_text(path), path.stem, label_map)


def parse_archive_file(path: str | Path, label_map: dict[int, int] | None = None) -> list[TimeSeries]:
    return read_archive(path, label_map).series


def parse_boundary_file(path: str | Path) -> list[tuple[int, ...]]:
    """Ground-truth cuts, one line per series in file order; the leading label is ignored."""
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(path)
    lines = _read_lines(_read_text(path))
    if not lines:
        raise EmptyFileError(path)
    delimiter = _detect_delimiter(lines[0][1])
    boundaries = []
    for number, line in lines:
        fields = _split(line, delimiter)
        _parse_label(fields[0], number)
        cuts = []
        for offset, field in enumerate(fields[1:]):
            try:
                value = float(field)
            except ValueError:
                raise ParseError(number, offset + 2, f"non-numeric cut '{field}'")
            if not math.isfinite(value) or value != int(value):
                raise ParseError(number, offset + 2, f"cut '{field}' is not an integer")
            cuts.append(int(value))
        boundaries.append(tuple(cuts))
    return boundaries


def write_archive_file(
    series: list[TimeSeries],
    path: str | Path,
    label_map: dict[int, int] | None = None,
    delimiter: str = "\t",
) -> Path:
    """Emit series in the archive grammar using their raw labels."""
    path = Path(path)
    inverse = {label: raw for raw, label in (label_map or {}).items()}
    lines = []
    for s in series:
        if s.label is None:
            raise UnlabeledSeriesError(s.id)
        raw = s.meta.get("raw_label")
        if raw is None:
            raw = inverse.get(s.label, s.label)
        lines.append(delimiter.join([str(int(raw)), *(repr(float(x)) for x in s.values)]))
    path.write_text("\n".join(lines) + "\n")
    logging.info(f"Wrote {len(series)} series to {path}")
    return path


def write_boundary_file(boundaries: list[tuple[int, ...]], labels: list[int], path: str | Path) -> Path:
    path = Path(path)
    lines = ["\t".join(str(int(v)) for v in (label, *cuts)) for label, cuts in zip(labels, boundaries)]
    path.write_text("\n".join(lines) + "\n")
    return path


def z_normalize(series: TimeSeries) -> TimeSeries:
    values = series.values
    if np.ptp(values) == 0:
        return series.with_values(np.zeros_like(values))
    mean = values.mean()
    std = values.std()
    return series.with_values((values - mean) / std)


def normalize_all(series: list[TimeSeries], mode: Normalization) -> list[TimeSeries]:
    if Normalization(mode) == Normalization.NONE:
        return list(series)
    return [z_normalize(s) for s in series]


def validation_size(n: int, fraction: float) -> int:
    return min(n - 1, max(1, math.floor(fraction * n + 0.5)))


def train_val_split(
    series: list[TimeSeries], fraction: float = 0.05, seed: int = 0
) -> tuple[list[TimeSeries], list[TimeSeries]]:
    """Stratified hold-out split.

    Members of each class are shuffled and spread over [0, 1] by rank, so the
    validation set draws from classes in proportion to their size and never
    takes the last member of a class while other candidates remain.
    """
    n = len(series)
    if n < 2:
        raise TooFewSeriesError(n)
    if not 0 < fraction < 1:
        raise ValueError(f"fraction must lie in (0, 1), got {fraction}")

    rng = np.random.default_rng(seed)
    by_class: dict = {}
    for index, s in enumerate(series):
        by_class.setdefault(s.label, []).append(index)

    keys = []
    for label in sorted(by_class, key=lambda x: (x is None, x)):
        members = by_class[label]
        order = rng.permutation(len(members))
        ties = rng.random(len(members))
        for rank, position in enumerate(order):
            index = members[position]
            is_last = rank == len(members) - 1
            keys.append((is_last, (rank + 0.5) / len(members), float(ties[rank]), index))

    chosen = {key[-1] for key in sorted(keys)[: validation_size(n, fraction)]}
    train = [s for i, s in enumerate(series) if i not in chosen]
    val = [s for i, s in enumerate(series) if i in chosen]
    logging.info(f"Split {n} series into {len(train)} train and {len(val)} validation")
    return train, val
