from dataclasses import dataclass, field

import numpy as np

from ..exceptions import NonFiniteError, TooShortError


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True).reshape(-1)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One univariate sequence; values are stored as a read-only float64 array."""

    values: np.ndarray
    label: int | None = None
    id: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def with_values(self, values) -> "TimeSeries":
        return TimeSeries(values=values, label=self.label, id=self.id, meta=dict(self.meta))

    def __repr__(self):
        return f"<TimeSeries(id='{self.id}', length={len(self)}, label={self.label})>"


def validate_series(series: TimeSeries) -> TimeSeries:
    """Return the series unchanged when it is long enough and fully finite."""
    if len(series) < 2:
        raise TooShortError(len(series))
    finite = np.isfinite(series.values)
    if not finite.all():
        raise NonFiniteError(int(np.argmin(finite)))
    return series
