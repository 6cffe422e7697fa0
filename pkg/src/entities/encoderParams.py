from dataclasses import dataclass, field

import numpy as np

from .enums import CellType

# Recurrent weights stack the bias row first, then input rows, then hidden rows.
PARAMETER_ORDER = ("Wf", "Wb", "Wd", "bd", "Wr", "br", "Wc", "bc")


@dataclass(eq=False)
class EncoderParams:
    """Trainable weights of the recurrent encoder and both heads.

    Shapes, with G = 4 gates for the LSTM cell and 1 for the plain cell and
    F = 2*hidden for a bidirectional encoder (hidden otherwise):

        Wf, Wb  (1 + input + hidden, G * hidden)
        Wd, bd  (F, dense), (dense,)
        Wr, br  (F, input), (input,)
        Wc, bc  (dense, classes), (classes,)
    """

    input_size: int
    hidden_size: int
    dense_size: int
    n_classes: int
    cell: CellType = CellType.LSTM
    bidirectional: bool = True
    weights: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def gate_count(self) -> int:
        return 4 if self.cell == CellType.LSTM else 1

    @property
    def feature_size(self) -> int:
        return 2 * self.hidden_size if self.bidirectional else self.hidden_size

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name in PARAMETER_ORDER if name in self.weights)

    def expected_shapes(self) -> dict[str, tuple[int, ...]]:
        recurrent = (1 + self.input_size + self.hidden_size, self.gate_count * self.hidden_size)
        shapes = {
            "Wf": recurrent,
            "Wd": (self.feature_size, self.dense_size),
            "bd": (self.dense_size,),
            "Wr": (self.feature_size, self.input_size),
            "br": (self.input_size,),
            "Wc": (self.dense_size, self.n_classes),
            "bc": (self.n_classes,),
        }
        if self.bidirectional:
            shapes["Wb"] = recurrent
        return {name: shapes[name] for name in PARAMETER_ORDER if name in shapes}

    @property
    def parameter_count(self) -> int:
        return int(sum(array.size for array in self.weights.values()))

    def __getitem__(self, name: str) -> np.ndarray:
        return self.weights[name]

    def copy(self) -> "EncoderParams":
        return EncoderParams(
            input_size=self.input_size,
            hidden_size=self.hidden_size,
            dense_size=self.dense_size,
            n_classes=self.n_classes,
            cell=self.cell,
            bidirectional=self.bidirectional,
            weights={name: array.copy() for name, array in self.weights.items()},
        )

    def zeros_like(self) -> dict[str, np.ndarray]:
        return {name: np.zeros_like(array) for name, array in self.weights.items()}

    def is_finite(self) -> bool:
        return all(np.isfinite(array).all() for array in self.weights.values())

    def __repr__(self):
        return (
            f"<EncoderParams(cell='{self.cell.value}', bidirectional={self.bidirectional}, "
            f"input={self.input_size}, hidden={self.hidden_size}, classes={self.n_classes}, "
            f"parameters={self.parameter_count})>"
        )


@dataclass(frozen=True)
class LossReport:
    mae_loss: float
    ce_loss: float
    total: float
    lambda1: float = 1.0
    lambda2: float = 0.0
