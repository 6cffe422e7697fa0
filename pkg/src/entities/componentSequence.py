from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ComponentSequence:
    """K zero-padded component tokens of common length L."""

    tokens: np.ndarray
    true_lengths: tuple[int, ...]

    def __post_init__(self):
        tokens = np.array(self.tokens, dtype=np.float64, copy=True)
        if tokens.ndim != 2:
            raise ValueError(f"tokens must be a (K, L) array, got shape {tokens.shape}")
        tokens.setflags(write=False)
        object.__setattr__(self, "tokens", tokens)
        object.__setattr__(self, "true_lengths", tuple(int(n) for n in self.true_lengths))

    @property
    def K(self) -> int:
        return int(self.tokens.shape[0])

    @property
    def L(self) -> int:
        return int(self.tokens.shape[1])

    def concatenate(self) -> np.ndarray:
        """Rebuild the source series from the unpadded tokens."""
        return np.concatenate([self.tokens[i, :n] for i, n in enumerate(self.true_lengths)])


@dataclass(frozen=True)
class MaskPlan:
    masked_indices: tuple[int, ...]
    mask_ratio: float = 0.15

    def __len__(self) -> int:
        return len(self.masked_indices)
