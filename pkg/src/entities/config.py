from pydantic import BaseModel, ConfigDict, Field, model_validator

from .enums import CellType, Normalization, SegmentationMode


class ChangeSpaceConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scales: tuple[int, ...] | None = Field(default=None, description="Explicit scale set; the min/max/step grid when unset")
    scale_min: int = 10
    scale_max: int = 500
    scale_step: int = 10
    penalty_weight: float = 1.0
    variance_floor: float = 1e-8
    smoothing_window: int = 5
    saliency_window: int = 25
    saliency_sigma: float = 2.0
    fallback_segment_count: int = 15
    max_segment_count: int = 50
    peakless_fraction: float = 0.5

    @model_validator(mode="after")
    def check_ranges(self):
        if self.scale_min < 2:
            raise ValueError("scale_min must be at least 2")
        if self.scale_max < self.scale_min:
            raise ValueError("scale_max must not be smaller than scale_min")
        if self.scale_step < 1:
            raise ValueError("scale_step must be positive")
        if self.scales is not None:
            if not self.scales:
                raise ValueError("scales must not be empty")
            outside = [d for d in self.scales if not self.scale_min <= d <= self.scale_max]
            if outside:
                raise ValueError(f"scales {outside} lie outside [{self.scale_min}, {self.scale_max}]")
        if not self.variance_floor > 0:
            raise ValueError("variance_floor must be positive")
        if self.smoothing_window < 1 or self.smoothing_window % 2 == 0:
            raise ValueError("smoothing_window must be odd and at least 1")
        if self.saliency_window < 1:
            raise ValueError("saliency_window must be at least 1")
        if self.saliency_sigma < 0:
            raise ValueError("saliency_sigma must not be negative")
        if self.max_segment_count < 2:
            raise ValueError("max_segment_count must be at least 2")
        if not 2 <= self.fallback_segment_count <= self.max_segment_count:
            raise ValueError("fallback_segment_count must lie in [2, max_segment_count]")
        if not 0 <= self.peakless_fraction <= 1:
            raise ValueError("peakless_fraction must lie in [0, 1]")
        return self

    @property
    def resolved_scales(self) -> tuple[int, ...]:
        if self.scales is not None:
            return tuple(sorted(set(self.scales)))
        return tuple(range(self.scale_min, self.scale_max + 1, self.scale_step))

    def valid_scales(self, length: int) -> tuple[int, ...]:
        return tuple(d for d in self.resolved_scales if 2 * d <= length)

    def with_window(self, delta: int) -> "ChangeSpaceConfig":
        """Single-scale variant used when the segmentation window is known."""
        values = self.model_dump()
        values.update(scales=(delta,), scale_min=delta, scale_max=delta)
        return ChangeSpaceConfig(**values)


class TokenizerConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    mask_ratio: float = Field(default=0.15, gt=0, lt=1)
    segmentation: SegmentationMode = SegmentationMode.CHANGE_SPACE
    fixed_segment_count: int = Field(default=25, ge=2)
    segment_count: int | None = Field(default=None, ge=2, description="Overrides the dataset-level K")


class EncoderConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    hidden_size: int = Field(default=160, ge=1)
    dense_size: int = Field(default=320, ge=1)
    cell: CellType = CellType.LSTM
    bidirectional: bool = True
    forget_bias: float = 1.0


class TrainConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    max_epochs: int = Field(default=250, ge=1)
    patience: int = Field(default=20, ge=1)
    learning_rate: float = Field(default=1e-3, gt=0)
    beta1: float = Field(default=0.9, gt=0, lt=1)
    beta2: float = Field(default=0.999, gt=0, lt=1)
    epsilon: float = Field(default=1e-8, gt=0)
    clip_norm: float = Field(default=5.0, gt=0)
    batch_size: int = Field(default=16, ge=1)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def check_patience(self):
        if self.patience >= self.max_epochs:
            raise ValueError("patience must be smaller than max_epochs")
        return self


class LossSchedule(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    phase_boundary: int = Field(default=100, ge=0)
    warmup_lambda1: float = Field(default=1.0, ge=0)
    warmup_lambda2: float = Field(default=0.0, ge=0)
    lambda1: float = Field(default=2.0, ge=0)
    lambda2: float = Field(default=1.0, ge=0)

    def weights(self, epoch: int) -> tuple[float, float]:
        """(lambda1, lambda2) active at a 1-based epoch."""
        if epoch <= self.phase_boundary:
            return self.warmup_lambda1, self.warmup_lambda2
        return self.lambda1, self.lambda2

    def phase(self, epoch: int) -> int:
        return 0 if epoch <= self.phase_boundary else 1


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    normalize: Normalization = Normalization.ZSCORE
    validation_fraction: float = Field(default=0.05, gt=0, lt=1)
    change_space: ChangeSpaceConfig = ChangeSpaceConfig()
    tokenizer: TokenizerConfig = TokenizerConfig()
    encoder: EncoderConfig = EncoderConfig()
    train: TrainConfig = TrainConfig()
    schedule: LossSchedule = LossSchedule()
