from pydantic import BaseModel, Field, model_validator


class SegmentSpec(BaseModel):
    length: int = Field(..., ge=2)
    mean: float = 0.0
    std: float = Field(default=1.0, ge=0)


class SyntheticSpec(BaseModel):
    segments: list[SegmentSpec] = Field(..., min_length=1)
    seed: int = Field(default=0, ge=0)
    label: int | None = None
    jitter: int = Field(default=0, ge=0, description="Max uniform shift of each interior boundary")

    @model_validator(mode="after")
    def check_jitter(self):
        if self.jitter and len(self.segments) > 1:
            shortest = min(segment.length for segment in self.segments)
            if 2 * self.jitter > shortest - 2:
                raise ValueError(f"jitter {self.jitter} can empty a segment of length {shortest}")
        return self

    @property
    def length(self) -> int:
        return sum(segment.length for segment in self.segments)
