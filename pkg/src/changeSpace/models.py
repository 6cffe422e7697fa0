from pydantic import BaseModel, Field

from ..entities.config import ChangeSpaceConfig


class CurveRequest(BaseModel):
    values: list[float] = Field(..., min_length=2, description="Samples of one univariate series")
    id: str = ""
    config: ChangeSpaceConfig = ChangeSpaceConfig()
    smooth: bool = Field(default=False, description="Apply the low-pass filter before returning")


class CurveResponse(BaseModel):
    scores: list[float]
    support: tuple[int, int]
    scale_count: list[int]


class SegmentRequest(BaseModel):
    values: list[float] = Field(..., min_length=2)
    id: str = ""
    k: int | None = Field(default=None, description="Segment count; every salient peak is cut when omitted")
    window: int | None = Field(default=None, ge=2, description="Single scale to use instead of the scale grid")
    config: ChangeSpaceConfig = ChangeSpaceConfig()


class PeakResponse(BaseModel):
    index: int
    score: float
    saliency: float


class SegmentResponse(BaseModel):
    id: str
    length: int
    cuts: list[int]
    segments: list[tuple[int, int]]
    peaks: list[PeakResponse]


class FileSegmentResponse(BaseModel):
    series: list[SegmentResponse]
    label_map: dict[int, int]
