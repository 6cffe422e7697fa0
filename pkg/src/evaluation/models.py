from pydantic import BaseModel, Field


class CoveringRequest(BaseModel):
    length: int = Field(..., ge=1)
    ground_truth: list[int] = Field(default_factory=list, description="Interior cut indices")
    predicted: list[int] = Field(default_factory=list, description="Interior cut indices")


class CoveringResponse(BaseModel):
    covering: float


class MetricEntry(BaseModel):
    name: str
    value: float


class SummaryRequest(BaseModel):
    entries: list[MetricEntry]


class SummaryResponse(BaseModel):
    mean: float
    std: float
    table: list[MetricEntry]
