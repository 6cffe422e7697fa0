from pydantic import BaseModel, Field


class ClassifyRequest(BaseModel):
    values: list[float] = Field(..., min_length=2)
    id: str = ""


class ClassifyResponse(BaseModel):
    id: str
    label: int = Field(description="Label as written in the training archive")
    class_index: int
    probabilities: list[float]
    segment_count: int


class ModelInfoResponse(BaseModel):
    cell: str
    bidirectional: bool
    input_size: int
    hidden_size: int
    dense_size: int
    n_classes: int
    parameter_count: int
    segment_count: int
    label_map: dict[int, int]
