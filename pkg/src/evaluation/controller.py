from fastapi import APIRouter

from ..entities.segmentBoundaries import SegmentBoundaries
from . import models
from . import service

router = APIRouter(
    prefix="/evaluation",
    tags=["evaluation"]
)


@router.post("/covering", response_model=models.CoveringResponse)
def covering(request: models.CoveringRequest):
    ground_truth = SegmentBoundaries(cuts=tuple(request.ground_truth), length=request.length)
    predicted = SegmentBoundaries(cuts=tuple(request.predicted), length=request.length)
    return models.CoveringResponse(covering=service.covering_score(ground_truth, predicted, request.length))


@router.post("/summary", response_model=models.SummaryResponse)
def summary(request: models.SummaryRequest):
    result = service.summarize([(entry.name, entry.value) for entry in request.entries])
    return models.SummaryResponse(
        mean=result.mean,
        std=result.std,
        table=[models.MetricEntry(name=name, value=value) for name, value in result.table],
    )
