import logging
from functools import lru_cache
from typing import Annotated

from fastapi import APIRouter, Depends, HTTPException, status

from ..config.core import get_settings
from ..entities.timeSeries import TimeSeries
from .checkpoint import Checkpoint, load_checkpoint
from .pipeline import classify_series
from . import models

router = APIRouter(
    prefix="/encoder",
    tags=["encoder"]
)


@lru_cache(maxsize=4)
def _cached_checkpoint(path: str) -> Checkpoint:
    logging.info(f"Loading checkpoint {path}")
    return load_checkpoint(path)


def get_checkpoint() -> Checkpoint:
    path = get_settings().checkpoint_path
    if not path:
        raise HTTPException(status_code=status.HTTP_503_SERVICE_UNAVAILABLE, detail="CHECKPOINT_PATH is not set")
    return _cached_checkpoint(path)


Model = Annotated[Checkpoint, Depends(get_checkpoint)]


@router.get("/model", response_model=models.ModelInfoResponse)
def model_info(checkpoint: Model):
    params = checkpoint.params
    return models.ModelInfoResponse(
        cell=params.cell.value,
        bidirectional=params.bidirectional,
        input_size=params.input_size,
        hidden_size=params.hidden_size,
        dense_size=params.dense_size,
        n_classes=params.n_classes,
        parameter_count=params.parameter_count,
        segment_count=checkpoint.segment_count,
        label_map=checkpoint.label_map,
    )


@router.post("/classify", response_model=models.ClassifyResponse)
def classify(request: models.ClassifyRequest, checkpoint: Model):
    class_index, label, probabilities = classify_series(checkpoint, TimeSeries(values=request.values, id=request.id))
    return models.ClassifyResponse(
        id=request.id,
        label=label,
        class_index=class_index,
        probabilities=probabilities.tolist(),
        segment_count=checkpoint.segment_count,
    )
