from fastapi import APIRouter, File, Form, Request, UploadFile
from pydantic import ValidationError

from ..config.core import RATE_LIMIT
from ..entities.changeCurve import PeakSet
from ..entities.config import ChangeSpaceConfig
from ..entities.timeSeries import TimeSeries, validate_series
from ..exceptions import ConfigError, InputError, NoValidScaleError
from ..ingestion.service import parse_archive_text
from ..rate_limiter import limiter
from . import models
from . import service

router = APIRouter(
    prefix="/change-space",
    tags=["change-space"]
)


def _segment(series: TimeSeries, k: int | None, cfg: ChangeSpaceConfig) -> models.SegmentResponse:
    series = validate_series(series)
    try:
        peaks = service.change_peaks(series, cfg)
    except NoValidScaleError:
        if k is None:
            raise
        peaks = PeakSet()
    if k is None:
        boundaries = service.cuts_from_peaks(peaks, len(series), cfg.max_segment_count)
    else:
        boundaries = service.boundaries_from_peaks(peaks, len(series), k, cfg.max_segment_count)
    return models.SegmentResponse(
        id=series.id,
        length=len(series),
        cuts=list(boundaries.cuts),
        segments=boundaries.segments(),
        peaks=[models.PeakResponse(**peak._asdict()) for peak in peaks],
    )


def _with_window(cfg: ChangeSpaceConfig, window: int | None) -> ChangeSpaceConfig:
    if window is None:
        return cfg
    try:
        return cfg.with_window(window)
    except ValidationError as e:
        raise ConfigError("window", e.errors()[0]["msg"])


@router.post("/curve", response_model=models.CurveResponse)
def compute_curve(request: models.CurveRequest):
    series = validate_series(TimeSeries(values=request.values, id=request.id))
    curve = service.ms_tscs_curve(series, request.config)
    if request.smooth:
        curve = service.smooth_curve(curve, request.config)
    return models.CurveResponse(
        scores=curve.scores.tolist(),
        support=curve.support,
        scale_count=curve.scale_count.tolist(),
    )


@router.post("/segment", response_model=models.SegmentResponse)
def segment(request: models.SegmentRequest):
    cfg = _with_window(request.config, request.window)
    return _segment(TimeSeries(values=request.values, id=request.id), request.k, cfg)


@router.post("/segment-file", response_model=models.FileSegmentResponse)
@limiter.limit(RATE_LIMIT)
async def segment_file(
    request: Request,
    file: UploadFile = File(...),
    k: int | None = Form(None),
    window: int | None = Form(None),
):
    try:
        text = (await file.read()).decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"Upload '{file.filename}' is not UTF-8 text")
    archive = parse_archive_text(text, file.filename or "upload")
    cfg = _with_window(ChangeSpaceConfig(), window)
    return models.FileSegmentResponse(
        series=[_segment(series, k, cfg) for series in archive.series],
        label_map=archive.label_map,
    )
