import logging
import statistics
import time
from argparse import Namespace

import numpy as np
from pydantic import ValidationError

from ..changeSpace.service import ms_tscs_curve, segment_by_peaks, segment_series, select_segment_count
from ..config.core import load_config, update_config
from ..encoder.checkpoint import Checkpoint, save_checkpoint
from ..encoder.service import extract_features, nearest_centroid_probe, predict
from ..encoder.training import LabeledSequences, train
from ..entities.config import ExperimentConfig
from ..entities.enums import SegmentationMode
from ..entities.segmentBoundaries import SegmentBoundaries
from ..entities.timeSeries import TimeSeries, validate_series
from ..evaluation.service import accuracy, covering_score, summarize
from ..exceptions import ConfigError, InputError, PartitionMismatchError
from ..ingestion.service import normalize_all, parse_boundary_file, read_archive, train_val_split
from ..tokenizer.service import padded_length, segment_dataset, tokenize_dataset
from .report import Report

BENCH_TARGET_MS = 500.0


def resolve_config(args: Namespace) -> ExperimentConfig:
    """Config file first, then command-line overrides."""
    cfg = load_config(getattr(args, "config", None))
    lambda1, lambda2 = getattr(args, "lambda1", None), getattr(args, "lambda2", None)
    overrides = {
        "seed": getattr(args, "seed", None),
        "segment_count": getattr(args, "k", None),
        "normalize": getattr(args, "normalize", None),
        "warmup_lambda1": lambda1,
        "lambda1": lambda1,
        "warmup_lambda2": lambda2,
        "lambda2": lambda2,
    }
    cfg = update_config(cfg, overrides)
    logging.debug(f"Resolved configuration: {cfg}")
    return cfg


def _load_series(path, cfg: ExperimentConfig, label_map=None):
    archive = read_archive(path, label_map)
    series = [validate_series(s) for s in archive.series]
    return normalize_all(series, cfg.normalize), archive.label_map


def cmd_segment(args: Namespace) -> Report:
    cfg = resolve_config(args)
    change_space = cfg.change_space
    if args.window is not None:
        try:
            change_space = change_space.with_window(args.window)
        except ValidationError as e:
            raise ConfigError("window", e.errors()[0]["msg"])
    series, _ = _load_series(args.input, cfg)
    k = cfg.tokenizer.segment_count

    boundaries = []
    for s in series:
        boundaries.append(segment_series(s, k, change_space) if k else segment_by_peaks(s, change_space))

    report = Report("segment", cfg)
    report.add("results", "series_count", len(series))
    report.add("results", "segment_count", k if k else "peaks")
    if args.window is not None:
        report.add("results", "window", args.window)

    columns = ["id", "length", "segments", "cuts"]
    rows = [[s.id, len(s), b.count, " ".join(str(c) for c in b.cuts) or "-"] for s, b in zip(series, boundaries)]

    if args.gt:
        truth = parse_boundary_file(args.gt)
        if len(truth) != len(series):
            raise PartitionMismatchError(f"{len(truth)} ground-truth lines for {len(series)} series")
        scores = []
        for s, predicted, cuts, row in zip(series, boundaries, truth, rows):
            score = covering_score(SegmentBoundaries(cuts=cuts, length=len(s)), predicted, len(s))
            scores.append((s.id, score))
            row.append(score)
        columns.append("covering")
        summary = summarize(scores)
        report.add("results", "covering_mean", summary.mean)
        report.add("results", "covering_std", summary.std)
        logging.info(f"Mean covering {summary.mean:.4f} +- {summary.std:.4f} over {len(scores)} series")

    report.set_table(columns, rows)
    return report


def _segment_count(cfg: ExperimentConfig, train_series: list[TimeSeries]) -> int:
    if cfg.tokenizer.segment_count:
        return cfg.tokenizer.segment_count
    if cfg.tokenizer.segmentation == SegmentationMode.UNIFORM:
        return cfg.tokenizer.fixed_segment_count
    return select_segment_count(train_series, cfg.change_space)


def cmd_train(args: Namespace) -> Report:
    cfg = resolve_config(args)
    train_series, label_map = _load_series(args.train, cfg)
    n_classes = len(label_map)
    test_series, label_map = _load_series(args.test, cfg, label_map)

    k = _segment_count(cfg, train_series)
    mode = cfg.tokenizer.segmentation
    train_boundaries = segment_dataset(train_series, k, cfg.change_space, mode)
    test_boundaries = segment_dataset(test_series, k, cfg.change_space, mode)
    length = padded_length(train_boundaries + test_boundaries)
    train_tokens = tokenize_dataset(train_series, train_boundaries, length)
    test_tokens = tokenize_dataset(test_series, test_boundaries, length)

    position = {id(s): i for i, s in enumerate(train_series)}
    fit, held_out = train_val_split(train_series, cfg.validation_fraction, cfg.train.seed)
    fit_set = LabeledSequences([train_tokens[position[id(s)]] for s in fit], [s.label for s in fit])
    val_set = LabeledSequences([train_tokens[position[id(s)]] for s in held_out], [s.label for s in held_out])

    params, log = train(fit_set, val_set, n_classes, cfg.encoder, cfg.train, cfg.schedule, cfg.tokenizer.mask_ratio)
    test_labels = [s.label for s in test_series]
    test_accuracy = accuracy(predict(params, test_tokens), test_labels)

    report = Report("train", cfg)
    report.add("results", "class_count", n_classes)
    report.add("results", "segment_count", k)
    report.add("results", "padded_length", length)
    report.add("results", "parameter_count", params.parameter_count)
    report.add("results", "train_size", len(fit))
    report.add("results", "validation_size", len(held_out))
    report.add("results", "epochs_run", len(log.records))
    report.add("results", "best_epoch", log.best_epoch)
    report.add("results", "best_validation_loss", log.best_val_loss)
    report.add("results", "stopped_early", log.stopped_early)
    report.add("results", "test_accuracy", test_accuracy)

    if cfg.schedule.lambda2 == 0:
        train_features = extract_features(params, fit_set.sequences)
        probe = nearest_centroid_probe(train_features, fit_set.labels, extract_features(params, test_tokens))
        report.add("probe", "method", "nearest_centroid")
        report.add("probe", "note", "classifier head untrained, accuracy from feature centroids")
        report.add("probe", "test_accuracy", accuracy(probe, test_labels))

    if args.checkpoint:
        checkpoint = Checkpoint(
            params=params,
            train_config=cfg.train,
            schedule=cfg.schedule,
            change_space=cfg.change_space,
            segment_count=k,
            padded_length=length,
            label_map=label_map,
            normalize=cfg.normalize,
            segmentation=mode,
        )
        report.add("results", "checkpoint", str(save_checkpoint(checkpoint, args.checkpoint)))

    report.set_table(
        ["epoch", "mae_loss", "ce_loss", "total", "val_loss", "lambda1", "lambda2"],
        [[r.epoch, r.mae_loss, r.ce_loss, r.total, r.val_loss, r.lambda1, r.lambda2] for r in log.records],
    )
    return report


def cmd_bench(args: Namespace) -> Report:
    if args.length < 2:
        raise InputError(f"--length must be at least 2, got {args.length}")
    if args.repetitions < 1:
        raise InputError(f"--repetitions must be at least 1, got {args.repetitions}")
    cfg = resolve_config(args)
    rng = np.random.default_rng(cfg.train.seed)
    series = TimeSeries(values=rng.standard_normal(args.length), id="bench")
    curve = ms_tscs_curve(series, cfg.change_space)

    timings = []
    for _ in range(args.repetitions):
        start = time.perf_counter()
        ms_tscs_curve(series, cfg.change_space)
        timings.append((time.perf_counter() - start) * 1000.0)
    median = statistics.median(timings)
    logging.info(f"Median change-space time {median:.3f} ms for length {args.length}")

    report = Report("bench", cfg)
    report.add("results", "length", args.length)
    report.add("results", "repetitions", args.repetitions)
    report.add("results", "scale_count", int(curve.scale_count.max()))
    report.add("results", "median_ms", median)
    report.add("results", "min_ms", min(timings))
    report.add("results", "target_ms", BENCH_TARGET_MS)
    report.add("results", "within_target", median <= BENCH_TARGET_MS)
    report.set_table(["repetition", "milliseconds"], [[i, t] for i, t in enumerate(timings)])
    return report
