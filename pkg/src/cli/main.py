import argparse
import logging
import sys
from pathlib import Path

from ..config.core import get_settings
from ..entities.enums import Normalization, ReportFormat
from ..exceptions import ComponentError
from ..my_logging import configure_logging
from .commands import cmd_bench, cmd_segment, cmd_train

COMMANDS = {"segment": cmd_segment, "train": cmd_train, "bench": cmd_bench}


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat `key = value` experiment config")
    parser.add_argument("--out", help="report path (stdout when omitted)")
    parser.add_argument("--seed", type=int, help="overrides the config seed")
    parser.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.TEXT.value)
    parser.add_argument("--normalize", choices=[n.value for n in Normalization])
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARN or ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="components",
        description="Change-space segmentation and compositional encoders for univariate time series.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    segment = commands.add_parser("segment", help="segment every series of an archive file")
    segment.add_argument("--input", required=True)
    segment.add_argument("--gt", help="ground-truth cuts, one line per series")
    segment.add_argument("--k", type=int, help="fixed segment count; every salient peak is cut otherwise")
    segment.add_argument("--window", type=int, help="run the change space on this single scale")
    _common(segment)

    training = commands.add_parser("train", help="train the encoder and report test accuracy")
    training.add_argument("--train", required=True)
    training.add_argument("--test", required=True)
    training.add_argument("--checkpoint", help="where to write the trained model")
    training.add_argument("--k", type=int, help="overrides the selected segment count")
    training.add_argument("--lambda1", type=float, help="reconstruction weight for the whole run")
    training.add_argument("--lambda2", type=float, help="classification weight for the whole run")
    _common(training)

    bench = commands.add_parser("bench", help="time the multi-scale change space")
    bench.add_argument("--length", type=int, default=1000)
    bench.add_argument("--repetitions", type=int, default=20)
    _common(bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or get_settings().log_level)

    try:
        report = COMMANDS[args.command](args)
    except ComponentError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code

    text = report.render(ReportFormat(args.format))
    if args.out:
        Path(args.out).write_text(text)
        logging.info(f"Report written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0
