"""Command-line front end.

Loads a ground-truth and a predicted mask, evaluates the requested
metrics, and writes a deterministic JSON or CSV report to stdout or a
file.

Exit codes: 0 success, 2 shape mismatch, 3 IO/format error, 4 metric
undefined under --policy error, 5 bad flags or unknown metric.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .errors import (
    FormatUnsupported,
    HeaderCorrupt,
    LabelInvalid,
    LengthMismatch,
    MaskMetricsError,
    MetricUndefined,
    ShapeInvalid,
    ShapeMismatch,
    SizeMismatch,
    SpacingMismatch,
    UnknownMetric,
)
from .evaluator import DEFAULT_REGISTRY, EvalMode, evaluate
from .distance import HausdorffAlgo
from .mask_io import load_mask
from .overlap import ZeroDivisionPolicy
from .report import MetricTiming, ReportDocument, render
from .core import classes_of, validate_pair

EXIT_OK = 0
EXIT_SHAPE_MISMATCH = 2
EXIT_IO = 3
EXIT_METRIC_UNDEFINED = 4
EXIT_USAGE = 5

_IO_ERRORS = (
    OSError,
    FormatUnsupported,
    HeaderCorrupt,
    SizeMismatch,
    LabelInvalid,
    LengthMismatch,
    ShapeInvalid,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="maskmetrics",
        description="Evaluate segmentation metrics on a pair of label masks.",
    )
    parser.add_argument("--truth", required=True, help="ground-truth mask file")
    parser.add_argument("--pred", required=True, help="predicted mask file")
    parser.add_argument(
        "--metrics",
        default="all",
        help="comma-separated metric names or 'all' (default: all)",
    )
    parser.add_argument(
        "--mode",
        choices=["auto", "binary", "multiclass"],
        default="auto",
    )
    parser.add_argument(
        "--policy",
        choices=["perfect-empty", "zero", "one", "error"],
        default="perfect-empty",
        help="zero-denominator handling for overlap metrics",
    )
    parser.add_argument(
        "--spacing",
        default=None,
        help="per-axis physical pixel size, e.g. 1,1.5 or 2,0.5,0.5",
    )
    parser.add_argument("--hd-algo", choices=["naive", "edt"], default="edt")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--out", default=None, help="report path (default: stdout)")
    parser.add_argument(
        "--include-background",
        choices=["true", "false"],
        default="true",
        help="score class 0 in multi-class mode (default: true)",
    )
    parser.add_argument(
        "--no-timings",
        action="store_true",
        help="omit wall-time fields so reports are byte-reproducible",
    )
    return parser


def _parse_spacing(text: str | None, rank: int) -> tuple[float, ...] | None:
    if text is None:
        return None
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise _UsageError(f"--spacing must be comma-separated numbers, got {text!r}")
    if len(parts) != rank:
        raise _UsageError(
            f"--spacing has {len(parts)} components but masks have rank {rank}"
        )
    if any(p <= 0 for p in parts):
        raise _UsageError(f"--spacing components must be > 0, got {text!r}")
    return parts


def _resolve_metrics(text: str) -> list[str]:
    """Canonical, sorted, de-duplicated metric names."""
    if text.strip() == "all":
        return DEFAULT_REGISTRY.names()
    names = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise _UsageError("--metrics contains an empty name")
        names.append(DEFAULT_REGISTRY.resolve(part).name)
    return sorted(set(names))


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        metric_names = _resolve_metrics(args.metrics)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownMetric as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        truth = load_mask(args.truth)
        pred = load_mask(args.pred)
    except _IO_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        validate_pair(truth, pred)
    except ShapeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE_MISMATCH

    try:
        spacing = _parse_spacing(args.spacing, truth.rank)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    mode = EvalMode.from_string(args.mode)
    policy = ZeroDivisionPolicy.from_string(args.policy)
    hd_algo = HausdorffAlgo.from_string(args.hd_algo)
    include_background = args.include_background == "true"

    metrics: dict[str, MetricTiming] = {}
    resolved_mode = None
    classes: tuple[int, ...] = ()
    try:
        for name in metric_names:
            start = time.perf_counter()
            result = evaluate(
                truth,
                pred,
                name,
                mode=mode,
                policy=policy,
                spacing=spacing,
                hd_algo=hd_algo,
                include_background=include_background,
            )
            millis = (time.perf_counter() - start) * 1000.0
            metrics[name] = MetricTiming(result=result, millis=millis)
            resolved_mode = result.mode
    except MetricUndefined as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_METRIC_UNDEFINED
    except SpacingMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MaskMetricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    classes = tuple(classes_of(truth, pred))
    doc = ReportDocument(
        tool_name="maskmetrics",
        tool_version=__version__,
        truth_path=args.truth,
        pred_path=args.pred,
        shape=truth.shape,
        mode=resolved_mode.value if resolved_mode is not None else mode.value,
        policy=policy.value,
        spacing=spacing if spacing is not None else (1.0,) * truth.rank,
        include_background=include_background,
        hd_algo=hd_algo.value,
        classes=classes,
        metrics=metrics,
        with_timings=not args.no_timings,
    )
    text = render(doc, args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
