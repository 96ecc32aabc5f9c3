"""Command-line surface: extract, composite, segment, evaluate, heatmap,
and bench subcommands.

Exit codes: 0 success (per-item failures are warnings), 2 malformed
configuration or usage, 3 I/O failure, 4 empty background pool. Log
verbosity comes from the EGOSEG_LOG environment variable (debug, info,
warning, error).
"""

import argparse
import json
import logging
import os
import sys

from . import bench as bench_mod
from . import pipeline
from .config import load_config
from .errors import ConfigError, EmptyBackgroundPoolError, RasterFormatError, RasterIOError

logger = logging.getLogger("egoseg")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_EMPTY_POOL = 4


def log_level(name):
    """Map an EGOSEG_LOG value (debug/info/warning/error) to a level."""
    level = getattr(logging, name.upper(), None)
    return level if isinstance(level, int) else logging.WARNING


def _setup_logging():
    level = log_level(os.environ.get("EGOSEG_LOG", "warning"))
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _add_common(parser):
    parser.add_argument("--config", help="TOML configuration file")
    parser.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads for per-image stages (default: available cores)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="egoseg",
        description=(
            "Chroma-key groundtruth extraction, semi-synthetic compositing, "
            "baseline segmentation, and mask evaluation for egocentric arms"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="turn chroma-key frames into groundtruth masks")
    p.add_argument("frames_dir")
    p.add_argument("out_dir")
    p.add_argument("--stride", type=int, help="keep every Nth frame")
    _add_common(p)

    p = sub.add_parser("composite", help="build the semi-synthetic dataset")
    p.add_argument("fg_dir")
    p.add_argument("mask_dir")
    p.add_argument("bg_dir")
    p.add_argument("out_dir")
    p.add_argument("--seed", type=int, help="background assignment seed")
    p.add_argument("--copies", type=int, help="backgrounds per foreground")
    _add_common(p)

    p = sub.add_parser("segment", help="run a baseline segmenter over a directory")
    p.add_argument("input_dir")
    p.add_argument("out_dir")
    p.add_argument("--kind", choices=("skin", "depth", "external"))
    _add_common(p)

    p = sub.add_parser("evaluate", help="score prediction masks against groundtruth")
    p.add_argument("pairs_file")
    p.add_argument("out_dir")
    p.add_argument(
        "--resize-pred",
        action="store_true",
        default=None,
        help="nearest-resize predictions whose size differs from groundtruth",
    )
    _add_common(p)

    p = sub.add_parser("heatmap", help="aggregate masks into an occurrence heatmap")
    p.add_argument("masks_dir")
    p.add_argument("out_path")
    p.add_argument("--size", type=int, nargs=2, metavar=("W", "H"))

    p = sub.add_parser("bench", help="measure single-image segmentation latency")
    p.add_argument("--kind", choices=bench_mod.BENCH_KINDS, default="skin")
    p.add_argument("--width", type=int, default=720)
    p.add_argument("--height", type=int, default=720)
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--json", dest="json_out", help="also write the result as JSON")

    return parser


def _load_cfg(args, overrides):
    return load_config(getattr(args, "config", None), overrides)


def _dispatch(args):
    if args.command == "extract":
        cfg = _load_cfg(args, {"extract.stride": args.stride})
        report = pipeline.run_extract(args.frames_dir, args.out_dir, cfg, args.threads)
        counts = report["counts"]
        print(
            f"extracted {counts['extracted']} frames "
            f"({counts['accepted']} accepted, {counts['rejected']} flagged for review)"
        )
        return EXIT_OK

    if args.command == "composite":
        cfg = _load_cfg(
            args, {"composite.seed": args.seed, "composite.copies": args.copies}
        )
        report = pipeline.run_composite(
            args.fg_dir, args.mask_dir, args.bg_dir, args.out_dir, cfg, args.threads
        )
        print(
            f"wrote {report.n_samples} samples "
            f"({report.n_rejected} rejected by QC, {report.n_missing} skipped; "
            "see build_report.json)"
        )
        return EXIT_OK

    if args.command == "segment":
        cfg = _load_cfg(args, {"segmenter.kind": args.kind})
        report = pipeline.run_segment(args.input_dir, args.out_dir, cfg, args.threads)
        print(f"wrote {report['n_masks']} prediction masks")
        return EXIT_OK

    if args.command == "evaluate":
        cfg = _load_cfg(
            args,
            {"segmenter.resize_pred": args.resize_pred} if args.resize_pred else {},
        )
        summary = pipeline.run_evaluate(
            args.pairs_file, args.out_dir, cfg, args.threads, resize_pred=args.resize_pred
        )
        print(f"scored {summary['n_scored']} of {summary['n_pairs']} pairs")
        return EXIT_OK

    if args.command == "heatmap":
        size = tuple(args.size) if args.size else None
        report = pipeline.run_heatmap(args.masks_dir, args.out_path, size)
        print(
            f"aggregated {report['n_masks']} masks into "
            f"{report['width']}x{report['height']} heatmap"
        )
        return EXIT_OK

    if args.command == "bench":
        try:
            result = bench_mod.run_bench(
                args.kind, args.width, args.height, args.iterations
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        print(
            f"{result.kind} @ {result.width}x{result.height}, "
            f"{result.n_iterations} iterations, {result.threads} thread: "
            f"mean {result.mean_us:.1f} us, median {result.median_us:.1f} us, "
            f"p95 {result.p95_us:.1f} us"
        )
        if result.kind == "depth":
            print("note: depth timing covers thresholding only, not depth-map generation")
        if args.json_out:
            with open(args.json_out, "w") as fh:
                json.dump(result.to_dict(), fh, indent=2, sort_keys=True)
                fh.write("\n")
        return EXIT_OK

    raise ConfigError(f"unknown command {args.command!r}")


def main(argv=None):
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"egoseg: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RasterFormatError as exc:
        print(f"egoseg: input format error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EmptyBackgroundPoolError as exc:
        print(f"egoseg: {exc}", file=sys.stderr)
        return EXIT_EMPTY_POOL
    except RasterIOError as exc:
        print(f"egoseg: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
