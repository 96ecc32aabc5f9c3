"""Batch drivers behind the CLI subcommands.

Every driver is a thin orchestration of the library functions with the
same parameters the CLI exposes, so command output equals direct library
calls. Per-item failures are logged and recorded in the run report without
aborting the batch; reports embed the effective configuration and no
wall-clock state, so reruns are byte-identical.
"""

import json
import logging
import os
import re

import numpy as np

from .chroma import ChromaThresholds, QcConfig, extract_groundtruth, mask_foreground, qc_screen, select_frames
from .compositing import CaptureMetadata, CompositeConfig, build_dataset, prepare_backgrounds
from .errors import ConfigError, RasterFormatError, RasterIOError
from .image_io import (
    list_images,
    load_depth,
    load_mask,
    load_rgb,
    save_heatmap,
    save_mask,
    save_rgb,
)
from .metrics import MetricRecord, aggregate, occupancy_heatmap, summary_to_dict, render_report
from .morphology import MorphConfig
from .parallel import parallel_map
from .segmenters import DepthBandSegmenter, SkinColorSegmenter, load_prediction_mask

logger = logging.getLogger(__name__)


def _frame_index(path, position):
    digits = re.findall(r"\d+", os.path.splitext(os.path.basename(path))[0])
    return int(digits[-1]) if digits else position


def _write_json(path, doc):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_extract(frames_dir, out_dir, cfg, threads=1):
    """Extract groundtruth/foreground pairs from a chroma-key frame
    directory and write qc_report.json."""
    frames = list_images(frames_dir)
    if not frames:
        raise RasterIOError(f"no frames found in {frames_dir}")
    os.makedirs(out_dir, exist_ok=True)

    stride = int(cfg["extract"]["stride"])
    thresholds = ChromaThresholds(
        h_low=cfg["chroma"]["h_low"],
        h_high=cfg["chroma"]["h_high"],
        s_min=cfg["chroma"]["s_min"],
        band_mode=cfg["chroma"]["band_mode"],
    )
    morph = MorphConfig(
        open_radius=cfg["morph"]["open_radius"],
        close_radius=cfg["morph"]["close_radius"],
        min_component_area=cfg["morph"]["min_component_area"],
    )
    qc = QcConfig(
        min_fg_fraction=cfg["qc"]["min_fg_fraction"],
        max_fg_fraction=cfg["qc"]["max_fg_fraction"],
        max_components=cfg["qc"]["max_components"],
        forbid_top_border=cfg["qc"]["forbid_top_border"],
    )
    scale_min_area = bool(cfg["morph"]["scale_min_area"])

    selected = [
        (pos, frames[pos]) for pos in select_frames(len(frames), stride)
    ]

    def process(item):
        pos, path = item
        index = _frame_index(path, pos)
        try:
            image = load_rgb(path)
        except RasterIOError as exc:
            logger.warning("skipping frame: %s", exc)
            return {"index": index, "source": os.path.basename(path), "error": str(exc)}
        frame_morph = morph
        if scale_min_area:
            frame_morph = morph.scaled_for(image.shape[1], image.shape[0])
        gt = extract_groundtruth(image, thresholds, frame_morph)
        fg = mask_foreground(image, gt)
        verdict = qc_screen(gt, qc)
        save_mask(os.path.join(out_dir, f"gt_{index:06d}.png"), gt)
        save_rgb(os.path.join(out_dir, f"fg_{index:06d}.png"), fg)
        return {
            "index": index,
            "source": os.path.basename(path),
            "accepted": verdict.accepted,
            "reasons": list(verdict.reasons),
            "fg_fraction": float(np.count_nonzero(gt)) / gt.size,
        }

    results = parallel_map(process, selected, threads)
    results.sort(key=lambda r: r["index"])
    frame_entries = [r for r in results if "error" not in r]
    failures = [r for r in results if "error" in r]
    report = {
        "schema_version": cfg["schema_version"],
        "config": cfg,
        "frames": frame_entries,
        "failures": failures,
        "counts": {
            "frames_in_dir": len(frames),
            "selected": len(selected),
            "extracted": len(frame_entries),
            "accepted": sum(1 for r in frame_entries if r["accepted"]),
            "rejected": sum(1 for r in frame_entries if not r["accepted"]),
            "failed": len(failures),
        },
        "review": [r["index"] for r in frame_entries if not r["accepted"]],
    }
    _write_json(os.path.join(out_dir, "qc_report.json"), report)
    return report


def run_composite(fg_dir, mask_dir, bg_dir, out_dir, cfg, threads=1):
    """Prepare the background pool and build the semi-synthetic dataset."""
    pool = prepare_backgrounds(bg_dir, cfg["composite"]["target_size"])
    os.makedirs(out_dir, exist_ok=True)
    metadata = CaptureMetadata(**cfg["metadata"])
    composite_cfg = CompositeConfig(
        seed=int(cfg["composite"]["seed"]),
        feather_radius=int(cfg["composite"]["feather_radius"]),
        copies=int(cfg["composite"]["copies"]),
    )
    qc = QcConfig(
        min_fg_fraction=cfg["qc"]["min_fg_fraction"],
        max_fg_fraction=cfg["qc"]["max_fg_fraction"],
        max_components=cfg["qc"]["max_components"],
        forbid_top_border=cfg["qc"]["forbid_top_border"],
    )
    return build_dataset(
        fg_dir,
        mask_dir,
        pool,
        out_dir,
        metadata=metadata,
        config=composite_cfg,
        qc=qc,
        config_echo=cfg,
        threads=threads,
    )


def _build_segmenter(cfg):
    seg = cfg["segmenter"]
    if seg["kind"] == "skin":
        return SkinColorSegmenter(
            hue_ranges=tuple(tuple(r) for r in seg["hue_ranges"]),
            s_min=seg["s_min"],
            s_max=seg["s_max"],
            v_min=seg["v_min"],
        )
    if seg["kind"] == "depth":
        return DepthBandSegmenter(
            d_min=seg["d_min"], d_max=seg["d_max"], fill_holes=seg["fill_holes"]
        )
    raise ConfigError(f"segmenter.kind {seg['kind']!r} cannot run here")


def run_segment(input_dir, out_dir, cfg, threads=1):
    """Write one exchange-format prediction mask per input raster.

    kind=skin expects 8-bit RGB inputs, kind=depth 16-bit depth PNGs, and
    kind=external re-encodes third-party single-channel masks through the
    >=128 threshold. A file of the wrong format for the configured kind is
    a usage error and aborts the run.
    """
    paths = list_images(input_dir)
    if not paths:
        raise RasterIOError(f"no input images found in {input_dir}")
    os.makedirs(out_dir, exist_ok=True)
    kind = cfg["segmenter"]["kind"]
    segmenter = _build_segmenter(cfg) if kind in ("skin", "depth") else None

    def out_path(path):
        stem = os.path.splitext(os.path.basename(path))[0]
        return os.path.join(out_dir, f"{stem}.png")

    def process(path):
        try:
            if kind == "skin":
                mask = segmenter.predict(load_rgb(path))
            elif kind == "depth":
                mask = segmenter.predict(load_depth(path))
            else:
                mask = load_mask(path)
        except RasterFormatError as exc:
            # the whole batch is pointed at the wrong kind of data
            raise ConfigError(
                f"segmenter.kind={kind} cannot read {path}: {exc}"
            ) from exc
        except RasterIOError as exc:
            logger.warning("skipping input: %s", exc)
            return None
        save_mask(out_path(path), mask)
        return os.path.basename(out_path(path))

    written = [name for name in parallel_map(process, paths, threads) if name]
    return {"n_inputs": len(paths), "n_masks": len(written)}


def _read_pairs(pairs_file):
    try:
        with open(pairs_file) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise RasterIOError(f"cannot read pairs file {pairs_file}: {exc}") from exc
    base = os.path.dirname(os.path.abspath(pairs_file))
    pairs = []
    bad = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            doc = json.loads(line)
            pair = {
                "sample_id": str(doc["sample_id"]),
                "gt_path": os.path.join(base, doc["gt_path"]),
                "pred_path": os.path.join(base, doc["pred_path"]),
                "dataset": str(doc.get("dataset", "default")),
                "scene": str(doc.get("scene", "")),
            }
            if not pair["sample_id"] or not pair["dataset"]:
                raise ValueError("sample_id and dataset must be non-empty")
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            bad.append({"line": lineno, "error": f"malformed pair: {exc}"})
            continue
        pairs.append(pair)
    return pairs, bad


def run_evaluate(pairs_file, out_dir, cfg, threads=1, resize_pred=None):
    """Score prediction masks against groundtruth for every pair.

    Emits metrics.jsonl (per record), summary.json (per dataset and per
    scene), report.md / report.csv, and one groundtruth occurrence heatmap
    per dataset.
    """
    pairs, bad = _read_pairs(pairs_file)
    if resize_pred is None:
        resize_pred = bool(cfg["segmenter"]["resize_pred"])
    os.makedirs(out_dir, exist_ok=True)

    def process(pair):
        try:
            gt = load_mask(pair["gt_path"])
            pred = load_prediction_mask(
                pair["pred_path"], gt.shape[1], gt.shape[0], allow_resize=resize_pred
            )
        except (RasterIOError, OSError) as exc:
            logger.warning("skipping pair %s: %s", pair["sample_id"], exc)
            return pair, None, str(exc)
        record = MetricRecord.from_masks(
            pair["sample_id"], gt, pred, dataset=pair["dataset"], scene=pair["scene"]
        )
        return pair, (record, gt), None

    outcomes = parallel_map(process, pairs, threads)
    records = []
    gt_by_dataset = {}
    errors = [dict(b) for b in bad]
    for pair, result, error in outcomes:
        if result is None:
            errors.append({"sample_id": pair["sample_id"], "error": error})
            continue
        record, gt = result
        records.append(record)
        gt_by_dataset.setdefault(pair["dataset"], []).append((record.sample_id, gt))

    if not records:
        raise RasterIOError(f"no scorable pairs in {pairs_file}")

    records.sort(key=lambda r: (r.dataset, r.sample_id))
    with open(os.path.join(out_dir, "metrics.jsonl"), "w") as fh:
        for r in records:
            fh.write(
                json.dumps(
                    {
                        "sample_id": r.sample_id,
                        "dataset": r.dataset,
                        "scene": r.scene,
                        "tp": r.counts.tp,
                        "fp": r.counts.fp,
                        "fn": r.counts.fn,
                        "tn": r.counts.tn,
                        "iou_arm": r.iou_arm,
                        "miss_rate": r.miss_rate,
                    }
                )
                + "\n"
            )

    datasets = sorted({r.dataset for r in records})
    summaries = [
        aggregate([r for r in records if r.dataset == name], name) for name in datasets
    ]
    scene_keys = sorted({(r.dataset, r.scene) for r in records if r.scene})
    scene_summaries = [
        aggregate(
            [r for r in records if (r.dataset, r.scene) == key], f"{key[0]}/{key[1]}"
        )
        for key in scene_keys
    ]

    summary_doc = {
        "schema_version": cfg["schema_version"],
        "config": cfg,
        "n_pairs": len(pairs) + len(bad),
        "n_scored": len(records),
        "datasets": [summary_to_dict(s) for s in summaries],
        "scenes": [summary_to_dict(s) for s in scene_summaries],
        "errors": errors,
    }
    _write_json(os.path.join(out_dir, "summary.json"), summary_doc)

    all_summaries = summaries + scene_summaries
    with open(os.path.join(out_dir, "report.md"), "w") as fh:
        fh.write(render_report(all_summaries, "markdown"))
    with open(os.path.join(out_dir, "report.csv"), "w") as fh:
        fh.write(render_report(all_summaries, "csv"))

    for name in datasets:
        masks = [m for _, m in sorted(gt_by_dataset[name], key=lambda t: t[0])]
        ref = (masks[0].shape[1], masks[0].shape[0])
        safe = re.sub(r"[^A-Za-z0-9._-]", "_", name)
        save_heatmap(
            os.path.join(out_dir, f"heatmap_{safe}.png"),
            occupancy_heatmap(masks, ref),
        )
    return summary_doc


def run_heatmap(masks_dir, out_path, size=None):
    """Aggregate a directory of masks into one occurrence heatmap PNG."""
    paths = list_images(masks_dir)
    if not paths:
        raise RasterIOError(f"no masks found in {masks_dir}")
    masks = [load_mask(p) for p in paths]
    if size is None:
        size = (masks[0].shape[1], masks[0].shape[0])
    save_heatmap(out_path, occupancy_heatmap(masks, size))
    return {"n_masks": len(masks), "width": size[0], "height": size[1]}
