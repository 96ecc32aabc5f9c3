"""Mask scoring: per-pixel confusion counts, arm-class IoU, miss rate,
dataset aggregation, and spatial-occurrence heatmaps.

Because arm and background pixels are heavily imbalanced, only the arm
class is scored. IoU = 100 * TP / (TP + FP + FN); miss rate =
100 * FN / (FN + TP). A zero denominator makes the metric undefined (None):
undefined records are counted and excluded from macro means, never coerced
to 0 or 100.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .resize import resize_mask
from .validation import check_mask, check_same_shape


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be >= 0")

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricRecord:
    sample_id: str
    counts: ConfusionCounts
    iou_arm: Optional[float]
    miss_rate: Optional[float]
    dataset: str = ""
    scene: str = ""

    @classmethod
    def from_masks(cls, sample_id, gt, pred, dataset="", scene=""):
        counts = confusion(gt, pred)
        return cls(
            sample_id=sample_id,
            counts=counts,
            iou_arm=iou_arm(counts),
            miss_rate=miss_rate(counts),
            dataset=dataset,
            scene=scene,
        )


@dataclass(frozen=True)
class MetricSummary:
    dataset_name: str
    n_samples: int
    n_undefined: int
    iou_mean: Optional[float]
    iou_std: Optional[float]
    miss_mean: Optional[float]
    miss_std: Optional[float]
    iou_micro: Optional[float]
    miss_micro: Optional[float]
    n_undefined_miss: int


def confusion(gt, pred):
    """Per-pixel confusion counts between two masks of equal size."""
    gt = check_mask(gt, "groundtruth")
    pred = check_mask(pred, "prediction")
    check_same_shape(gt, pred, "groundtruth", "prediction")
    tp = int(np.count_nonzero(gt & pred))
    fp = int(np.count_nonzero(~gt & pred))
    fn = int(np.count_nonzero(gt & ~pred))
    tn = gt.size - tp - fp - fn
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def iou_arm(counts):
    """Arm-class IoU as a percentage, or None when both masks are empty."""
    denom = counts.tp + counts.fp + counts.fn
    if denom == 0:
        return None
    return 100.0 * counts.tp / denom


def miss_rate(counts):
    """Fraction of groundtruth arm pixels the prediction missed, as a
    percentage; None when the groundtruth has no arm pixels."""
    denom = counts.fn + counts.tp
    if denom == 0:
        return None
    return 100.0 * counts.fn / denom


def _macro(values):
    if not values:
        return None, None
    arr = np.asarray(values, dtype=np.float64)
    # population std: the records are the whole evaluated set, not a sample
    return float(arr.mean()), float(arr.std(ddof=0))


def aggregate(records, dataset_name):
    """Summarize records: macro mean/std over defined values plus micro
    (pooled-count) metrics. Records are reduced in sample_id order so the
    floating-point result is run-to-run stable."""
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    records = sorted(records, key=lambda r: r.sample_id)

    iou_values = [r.iou_arm for r in records if r.iou_arm is not None]
    miss_values = [r.miss_rate for r in records if r.miss_rate is not None]
    iou_mean, iou_std = _macro(iou_values)
    miss_mean, miss_std = _macro(miss_values)

    pooled = ConfusionCounts(
        tp=sum(r.counts.tp for r in records),
        fp=sum(r.counts.fp for r in records),
        fn=sum(r.counts.fn for r in records),
        tn=sum(r.counts.tn for r in records),
    )
    return MetricSummary(
        dataset_name=dataset_name,
        n_samples=len(records),
        n_undefined=len(records) - len(iou_values),
        iou_mean=iou_mean,
        iou_std=iou_std,
        miss_mean=miss_mean,
        miss_std=miss_std,
        iou_micro=iou_arm(pooled),
        miss_micro=miss_rate(pooled),
        n_undefined_miss=len(records) - len(miss_values),
    )


def occupancy_heatmap(masks, reference_size):
    """Fraction of masks marking each pixel as foreground.

    Args:
        masks: non-empty list of boolean masks; each is nearest-neighbor
            resized to the reference size first.
        reference_size: (width, height) of the output grid.

    Returns:
        float64 array of shape (height, width) with values in [0, 1].
    """
    if not masks:
        raise ValueError("need at least one mask to build a heatmap")
    width, height = reference_size
    acc = np.zeros((height, width), dtype=np.float64)
    for mask in masks:
        acc += resize_mask(mask, width, height)
    return acc / len(masks)


def _fmt_cell(summary):
    if summary.iou_mean is None:
        return "n/a"
    if summary.miss_mean is None:
        return f"{summary.iou_mean:.2f} (n/a)"
    return f"{summary.iou_mean:.2f} ({summary.miss_mean:.2f})"


def summary_to_dict(summary):
    return {
        "dataset_name": summary.dataset_name,
        "n_samples": summary.n_samples,
        "n_undefined": summary.n_undefined,
        "n_undefined_miss": summary.n_undefined_miss,
        "iou_mean": summary.iou_mean,
        "iou_std": summary.iou_std,
        "miss_mean": summary.miss_mean,
        "miss_std": summary.miss_std,
        "iou_micro": summary.iou_micro,
        "miss_micro": summary.miss_micro,
    }


def render_report(summaries, fmt="markdown"):
    """Render per-dataset summaries as markdown (two decimals, IoU with
    miss rate in parentheses), csv, or json (full precision)."""
    if not summaries:
        raise ValueError("cannot render an empty report")
    if fmt == "markdown":
        lines = [
            "| Dataset | Samples | IoU (MissRate) | Micro IoU |",
            "|---|---|---|---|",
        ]
        for s in summaries:
            micro = "n/a" if s.iou_micro is None else f"{s.iou_micro:.2f}"
            lines.append(
                f"| {s.dataset_name} | {s.n_samples} | {_fmt_cell(s)} | {micro} |"
            )
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        fields = list(summary_to_dict(summaries[0]).keys())
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for s in summaries:
            writer.writerow(summary_to_dict(s))
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([summary_to_dict(s) for s in summaries], indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
