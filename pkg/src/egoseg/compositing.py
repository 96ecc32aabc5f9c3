"""Semi-synthetic dataset assembly: background pool preparation, matte
compositing, and manifest emission.

Backgrounds are admitted only when square (height == width) and are
bilinear-resized to the target size. Each accepted foreground draws its
background uniformly from the pool with an explicit seed, so a rerun with
the same inputs reproduces the dataset byte for byte.
"""

import json
import logging
import os
import re
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .chroma import QcConfig, qc_screen
from .errors import EmptyBackgroundPoolError, RasterIOError
from .image_io import list_images, load_mask, load_rgb, save_mask, save_rgb
from .parallel import parallel_map
from .resize import resize_image
from .validation import check_mask, check_rgb_image, check_same_shape

logger = logging.getLogger(__name__)

GENDERS = ("male", "female")
ARM_POSES = ("close-hands", "open-palm", "open-dorsum", "left-arm", "right-arm")
SCENARIOS = ("indoors", "outdoors")
OUTFITS = ("outfit1", "outfit2")
SLEEVES = ("long", "short")
ETHNICITIES = ("caucasian", "black", "mixed")


@dataclass(frozen=True)
class CaptureMetadata:
    """Session attributes stamped on every sample of a build."""

    subject_id: str = "unknown"
    gender: str = "male"
    arm_pose: str = "close-hands"
    scenario: str = "indoors"
    outfit: str = "outfit1"
    sleeve: str = "long"
    ethnicity: str = "caucasian"

    def __post_init__(self):
        for value, allowed, field in (
            (self.gender, GENDERS, "gender"),
            (self.arm_pose, ARM_POSES, "arm_pose"),
            (self.scenario, SCENARIOS, "scenario"),
            (self.outfit, OUTFITS, "outfit"),
            (self.sleeve, SLEEVES, "sleeve"),
            (self.ethnicity, ETHNICITIES, "ethnicity"),
        ):
            if value not in allowed:
                raise ValueError(f"{field} must be one of {allowed}, got {value!r}")


@dataclass(frozen=True)
class CompositeConfig:
    seed: int = 0
    feather_radius: int = 0
    copies: int = 1

    def __post_init__(self):
        if self.feather_radius < 0:
            raise ValueError(f"feather_radius must be >= 0, got {self.feather_radius}")
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {self.copies}")


@dataclass(frozen=True)
class BackgroundPool:
    # list of (source name, prepared image at target_size x target_size)
    entries: tuple
    target_size: int

    def __len__(self):
        return len(self.entries)


def prepare_backgrounds(source_dir, target_size):
    """Build the background pool from a directory of scene images.

    Only square sources (height == width) are admitted; each is bilinear
    resized to target_size. Unreadable files are skipped with a warning.
    Entries keep the lexicographic order of their filenames.
    """
    if target_size < 1:
        raise ValueError(f"target_size must be >= 1, got {target_size}")
    entries = []
    for path in list_images(source_dir):
        try:
            image = load_rgb(path)
        except RasterIOError as exc:
            logger.warning("skipping background: %s", exc)
            continue
        h, w = image.shape[:2]
        if h != w:
            continue
        prepared = resize_image(image, target_size, target_size, mode="bilinear")
        entries.append((os.path.basename(path), prepared))
    if not entries:
        raise EmptyBackgroundPoolError(
            f"no square background images found in {source_dir}"
        )
    return BackgroundPool(entries=tuple(entries), target_size=target_size)


def _feather_alpha(mask, radius):
    """Distance-to-boundary ramp inside the foreground, clipped to [0, 1]."""
    dist = ndimage.distance_transform_edt(mask)
    return np.clip(dist / float(radius), 0.0, 1.0)


def composite(foreground, mask, background, feather_radius=0):
    """Blend a masked foreground over a background.

    With feather_radius 0 the matte is hard: foreground pixels come from
    the foreground image, the rest from the background, exactly. A positive
    radius blends alpha * fg + (1 - alpha) * bg along a distance ramp of
    that width inside the foreground, rounding half up per channel.
    """
    foreground = check_rgb_image(foreground, "foreground")
    background = check_rgb_image(background, "background")
    mask = check_mask(mask)
    if not (foreground.shape[:2] == background.shape[:2] == mask.shape):
        raise ValueError(
            "size mismatch: foreground "
            f"{foreground.shape[1]}x{foreground.shape[0]}, mask "
            f"{mask.shape[1]}x{mask.shape[0]}, background "
            f"{background.shape[1]}x{background.shape[0]}"
        )
    if feather_radius < 0:
        raise ValueError(f"feather_radius must be >= 0, got {feather_radius}")
    if feather_radius == 0:
        return np.where(mask[:, :, None], foreground, background)
    alpha = _feather_alpha(mask, feather_radius)[:, :, None]
    blended = alpha * foreground.astype(np.float64) + (1.0 - alpha) * background.astype(
        np.float64
    )
    return np.clip(np.floor(blended + 0.5), 0, 255).astype(np.uint8)


def _index_of(path):
    digits = re.findall(r"\d+", os.path.splitext(os.path.basename(path))[0])
    return int(digits[-1]) if digits else None


def _index_map(directory, prefer_prefix):
    """Map the numeric filename index to a path. When several files share an
    index (e.g. fg_0000.png and gt_0000.png emitted into one extract
    directory), the one carrying the preferred prefix wins."""
    mapping = {}
    for path in list_images(directory):
        idx = _index_of(path)
        if idx is None:
            continue
        current = mapping.get(idx)
        if current is None or os.path.basename(path).startswith(prefer_prefix):
            if current is None or not os.path.basename(current).startswith(prefer_prefix):
                mapping[idx] = path
    return mapping


@dataclass(frozen=True)
class BuildReport:
    n_foregrounds: int
    n_accepted: int
    n_rejected: int
    n_missing: int
    n_samples: int
    seed: int

    def to_dict(self):
        return {
            "n_foregrounds": self.n_foregrounds,
            "n_accepted": self.n_accepted,
            "n_rejected": self.n_rejected,
            "n_missing": self.n_missing,
            "n_samples": self.n_samples,
            "seed": self.seed,
        }


def manifest_record(sample_id, image_path, mask_path, background_source, metadata):
    return {
        "sample_id": sample_id,
        "image_path": image_path,
        "mask_path": mask_path,
        "background_source": background_source,
        "subject_id": metadata.subject_id,
        "gender": metadata.gender,
        "arm_pose": metadata.arm_pose,
        "scenario": metadata.scenario,
        "outfit": metadata.outfit,
        "sleeve": metadata.sleeve,
        "ethnicity": metadata.ethnicity,
    }


def _screen_pair(idx, fg_path, mask_path, pool, qc):
    """Load and QC one foreground/mask pair; pure, safe to parallelize."""
    if mask_path is None:
        return ("missing", idx, "missing mask")
    try:
        fg = load_rgb(fg_path)
        mask = load_mask(mask_path)
    except RasterIOError as exc:
        return ("error", idx, str(exc))
    if fg.shape[:2] != mask.shape:
        return ("error", idx, "foreground/mask size mismatch")
    if fg.shape[:2] != (pool.target_size, pool.target_size):
        return ("error", idx, "foreground size differs from pool target")
    verdict = qc_screen(mask, qc)
    if not verdict.accepted:
        return ("rejected", idx, list(verdict.reasons))
    return ("accepted", idx, (fg, mask))


def build_dataset(
    fg_dir,
    mask_dir,
    pool,
    out_dir,
    metadata=None,
    config=None,
    qc=None,
    config_echo=None,
    threads=1,
):
    """Composite every foreground/mask pair over a pooled background.

    Pairs are matched by the numeric index in their filenames. Masks that
    fail QC are excluded from the manifest and listed under rejected/;
    foregrounds without a matching mask are recorded as missing. Background
    draws consume the seeded generator serially in ascending index (and
    copy) order over accepted samples only, so the output is identical for
    any thread count.

    Returns a BuildReport; writes images/, masks/, rejected/rejected.jsonl,
    manifest.jsonl, and build_report.json inside out_dir.
    """
    if metadata is None:
        metadata = CaptureMetadata()
    if config is None:
        config = CompositeConfig()
    if qc is None:
        qc = QcConfig()
    if len(pool) == 0:
        raise EmptyBackgroundPoolError("background pool is empty")

    fg_map = _index_map(fg_dir, prefer_prefix="fg_")
    mask_map = _index_map(mask_dir, prefer_prefix="gt_")

    os.makedirs(os.path.join(out_dir, "images"), exist_ok=True)
    os.makedirs(os.path.join(out_dir, "masks"), exist_ok=True)
    os.makedirs(os.path.join(out_dir, "rejected"), exist_ok=True)

    indices = sorted(fg_map)
    screened = parallel_map(
        lambda idx: _screen_pair(idx, fg_map[idx], mask_map.get(idx), pool, qc),
        indices,
        threads,
    )

    rejected = []
    missing = []
    errors = []
    jobs = []
    rng = np.random.default_rng(config.seed)
    for status, idx, payload in screened:
        if status == "missing":
            missing.append({"index": idx, "error": payload})
        elif status == "error":
            errors.append({"index": idx, "error": payload})
        elif status == "rejected":
            rejected.append({"index": idx, "reasons": payload})
        else:
            fg, mask = payload
            for copy in range(config.copies):
                bg_name, bg_image = pool.entries[int(rng.integers(0, len(pool)))]
                sample_id = (
                    f"{idx:06d}" if config.copies == 1 else f"{idx:06d}_c{copy}"
                )
                jobs.append((sample_id, fg, mask, bg_name, bg_image))

    def render(job):
        sample_id, fg, mask, bg_name, bg_image = job
        image = composite(fg, mask, bg_image, config.feather_radius)
        image_rel = f"images/{sample_id}.png"
        mask_rel = f"masks/{sample_id}.png"
        save_rgb(os.path.join(out_dir, image_rel), image)
        save_mask(os.path.join(out_dir, mask_rel), mask)
        return manifest_record(sample_id, image_rel, mask_rel, bg_name, metadata)

    manifest_lines = parallel_map(render, jobs, threads)
    n_samples = len(manifest_lines)

    with open(os.path.join(out_dir, "manifest.jsonl"), "w") as fh:
        for record in manifest_lines:
            fh.write(json.dumps(record) + "\n")
    with open(os.path.join(out_dir, "rejected", "rejected.jsonl"), "w") as fh:
        for record in rejected:
            fh.write(json.dumps(record) + "\n")

    report = BuildReport(
        n_foregrounds=len(fg_map),
        n_accepted=len(fg_map) - len(rejected) - len(missing) - len(errors),
        n_rejected=len(rejected),
        n_missing=len(missing) + len(errors),
        n_samples=n_samples,
        seed=config.seed,
    )
    report_doc = report.to_dict()
    report_doc["missing"] = missing + errors
    if config_echo is not None:
        report_doc["config"] = config_echo
    with open(os.path.join(out_dir, "build_report.json"), "w") as fh:
        json.dump(report_doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return report
