"""Chroma-key groundtruth extraction from green-screen frames.

A pixel counts as backdrop ("chroma") when its hue falls inside the
configured green band and its saturation clears the gate; the arm
foreground is everything else. The printed form of the band condition
(H <= h1 and H >= h2 simultaneously) is unsatisfiable, so inside-band is
the default reading; the disjunctive reading is kept as the outside-band
mode for experimentation.
"""

from dataclasses import dataclass

import numpy as np

from ._band import band_mask
from .morphology import connected_components, morph_clean
from .validation import check_mask, check_rgb_image, check_same_shape


@dataclass(frozen=True)
class ChromaThresholds:
    """Hue band [h_low, h_high] and saturation floor of the chroma filter."""

    h_low: float = 0.22
    h_high: float = 0.45
    s_min: float = 0.20
    band_mode: str = "inside"

    def __post_init__(self):
        if not 0.0 <= self.h_low < self.h_high <= 1.0:
            raise ValueError(
                f"need 0 <= h_low < h_high <= 1, got {self.h_low}, {self.h_high}"
            )
        if not 0.0 <= self.s_min <= 1.0:
            raise ValueError(f"s_min must be in [0, 1], got {self.s_min}")
        if self.band_mode not in ("inside", "outside"):
            raise ValueError(f"band_mode must be 'inside' or 'outside', got {self.band_mode!r}")


@dataclass(frozen=True)
class QcConfig:
    """Automated screening rules for extracted groundtruth masks."""

    min_fg_fraction: float = 0.01
    max_fg_fraction: float = 0.60
    max_components: int = 3
    forbid_top_border: bool = True

    def __post_init__(self):
        if not 0.0 <= self.min_fg_fraction <= self.max_fg_fraction <= 1.0:
            raise ValueError(
                "need 0 <= min_fg_fraction <= max_fg_fraction <= 1, got "
                f"{self.min_fg_fraction}, {self.max_fg_fraction}"
            )
        if self.max_components < 1:
            raise ValueError(f"max_components must be >= 1, got {self.max_components}")


@dataclass(frozen=True)
class QcVerdict:
    accepted: bool
    reasons: tuple

    def __post_init__(self):
        if self.accepted != (len(self.reasons) == 0):
            raise ValueError("accepted must hold exactly when no rule fired")


def select_frames(frame_count, stride):
    """Indices 0, stride, 2*stride, ... below frame_count."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if frame_count < 0:
        raise ValueError(f"frame_count must be >= 0, got {frame_count}")
    return list(range(0, frame_count, stride))


def chroma_mask(image, thresholds=None):
    """Foreground mask of a chroma-key frame.

    Inside-band mode removes the backdrop: a pixel is chroma when
    h_low <= H <= h_high and S >= s_min, and the mask marks foreground as
    NOT chroma. Outside-band mode marks foreground directly as
    (H <= h_low or H >= h_high) and S >= s_min.
    """
    image = check_rgb_image(image)
    if thresholds is None:
        thresholds = ChromaThresholds()
    if thresholds.band_mode == "inside":
        return band_mask(
            image,
            hue_ranges=((thresholds.h_low, thresholds.h_high),),
            s_min=thresholds.s_min,
            s_max=1.0,
            v_min=0.0,
            invert=True,
        )
    return band_mask(
        image,
        hue_ranges=((0.0, thresholds.h_low), (thresholds.h_high, 1.0)),
        s_min=thresholds.s_min,
        s_max=1.0,
        v_min=0.0,
    )


def extract_groundtruth(image, thresholds=None, morph=None):
    """Chroma mask followed by morphological cleanup: the groundtruth mask."""
    return morph_clean(chroma_mask(image, thresholds), morph)


def mask_foreground(image, mask):
    """Keep the image where the mask is foreground, black elsewhere."""
    image = check_rgb_image(image)
    mask = check_mask(mask)
    check_same_shape(image, mask, "image", "mask")
    return np.where(mask[:, :, None], image, np.uint8(0))


def qc_screen(mask, config=None):
    """Screen a groundtruth mask against the configured rules.

    Fired rule identifiers: fg-fraction-low, fg-fraction-high,
    too-many-components, touches-top-border.
    """
    mask = check_mask(mask)
    if config is None:
        config = QcConfig()
    reasons = []
    fraction = float(np.count_nonzero(mask)) / mask.size
    if fraction < config.min_fg_fraction:
        reasons.append("fg-fraction-low")
    if fraction > config.max_fg_fraction:
        reasons.append("fg-fraction-high")
    if len(connected_components(mask)) > config.max_components:
        reasons.append("too-many-components")
    if config.forbid_top_border and bool(mask[0, :].any()):
        reasons.append("touches-top-border")
    return QcVerdict(accepted=not reasons, reasons=tuple(reasons))
