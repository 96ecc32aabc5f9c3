"""Baseline segmenters behind a scikit-learn style estimator API.

Each estimator is stateless (fit is a no-op returning self), exposes its
band parameters through get_params/set_params, and predicts a boolean
foreground mask for one raster at a time. Pure functions, safe to share
across threads.
"""

import numpy as np
from sklearn.base import BaseEstimator

from ._band import band_mask
from .chroma import ChromaThresholds, extract_groundtruth
from .errors import RasterIOError
from .image_io import load_mask
from .morphology import MorphConfig, binary_closing
from .resize import resize_mask
from .validation import check_depth_image, check_rgb_image


class SkinColorSegmenter(BaseEstimator):
    """Mark pixels whose hue/saturation/value fall inside a skin band.

    The default band (reds through yellow-oranges, moderate saturation) is
    a tunable starting point, not ground truth; real scenes with skin-like
    surfaces will produce false positives by construction.
    """

    def __init__(self, hue_ranges=((0.0, 0.14),), s_min=0.15, s_max=0.90, v_min=0.20):
        self.hue_ranges = hue_ranges
        self.s_min = s_min
        self.s_max = s_max
        self.v_min = v_min

    def fit(self, X=None, y=None):
        return self

    def _check_params(self):
        for lo, hi in self.hue_ranges:
            if not 0.0 <= lo <= hi <= 1.0:
                raise ValueError(f"hue range [{lo}, {hi}] must satisfy 0 <= lo <= hi <= 1")
        if not 0.0 <= self.s_min <= self.s_max <= 1.0:
            raise ValueError(
                f"need 0 <= s_min <= s_max <= 1, got {self.s_min}, {self.s_max}"
            )
        if not 0.0 <= self.v_min <= 1.0:
            raise ValueError(f"v_min must be in [0, 1], got {self.v_min}")

    def predict(self, image):
        """Boolean skin mask of an (h, w, 3) uint8 RGB image."""
        image = check_rgb_image(image)
        self._check_params()
        return band_mask(image, self.hue_ranges, self.s_min, self.s_max, self.v_min)


class DepthBandSegmenter(BaseEstimator):
    """Mark pixels whose depth lies in [d_min, d_max] millimeters.

    Missing measurements (value 0) are never foreground. With fill_holes
    the resulting mask is closed with a radius-2 disk to bridge sensor
    dropouts.
    """

    def __init__(self, d_min=100, d_max=400, fill_holes=True):
        self.d_min = d_min
        self.d_max = d_max
        self.fill_holes = fill_holes

    def fit(self, X=None, y=None):
        return self

    def _check_params(self):
        if not 0 < self.d_min < self.d_max:
            raise ValueError(
                f"need 0 < d_min < d_max, got {self.d_min}, {self.d_max}"
            )

    def predict(self, depth):
        """Boolean near-range mask of an (h, w) uint16 depth map."""
        depth = check_depth_image(depth)
        self._check_params()
        mask = (depth >= self.d_min) & (depth <= self.d_max)
        if self.fill_holes:
            mask = binary_closing(mask, 2)
        return mask


class ChromaKeySegmenter(BaseEstimator):
    """Green-screen groundtruth extractor as an estimator.

    predict removes the chroma backdrop and applies morphological cleanup;
    set the radii and minimum area to zero for the raw chroma mask.
    """

    def __init__(
        self,
        h_low=0.22,
        h_high=0.45,
        s_min=0.20,
        band_mode="inside",
        open_radius=1,
        close_radius=2,
        min_component_area=64,
    ):
        self.h_low = h_low
        self.h_high = h_high
        self.s_min = s_min
        self.band_mode = band_mode
        self.open_radius = open_radius
        self.close_radius = close_radius
        self.min_component_area = min_component_area

    def fit(self, X=None, y=None):
        return self

    def predict(self, image):
        """Boolean arm-foreground mask of an (h, w, 3) uint8 RGB frame."""
        thresholds = ChromaThresholds(
            h_low=self.h_low,
            h_high=self.h_high,
            s_min=self.s_min,
            band_mode=self.band_mode,
        )
        morph = MorphConfig(
            open_radius=self.open_radius,
            close_radius=self.close_radius,
            min_component_area=self.min_component_area,
        )
        return extract_groundtruth(image, thresholds, morph)


def load_prediction_mask(path, expected_w, expected_h, allow_resize=False):
    """Load a third-party prediction mask in the exchange format.

    The file must be a single-channel 8-bit raster; values >= 128 map to
    foreground. Dimensions must match the expectation unless allow_resize
    is set, in which case the mask is nearest-neighbor resized.
    """
    mask = load_mask(path)
    mh, mw = mask.shape
    if (mw, mh) != (expected_w, expected_h):
        if not allow_resize:
            raise RasterIOError(
                f"{path}: prediction is {mw}x{mh} but groundtruth is "
                f"{expected_w}x{expected_h}; pass --resize-pred to resample"
            )
        mask = resize_mask(mask, expected_w, expected_h)
    return mask
