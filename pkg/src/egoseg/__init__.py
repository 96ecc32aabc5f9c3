"""Egocentric arm segmentation toolkit.

Builds groundtruth from chroma-key footage, composites semi-synthetic
training images, runs color/depth baseline segmenters behind a
scikit-learn style estimator API, and scores any segmenter's masks with
arm-class IoU and miss rate.
"""

from .chroma import (
    ChromaThresholds,
    QcConfig,
    QcVerdict,
    chroma_mask,
    extract_groundtruth,
    mask_foreground,
    qc_screen,
    select_frames,
)
from .color import hsv_to_rgb, rgb_to_hsv
from .compositing import (
    BackgroundPool,
    CaptureMetadata,
    CompositeConfig,
    build_dataset,
    composite,
    prepare_backgrounds,
)
from .errors import ConfigError, EmptyBackgroundPoolError, RasterFormatError, RasterIOError
from .metrics import (
    ConfusionCounts,
    MetricRecord,
    MetricSummary,
    aggregate,
    confusion,
    iou_arm,
    miss_rate,
    occupancy_heatmap,
    render_report,
)
from .morphology import Component, MorphConfig, connected_components, morph_clean
from .resize import resize_image, resize_mask
from .segmenters import (
    ChromaKeySegmenter,
    DepthBandSegmenter,
    SkinColorSegmenter,
    load_prediction_mask,
)

__version__ = "0.1.0"

__all__ = [
    "BackgroundPool",
    "CaptureMetadata",
    "ChromaKeySegmenter",
    "ChromaThresholds",
    "Component",
    "CompositeConfig",
    "ConfigError",
    "ConfusionCounts",
    "DepthBandSegmenter",
    "EmptyBackgroundPoolError",
    "MetricRecord",
    "MetricSummary",
    "MorphConfig",
    "QcConfig",
    "QcVerdict",
    "RasterFormatError",
    "RasterIOError",
    "SkinColorSegmenter",
    "aggregate",
    "build_dataset",
    "chroma_mask",
    "composite",
    "confusion",
    "connected_components",
    "extract_groundtruth",
    "hsv_to_rgb",
    "iou_arm",
    "load_prediction_mask",
    "mask_foreground",
    "miss_rate",
    "morph_clean",
    "occupancy_heatmap",
    "prepare_backgrounds",
    "qc_screen",
    "render_report",
    "resize_image",
    "resize_mask",
    "rgb_to_hsv",
    "select_frames",
]
