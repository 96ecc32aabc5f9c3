"""Raster file exchange formats.

Images are 8-bit RGB PNG/JPEG. Masks are single-channel 8-bit PNG with
0 = background and 255 = foreground; on load any value >= 128 maps to
foreground. Depth maps are single-channel 16-bit PNG, value = millimeters,
0 = missing. Heatmaps are single-channel 16-bit PNG with
value = round(occupancy * 65535), rounding half up.
"""

import os

import cv2
import numpy as np

from .errors import RasterFormatError, RasterIOError
from .validation import check_depth_image, check_mask, check_rgb_image

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")


def load_rgb(path):
    """Load an 8-bit color image as an (h, w, 3) RGB array."""
    data = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if data is None:
        raise RasterIOError(f"cannot read image: {path}")
    if data.dtype != np.uint8 or data.ndim != 3 or data.shape[2] not in (3, 4):
        raise RasterFormatError(
            f"{path}: expected 8-bit color image, got dtype {data.dtype} "
            f"shape {data.shape}"
        )
    if data.shape[2] == 4:
        data = data[:, :, :3]
    return cv2.cvtColor(data, cv2.COLOR_BGR2RGB)


def save_rgb(path, image):
    image = check_rgb_image(image)
    if not cv2.imwrite(str(path), cv2.cvtColor(image, cv2.COLOR_RGB2BGR)):
        raise RasterIOError(f"cannot write image: {path}")


def load_mask(path):
    """Load a single-channel 8-bit mask PNG as a bool array (>=128 rule)."""
    data = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if data is None:
        raise RasterIOError(f"cannot read mask: {path}")
    if data.ndim != 2:
        raise RasterFormatError(
            f"{path}: mask must be single-channel, got shape {data.shape}"
        )
    if data.dtype != np.uint8:
        raise RasterFormatError(f"{path}: mask must be 8-bit, got dtype {data.dtype}")
    return data >= 128


def save_mask(path, mask):
    mask = check_mask(mask)
    data = np.where(mask, np.uint8(255), np.uint8(0))
    if not cv2.imwrite(str(path), data):
        raise RasterIOError(f"cannot write mask: {path}")


def load_depth(path):
    """Load a single-channel 16-bit depth PNG (millimeters, 0 = missing)."""
    data = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if data is None:
        raise RasterIOError(f"cannot read depth map: {path}")
    if data.ndim != 2 or data.dtype != np.uint16:
        raise RasterFormatError(
            f"{path}: expected single-channel 16-bit depth, got dtype "
            f"{data.dtype} shape {data.shape}"
        )
    return data


def save_depth(path, depth):
    depth = check_depth_image(depth)
    if not cv2.imwrite(str(path), depth):
        raise RasterIOError(f"cannot write depth map: {path}")


def save_heatmap(path, occupancy):
    """Encode per-pixel occupancy in [0, 1] as a 16-bit PNG (round half up)."""
    occ = np.asarray(occupancy, dtype=np.float64)
    if occ.ndim != 2:
        raise ValueError(f"occupancy must be 2-d, got shape {occ.shape}")
    if occ.min() < 0.0 or occ.max() > 1.0:
        raise ValueError("occupancy values must lie in [0, 1]")
    data = np.floor(occ * 65535.0 + 0.5).astype(np.uint16)
    if not cv2.imwrite(str(path), data):
        raise RasterIOError(f"cannot write heatmap: {path}")


def load_heatmap(path):
    """Decode a 16-bit occupancy PNG back to floats in [0, 1]."""
    data = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if data is None or data.ndim != 2 or data.dtype != np.uint16:
        raise RasterIOError(f"cannot read heatmap: {path}")
    return data.astype(np.float64) / 65535.0


def list_images(directory, extensions=IMAGE_EXTENSIONS):
    """Image files directly inside a directory, lexicographically sorted."""
    try:
        names = sorted(os.listdir(directory))
    except OSError as exc:
        raise RasterIOError(f"cannot list directory {directory}: {exc}") from exc
    return [
        os.path.join(directory, n)
        for n in names
        if os.path.splitext(n)[1].lower() in extensions
    ]
