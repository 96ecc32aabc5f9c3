"""Raster resizing with fixed, platform-independent conventions.

Nearest mode uses pure integer index arithmetic (source index =
dest_index * src_size // dst_size), so an integer upscale by k replicates
each source pixel into a full k x k block and results are bit-identical
everywhere. Bilinear mode samples at half-pixel centers with edge clamping
and rounds half up to 8 bits.
"""

import numpy as np

from .validation import check_mask, check_rgb_image


def _nearest_indices(dst, src):
    return (np.arange(dst, dtype=np.int64) * src) // dst


def _linear_coords(dst, src):
    x = (np.arange(dst, dtype=np.float64) + 0.5) * (src / dst) - 0.5
    x0 = np.floor(x)
    frac = x - x0
    lo = np.clip(x0.astype(np.int64), 0, src - 1)
    hi = np.clip(x0.astype(np.int64) + 1, 0, src - 1)
    return lo, hi, frac


def resize_image(image, target_w, target_h, mode="bilinear"):
    """Resize an 8-bit RGB image to (target_h, target_w).

    Args:
        image: (h, w, 3) uint8 array.
        target_w, target_h: output size, both >= 1.
        mode: "nearest" or "bilinear".
    """
    image = check_rgb_image(image)
    if target_w < 1 or target_h < 1:
        raise ValueError(f"target size must be >= 1, got {target_w}x{target_h}")
    src_h, src_w = image.shape[:2]
    if (target_w, target_h) == (src_w, src_h) and mode in ("nearest", "bilinear"):
        return image.copy()

    if mode == "nearest":
        ys = _nearest_indices(target_h, src_h)
        xs = _nearest_indices(target_w, src_w)
        return image[ys[:, None], xs[None, :]]

    if mode == "bilinear":
        y0, y1, fy = _linear_coords(target_h, src_h)
        x0, x1, fx = _linear_coords(target_w, src_w)
        img = image.astype(np.float64)
        top = img[y0][:, x0] * (1.0 - fx)[None, :, None] + img[y0][:, x1] * fx[None, :, None]
        bot = img[y1][:, x0] * (1.0 - fx)[None, :, None] + img[y1][:, x1] * fx[None, :, None]
        out = top * (1.0 - fy)[:, None, None] + bot * fy[:, None, None]
        return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)

    raise ValueError(f"unknown resize mode {mode!r}")


def resize_mask(mask, target_w, target_h):
    """Nearest-neighbor resize of a boolean mask."""
    mask = check_mask(mask)
    if target_w < 1 or target_h < 1:
        raise ValueError(f"target size must be >= 1, got {target_w}x{target_h}")
    src_h, src_w = mask.shape
    if (target_w, target_h) == (src_w, src_h):
        return mask.copy()
    ys = _nearest_indices(target_h, src_h)
    xs = _nearest_indices(target_w, src_w)
    return mask[ys[:, None], xs[None, :]]
