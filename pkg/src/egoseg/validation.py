"""Input validation helpers shared by all estimators and pipeline functions."""

import numpy as np


def check_rgb_image(image, name="image"):
    """Validate an 8-bit RGB raster of shape (h, w, 3).

    Returns the array unchanged so calls can be inlined.
    """
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(
            f"{name} must have shape (h, w, 3), got {arr.shape}"
        )
    if arr.dtype != np.uint8:
        raise ValueError(f"{name} must be uint8, got {arr.dtype}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1, got {arr.shape[:2]}")
    return arr


def check_mask(mask, name="mask"):
    """Validate a boolean foreground mask of shape (h, w)."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-d, got shape {arr.shape}")
    if arr.dtype != np.bool_:
        raise ValueError(f"{name} must be bool, got {arr.dtype}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1, got {arr.shape}")
    return arr


def check_depth_image(depth, name="depth"):
    """Validate a 16-bit depth raster (millimeters, 0 = missing)."""
    arr = np.asarray(depth)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-d, got shape {arr.shape}")
    if arr.dtype != np.uint16:
        raise ValueError(f"{name} must be uint16, got {arr.dtype}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1, got {arr.shape}")
    return arr


def check_same_shape(a, b, a_name="first", b_name="second"):
    """Reject rasters whose (h, w) differ, reporting both sizes."""
    if a.shape[:2] != b.shape[:2]:
        raise ValueError(
            f"{a_name} is {a.shape[1]}x{a.shape[0]} but {b_name} is "
            f"{b.shape[1]}x{b.shape[0]}; sizes must match"
        )
