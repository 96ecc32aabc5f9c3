"""RGB <-> HSV conversion on the unit-interval hue scale.

Hue is normalized to [0, 1) with red at 0, so green sits at 1/3 and the
chroma band thresholds can be used verbatim. Achromatic pixels (max == min)
are defined as H = 0, S = 0. All intermediate arithmetic is float64, with
each division a ratio of exact 8-bit integers, so results are reproducible
across platforms.
"""

import numpy as np

from .validation import check_rgb_image


def rgb_to_hsv(rgb):
    """Convert 8-bit RGB values to float64 HSV in [0, 1].

    Args:
        rgb: array of shape (..., 3) with uint8 channel values; a single
            (r, g, b) triple is accepted as shape (3,).

    Returns:
        float64 array of the same shape with (h, s, v) in the last axis,
        h in [0, 1) and s, v in [0, 1].
    """
    arr = np.asarray(rgb)
    if arr.shape[-1] != 3:
        raise ValueError(f"expected channel-last RGB, got shape {arr.shape}")
    arr = arr.astype(np.float64)
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]

    maxc = np.maximum(np.maximum(r, g), b)
    minc = np.minimum(np.minimum(r, g), b)
    delta = maxc - minc

    v = maxc / 255.0
    s = np.where(maxc > 0, delta / np.where(maxc > 0, maxc, 1.0), 0.0)

    dz = np.where(delta > 0, delta, 1.0)
    h6 = np.where(
        maxc == r,
        (g - b) / dz,
        np.where(maxc == g, (b - r) / dz + 2.0, (r - g) / dz + 4.0),
    )
    h6 = np.where(h6 < 0.0, h6 + 6.0, h6)
    h = np.where(delta == 0, 0.0, h6 / 6.0)

    return np.stack([h, s, v], axis=-1)


def hsv_to_rgb(hsv):
    """Convert float HSV in [0, 1] back to 8-bit RGB (round half up)."""
    arr = np.asarray(hsv, dtype=np.float64)
    if arr.shape[-1] != 3:
        raise ValueError(f"expected channel-last HSV, got shape {arr.shape}")
    h, s, v = arr[..., 0], arr[..., 1], arr[..., 2]

    h6 = (h % 1.0) * 6.0
    i = np.floor(h6).astype(np.int64) % 6
    f = h6 - np.floor(h6)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))

    r = np.choose(i, [v, q, p, p, t, v])
    g = np.choose(i, [t, v, v, q, p, p])
    b = np.choose(i, [p, p, t, v, v, q])

    out = np.stack([r, g, b], axis=-1) * 255.0
    return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)


def image_to_hsv(image):
    """rgb_to_hsv with full RGB-image validation."""
    return rgb_to_hsv(check_rgb_image(image))
