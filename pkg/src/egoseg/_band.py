"""Fast HSV band predicates over 8-bit RGB images.

Hue and saturation of an 8-bit pixel are ratios of small integers, so every
threshold comparison can be precomputed into lookup tables indexed by those
integers. The tables are built with the identical float64 expressions used
by color.rgb_to_hsv, which makes the single-pass kernel bit-equal to
evaluating the predicate on the converted image while avoiding per-pixel
divisions (the conversion itself is too slow for the real-time latency
budget).
"""

from functools import lru_cache

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _band_kernel(img, v_k, s_tab, hue_r, hue_g, hue_b, zero_hue_ok, invert, out):
    height, width = img.shape[0], img.shape[1]
    for y in range(height):
        for x in range(width):
            r = np.int64(img[y, x, 0])
            g = np.int64(img[y, x, 1])
            b = np.int64(img[y, x, 2])
            maxc = r if r >= g else g
            if b > maxc:
                maxc = b
            minc = r if r <= g else g
            if b < minc:
                minc = b
            if maxc < v_k or not s_tab[maxc, minc]:
                hit = False
            elif maxc == minc:
                hit = zero_hue_ok
            elif maxc == r:
                hit = hue_r[g - b + 255, maxc - minc]
            elif maxc == g:
                hit = hue_g[b - r + 255, maxc - minc]
            else:
                hit = hue_b[r - g + 255, maxc - minc]
            out[y, x] = hit != invert


@lru_cache(maxsize=64)
def _build_tables(hue_ranges, s_min, s_max, v_min):
    """Precompute the integer-indexed threshold tables for one band config.

    hue_ranges is a tuple of (lo, hi) hue intervals on [0, 1]; a pixel hits
    the band when its hue lies in any interval and saturation/value pass
    their gates.
    """
    # smallest 8-bit max-channel whose value component passes v >= v_min
    v_scale = np.arange(256, dtype=np.float64) / 255.0
    passing = np.nonzero(v_scale >= v_min)[0]
    v_k = int(passing[0]) if passing.size else 256

    # saturation gate on (maxc, minc)
    maxc = np.arange(256, dtype=np.float64)[:, None]
    minc = np.arange(256, dtype=np.float64)[None, :]
    s = np.where(maxc > 0, (maxc - minc) / np.where(maxc > 0, maxc, 1.0), 0.0)
    s_tab = (s >= s_min) & (s <= s_max)

    # hue gate per max-channel branch on (numerator + 255, delta)
    q = np.arange(-255, 256, dtype=np.float64)[:, None]
    d = np.arange(256, dtype=np.float64)[None, :]
    dz = np.where(d > 0, d, 1.0)

    def hue_ok(h6):
        h6 = np.where(h6 < 0.0, h6 + 6.0, h6)
        h = np.where(d == 0, 0.0, h6 / 6.0)
        ok = np.zeros(h.shape, dtype=bool)
        for lo, hi in hue_ranges:
            ok |= (h >= lo) & (h <= hi)
        return ok

    hue_r = hue_ok(q / dz)
    hue_g = hue_ok(q / dz + 2.0)
    hue_b = hue_ok(q / dz + 4.0)
    zero_hue_ok = any(lo <= 0.0 <= hi for lo, hi in hue_ranges)

    return v_k, s_tab, hue_r, hue_g, hue_b, zero_hue_ok


def band_mask(image, hue_ranges, s_min, s_max, v_min, invert=False):
    """Per-pixel band membership of an (h, w, 3) uint8 image.

    Returns a bool mask; with invert=True the complement is returned in the
    same pass.
    """
    key = tuple((float(lo), float(hi)) for lo, hi in hue_ranges)
    tables = _build_tables(key, float(s_min), float(s_max), float(v_min))
    out = np.empty(image.shape[:2], dtype=np.bool_)
    _band_kernel(image, *tables, invert, out)
    return out
