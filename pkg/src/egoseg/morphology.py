"""Binary-mask cleanup: disk opening/closing and small-component removal."""

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .validation import check_mask

# 8-connectivity: diagonal neighbors belong to the same component, so thin
# diagonal arm boundaries are not split.
_CONNECTIVITY = np.ones((3, 3), dtype=bool)

# defaults calibrated for 720x720 frames; see MorphConfig.scaled_for
REFERENCE_AREA = 720 * 720


@dataclass(frozen=True)
class MorphConfig:
    """Cleanup parameters; a zero radius or zero area disables that stage."""

    open_radius: int = 1
    close_radius: int = 2
    min_component_area: int = 64

    def __post_init__(self):
        if self.open_radius < 0 or self.close_radius < 0 or self.min_component_area < 0:
            raise ValueError("morphology parameters must be >= 0")

    def scaled_for(self, width, height):
        """Scale the minimum component area from the 720x720 reference to
        another frame size; radii are resolution-independent enough to keep.
        """
        factor = (width * height) / REFERENCE_AREA
        scaled = int(round(self.min_component_area * factor))
        return MorphConfig(self.open_radius, self.close_radius, scaled)


@dataclass(frozen=True)
class Component:
    """One 8-connected foreground component."""

    area: int
    # (y0, x0, y1, x1), end-exclusive
    bbox: tuple


def disk(radius):
    """Discrete disk structuring element (Euclidean radius test)."""
    r = int(radius)
    if r <= 0:
        return np.ones((1, 1), dtype=bool)
    yy, xx = np.mgrid[-r : r + 1, -r : r + 1]
    return (yy * yy + xx * xx) <= radius * radius


def binary_opening(mask, radius):
    """Erosion then dilation by a disk; pixels beyond the border count as
    background."""
    if radius <= 0:
        return mask.copy()
    se = disk(radius)
    eroded = ndimage.binary_erosion(mask, se, border_value=0)
    return ndimage.binary_dilation(eroded, se, border_value=0)


def binary_closing(mask, radius):
    """Dilation then erosion by a disk.

    The mask is padded by the radius first so the result equals the closing
    of the mask embedded in an infinite background plane; clipping the
    dilation at the border instead would erode border-touching regions and
    break open-close idempotence.
    """
    if radius <= 0:
        return mask.copy()
    r = int(radius)
    se = disk(radius)
    padded = np.pad(mask, r, mode="constant", constant_values=False)
    dilated = ndimage.binary_dilation(padded, se, border_value=0)
    eroded = ndimage.binary_erosion(dilated, se, border_value=0)
    return eroded[r:-r, r:-r]


def connected_components(mask):
    """8-connected foreground components as (area, bbox) records, in raster
    label order. Areas sum to the total foreground pixel count."""
    mask = check_mask(mask)
    labels, count = ndimage.label(mask, structure=_CONNECTIVITY)
    if count == 0:
        return []
    areas = np.bincount(labels.ravel())
    boxes = ndimage.find_objects(labels)
    out = []
    for idx, box in enumerate(boxes, start=1):
        ys, xs = box
        out.append(
            Component(area=int(areas[idx]), bbox=(ys.start, xs.start, ys.stop, xs.stop))
        )
    return out


def remove_small_components(mask, min_area):
    """Drop 8-connected foreground components with area < min_area."""
    if min_area <= 0:
        return mask.copy()
    labels, count = ndimage.label(mask, structure=_CONNECTIVITY)
    if count == 0:
        return mask.copy()
    areas = np.bincount(labels.ravel())
    keep = areas >= min_area
    keep[0] = False
    return keep[labels]


def morph_clean(mask, config=None):
    """Denoise a mask: disk opening, disk closing, then small-component
    removal, in that order. Output dimensions are unchanged."""
    mask = check_mask(mask)
    if config is None:
        config = MorphConfig()
    out = binary_opening(mask, config.open_radius)
    out = binary_closing(out, config.close_radius)
    out = remove_small_components(out, config.min_component_area)
    return out
