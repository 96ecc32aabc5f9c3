import numpy as np
import pytest
from sklearn.base import clone

from egoseg.chroma import ChromaThresholds, chroma_mask
from egoseg.color import rgb_to_hsv
from egoseg.errors import RasterIOError
from egoseg.image_io import save_mask
from egoseg.segmenters import (
    ChromaKeySegmenter,
    DepthBandSegmenter,
    SkinColorSegmenter,
    load_prediction_mask,
)


def solid(color, size=(4, 4)):
    img = np.zeros(size + (3,), np.uint8)
    img[:] = color
    return img


def test_skin_rejects_pure_green():
    assert not SkinColorSegmenter().predict(solid((0, 255, 0))).any()


def test_skin_rejects_achromatic_gray():
    assert not SkinColorSegmenter().predict(solid((128, 128, 128))).any()


def test_nominal_skin_tone_accepted():
    # derived via the conversion oracle: H ~ 0.094, S ~ 0.53 for (224, 172, 105)
    hsv = rgb_to_hsv(np.array([224, 172, 105], np.uint8))
    assert hsv[0] == pytest.approx(0.0938, abs=5e-4)
    assert hsv[1] == pytest.approx(0.5313, abs=5e-4)
    assert SkinColorSegmenter().predict(solid((224, 172, 105))).all()


def test_skin_matches_band_predicate_on_random_images():
    rng = np.random.default_rng(43)
    seg = SkinColorSegmenter()
    for _ in range(10):
        img = rng.integers(0, 256, size=(24, 24, 3), dtype=np.uint8)
        hsv = rgb_to_hsv(img)
        h, s, v = hsv[..., 0], hsv[..., 1], hsv[..., 2]
        want = np.zeros(h.shape, bool)
        for lo, hi in seg.hue_ranges:
            want |= (h >= lo) & (h <= hi)
        want &= (s >= seg.s_min) & (s <= seg.s_max) & (v >= seg.v_min)
        assert np.array_equal(seg.predict(img), want)


def test_achromatic_pixels_use_zero_hue():
    # delta == 0 defines H = 0: gray is in a band containing 0 only when the
    # saturation gate admits S = 0
    gray = solid((128, 128, 128))
    at_zero = SkinColorSegmenter(hue_ranges=((0.0, 0.1),), s_min=0.0, s_max=1.0, v_min=0.0)
    assert at_zero.predict(gray).all()
    off_zero = SkinColorSegmenter(hue_ranges=((0.2, 0.4),), s_min=0.0, s_max=1.0, v_min=0.0)
    assert not off_zero.predict(gray).any()


def test_skin_wraparound_band_via_split_ranges():
    seg = SkinColorSegmenter(hue_ranges=((0.0, 0.05), (0.95, 1.0)), s_min=0.2, s_max=1.0, v_min=0.0)
    red = solid((255, 10, 10))
    magenta_red = solid((255, 0, 40))  # hue just below 1
    green = solid((0, 255, 0))
    assert seg.predict(red).all()
    assert seg.predict(magenta_red).all()
    assert not seg.predict(green).any()


def test_skin_equals_outside_band_chroma_complement_intervals():
    rng = np.random.default_rng(44)
    thresholds = ChromaThresholds(band_mode="outside")
    seg = SkinColorSegmenter(
        hue_ranges=((0.0, thresholds.h_low), (thresholds.h_high, 1.0)),
        s_min=thresholds.s_min,
        s_max=1.0,
        v_min=0.0,
    )
    for _ in range(10):
        img = rng.integers(0, 256, size=(20, 20, 3), dtype=np.uint8)
        assert np.array_equal(seg.predict(img), chroma_mask(img, thresholds))


def test_depth_default_band_contains_25cm():
    depth = np.full((4, 4), 250, np.uint16)
    assert DepthBandSegmenter(100, 400, fill_holes=False).predict(depth).all()


def test_depth_missing_is_never_foreground():
    depth = np.zeros((4, 4), np.uint16)
    seg = DepthBandSegmenter(1, 65535, fill_holes=False)
    assert not seg.predict(depth).any()


def test_depth_matches_per_pixel_predicate():
    rng = np.random.default_rng(45)
    seg = DepthBandSegmenter(100, 400, fill_holes=False)
    depth = rng.integers(0, 600, size=(32, 32), dtype=np.uint16)
    out = seg.predict(depth)
    for y in range(32):
        for x in range(32):
            d = int(depth[y, x])
            assert out[y, x] == (100 <= d <= 400)


def test_depth_full_band_equals_non_missing():
    rng = np.random.default_rng(46)
    depth = rng.integers(0, 66, size=(16, 16), dtype=np.uint16) * 1000
    out = DepthBandSegmenter(1, 65535, fill_holes=False).predict(depth)
    assert np.array_equal(out, depth != 0)


def test_depth_monotone_in_band_bounds():
    rng = np.random.default_rng(47)
    depth = rng.integers(0, 2000, size=(32, 32), dtype=np.uint16)
    counts = [
        DepthBandSegmenter(100, d_max, fill_holes=False).predict(depth).sum()
        for d_max in (200, 400, 800, 1200, 1600)
    ]
    assert counts == sorted(counts)
    counts = [
        DepthBandSegmenter(d_min, 1600, fill_holes=False).predict(depth).sum()
        for d_min in (50, 100, 200, 400)
    ]
    assert counts == sorted(counts, reverse=True)


def test_depth_fill_holes_closes_dropouts():
    depth = np.full((10, 10), 250, np.uint16)
    depth[5, 5] = 0  # missing measurement inside the arm region
    raw = DepthBandSegmenter(100, 400, fill_holes=False).predict(depth)
    assert not raw[5, 5]
    filled = DepthBandSegmenter(100, 400, fill_holes=True).predict(depth)
    assert filled[5, 5]


def test_chroma_segmenter_equals_pipeline_functions():
    rng = np.random.default_rng(48)
    img = rng.integers(0, 256, size=(24, 24, 3), dtype=np.uint8)
    seg = ChromaKeySegmenter(open_radius=0, close_radius=0, min_component_area=0)
    assert np.array_equal(seg.predict(img), chroma_mask(img))


def test_estimators_clone_and_get_params():
    seg = SkinColorSegmenter(s_min=0.3)
    cloned = clone(seg)
    assert cloned.get_params() == seg.get_params()
    assert DepthBandSegmenter().get_params()["d_max"] == 400
    chroma = ChromaKeySegmenter()
    assert chroma.fit() is chroma


def test_invalid_band_parameters_rejected():
    with pytest.raises(ValueError):
        SkinColorSegmenter(s_min=0.9, s_max=0.1).predict(solid((1, 2, 3)))
    with pytest.raises(ValueError):
        DepthBandSegmenter(d_min=400, d_max=100).predict(np.zeros((2, 2), np.uint16))


def test_load_prediction_mask_verbatim(tmp_path):
    mask = np.zeros((6, 8), bool)
    mask[2:4, 3:6] = True
    path = tmp_path / "pred.png"
    save_mask(path, mask)
    assert np.array_equal(load_prediction_mask(path, 8, 6), mask)


def test_load_prediction_mask_threshold_rule(tmp_path):
    import cv2

    gray = np.full((4, 4), 100, np.uint8)
    gray[1, 1] = 200
    cv2.imwrite(str(tmp_path / "p.png"), gray)
    out = load_prediction_mask(tmp_path / "p.png", 4, 4)
    assert out[1, 1] and out.sum() == 1


def test_load_prediction_mask_size_mismatch(tmp_path):
    mask = np.zeros((3, 3), bool)
    mask[1, 1] = True
    path = tmp_path / "small.png"
    save_mask(path, mask)
    with pytest.raises(RasterIOError, match="resize"):
        load_prediction_mask(path, 6, 6)
    up = load_prediction_mask(path, 6, 6, allow_resize=True)
    # 2x nearest upscale replicates each pixel into a 2x2 block
    assert up.shape == (6, 6)
    assert up[2:4, 2:4].all() and up.sum() == 4


def test_load_prediction_mask_round_trip_idempotent(tmp_path):
    rng = np.random.default_rng(49)
    mask = rng.random((9, 7)) < 0.4
    first = tmp_path / "a.png"
    save_mask(first, mask)
    loaded = load_prediction_mask(first, 7, 9)
    second = tmp_path / "b.png"
    save_mask(second, loaded)
    assert np.array_equal(load_prediction_mask(second, 7, 9), loaded)
