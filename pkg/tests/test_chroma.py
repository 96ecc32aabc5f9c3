import numpy as np
import pytest

from egoseg.chroma import (
    ChromaThresholds,
    QcConfig,
    QcVerdict,
    chroma_mask,
    extract_groundtruth,
    mask_foreground,
    qc_screen,
    select_frames,
)
from egoseg.color import rgb_to_hsv
from egoseg.morphology import MorphConfig, disk

from oracles import brute_close, brute_open


def square_on_green(size=100, lo=40, hi=60, color=(255, 0, 0)):
    img = np.zeros((size, size, 3), np.uint8)
    img[:, :, 1] = 255
    img[lo:hi, lo:hi] = color
    mask = np.zeros((size, size), bool)
    mask[lo:hi, lo:hi] = True
    return img, mask


def test_select_frames_default_stride():
    assert select_frames(30, 5) == [0, 5, 10, 15, 20, 25]


def test_select_frames_identity_and_empty():
    assert select_frames(3, 1) == [0, 1, 2]
    assert select_frames(0, 5) == []


def test_select_frames_rejects_zero_stride():
    with pytest.raises(ValueError):
        select_frames(10, 0)


def test_select_frames_length_is_ceil():
    for count in range(0, 40):
        for stride in range(1, 9):
            assert len(select_frames(count, stride)) == -(-count // stride)


def test_uniform_green_removed():
    img = np.zeros((16, 16, 3), np.uint8)
    img[:, :, 1] = 255
    assert not chroma_mask(img).any()


def test_red_square_recovered_exactly():
    img, square = square_on_green()
    assert np.array_equal(chroma_mask(img), square)


def test_desaturated_green_is_foreground():
    # H ~ 0.30 inside the band but saturation below the gate
    from egoseg.color import hsv_to_rgb

    px = hsv_to_rgb(np.array([0.30, 0.10, 0.8]))
    img = np.tile(px, (4, 4, 1)).astype(np.uint8)
    hsv = rgb_to_hsv(img[0, 0])
    assert 0.22 <= hsv[0] <= 0.45 and hsv[1] < 0.20
    assert chroma_mask(img).all()


def test_inside_band_partition_property():
    rng = np.random.default_rng(19)
    thresholds = ChromaThresholds()
    img = rng.integers(0, 256, size=(32, 32, 3), dtype=np.uint8)
    mask = chroma_mask(img, thresholds)
    hsv = rgb_to_hsv(img)
    band = (
        (hsv[..., 0] >= thresholds.h_low)
        & (hsv[..., 0] <= thresholds.h_high)
        & (hsv[..., 1] >= thresholds.s_min)
    )
    assert np.array_equal(mask, ~band)


def test_outside_band_matches_predicate():
    rng = np.random.default_rng(20)
    thresholds = ChromaThresholds(band_mode="outside")
    img = rng.integers(0, 256, size=(32, 32, 3), dtype=np.uint8)
    mask = chroma_mask(img, thresholds)
    hsv = rgb_to_hsv(img)
    predicate = (
        (hsv[..., 0] <= thresholds.h_low) | (hsv[..., 0] >= thresholds.h_high)
    ) & (hsv[..., 1] >= thresholds.s_min)
    assert np.array_equal(mask, predicate)


def test_full_saturation_gate_unsatisfiable():
    rng = np.random.default_rng(21)
    img = rng.integers(1, 255, size=(16, 16, 3), dtype=np.uint8)
    img = np.minimum(img, 254)
    img[img == 0] = 1  # keep min channel > 0 so saturation < 1 everywhere
    hsv = rgb_to_hsv(img)
    assert hsv[..., 1].max() < 1.0
    mask = chroma_mask(img, ChromaThresholds(s_min=1.0))
    assert mask.all()


def test_extract_noise_removed_by_area_rule():
    img, square = square_on_green()
    for y, x in ((5, 5), (90, 10), (20, 80)):
        img[y, x] = (255, 0, 0)
    out = extract_groundtruth(img, morph=MorphConfig(0, 0, 4))
    assert np.array_equal(out, square)


def test_extract_defaults_match_composed_oracle():
    img, _ = square_on_green()
    for y, x in ((5, 5), (90, 10), (20, 80)):
        img[y, x] = (255, 0, 0)
    out = extract_groundtruth(img)  # open 1, close 2, min area 64
    oracle = brute_close(brute_open(chroma_mask(img), disk(1)), disk(2), 2)
    # all surviving components here are >= 64 px, so the area rule is a no-op
    assert np.array_equal(out, oracle)


def test_extract_all_green_is_empty():
    img = np.zeros((32, 32, 3), np.uint8)
    img[:, :, 1] = 200
    assert not extract_groundtruth(img).any()


def test_extract_disabled_morph_equals_chroma_mask():
    img, _ = square_on_green()
    out = extract_groundtruth(img, morph=MorphConfig(0, 0, 0))
    assert np.array_equal(out, chroma_mask(img))


def test_extract_never_gains_area_without_closing():
    rng = np.random.default_rng(22)
    img = rng.integers(0, 256, size=(24, 24, 3), dtype=np.uint8)
    base = chroma_mask(img)
    out = extract_groundtruth(img, morph=MorphConfig(1, 0, 3))
    assert out.sum() <= base.sum()


def test_mask_foreground_trivial_cases():
    rng = np.random.default_rng(23)
    img = rng.integers(0, 256, size=(6, 6, 3), dtype=np.uint8)
    assert np.array_equal(mask_foreground(img, np.ones((6, 6), bool)), img)
    assert not mask_foreground(img, np.zeros((6, 6), bool)).any()


def test_mask_foreground_single_pixel():
    rng = np.random.default_rng(24)
    img = rng.integers(1, 256, size=(2, 2, 3), dtype=np.uint8)
    mask = np.zeros((2, 2), bool)
    mask[1, 0] = True
    out = mask_foreground(img, mask)
    for y in range(2):
        for x in range(2):
            expected = img[y, x] if mask[y, x] else np.zeros(3, np.uint8)
            assert np.array_equal(out[y, x], expected)


def test_mask_foreground_idempotent_in_mask():
    rng = np.random.default_rng(25)
    img = rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8)
    mask = rng.random((8, 8)) < 0.5
    once = mask_foreground(img, mask)
    assert np.array_equal(mask_foreground(once, mask), once)


def test_mask_foreground_rejects_size_mismatch():
    img = np.zeros((4, 4, 3), np.uint8)
    with pytest.raises(ValueError, match="4x4.*2x2|2x2.*4x4"):
        mask_foreground(img, np.zeros((2, 2), bool))


def test_qc_empty_mask_low_fraction():
    verdict = qc_screen(np.zeros((10, 10), bool), QcConfig(min_fg_fraction=0.02))
    assert not verdict.accepted
    assert verdict.reasons == ("fg-fraction-low",)


def test_qc_bottom_blob_accepted():
    mask = np.zeros((20, 20), bool)
    mask[15:20, 5:13] = True  # 10% area, one component, anchored at the bottom
    verdict = qc_screen(mask, QcConfig())
    assert verdict.accepted
    assert verdict.reasons == ()


def test_qc_too_many_components():
    mask = np.zeros((20, 20), bool)
    for i in range(5):
        mask[2 + 3 * i, 2 + 3 * i] = True  # 5 isolated pixels, 8-separated
    verdict = qc_screen(
        mask, QcConfig(min_fg_fraction=0.0, max_components=3, forbid_top_border=False)
    )
    assert not verdict.accepted
    assert "too-many-components" in verdict.reasons


def test_qc_top_border_rule():
    mask = np.zeros((10, 10), bool)
    mask[0, 4] = True
    mask[5:9, 2:8] = True
    verdict = qc_screen(mask, QcConfig(min_fg_fraction=0.0, max_components=5))
    assert "touches-top-border" in verdict.reasons


def test_qc_verdict_consistency_enforced():
    with pytest.raises(ValueError):
        QcVerdict(accepted=True, reasons=("fg-fraction-low",))


def test_chroma_thresholds_validation():
    with pytest.raises(ValueError):
        ChromaThresholds(h_low=0.5, h_high=0.4)
    with pytest.raises(ValueError):
        ChromaThresholds(band_mode="sideways")
