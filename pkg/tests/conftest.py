import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from egoseg.image_io import save_rgb  # noqa: E402


def make_chroma_frame(size, arm_center_x, rng):
    """One synthetic chroma-key frame: noisy green backdrop plus a
    skin-and-sleeve arm blob entering from the bottom edge."""
    frame = np.zeros((size, size, 3), np.uint8)
    frame[:, :, 0] = 20
    frame[:, :, 1] = rng.integers(170, 211, size=(size, size))
    frame[:, :, 2] = 30

    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    cy = size * 0.95
    ry, rx = size * 0.42, size * 0.16
    blob = ((yy - cy) / ry) ** 2 + ((xx - arm_center_x) / rx) ** 2 <= 1.0
    sleeve = blob & (yy > size * 0.8)
    skin = blob & ~sleeve
    frame[skin] = (224, 172, 105)
    frame[sleeve] = (60, 60, 190)
    return frame, blob


def write_chroma_frames(frames_dir, n=30, size=240, seed=1234):
    """Deterministic green-screen sequence; returns the per-frame arm masks."""
    frames_dir = Path(frames_dir)
    frames_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    masks = []
    for i in range(n):
        cx = size * (0.3 + 0.4 * i / max(n - 1, 1))
        frame, mask = make_chroma_frame(size, cx, rng)
        save_rgb(frames_dir / f"frame_{i:06d}.png", frame)
        masks.append(mask)
    return masks


def write_square_backgrounds(bg_dir, sizes=((200, 200), (160, 160), (120, 120), (200, 150)), seed=99):
    bg_dir = Path(bg_dir)
    bg_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    for i, (h, w) in enumerate(sizes):
        img = rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)
        save_rgb(bg_dir / f"scene_{i:02d}.png", img)


@pytest.fixture(scope="session")
def chroma_frames_dir(tmp_path_factory):
    """30 bundled synthetic chroma-key frames at 240x240."""
    frames = tmp_path_factory.mktemp("frames")
    write_chroma_frames(frames)
    return frames
