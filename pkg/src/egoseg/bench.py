"""Single-image segmentation latency measurement.

Times one synthetic frame through a segmenter, single-threaded, after
warm-up runs that also absorb one-time JIT and table-build costs. The
depth benchmark times only the thresholding (hole filling off): producing
the depth map itself is the sensor's job and is never included.
"""

import time
from dataclasses import dataclass

import numpy as np

from .segmenters import ChromaKeySegmenter, DepthBandSegmenter, SkinColorSegmenter

BENCH_KINDS = ("skin", "depth", "chroma")


@dataclass(frozen=True)
class BenchResult:
    kind: str
    width: int
    height: int
    n_iterations: int
    mean_us: float
    median_us: float
    p95_us: float
    threads: int = 1

    def to_dict(self):
        return {
            "kind": self.kind,
            "width": self.width,
            "height": self.height,
            "n_iterations": self.n_iterations,
            "mean_us": self.mean_us,
            "median_us": self.median_us,
            "p95_us": self.p95_us,
            "threads": self.threads,
        }


def make_bench_rgb(width, height):
    """Deterministic smooth color frame (gradients, like camera content)."""
    xs = (np.arange(width, dtype=np.int64) * 255) // max(width - 1, 1)
    ys = (np.arange(height, dtype=np.int64) * 255) // max(height - 1, 1)
    r = np.broadcast_to(xs[None, :], (height, width))
    g = np.broadcast_to(ys[:, None], (height, width))
    b = (r + g) // 2
    return np.stack([r, g, b], axis=-1).astype(np.uint8)


def make_bench_depth(width, height):
    """Deterministic depth frame: radial range ramp with a missing patch."""
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    cy, cx = (height - 1) / 2.0, (width - 1) / 2.0
    dist = np.sqrt((yy - cy) ** 2 + (xx - cx) ** 2)
    scale = dist / max(dist.max(), 1.0)
    depth = (100.0 + scale * 1900.0).astype(np.uint16)
    depth[: max(height // 8, 1), : max(width // 8, 1)] = 0
    return depth


def _make_segmenter(kind):
    if kind == "skin":
        return SkinColorSegmenter()
    if kind == "depth":
        # hole filling off: the benchmark times the thresholding alone
        return DepthBandSegmenter(fill_holes=False)
    if kind == "chroma":
        return ChromaKeySegmenter(open_radius=0, close_radius=0, min_component_area=0)
    raise ValueError(f"unknown bench kind {kind!r}; expected one of {BENCH_KINDS}")


def run_bench(kind, width=720, height=720, iterations=100, warmup=3):
    """Measure per-image latency of one segmenter kind.

    Returns a BenchResult with microsecond statistics over the timed
    iterations; warm-up iterations are excluded.
    """
    if iterations < 10:
        raise ValueError(f"iterations must be >= 10, got {iterations}")
    if width < 1 or height < 1:
        raise ValueError(f"image size must be >= 1x1, got {width}x{height}")
    segmenter = _make_segmenter(kind)
    frame = make_bench_depth(width, height) if kind == "depth" else make_bench_rgb(width, height)

    for _ in range(warmup):
        segmenter.predict(frame)
    samples = np.empty(iterations, dtype=np.float64)
    for i in range(iterations):
        start = time.perf_counter()
        segmenter.predict(frame)
        samples[i] = time.perf_counter() - start
    samples *= 1e6
    return BenchResult(
        kind=kind,
        width=width,
        height=height,
        n_iterations=iterations,
        mean_us=float(samples.mean()),
        median_us=float(np.median(samples)),
        p95_us=float(np.percentile(samples, 95)),
    )
