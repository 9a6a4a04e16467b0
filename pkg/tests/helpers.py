"""Shared builders for the test suite."""

import numpy as np

from trisign import Centroid, TrackedFrame


def tf(index, face, hand1, hand2, **flags):
    """TrackedFrame from plain (x, y) tuples."""
    return TrackedFrame(index, Centroid(*face), Centroid(*hand1),
                        Centroid(*hand2), **flags)


def vertical_video(y_positions, face=(0.5, 0.1), hand1_x=0.5,
                   hand2=(0.5, 0.9)):
    """Video whose hand1 sits directly below the face at given heights.

    With everything on one vertical line, the combined position measure
    changes exactly by hand1's y change, which makes movement arithmetic
    in tests exact.
    """
    return [tf(i, face, (hand1_x, y), hand2)
            for i, y in enumerate(y_positions)]


def random_tracked_video(rng, min_frames=0, max_frames=130):
    """A synthetic tracked video with mixed motion regimes.

    Hands walk vertically through static / slow / fast segments whose
    per-frame steps straddle the default movement thresholds, so the
    suite exercises resting-pose skips, slow-transition discards,
    restarts, padding, and invalidation.
    """
    kind = int(rng.integers(0, 12))
    if kind == 0:
        n = min_frames
    elif kind == 1:
        n = max(1, min_frames)
    else:
        n = int(rng.integers(max(2, min_frames), max_frames))
    if n == 0:
        return []
    y1, y2 = 0.6, 0.7
    ys = []
    while len(ys) < n:
        mode = rng.choice(("static", "slow", "fast"))
        length = int(rng.integers(3, 25))
        if mode == "static":
            step1 = step2 = 0.0
        elif mode == "slow":
            step1 = float(rng.uniform(0.0005, 0.004)) * rng.choice((-1, 1))
            step2 = float(rng.uniform(0.0005, 0.004)) * rng.choice((-1, 1))
        else:
            step1 = float(rng.uniform(0.01, 0.05)) * rng.choice((-1, 1))
            step2 = float(rng.uniform(0.01, 0.05)) * rng.choice((-1, 1))
        for _ in range(length):
            ny1, ny2 = y1 + step1, y2 + step2
            if not 0.35 <= ny1 <= 0.95:
                step1 = -step1
                ny1 = y1 + step1
            if not 0.35 <= ny2 <= 0.95:
                step2 = -step2
                ny2 = y2 + step2
            y1, y2 = ny1, ny2
            ys.append((y1, y2))
            if len(ys) == n:
                break
    return [tf(i, (0.5, 0.2), (0.35, a), (0.65, b))
            for i, (a, b) in enumerate(ys)]


def random_triangle(rng, min_area=1e-3):
    """Uniform coordinate triangle, rejecting near-degenerate draws.

    The 1e-9 comparison tolerances are unreachable in float64 for
    arbitrarily thin triangles (conditioning of the inputs, not of any
    implementation), so the random suites stay above a small area floor;
    the degenerate range is covered by the finiteness fuzz instead.
    """
    while True:
        pts = rng.uniform(0.0, 1.0, 6)
        (x0, y0, x1, y1, x2, y2) = pts
        area = 0.5 * abs((x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0))
        if area >= min_area:
            return (x0, y0), (x1, y1), (x2, y2)


def shoelace(p, q, r):
    """Independent area oracle from vertex coordinates."""
    return 0.5 * abs((q[0] - p[0]) * (r[1] - p[1])
                     - (q[1] - p[1]) * (r[0] - p[0]))


def angle_at(a, b, c):
    """Independent angle oracle: angle at vertex a of triangle abc,
    via normalized edge vectors."""
    v1 = np.array([b[0] - a[0], b[1] - a[1]])
    v2 = np.array([c[0] - a[0], c[1] - a[1]])
    cos_val = float(np.dot(v1, v2)
                    / (np.linalg.norm(v1) * np.linalg.norm(v2)))
    return float(np.arccos(np.clip(cos_val, -1.0, 1.0)))
