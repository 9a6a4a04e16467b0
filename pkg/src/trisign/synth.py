"""Synthetic gesture corpora for testing and benchmarking.

Five built-in gesture templates trace parametric hand trajectories in
front of a static face.  A template expands into a detection stream with
seeded Gaussian centroid jitter, fixed-size boxes, seeded scores, and
optional non-dominant-hand dropout, then into corpus files (per-video
JSON-lines streams plus a manifest with disjoint train/test signers).

Also provides the nearest-class-mean evaluator used to sanity-check that
extracted features separate the gesture classes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .detections import BoundingBox, Detection, FACE, FrameDetections, HAND, \
    clamp01, serialize_frame
from .records import VideoFeatureRecord

#: Half-width of every generated bounding box (boxes are 0.12 x 0.12).
BOX_HALF = 0.06

Point = tuple[float, float]
Trajectory = Callable[[float], Point]


@dataclass(frozen=True)
class GestureTemplate:
    """A parametric two-hand gesture in front of a static face."""

    class_id: str
    face: Point
    hand1: Trajectory
    hand2: Trajectory
    duration_frames: int

    def __post_init__(self):
        if self.duration_frames < 2:
            raise ValueError("duration_frames must be >= 2")


def _smoothstep(t: float) -> float:
    return t * t * (3.0 - 2.0 * t)


def builtin_templates() -> list[GestureTemplate]:
    """The five built-in gesture classes.

    Trajectories stay inside [0.07, 0.93]^2 so the fixed-size boxes never
    clamp at moderate jitter, and every class moves enough for the
    default movement thresholds at its own pace.
    """
    two_pi = 2.0 * math.pi

    def circle1(t: float) -> Point:
        return (0.30 + 0.12 * math.sin(two_pi * t),
                0.58 + 0.12 * math.cos(two_pi * t))

    def circle2(t: float) -> Point:
        return (0.70 - 0.12 * math.sin(two_pi * t),
                0.58 + 0.12 * math.cos(two_pi * t))

    def wave1(t: float) -> Point:
        # one and a half vertical strokes on the far left
        return (0.20, 0.60 - 0.25 * math.sin(1.5 * two_pi * t))

    def sweep1(t: float) -> Point:
        return (0.14 + 0.28 * t, 0.85 - 0.50 * t)

    def sweep2(t: float) -> Point:
        return (0.86 - 0.28 * t, 0.82 - 0.50 * t)

    def cross1(t: float) -> Point:
        return (0.12 + 0.64 * t, 0.88 - 0.52 * t)

    def cross2(t: float) -> Point:
        return (0.88 - 0.64 * t, 0.84 - 0.54 * t)

    def pump1(t: float) -> Point:
        return (0.35 - 0.06 * t, 0.38 + 0.46 * t)

    def pump2(t: float) -> Point:
        return (0.65 + 0.06 * t, 0.38 + 0.46 * t)

    return [
        GestureTemplate("bilateral_circle", (0.50, 0.22), circle1, circle2, 48),
        GestureTemplate("unilateral_wave", (0.50, 0.22), wave1,
                        lambda t: (0.64, 0.30), 40),
        GestureTemplate("lateral_sweep", (0.50, 0.22), sweep1, sweep2, 44),
        GestureTemplate("diagonal_cross", (0.50, 0.22), cross1, cross2, 56),
        GestureTemplate("vertical_pump", (0.50, 0.22), pump1, pump2, 48),
    ]


def _box_at(x: float, y: float) -> BoundingBox:
    return BoundingBox(clamp01(x - BOX_HALF), clamp01(y - BOX_HALF),
                       clamp01(x + BOX_HALF), clamp01(y + BOX_HALF))


def generate(template: GestureTemplate, seed: int, video_id: str | None = None,
             noise_sigma: float = 0.0, dropout: float = 0.0,
             ) -> list[FrameDetections]:
    """Expand a template into one video's detection stream.

    Centroids get zero-mean Gaussian jitter of ``noise_sigma`` per
    coordinate; scores are uniform in [0.7, 0.99]; with ``dropout`` the
    second hand's detection is omitted with that probability per frame.
    Same arguments, same stream.
    """
    if video_id is None:
        video_id = f"{template.class_id}_{seed:06d}"
    rng = np.random.default_rng(seed)
    frames = []
    last = template.duration_frames - 1
    for i in range(template.duration_frames):
        t = i / last
        points = [template.face, template.hand1(t), template.hand2(t)]
        jittered = []
        for x, y in points:
            dx, dy = rng.normal(0.0, noise_sigma, 2) if noise_sigma > 0 \
                else (0.0, 0.0)
            jittered.append((clamp01(x + dx), clamp01(y + dy)))
        scores = rng.uniform(0.7, 0.99, 3)
        detections = [
            Detection(FACE, float(scores[0]), _box_at(*jittered[0])),
            Detection(HAND, float(scores[1]), _box_at(*jittered[1])),
        ]
        if dropout <= 0.0 or rng.random() >= dropout:
            detections.append(
                Detection(HAND, float(scores[2]), _box_at(*jittered[2])))
        frames.append(FrameDetections(video_id, i, tuple(detections)))
    return frames


def write_stream(frames: list[FrameDetections], path: str | Path) -> None:
    """Write one video's frames as JSON lines."""
    with open(path, "w", encoding="utf-8") as fh:
        for frame in frames:
            fh.write(serialize_frame(frame) + "\n")


def make_corpus(out_dir: str | Path, classes: int = 5, per_class: int = 80,
                sigma: float = 0.01, seed: int = 0, dropout: float = 0.0,
                ) -> Path:
    """Generate a labeled corpus under ``out_dir``; returns the manifest path.

    Within each class, even video indexes go to the train split and odd
    ones to test, with disjoint signer pools, so the manifest passes the
    leakage check by construction.
    """
    templates = builtin_templates()
    if not 1 <= classes <= len(templates):
        raise ValueError(f"classes must be in [1, {len(templates)}]")
    out_dir = Path(out_dir)
    streams_dir = out_dir / "detections"
    streams_dir.mkdir(parents=True, exist_ok=True)
    manifest_path = out_dir / "manifest.jsonl"
    with open(manifest_path, "w", encoding="utf-8") as mf:
        for class_idx, template in enumerate(templates[:classes]):
            for k in range(per_class):
                video_id = f"{template.class_id}_{k:03d}"
                video_seed = seed + 10007 * class_idx + k
                frames = generate(template, video_seed, video_id=video_id,
                                  noise_sigma=sigma, dropout=dropout)
                rel_path = f"detections/{video_id}.jsonl"
                write_stream(frames, out_dir / rel_path)
                if k % 2 == 0:
                    split, signer = "train", f"s{k % 4:02d}"
                else:
                    split, signer = "test", f"s9{k % 2}"
                mf.write(json.dumps({
                    "video_id": video_id,
                    "path": rel_path,
                    "label": template.class_id,
                    "split": split,
                    "signer_id": signer,
                }) + "\n")
    return manifest_path


def class_means(train: list[VideoFeatureRecord]) -> dict[str, np.ndarray]:
    """Per-class mean feature matrix, cell-wise over non-padded rows.

    A cell with no non-padded contributor anywhere in the class reads 0.
    """
    sums: dict[str, np.ndarray] = {}
    counts: dict[str, np.ndarray] = {}
    for rec in train:
        if rec.label is None:
            raise ValueError(f"unlabeled training record {rec.video_id!r}")
        rows = ~np.asarray(rec.padding_mask, dtype=bool)
        shape = rec.features.shape
        if rec.label not in sums:
            sums[rec.label] = np.zeros(shape, dtype=np.float64)
            counts[rec.label] = np.zeros(shape[0], dtype=np.int64)
        sums[rec.label][rows] += rec.features[rows].astype(np.float64)
        counts[rec.label] += rows
    means = {}
    for label, total in sums.items():
        n = np.maximum(counts[label], 1)[:, None]
        means[label] = total / n
    return means


def nearest_mean_predictions(train: list[VideoFeatureRecord],
                             test: list[VideoFeatureRecord]) -> list[str]:
    """Classify each test record by nearest class-mean feature matrix.

    Distances sum squared differences over the test record's non-padded
    rows; ties pick the lexicographically smallest label.
    """
    means = class_means(train)
    if len(means) < 2:
        raise ValueError("need at least two training classes")
    labels = sorted(means)
    predictions = []
    for rec in test:
        rows = ~np.asarray(rec.padding_mask, dtype=bool)
        feats = rec.features.astype(np.float64)
        best_label, best_dist = None, None
        for label in labels:
            diff = feats[rows] - means[label][rows]
            dist = float(np.sum(diff * diff))
            if best_dist is None or dist < best_dist:
                best_label, best_dist = label, dist
        predictions.append(best_label)
    return predictions


def eval_nearest_mean(train: list[VideoFeatureRecord],
                      test: list[VideoFeatureRecord]) -> float:
    """Nearest-class-mean accuracy of ``test`` against ``train`` means."""
    if not test:
        raise ValueError("empty test set")
    means_labels = {rec.label for rec in train}
    for rec in test:
        if rec.label not in means_labels:
            raise ValueError(
                f"test class {rec.label!r} absent from training set")
    predictions = nearest_mean_predictions(train, test)
    hits = sum(int(p == rec.label) for p, rec in zip(predictions, test))
    return hits / len(test)
