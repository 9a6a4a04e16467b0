"""End-to-end extraction: detection streams in, feature records out.

Per video the pipeline filters and expands detections, tracks hand
identities twice (a first pass with no dominance declared resolves a
provisional dominant hand from its own sampled frames; the second pass
then enforces the strict missing-dominant rejection), samples the fixed
frame count, and computes the per-frame feature matrix.  Batch runs write
the binary feature file, the metadata sidecar, optional figure PNGs, and
a run report; outputs are deterministic for a given corpus and config.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import mean, median

import numpy as np

from .detections import (FrameDetections, ParseError, ParseStats, expand_box,
                         read_stream, select_detections)
from .features import FEATURE_DIM, feature_vector
from .figure import DEFAULT_SPEC, FigureImage, FigureSpec, encode_png, render_figure
from .manifest import (ManifestEntry, ManifestError, load_manifest,
                       resolve_path, validate_manifest)
from .records import (VideoFeatureRecord, metadata_dict, write_feature_file,
                      write_metadata)
from .sampling import SampledVideo, SamplerConfig, is_padding, sample_video, \
    selected_hand_movements
from .tracking import FrameRejection, TrackState, resolve_frame

NO_DETECTIONS = "no_detections"
NO_ACCEPTED_FRAMES = "no_accepted_frames"


def prepare_frames(frames: list[FrameDetections], cfg: SamplerConfig):
    """Select and expand each frame's detections.

    Returns (prepared, any_detection) where prepared holds
    (frame_index, face_or_none, hands) triples with expanded boxes.
    """
    prepared = []
    any_detection = False
    for frame in frames:
        face, hands = select_detections(frame, cfg.confidence)
        if face is not None or hands:
            any_detection = True
        if face is not None:
            face = face.__class__(face.class_label, face.score,
                                  expand_box(face.box, cfg.box_area_factor))
        hands = [d.__class__(d.class_label, d.score,
                             expand_box(d.box, cfg.box_area_factor))
                 for d in hands]
        prepared.append((frame.frame_index, face, hands))
    return prepared, any_detection


def track_pass(prepared, dominant: str | None = None):
    """Run one tracking pass; returns (accepted frames, rejections by reason)."""
    state = TrackState()
    accepted = []
    rejected: dict[str, int] = {}
    for frame_index, face, hands in prepared:
        result = resolve_frame(state, frame_index, face, hands, dominant)
        if isinstance(result, FrameRejection):
            rejected[result.reason] = rejected.get(result.reason, 0) + 1
        else:
            accepted.append(result)
    return accepted, rejected


def _feature_matrix(sampled: SampledVideo, target_frames: int) -> np.ndarray:
    matrix = np.zeros((target_frames, FEATURE_DIM), dtype=np.float32)
    picked = [f for f in sampled.selected if not is_padding(f)]
    movements = selected_hand_movements(picked)
    for row, (frame, (m1, m2)) in enumerate(zip(picked, movements)):
        matrix[row] = feature_vector(frame, m1, m2).as_array()
    return matrix


def process_video(frames: list[FrameDetections], cfg: SamplerConfig,
                  video_id: str | None = None, label: str | None = None,
                  emit_figures: bool = False,
                  figure_spec: FigureSpec = DEFAULT_SPEC,
                  clamped_coordinates: int = 0,
                  ) -> tuple[VideoFeatureRecord,
                             list[tuple[int, FigureImage]] | None]:
    """Extract one video's feature record (and optionally its figures).

    ``frames`` must belong to a single video in temporal order.  Figures
    come back as (slot, image) pairs for non-padded slots only, or None
    when not requested.
    """
    if video_id is None:
        video_id = frames[0].video_id if frames else ""
    prepared, any_detection = prepare_frames(frames, cfg)

    accepted1, _ = track_pass(prepared, dominant=None)
    provisional = sample_video(accepted1, cfg, video_id=video_id)
    accepted2, rejected = track_pass(prepared, dominant=provisional.dominant)
    sampled = sample_video(accepted2, cfg, video_id=video_id)
    sampled.frames_rejected = rejected

    matrix = _feature_matrix(sampled, cfg.target_frames)
    if not any_detection:
        failure = NO_DETECTIONS
    elif not accepted2:
        failure = NO_ACCEPTED_FRAMES
    else:
        failure = None

    warnings = {}
    if clamped_coordinates:
        warnings["clamped_coordinates"] = clamped_coordinates
    for reason, count in sorted(rejected.items()):
        warnings[f"rejected_{reason}"] = count

    record = VideoFeatureRecord(
        video_id=video_id,
        features=matrix,
        padding_mask=list(sampled.padding_mask),
        valid=sampled.valid,
        dominant=sampled.dominant,
        step_used=sampled.step_used,
        label=label,
        selected_indices=sampled.selected_indices(),
        warnings=warnings,
        failure_reason=failure,
    )
    figures = None
    if emit_figures:
        figures = [(slot, render_figure(frame, sampled.dominant, figure_spec))
                   for slot, frame in enumerate(sampled.selected)
                   if not is_padding(frame)]
    return record, figures


@dataclass
class RunReport:
    """Summary of one batch extraction."""

    total: int = 0
    valid: int = 0
    invalid: int = 0
    rejected_frames: dict[str, int] = field(default_factory=dict)
    clamped_coordinates: int = 0
    errors: list[dict] = field(default_factory=list)
    leakage: list[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "valid": self.valid,
            "invalid": self.invalid,
            "rejected_frames": dict(sorted(self.rejected_frames.items())),
            "clamped_coordinates": self.clamped_coordinates,
            "errors": self.errors,
            "split_leakage": self.leakage,
            "elapsed_seconds": self.elapsed_seconds,
        }


def _extract_one(args) -> dict:
    """Worker body: one manifest entry to a record plus encoded figures."""
    entry, path, cfg, emit_figures, figure_spec = args
    out = {"video_id": entry.video_id, "error": None, "record": None,
           "figures": None}
    stats = ParseStats()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            frames = read_stream(fh, stats=stats)
    except (OSError, ParseError) as exc:
        out["error"] = str(exc)
        return out
    record, figures = process_video(
        frames, cfg, video_id=entry.video_id, label=entry.label,
        emit_figures=emit_figures, figure_spec=figure_spec,
        clamped_coordinates=stats.clamped_coordinates)
    out["record"] = record
    if figures is not None:
        out["figures"] = [(slot, encode_png(img)) for slot, img in figures]
    return out


def run_batch(manifest_path: str | Path, cfg: SamplerConfig,
              out_dir: str | Path, emit_figures: bool = False,
              figure_spec: FigureSpec = DEFAULT_SPEC, workers: int = 1,
              ) -> tuple[RunReport, list[VideoFeatureRecord]]:
    """Extract every manifest entry and write all outputs to ``out_dir``.

    Raises ManifestError when the manifest is unusable (including signer
    split leakage).  Per-video stream failures do not stop the run; they
    are reported and the video is skipped.  Records are written in
    manifest order regardless of worker count.
    """
    manifest_path = Path(manifest_path)
    entries = load_manifest(manifest_path)
    problems = validate_manifest(entries, manifest_path.parent)
    if problems:
        raise ManifestError(problems)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()

    jobs = [(entry, str(resolve_path(entry, manifest_path.parent)), cfg,
             emit_figures, figure_spec) for entry in entries]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_extract_one, jobs, chunksize=8))
    else:
        results = [_extract_one(job) for job in jobs]

    report = RunReport(total=len(entries))
    records: list[VideoFeatureRecord] = []
    figures_dir = out_dir / "figures"
    for result in results:
        if result["error"] is not None:
            report.errors.append({"video_id": result["video_id"],
                                  "error": result["error"]})
            continue
        record: VideoFeatureRecord = result["record"]
        records.append(record)
        report.valid += int(record.valid)
        report.invalid += int(not record.valid)
        report.clamped_coordinates += record.warnings.get(
            "clamped_coordinates", 0)
        for key, count in record.warnings.items():
            if key.startswith("rejected_"):
                reason = key[len("rejected_"):]
                report.rejected_frames[reason] = \
                    report.rejected_frames.get(reason, 0) + count
        if result["figures"] is not None:
            video_dir = figures_dir / record.video_id
            video_dir.mkdir(parents=True, exist_ok=True)
            for slot, png in result["figures"]:
                (video_dir / f"fig_{slot:02d}.png").write_bytes(png)

    write_feature_file(out_dir / "features.bin", records)
    write_metadata(out_dir / "metadata.jsonl", records)
    report.elapsed_seconds = time.perf_counter() - started
    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(report.as_dict(), fh, indent=2)
        fh.write("\n")
    return report, records


@dataclass
class BenchReport:
    """Timing summary; geometry excludes parsing by design."""

    videos: int
    repetitions: int
    parse_seconds: float
    geometry_ms_mean: float
    geometry_ms_median: float
    geometry_ms_p95: float

    def as_dict(self) -> dict:
        return {
            "videos": self.videos,
            "repetitions": self.repetitions,
            "parse_seconds": self.parse_seconds,
            "geometry_ms": {
                "mean": self.geometry_ms_mean,
                "median": self.geometry_ms_median,
                "p95": self.geometry_ms_p95,
            },
        }


def bench(manifest_path: str | Path, cfg: SamplerConfig,
          repetitions: int = 3) -> BenchReport:
    """Time per-video geometry extraction over a manifest.

    Streams are parsed once up front (reported separately); the headline
    numbers time only the post-parse pipeline, single-threaded.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    manifest_path = Path(manifest_path)
    entries = load_manifest(manifest_path)
    problems = validate_manifest(entries, manifest_path.parent)
    if problems:
        raise ManifestError(problems)

    parse_started = time.perf_counter()
    parsed: list[tuple[ManifestEntry, list[FrameDetections]]] = []
    for entry in entries:
        with open(resolve_path(entry, manifest_path.parent),
                  encoding="utf-8") as fh:
            parsed.append((entry, read_stream(fh)))
    parse_seconds = time.perf_counter() - parse_started

    times_ms: list[float] = []
    for _ in range(repetitions):
        for entry, frames in parsed:
            t0 = time.perf_counter()
            process_video(frames, cfg, video_id=entry.video_id,
                          label=entry.label)
            times_ms.append((time.perf_counter() - t0) * 1000.0)

    return BenchReport(
        videos=len(parsed),
        repetitions=repetitions,
        parse_seconds=parse_seconds,
        geometry_ms_mean=mean(times_ms),
        geometry_ms_median=median(times_ms),
        geometry_ms_p95=float(np.percentile(times_ms, 95)),
    )
