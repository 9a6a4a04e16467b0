"""Detection-stream data types, parsing, and per-frame selection rules.

The pipeline consumes JSON-lines detection records, one record per video
frame.  Every frame lists zero or more face/hand detections as scored
axis-aligned bounding boxes.  All geometry downstream of parsing uses
normalized image coordinates ([0, 1] x [0, 1], origin top-left, x right,
y down); pixel-valued boxes are converted at ingestion using the record's
frame size.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

FACE = "face"
HAND = "hand"
_CLASSES = (FACE, HAND)

# Normalized coordinates never legitimately exceed this; anything larger
# means the producer wrote pixel units.
PIXEL_COORD_THRESHOLD = 1.5


class ParseError(ValueError):
    """A malformed detection record. Carries line and field context."""

    def __init__(self, message: str, line_number: int | None = None,
                 field_name: str | None = None):
        where = f"line {line_number}: " if line_number is not None else ""
        what = f"field '{field_name}': " if field_name else ""
        super().__init__(f"{where}{what}{message}")
        self.line_number = line_number
        self.field_name = field_name


@dataclass
class ParseStats:
    """Counters accumulated while parsing one stream."""

    records: int = 0
    clamped_coordinates: int = 0


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box in normalized coordinates."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self):
        if self.x_max < self.x_min or self.y_max < self.y_min:
            raise ValueError(
                f"inverted box: ({self.x_min}, {self.y_min}, "
                f"{self.x_max}, {self.y_max})")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    def area(self) -> float:
        return self.width * self.height

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)


@dataclass(frozen=True)
class Centroid:
    """A point in normalized image coordinates."""

    x: float
    y: float


@dataclass(frozen=True)
class Detection:
    """One scored detection of a face or a hand."""

    class_label: str
    score: float
    box: BoundingBox


@dataclass(frozen=True)
class FrameDetections:
    """All detections reported for one video frame."""

    video_id: str
    frame_index: int
    detections: tuple[Detection, ...]


def clamp01(value: float) -> float:
    return 0.0 if value < 0.0 else (1.0 if value > 1.0 else value)


def _require(record: dict, key: str, line_number: int | None):
    if key not in record:
        raise ParseError("missing", line_number, key)
    return record[key]


def parse_frame(line: str, line_number: int | None = None,
                stats: ParseStats | None = None) -> FrameDetections:
    """Parse one JSON-lines record into a FrameDetections.

    Pixel-valued boxes (any coordinate above PIXEL_COORD_THRESHOLD) are
    divided by the record's frame size.  Coordinates outside [0, 1] after
    conversion are clamped and counted on ``stats`` rather than rejected.

    Raises ParseError naming the offending field and line for anything
    structurally wrong: bad JSON, missing fields, unknown class labels,
    inverted boxes, non-numeric values.
    """
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line_number) from exc
    if not isinstance(record, dict):
        raise ParseError("record is not an object", line_number)

    video_id = _require(record, "video_id", line_number)
    if not isinstance(video_id, str) or not video_id:
        raise ParseError("must be a non-empty string", line_number, "video_id")

    frame_index = _require(record, "frame_index", line_number)
    if not isinstance(frame_index, int) or isinstance(frame_index, bool) \
            or frame_index < 0:
        raise ParseError("must be a non-negative integer", line_number,
                         "frame_index")

    frame_size = _require(record, "frame_size", line_number)
    if (not isinstance(frame_size, (list, tuple)) or len(frame_size) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool)
                       and v > 0 for v in frame_size)):
        raise ParseError("must be [width, height] of positive integers",
                         line_number, "frame_size")
    frame_w, frame_h = frame_size

    raw_detections = _require(record, "detections", line_number)
    if not isinstance(raw_detections, list):
        raise ParseError("must be a list", line_number, "detections")

    detections = []
    for det in raw_detections:
        if not isinstance(det, dict):
            raise ParseError("detection is not an object", line_number,
                             "detections")
        label = _require(det, "class", line_number)
        if label not in _CLASSES:
            raise ParseError(f"unknown class {label!r}", line_number, "class")
        score = _require(det, "score", line_number)
        if not isinstance(score, (int, float)) or isinstance(score, bool) \
                or not math.isfinite(score) or not 0.0 <= score <= 1.0:
            raise ParseError("must be a finite number in [0, 1]",
                             line_number, "score")
        bbox = _require(det, "bbox", line_number)
        if (not isinstance(bbox, (list, tuple)) or len(bbox) != 4
                or not all(isinstance(v, (int, float))
                           and not isinstance(v, bool)
                           and math.isfinite(v) for v in bbox)):
            raise ParseError("must be four finite numbers", line_number,
                             "bbox")
        coords = [float(v) for v in bbox]
        if any(v > PIXEL_COORD_THRESHOLD for v in coords):
            # Producer wrote pixel units; normalize by the frame size.
            coords = [coords[0] / frame_w, coords[1] / frame_h,
                      coords[2] / frame_w, coords[3] / frame_h]
        clamped = [clamp01(v) for v in coords]
        if stats is not None:
            stats.clamped_coordinates += sum(
                1 for a, b in zip(coords, clamped) if a != b)
        if clamped[2] < clamped[0] or clamped[3] < clamped[1]:
            raise ParseError(
                f"x_max/y_max below x_min/y_min: {coords}", line_number,
                "bbox")
        detections.append(Detection(label, float(score),
                                    BoundingBox(*clamped)))

    if stats is not None:
        stats.records += 1
    return FrameDetections(video_id, frame_index, tuple(detections))


def serialize_frame(frame: FrameDetections,
                    frame_size: tuple[int, int] = (512, 512)) -> str:
    """Serialize a FrameDetections back to one JSON line (normalized boxes)."""
    return json.dumps({
        "video_id": frame.video_id,
        "frame_index": frame.frame_index,
        "frame_size": list(frame_size),
        "detections": [
            {"class": d.class_label, "score": d.score,
             "bbox": list(d.box.as_tuple())}
            for d in frame.detections
        ],
    })


def read_stream(lines, stats: ParseStats | None = None) -> list[FrameDetections]:
    """Parse an iterable of JSON lines holding a single video's frames.

    Enforces one video_id per stream and strictly increasing frame indexes.
    Blank lines are skipped.
    """
    frames: list[FrameDetections] = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        frame = parse_frame(line, line_number=number, stats=stats)
        if frames:
            if frame.video_id != frames[0].video_id:
                raise ParseError(
                    f"expected video_id {frames[0].video_id!r}, got "
                    f"{frame.video_id!r}", number, "video_id")
            if frame.frame_index <= frames[-1].frame_index:
                raise ParseError(
                    f"frame_index {frame.frame_index} does not increase past "
                    f"{frames[-1].frame_index}", number, "frame_index")
        frames.append(frame)
    return frames


def select_detections(frame: FrameDetections, confidence: float,
                      ) -> tuple[Detection | None, list[Detection]]:
    """Keep the best face and up to two best hands above the threshold.

    Detections scoring below ``confidence`` are dropped.  The surviving
    face with the highest score wins (ties: earlier record); hands are the
    two highest-scoring, ordered by descending score with ties broken by
    input order.
    """
    faces = [d for d in frame.detections
             if d.class_label == FACE and d.score >= confidence]
    hands = [d for d in frame.detections
             if d.class_label == HAND and d.score >= confidence]
    face = max(faces, key=lambda d: d.score) if faces else None
    # sorted() is stable, so equal scores keep input order.
    hands = sorted(hands, key=lambda d: -d.score)[:2]
    return face, hands


def expand_box(box: BoundingBox, area_factor: float) -> BoundingBox:
    """Grow a box's area by ``area_factor`` about its center, clamped to [0, 1].

    Each side scales by sqrt(area_factor) so the area scales by the factor
    itself.  A degenerate (zero width or height) box is returned unchanged.
    """
    if area_factor < 1.0:
        raise ValueError(f"area_factor must be >= 1, got {area_factor}")
    if area_factor == 1.0 or box.width == 0.0 or box.height == 0.0:
        return box
    scale = math.sqrt(area_factor)
    cx = (box.x_min + box.x_max) / 2.0
    cy = (box.y_min + box.y_max) / 2.0
    half_w = box.width / 2.0 * scale
    half_h = box.height / 2.0 * scale
    return BoundingBox(clamp01(cx - half_w), clamp01(cy - half_h),
                       clamp01(cx + half_w), clamp01(cy + half_h))


def centroid(box: BoundingBox) -> Centroid:
    """Box center: the mean of opposite corners."""
    return Centroid((box.x_min + box.x_max) / 2.0,
                    (box.y_min + box.y_max) / 2.0)
