"""Per-video feature records and their on-disk formats.

The binary feature file is a flat little-endian stream: the 4-byte magic
"SGF1", then per record a u16 id length, the UTF-8 video id, the
frame-major float32 feature matrix (target_frames x FEATURE_DIM), one
mask byte per frame (1 = padded), and one validity byte.  The format
stores no shape header, so readers must know the matrix shape; the
defaults match the pipeline defaults.

Everything the binary file does not carry (label, dominance, step,
warnings, selection report) goes to a JSON-lines metadata sidecar.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .features import FEATURE_DIM

MAGIC = b"SGF1"


class FeatureFileError(ValueError):
    """Raised for a malformed or truncated binary feature file."""


@dataclass(eq=False)
class VideoFeatureRecord:
    """One video's extracted features plus bookkeeping."""

    video_id: str
    features: np.ndarray          # (target_frames, FEATURE_DIM) float32
    padding_mask: list[bool]      # True where the row is padding
    valid: bool
    dominant: str
    step_used: int
    label: str | None = None
    selected_indices: list[int] = field(default_factory=list)
    warnings: dict[str, int] = field(default_factory=dict)
    failure_reason: str | None = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float32)
        if self.features.ndim != 2 or self.features.shape[1] != FEATURE_DIM:
            raise ValueError(
                f"features must be (frames, {FEATURE_DIM}), got "
                f"{self.features.shape}")
        if len(self.padding_mask) != self.features.shape[0]:
            raise ValueError("padding_mask length must match feature rows")

    @property
    def padded_count(self) -> int:
        return sum(self.padding_mask)


def write_feature_file(path: str | Path,
                       records: list[VideoFeatureRecord]) -> None:
    """Write records to the binary feature format."""
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        for rec in records:
            encoded_id = rec.video_id.encode("utf-8")
            if len(encoded_id) > 0xFFFF:
                raise ValueError(f"video id too long: {rec.video_id!r}")
            fh.write(struct.pack("<H", len(encoded_id)))
            fh.write(encoded_id)
            fh.write(np.ascontiguousarray(
                rec.features, dtype="<f4").tobytes())
            fh.write(bytes(int(m) for m in rec.padding_mask))
            fh.write(struct.pack("B", int(rec.valid)))


@dataclass
class FeatureFileEntry:
    """One record as stored binarily (no sidecar fields)."""

    video_id: str
    features: np.ndarray
    padding_mask: list[bool]
    valid: bool


def read_feature_file(path: str | Path, target_frames: int = 16,
                      feature_dim: int = FEATURE_DIM,
                      ) -> list[FeatureFileEntry]:
    """Read a binary feature file written by write_feature_file."""
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise FeatureFileError(f"bad magic {data[:4]!r}, expected {MAGIC!r}")
    entries = []
    offset = 4
    matrix_bytes = target_frames * feature_dim * 4
    while offset < len(data):
        if offset + 2 > len(data):
            raise FeatureFileError("truncated id length")
        (id_len,) = struct.unpack_from("<H", data, offset)
        offset += 2
        end = offset + id_len + matrix_bytes + target_frames + 1
        if end > len(data):
            raise FeatureFileError("truncated record")
        video_id = data[offset:offset + id_len].decode("utf-8")
        offset += id_len
        features = np.frombuffer(
            data, dtype="<f4", count=target_frames * feature_dim,
            offset=offset).reshape(target_frames, feature_dim).copy()
        offset += matrix_bytes
        mask = [bool(b) for b in data[offset:offset + target_frames]]
        offset += target_frames
        valid = bool(data[offset])
        offset += 1
        entries.append(FeatureFileEntry(video_id, features, mask, valid))
    return entries


def metadata_dict(rec: VideoFeatureRecord) -> dict:
    """The sidecar line for one record, with a stable key order."""
    return {
        "video_id": rec.video_id,
        "label": rec.label,
        "dominant": rec.dominant,
        "valid": rec.valid,
        "step_used": rec.step_used,
        "padded_count": rec.padded_count,
        "selected_indices": list(rec.selected_indices),
        "warnings": dict(sorted(rec.warnings.items())),
        "failure_reason": rec.failure_reason,
    }


def write_metadata(path: str | Path,
                   records: list[VideoFeatureRecord]) -> None:
    """Write the JSON-lines metadata sidecar."""
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(metadata_dict(rec)) + "\n")


def read_metadata(path: str | Path) -> list[dict]:
    """Read a metadata sidecar back into dicts."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(json.loads(line))
    return out


def load_records(features_path: str | Path, metadata_path: str | Path,
                 target_frames: int = 16) -> list[VideoFeatureRecord]:
    """Join a binary feature file with its sidecar into full records."""
    entries = read_feature_file(features_path, target_frames=target_frames)
    meta = {m["video_id"]: m for m in read_metadata(metadata_path)}
    records = []
    for entry in entries:
        extra = meta.get(entry.video_id)
        if extra is None:
            raise FeatureFileError(
                f"no metadata for video {entry.video_id!r}")
        records.append(VideoFeatureRecord(
            video_id=entry.video_id,
            features=entry.features,
            padding_mask=entry.padding_mask,
            valid=entry.valid,
            dominant=extra["dominant"],
            step_used=extra["step_used"],
            label=extra.get("label"),
            selected_indices=list(extra.get("selected_indices", [])),
            warnings=dict(extra.get("warnings", {})),
            failure_reason=extra.get("failure_reason"),
        ))
    return records
