"""Corpus manifests: one JSON line per video.

Each entry names a video id, its detection-stream path (relative paths
resolve against the manifest's directory), a class label, a dataset split,
and a signer id.  Validation checks uniqueness, path existence, split
names, and signer leakage across splits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

SPLITS = ("train", "validation", "test")


class ManifestError(ValueError):
    """A manifest that cannot be used; carries all collected problems."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class ManifestEntry:
    video_id: str
    path: str
    label: str
    split: str
    signer_id: str


_REQUIRED = ("video_id", "path", "label", "split", "signer_id")


def load_manifest(path: str | Path) -> list[ManifestEntry]:
    """Parse a manifest file; raises ManifestError on structural problems."""
    problems: list[str] = []
    entries: list[ManifestEntry] = []
    with open(path, "r", encoding="utf-8") as fh:
        for number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                problems.append(f"line {number}: invalid JSON: {exc.msg}")
                continue
            missing = [k for k in _REQUIRED if k not in record]
            if missing:
                problems.append(
                    f"line {number}: missing fields {', '.join(missing)}")
                continue
            bad = [k for k in _REQUIRED
                   if not isinstance(record[k], str) or not record[k]]
            if bad:
                problems.append(
                    f"line {number}: non-string or empty fields "
                    f"{', '.join(bad)}")
                continue
            entries.append(ManifestEntry(
                video_id=record["video_id"],
                path=record["path"],
                label=record["label"],
                split=record["split"],
                signer_id=record["signer_id"],
            ))
    if problems:
        raise ManifestError(problems)
    return entries


def check_split_leakage(entries: list[ManifestEntry]) -> list[str]:
    """Signers appearing in more than one split, as error strings."""
    splits_by_signer: dict[str, set[str]] = {}
    for entry in entries:
        splits_by_signer.setdefault(entry.signer_id, set()).add(entry.split)
    errors = []
    for signer in sorted(splits_by_signer):
        splits = splits_by_signer[signer]
        if len(splits) > 1:
            errors.append(
                f"signer {signer!r} appears in multiple splits: "
                f"{', '.join(sorted(splits))}")
    return errors


def resolve_path(entry: ManifestEntry, base_dir: str | Path) -> Path:
    """Entry's detection-stream path, resolved against the manifest dir."""
    p = Path(entry.path)
    return p if p.is_absolute() else Path(base_dir) / p


def validate_manifest(entries: list[ManifestEntry],
                      base_dir: str | Path) -> list[str]:
    """All validation problems for a loaded manifest (empty list = usable)."""
    problems: list[str] = []
    seen: set[str] = set()
    for entry in entries:
        if entry.video_id in seen:
            problems.append(f"duplicate video_id {entry.video_id!r}")
        seen.add(entry.video_id)
        if entry.split not in SPLITS:
            problems.append(
                f"video {entry.video_id!r}: unknown split {entry.split!r} "
                f"(expected one of {', '.join(SPLITS)})")
        if not resolve_path(entry, base_dir).is_file():
            problems.append(
                f"video {entry.video_id!r}: missing detection file "
                f"{entry.path!r}")
    problems.extend(check_split_leakage(entries))
    return problems
