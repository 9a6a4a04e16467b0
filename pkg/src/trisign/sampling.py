"""Step-based keyframe selection driven by hand-movement history.

A fixed number of frames (default 16) is selected from each video by
visiting every step-th tracked frame and filtering on how much the hands
moved, where movement is the frame-to-frame change of the summed
hand-to-face distances, compared in source-pixel units:

* resting pose: frames from the start are discarded until a visited
  frame's arriving movement exceeds ``eta``; that frame is the first
  selection.  If the very first movement sample already exceeds ``eta``
  the video starts mid-motion and the first visited frame is kept too.
  A pass with a single visited frame keeps it outright.
* slow transitions: once the resting pose is overcome, a visited frame is
  discarded when the last three movement samples are all below
  ``eta_hat``.
* selection stops at the target count.  If a pass comes up short, the
  whole pass restarts with step-1 (all state reset) down to step 1, whose
  result stands.  Missing frames are zero-padded; a video is valid only
  when the padding stays within ``max_padded``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .detections import Centroid
from .tracking import HAND1, TrackState, TrackedFrame, distance, resolve_dominance

#: Placeholder for padded slots: negative frame index, all-zero centroids,
#: everything flagged carried.
PADDING_FRAME = TrackedFrame(
    frame_index=-1,
    face=Centroid(0.0, 0.0),
    hand1=Centroid(0.0, 0.0),
    hand2=Centroid(0.0, 0.0),
    face_carried=True,
    hand1_carried=True,
    hand2_carried=True,
)


def is_padding(frame: TrackedFrame) -> bool:
    return frame.frame_index < 0


@dataclass(frozen=True)
class SamplerConfig:
    """Knobs for selection, tracking and box preparation.

    Movement thresholds are in source pixels; normalized movement is
    scaled by ``source_frame_size`` before comparison.
    """

    target_frames: int = 16
    eta: float = 10.0
    eta_hat: float = 5.0
    max_padded: int = 5
    confidence: float = 0.55
    box_area_factor: float = 1.10
    source_frame_size: int = 512

    def __post_init__(self):
        if self.target_frames < 1:
            raise ValueError("target_frames must be >= 1")
        if not self.eta > self.eta_hat > 0:
            raise ValueError("need eta > eta_hat > 0, got "
                             f"eta={self.eta}, eta_hat={self.eta_hat}")
        if not 0 <= self.max_padded < self.target_frames:
            raise ValueError("max_padded must be in [0, target_frames)")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be in [0, 1]")
        if self.box_area_factor < 1.0:
            raise ValueError("box_area_factor must be >= 1")
        if self.source_frame_size < 1:
            raise ValueError("source_frame_size must be >= 1")


@dataclass(frozen=True)
class PositionSample:
    """Summed hand-to-face distances at one frame (normalized units)."""

    frame_index: int
    rho: float
    rho_hand1: float
    rho_hand2: float


@dataclass(frozen=True)
class MovementSample:
    """Absolute change of position between two consecutive samples.

    ``frame_index`` is the later frame's.  The combined movement is the
    change of the summed distances, not the sum of per-hand changes.
    """

    frame_index: int
    mu: float
    mu_hand1: float
    mu_hand2: float


@dataclass
class SampledVideo:
    """Fixed-length frame selection for one video."""

    video_id: str
    selected: list[TrackedFrame]
    padding_mask: list[bool]
    dominant: str
    valid: bool
    step_used: int
    frames_rejected: dict[str, int] = field(default_factory=dict)

    @property
    def padded_count(self) -> int:
        return sum(self.padding_mask)

    def selected_indices(self) -> list[int]:
        return [f.frame_index for f in self.selected if not is_padding(f)]


def compute_step(total_frames: int, target_frames: int) -> int:
    """Visiting stride: floor(total/target), never below 1."""
    if target_frames < 1:
        raise ValueError("target_frames must be >= 1")
    return max(1, total_frames // target_frames)


def position_of(frame: TrackedFrame) -> PositionSample:
    """Position measure of one frame: both hand-to-face distances summed."""
    r1 = distance(frame.hand1, frame.face)
    r2 = distance(frame.hand2, frame.face)
    return PositionSample(frame.frame_index, r1 + r2, r1, r2)


def movement_series(positions: list[PositionSample]) -> list[MovementSample]:
    """Per-interval movement samples; one shorter than ``positions``."""
    if not positions:
        raise ValueError("positions must be non-empty")
    series = []
    for prev, cur in zip(positions, positions[1:]):
        series.append(MovementSample(
            frame_index=cur.frame_index,
            mu=abs(cur.rho - prev.rho),
            mu_hand1=abs(cur.rho_hand1 - prev.rho_hand1),
            mu_hand2=abs(cur.rho_hand2 - prev.rho_hand2),
        ))
    return series


def _select_pass(frames: list[TrackedFrame], step: int,
                 cfg: SamplerConfig) -> list[TrackedFrame]:
    """One selection pass at a fixed step.  Fresh state every call."""
    visited = frames[::step]
    target = cfg.target_frames
    if len(visited) == 1:
        # No movement evidence at all; keep the lone frame.
        return [visited[0]]
    positions = [position_of(f) for f in visited]
    moves = movement_series(positions)
    scale = float(cfg.source_frame_size)

    selected: list[TrackedFrame] = []
    overcome_at: int | None = None
    for i, move in enumerate(moves):
        frame = visited[i + 1]
        mu_px = move.mu * scale
        if overcome_at is None:
            if mu_px > cfg.eta:
                overcome_at = i
                if i == 0:
                    # Motion from the very start: there is no resting
                    # pose, so the first visited frame belongs in too.
                    selected.append(visited[0])
                    if len(selected) == target:
                        break
                selected.append(frame)
                if len(selected) == target:
                    break
            continue
        if i - overcome_at >= 2:
            window = moves[i - 2:i + 1]
            if all(m.mu * scale < cfg.eta_hat for m in window):
                continue
        selected.append(frame)
        if len(selected) == target:
            break
    return selected


def _dominance_over(frames: list[TrackedFrame]) -> str:
    state = TrackState()
    for frame in frames:
        state.observe(frame)
    return resolve_dominance(state)


def sample_video(frames: list[TrackedFrame], cfg: SamplerConfig,
                 video_id: str = "") -> SampledVideo:
    """Select cfg.target_frames frames from one video's accepted frames.

    ``frames`` must be in temporal order.  Passes run at decreasing steps
    until the target is met or step 1 has run; the result is zero-padded
    to the target length and marked invalid when the padding exceeds
    cfg.max_padded.  Dominance is resolved from the selected frames.
    """
    target = cfg.target_frames
    if not frames:
        return SampledVideo(
            video_id=video_id,
            selected=[PADDING_FRAME] * target,
            padding_mask=[True] * target,
            dominant=HAND1,
            valid=False,
            step_used=1,
        )
    step = compute_step(len(frames), target)
    while True:
        picked = _select_pass(frames, step, cfg)
        if len(picked) >= target or step == 1:
            break
        step -= 1
    pad = target - len(picked)
    return SampledVideo(
        video_id=video_id,
        selected=picked + [PADDING_FRAME] * pad,
        padding_mask=[False] * len(picked) + [True] * pad,
        dominant=_dominance_over(picked),
        valid=pad <= cfg.max_padded,
        step_used=step,
    )


def selected_hand_movements(selected: list[TrackedFrame],
                            ) -> list[tuple[float, float]]:
    """Per-hand movement between consecutive selected frames.

    Returns one (hand1, hand2) pair per frame in normalized units; the
    first frame has no predecessor and reads (0, 0).
    """
    if not selected:
        return []
    positions = [position_of(f) for f in selected]
    pairs = [(0.0, 0.0)]
    for move in movement_series(positions):
        pairs.append((move.mu_hand1, move.mu_hand2))
    return pairs
