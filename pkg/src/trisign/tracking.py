"""Identity-stable hand tracking with carry-forward gap filling.

Hands receive persistent identities "hand1"/"hand2" by nearest-centroid
matching against the previous frame; on the first frame the assignment is
input order.  A frame missing its face or its non-dominant hand borrows
the previous frame's centroid (flagged as carried).  A frame missing the
dominant hand (once a dominant identity has been declared) is rejected,
as is any gap that has no history to fill from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .detections import Centroid, Detection, centroid

HAND1 = "hand1"
HAND2 = "hand2"

MISSING_DOMINANT = "missing_dominant"
MISSING_WITH_NO_HISTORY = "missing_with_no_history"


@dataclass(frozen=True)
class TrackedFrame:
    """One frame's resolved face/hand centroids with carry flags."""

    frame_index: int
    face: Centroid
    hand1: Centroid
    hand2: Centroid
    face_carried: bool = False
    hand1_carried: bool = False
    hand2_carried: bool = False


@dataclass(frozen=True)
class FrameRejection:
    """A dropped frame and why it was dropped."""

    frame_index: int
    reason: str


@dataclass
class TrackState:
    """Mutable per-video tracking state.

    Holds the last accepted frame plus each hand's history of
    hand-to-face distances and the cumulative absolute change of those
    distances (the motion measure dominance is resolved from).
    """

    previous: TrackedFrame | None = None
    position_history_hand1: list[float] = field(default_factory=list)
    position_history_hand2: list[float] = field(default_factory=list)
    cumulative_motion_hand1: float = 0.0
    cumulative_motion_hand2: float = 0.0

    def observe(self, frame: TrackedFrame) -> None:
        """Fold an accepted frame into the motion histories."""
        r1 = distance(frame.hand1, frame.face)
        r2 = distance(frame.hand2, frame.face)
        if self.position_history_hand1:
            self.cumulative_motion_hand1 += abs(
                r1 - self.position_history_hand1[-1])
        if self.position_history_hand2:
            self.cumulative_motion_hand2 += abs(
                r2 - self.position_history_hand2[-1])
        self.position_history_hand1.append(r1)
        self.position_history_hand2.append(r2)
        self.previous = frame


def distance(a: Centroid, b: Centroid) -> float:
    """Euclidean distance between two centroids."""
    return math.hypot(a.x - b.x, a.y - b.y)


def assign_hands(state: TrackState, new_centroids: list[Centroid],
                 ) -> tuple[Centroid | None, Centroid | None]:
    """Map up to two detected hand centroids onto the persistent identities.

    With a previous frame, the centroid nearer the previous hand1 becomes
    hand1 (distance ties: input order for two candidates, hand1 for one).
    Without history the assignment is input order.  Unfilled identities
    come back as None.
    """
    if not new_centroids:
        return None, None
    prev = state.previous
    if len(new_centroids) == 1:
        c = new_centroids[0]
        if prev is None:
            return c, None
        # Single candidate: give it the identity whose previous position
        # is nearer; tie goes to hand1.
        if distance(c, prev.hand1) <= distance(c, prev.hand2):
            return c, None
        return None, c
    a, b = new_centroids[0], new_centroids[1]
    if prev is None:
        return a, b
    if distance(a, prev.hand1) <= distance(b, prev.hand1):
        return a, b
    return b, a


def resolve_frame(state: TrackState, frame_index: int,
                  face: Detection | None, hands: list[Detection],
                  dominant: str | None = None,
                  ) -> TrackedFrame | FrameRejection:
    """Resolve one frame's detections into a TrackedFrame, or reject it.

    ``hands`` holds at most two selected hand detections; ``face`` the
    selected face detection or None.  With ``dominant`` declared, a frame
    whose dominant hand went undetected is rejected before any history
    fill.  Other gaps are filled from the previous accepted frame; a gap
    with no history rejects the frame.  Accepted frames update ``state``.
    """
    if len(hands) > 2:
        raise ValueError(f"expected at most two hands, got {len(hands)}")
    cents = [centroid(d.box) for d in hands]
    c1, c2 = assign_hands(state, cents)

    if dominant == HAND1 and c1 is None:
        return FrameRejection(frame_index, MISSING_DOMINANT)
    if dominant == HAND2 and c2 is None:
        return FrameRejection(frame_index, MISSING_DOMINANT)

    prev = state.previous
    face_c = centroid(face.box) if face is not None else None
    filled_face = face_c if face_c is not None else (
        prev.face if prev is not None else None)
    filled_h1 = c1 if c1 is not None else (
        prev.hand1 if prev is not None else None)
    filled_h2 = c2 if c2 is not None else (
        prev.hand2 if prev is not None else None)
    if filled_face is None or filled_h1 is None or filled_h2 is None:
        return FrameRejection(frame_index, MISSING_WITH_NO_HISTORY)

    frame = TrackedFrame(
        frame_index=frame_index,
        face=filled_face,
        hand1=filled_h1,
        hand2=filled_h2,
        face_carried=face_c is None,
        hand1_carried=c1 is None,
        hand2_carried=c2 is None,
    )
    state.observe(frame)
    return frame


def resolve_dominance(state: TrackState) -> str:
    """Identity of the hand with the greater cumulative motion.

    Ties (including the no-motion degenerate case) resolve to hand1.
    """
    if state.cumulative_motion_hand2 > state.cumulative_motion_hand1:
        return HAND2
    return HAND1
