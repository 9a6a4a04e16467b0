"""Triangle shape and movement features.

Each tracked frame defines a triangle over (hand1, hand2, face) centroids.
Thirteen values describe it, every one normalized to be invariant under
similarity transforms (translation, rotation, uniform scale):

index  value
0-2    side lengths / perimeter        (hand1-hand2, hand1-face, hand2-face)
3-5    internal angles / pi            (at hand1, at hand2, at face)
6-8    external angles / 2*pi          (same vertex order)
9      height over the hand1-hand2 base / perimeter
10     area / perimeter^2
11-12  per-hand movement / perimeter   (hand1, hand2)

Divisions are guarded by ``max(denominator, GAMMA)`` so every input,
including collinear and coincident point sets, yields finite output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tracking import TrackedFrame, distance

#: Division guard; denominators never drop below this.
GAMMA = 1e-10

#: Number of values per frame.
FEATURE_DIM = 13

#: Human-readable labels, in output order.
FEATURE_NAMES = (
    "side_hand1_hand2", "side_hand1_face", "side_hand2_face",
    "angle_hand1", "angle_hand2", "angle_face",
    "external_hand1", "external_hand2", "external_face",
    "height", "area",
    "movement_hand1", "movement_hand2",
)

_TWO_PI = 2.0 * math.pi


def _guard(denominator: float) -> float:
    return denominator if denominator > GAMMA else GAMMA


def side_lengths(hand1, hand2, face) -> tuple[float, float, float]:
    """Triangle side lengths (hand1-hand2, hand1-face, hand2-face)."""
    return (distance(hand1, hand2), distance(hand1, face),
            distance(hand2, face))


def heron_area(sides: tuple[float, float, float]) -> float:
    """Triangle area from side lengths.

    Evaluates the sorted-side product form, which is algebraically the
    Heron formula sqrt(s(s-a)(s-b)(s-c)) but avoids the cancellation that
    makes the textbook form lose most digits on thin triangles.  Side
    triples violating the triangle inequality (from rounded inputs) clamp
    to zero area.
    """
    a, b, c = sorted(sides, reverse=True)
    product = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if product <= 0.0:
        return 0.0
    return 0.25 * math.sqrt(product)


def triangle_height(area: float, base: float) -> float:
    """Height over ``base`` for a triangle of ``area``; guarded division."""
    return 2.0 * area / _guard(base)


def internal_angles(sides: tuple[float, float, float],
                    ) -> tuple[float, float, float]:
    """Internal angles (at hand1, hand2, face) via the law of cosines.

    The cosine argument is clamped to [-1, 1]; degenerate side pairs fall
    back to the guarded denominator, so the result is always finite.
    """
    d12, d1f, d2f = sides

    def angle(adj_a: float, adj_b: float, opposite: float) -> float:
        cos_val = ((adj_a * adj_a + adj_b * adj_b - opposite * opposite)
                   / _guard(2.0 * adj_a * adj_b))
        return math.acos(max(-1.0, min(1.0, cos_val)))

    return (angle(d12, d1f, d2f),   # at hand1: between d12 and d1f
            angle(d12, d2f, d1f),   # at hand2: between d12 and d2f
            angle(d1f, d2f, d12))   # at face:  between d1f and d2f


def external_angles(internal: tuple[float, float, float],
                    ) -> tuple[float, float, float]:
    """Each vertex's external angle: the sum of the other two internals."""
    a1, a2, a3 = internal
    return (a2 + a3, a1 + a3, a1 + a2)


@dataclass(frozen=True)
class TriangleFeatures:
    """One frame's 13 normalized values."""

    sides_norm: tuple[float, float, float]
    internal_norm: tuple[float, float, float]
    external_norm: tuple[float, float, float]
    height_norm: float
    area_norm: float
    movement: tuple[float, float]

    def as_array(self) -> np.ndarray:
        """The 13 values as a float64 vector, in documented order."""
        return np.array(
            self.sides_norm + self.internal_norm + self.external_norm
            + (self.height_norm, self.area_norm) + self.movement,
            dtype=np.float64)


def feature_vector(frame: TrackedFrame, movement_hand1: float = 0.0,
                   movement_hand2: float = 0.0) -> TriangleFeatures:
    """Compute the 13 features of one tracked frame.

    ``movement_hand1``/``movement_hand2`` are the hands' absolute changes
    of hand-to-face distance since the previous selected frame, in the
    same normalized units as the centroids (pass 0 for the first frame).
    A fully degenerate triangle (zero perimeter) zeroes every geometric
    entry; movement entries always divide by the guarded perimeter.
    """
    sides = side_lengths(frame.hand1, frame.hand2, frame.face)
    perimeter = sides[0] + sides[1] + sides[2]
    den = _guard(perimeter)
    movement = (movement_hand1 / den, movement_hand2 / den)
    if perimeter == 0.0:
        zero3 = (0.0, 0.0, 0.0)
        return TriangleFeatures(zero3, zero3, zero3, 0.0, 0.0, movement)
    area = heron_area(sides)
    height = triangle_height(area, sides[0])
    internal = internal_angles(sides)
    external = external_angles(internal)
    return TriangleFeatures(
        sides_norm=(sides[0] / den, sides[1] / den, sides[2] / den),
        internal_norm=(internal[0] / math.pi, internal[1] / math.pi,
                       internal[2] / math.pi),
        external_norm=(external[0] / _TWO_PI, external[1] / _TWO_PI,
                       external[2] / _TWO_PI),
        height_norm=height / den,
        area_norm=area / (den * den),
        movement=movement,
    )
