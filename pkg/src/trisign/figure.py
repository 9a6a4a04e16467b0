"""Flat-color triangle figures rendered from tracked frames.

Each frame becomes a small RGB image: black background, the
hand1-hand2-face triangle filled white, and a marker stamped on each
centroid (face: green circle, dominant hand: red square, non-dominant
hand: blue upward triangle).  Markers draw over the fill; the face marker
draws last and wins any overlap.

Rendering is deliberately exact: normalized coordinates snap to a
1/256-pixel integer grid (vx = round(x * (width-1) * 256)) and all
containment tests run in integer arithmetic, so the rendered pixel set is
reproducible bit-for-bit and independently checkable.  A pixel (i, j)
samples the grid point (i*256, j*256).  No anti-aliasing.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .sampling import is_padding
from .tracking import HAND1, TrackedFrame

#: Sub-pixel positions per pixel in the snapping grid.
SUBPIXEL = 256

Color = tuple[int, int, int]

BLACK: Color = (0, 0, 0)
WHITE: Color = (255, 255, 255)
GREEN: Color = (0, 255, 0)
RED: Color = (255, 0, 0)
BLUE: Color = (0, 0, 255)


@dataclass(frozen=True)
class FigureSpec:
    """Figure geometry and palette."""

    width: int = 128
    height: int = 128
    marker_radius_px: int = 8
    background: Color = BLACK
    fill_color: Color = WHITE
    face_color: Color = GREEN
    dominant_color: Color = RED
    nondominant_color: Color = BLUE

    def __post_init__(self):
        if self.width < 2 or self.height < 2:
            raise ValueError("figure must be at least 2x2")
        if not 0 < self.marker_radius_px < min(self.width, self.height) // 4:
            raise ValueError("marker_radius_px must be positive and under a "
                             "quarter of the figure size")
        colors = {self.background, self.fill_color, self.face_color,
                  self.dominant_color, self.nondominant_color}
        if len(colors) != 5:
            raise ValueError("figure colors must be pairwise distinct")


DEFAULT_SPEC = FigureSpec()


@dataclass
class FigureImage:
    """An RGB raster; ``pixels`` has shape (height, width, 3) uint8."""

    width: int
    height: int
    pixels: np.ndarray


def snap(value: float, last_index: int) -> int:
    """Snap a normalized coordinate onto the fixed-point pixel grid."""
    return round(value * last_index * SUBPIXEL)


def _ceil_div(num: int, den: int) -> int:
    # den > 0
    return -((-num) // den)


def _fill_triangle(pixels: np.ndarray, vertices, color) -> None:
    """Scanline-fill a triangle given fixed-point vertices.

    Solves the three half-plane constraints per pixel row with integer
    ceil/floor division; boundary pixels (edge functions exactly zero)
    are inside.  A zero signed area fills nothing.
    """
    (x0, y0), (x1, y1), (x2, y2) = vertices
    area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
    if area2 == 0:
        return
    if area2 < 0:
        (x1, y1), (x2, y2) = (x2, y2), (x1, y1)
    height, width = pixels.shape[:2]
    s = SUBPIXEL
    row_lo = max(0, _ceil_div(min(y0, y1, y2), s))
    row_hi = min(height - 1, max(y0, y1, y2) // s)
    edges = ((x0, y0, x1, y1), (x1, y1, x2, y2), (x2, y2, x0, y0))
    for j in range(row_lo, row_hi + 1):
        y = j * s
        lo, hi = 0, width - 1
        feasible = True
        for px, py, qx, qy in edges:
            # E(i) = (qx-px)*(y-py) - (qy-py)*(i*s-px) >= 0, linear in i.
            a = -(qy - py) * s
            b = (qx - px) * (y - py) + (qy - py) * px
            if a == 0:
                if b < 0:
                    feasible = False
                    break
            elif a > 0:
                lo = max(lo, _ceil_div(-b, a))
            else:
                hi = min(hi, (-b) // a)
        if feasible and lo <= hi:
            pixels[j, lo:hi + 1] = color


def _marker_window(center_fixed: int, radius_fixed: int, last_index: int):
    lo = max(0, (center_fixed - radius_fixed) // SUBPIXEL)
    hi = min(last_index, _ceil_div(center_fixed + radius_fixed, SUBPIXEL))
    return lo, hi


def _stamp_marker(pixels: np.ndarray, shape: str, cx: int, cy: int,
                  radius_px: int, color) -> None:
    """Stamp one filled marker; containment tested in fixed-point ints."""
    height, width = pixels.shape[:2]
    r = radius_px * SUBPIXEL
    i_lo, i_hi = _marker_window(cx, r, width - 1)
    j_lo, j_hi = _marker_window(cy, r, height - 1)
    if i_lo > i_hi or j_lo > j_hi:
        return
    dx = np.arange(i_lo, i_hi + 1, dtype=np.int64) * SUBPIXEL - cx
    dy = np.arange(j_lo, j_hi + 1, dtype=np.int64) * SUBPIXEL - cy
    if shape == "circle":
        mask = (dx * dx)[None, :] + (dy * dy)[:, None] <= r * r
    elif shape == "square":
        mask = (np.abs(dx) <= r)[None, :] & (np.abs(dy) <= r)[:, None]
    elif shape == "triangle":
        # Upward triangle: apex at the top of the marker box, base at the
        # bottom; half-width grows linearly with depth from the apex.
        depth = dy[:, None] + r
        mask = (depth >= 0) & (depth <= 2 * r) & (2 * np.abs(dx)[None, :] <= depth)
    else:
        raise ValueError(f"unknown marker shape {shape!r}")
    window = pixels[j_lo:j_hi + 1, i_lo:i_hi + 1]
    window[mask] = color


def render_figure(frame: TrackedFrame, dominant: str = HAND1,
                  spec: FigureSpec = DEFAULT_SPEC) -> FigureImage:
    """Render one tracked frame to a figure.

    ``dominant`` names the hand drawn with the dominant (square) marker.
    A padding placeholder renders as a plain background image.
    """
    pixels = np.empty((spec.height, spec.width, 3), dtype=np.uint8)
    pixels[:] = spec.background
    if is_padding(frame):
        return FigureImage(spec.width, spec.height, pixels)

    lx, ly = spec.width - 1, spec.height - 1
    face = (snap(frame.face.x, lx), snap(frame.face.y, ly))
    hand1 = (snap(frame.hand1.x, lx), snap(frame.hand1.y, ly))
    hand2 = (snap(frame.hand2.x, lx), snap(frame.hand2.y, ly))

    _fill_triangle(pixels, (hand1, hand2, face), spec.fill_color)

    if dominant == HAND1:
        dom_xy, other_xy = hand1, hand2
    else:
        dom_xy, other_xy = hand2, hand1
    radius = spec.marker_radius_px
    _stamp_marker(pixels, "triangle", other_xy[0], other_xy[1], radius,
                  spec.nondominant_color)
    _stamp_marker(pixels, "square", dom_xy[0], dom_xy[1], radius,
                  spec.dominant_color)
    _stamp_marker(pixels, "circle", face[0], face[1], radius,
                  spec.face_color)
    return FigureImage(spec.width, spec.height, pixels)


def encode_png(image: FigureImage) -> bytes:
    """Lossless PNG bytes for a figure."""
    buf = io.BytesIO()
    Image.fromarray(image.pixels, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def decode_png(data: bytes) -> FigureImage:
    """Inverse of encode_png; exact pixel recovery."""
    with Image.open(io.BytesIO(data)) as img:
        pixels = np.asarray(img.convert("RGB"), dtype=np.uint8).copy()
    height, width = pixels.shape[:2]
    return FigureImage(width, height, pixels)
