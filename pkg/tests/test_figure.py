"""Figure rendering: exact pixel sets, determinism, PNG round-trips."""

import numpy as np
import pytest

from trisign import (DEFAULT_SPEC, HAND1, HAND2, PADDING_FRAME, FigureSpec,
                     decode_png, encode_png, render_figure)
from trisign.figure import snap
from helpers import tf


def expected_image(frame, dominant, spec):
    """Per-pixel integer oracle for the whole figure.

    Every pixel is classified directly from the three half-plane edge
    tests and the marker containment predicates, with no scanline or
    interval logic shared with the renderer.
    """
    w, h = spec.width, spec.height
    lx, ly = w - 1, h - 1
    face = (round(frame.face.x * lx * 256), round(frame.face.y * ly * 256))
    h1 = (round(frame.hand1.x * lx * 256), round(frame.hand1.y * ly * 256))
    h2 = (round(frame.hand2.x * lx * 256), round(frame.hand2.y * ly * 256))

    verts = [h1, h2, face]
    (x0, y0), (x1, y1), (x2, y2) = verts
    area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
    if area2 < 0:
        verts[1], verts[2] = verts[2], verts[1]

    xs = np.arange(w, dtype=np.int64) * 256
    ys = np.arange(h, dtype=np.int64) * 256
    grid_x, grid_y = np.meshgrid(xs, ys)

    if area2 == 0:
        fill = np.zeros((h, w), dtype=bool)
    else:
        fill = np.ones((h, w), dtype=bool)
        for k in range(3):
            px, py = verts[k]
            qx, qy = verts[(k + 1) % 3]
            edge = (qx - px) * (grid_y - py) - (qy - py) * (grid_x - px)
            fill &= edge >= 0

    r = spec.marker_radius_px * 256

    def circle(c):
        return (grid_x - c[0]) ** 2 + (grid_y - c[1]) ** 2 <= r * r

    def square(c):
        return (np.abs(grid_x - c[0]) <= r) & (np.abs(grid_y - c[1]) <= r)

    def marker_triangle(c):
        depth = (grid_y - c[1]) + r
        return ((depth >= 0) & (depth <= 2 * r)
                & (2 * np.abs(grid_x - c[0]) <= depth))

    dom, other = (h1, h2) if dominant == HAND1 else (h2, h1)
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:] = spec.background
    img[fill] = spec.fill_color
    img[marker_triangle(other)] = spec.nondominant_color
    img[square(dom)] = spec.dominant_color
    img[circle(face)] = spec.face_color
    return img


def test_random_frames_match_pixel_oracle():
    rng = np.random.default_rng(101)
    for i in range(50):
        pts = rng.uniform(0.0, 1.0, (3, 2))
        frame = tf(0, face=tuple(pts[0]), hand1=tuple(pts[1]),
                   hand2=tuple(pts[2]))
        dominant = HAND1 if i % 2 == 0 else HAND2
        got = render_figure(frame, dominant=dominant)
        want = expected_image(frame, dominant, DEFAULT_SPEC)
        assert np.array_equal(got.pixels, want)


def test_slow_integer_oracle_subset():
    # A handful of frames checked pixel by pixel with plain Python ints,
    # independent of numpy semantics.
    rng = np.random.default_rng(7)
    spec = FigureSpec(width=48, height=40, marker_radius_px=5)
    for _ in range(4):
        pts = rng.uniform(0.0, 1.0, (3, 2))
        frame = tf(0, face=tuple(pts[0]), hand1=tuple(pts[1]),
                   hand2=tuple(pts[2]))
        got = render_figure(frame, dominant=HAND2, spec=spec).pixels
        want = expected_image(frame, HAND2, spec)
        assert np.array_equal(got, want)
        lx, ly = spec.width - 1, spec.height - 1
        verts = [
            (round(pts[1][0] * lx * 256), round(pts[1][1] * ly * 256)),
            (round(pts[2][0] * lx * 256), round(pts[2][1] * ly * 256)),
            (round(pts[0][0] * lx * 256), round(pts[0][1] * ly * 256)),
        ]
        (x0, y0), (x1, y1), (x2, y2) = verts
        area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
        if area2 < 0:
            verts[1], verts[2] = verts[2], verts[1]
        white = np.all(got == np.array(spec.fill_color, np.uint8), axis=2)
        black = np.all(got == np.array(spec.background, np.uint8), axis=2)
        for j in range(spec.height):
            for i in range(spec.width):
                x, y = i * 256, j * 256
                inside = area2 != 0
                for k in range(3):
                    px, py = verts[k]
                    qx, qy = verts[(k + 1) % 3]
                    if (qx - px) * (y - py) - (qy - py) * (x - px) < 0:
                        inside = False
                        break
                if white[j, i]:
                    assert inside
                elif black[j, i]:
                    assert not inside


def test_snap_matches_documented_formula():
    assert snap(0.0, 127) == 0
    assert snap(1.0, 127) == 127 * 256
    assert snap(0.5, 127) == round(0.5 * 127 * 256)


def test_padding_frame_renders_background_only():
    img = render_figure(PADDING_FRAME)
    assert img.pixels.shape == (128, 128, 3)
    assert np.all(img.pixels == 0)


def test_degenerate_triangle_markers_only():
    # collinear points: no fill, markers still stamped
    frame = tf(0, face=(0.8, 0.5), hand1=(0.2, 0.5), hand2=(0.5, 0.5))
    img = render_figure(frame).pixels
    white = np.all(img == 255, axis=2)
    assert not white.any()
    green = np.all(img == np.array([0, 255, 0], np.uint8), axis=2)
    red = np.all(img == np.array([255, 0, 0], np.uint8), axis=2)
    blue = np.all(img == np.array([0, 0, 255], np.uint8), axis=2)
    assert green.any() and red.any() and blue.any()


def test_marker_occlusion_when_centroids_coincide():
    # all three centroids at the exact center of pixel (64, 64)
    v = (64 * 256) / (127 * 256)
    frame = tf(0, face=(v, v), hand1=(v, v), hand2=(v, v))
    img = render_figure(frame).pixels
    # face circle draws last and wins the center
    assert tuple(img[64, 64]) == (0, 255, 0)
    # square corner pokes out beyond the circle
    r = DEFAULT_SPEC.marker_radius_px
    assert tuple(img[64 + r, 64 + r]) == (255, 0, 0)
    blue = np.all(img == np.array([0, 0, 255], np.uint8), axis=2)
    assert not blue.any()  # non-dominant marker fully covered
    white = np.all(img == 255, axis=2)
    assert not white.any()
    assert np.array_equal(img, expected_image(frame, HAND1, DEFAULT_SPEC))


def test_mirror_symmetry_on_quarter_pixel_grid():
    # coordinates k/508 snap to exact quarter-pixel positions, so the
    # horizontal mirror is representable without rounding drift
    rng = np.random.default_rng(13)
    for _ in range(20):
        ks = rng.integers(0, 509, size=(3, 2))
        pts = ks / 508.0
        frame = tf(0, face=tuple(pts[0]), hand1=tuple(pts[1]),
                   hand2=tuple(pts[2]))
        mirrored = tf(0, face=(1 - pts[0][0], pts[0][1]),
                      hand1=(1 - pts[1][0], pts[1][1]),
                      hand2=(1 - pts[2][0], pts[2][1]))
        a = render_figure(frame).pixels
        b = render_figure(mirrored).pixels
        assert np.array_equal(b, a[:, ::-1])


def test_non_square_figure():
    spec = FigureSpec(width=64, height=32, marker_radius_px=3)
    frame = tf(0, face=(0.5, 0.2), hand1=(0.2, 0.8), hand2=(0.8, 0.7))
    got = render_figure(frame, spec=spec)
    assert got.pixels.shape == (32, 64, 3)
    assert np.array_equal(got.pixels, expected_image(frame, HAND1, spec))


def test_png_round_trip_and_determinism():
    frame = tf(0, face=(0.5, 0.2), hand1=(0.25, 0.7), hand2=(0.75, 0.65))
    img = render_figure(frame)
    data1 = encode_png(img)
    data2 = encode_png(render_figure(frame))
    assert data1 == data2
    back = decode_png(data1)
    assert back.width == img.width and back.height == img.height
    assert np.array_equal(back.pixels, img.pixels)


def test_spec_validation():
    with pytest.raises(ValueError):
        FigureSpec(width=1)
    with pytest.raises(ValueError):
        FigureSpec(marker_radius_px=0)
    with pytest.raises(ValueError):
        FigureSpec(marker_radius_px=32)
    with pytest.raises(ValueError):
        FigureSpec(fill_color=(0, 0, 0))  # collides with background
