"""Keyframe selection: stepping, resting pose, slow transitions, restarts."""

import math

import numpy as np
import pytest

from trisign import (HAND1, HAND2, PADDING_FRAME, SamplerConfig, compute_step,
                     is_padding, movement_series, position_of, sample_video,
                     selected_hand_movements)
from helpers import random_tracked_video, tf, vertical_video
from reference_sampler import reference_dominance, reference_select

CFG = SamplerConfig()


def test_compute_step_reference_cases():
    assert compute_step(39, 16) == 2
    assert compute_step(16, 16) == 1
    assert compute_step(15, 16) == 1
    assert compute_step(160, 16) == 10
    assert compute_step(0, 16) == 1
    assert compute_step(31, 16) == 1
    assert compute_step(32, 16) == 2


def test_position_and_movement_exact_arithmetic():
    frames = vertical_video([0.5, 0.56, 0.50])
    positions = [position_of(f) for f in frames]
    # hand1 distances: |y - 0.1|; hand2 fixed at 0.8 below the face.
    assert math.isclose(positions[0].rho_hand1, 0.4, abs_tol=1e-12)
    assert math.isclose(positions[0].rho_hand2, 0.8, abs_tol=1e-12)
    assert math.isclose(positions[0].rho, 1.2, abs_tol=1e-12)
    moves = movement_series(positions)
    assert len(moves) == 2
    assert math.isclose(moves[0].mu, 0.06, abs_tol=1e-12)
    assert math.isclose(moves[0].mu_hand1, 0.06, abs_tol=1e-12)
    assert moves[0].mu_hand2 == 0.0
    assert math.isclose(moves[1].mu, 0.06, abs_tol=1e-12)
    assert moves[0].frame_index == 1 and moves[1].frame_index == 2


def test_movement_series_rejects_empty():
    with pytest.raises(ValueError):
        movement_series([])


def test_all_moving_video_selects_everything():
    # 16 frames, every step large: no resting pose, no slow transitions.
    ys = [0.5 + 0.04 * i for i in range(16)]  # ~20 px per frame
    out = sample_video(vertical_video(ys), CFG)
    assert out.step_used == 1
    assert out.padded_count == 0
    assert out.valid
    assert out.selected_indices() == list(range(16))


def test_static_prefix_is_excluded():
    ys = [0.5] * 64 + [0.5 + 0.05 * (i + 1) for i in range(40)]
    out = sample_video(vertical_video(ys), CFG)
    assert out.valid
    assert min(out.selected_indices()) >= 64
    assert out.padded_count == 0


def test_single_frame_video():
    out = sample_video(vertical_video([0.5]), CFG)
    assert out.selected_indices() == [0]
    assert out.padded_count == 15
    assert not out.valid
    assert out.step_used == 1
    assert all(is_padding(f) for f in out.selected[1:])


def test_empty_video():
    out = sample_video([], CFG)
    assert out.padded_count == 16
    assert not out.valid
    assert out.dominant == HAND1
    assert out.selected == [PADDING_FRAME] * 16


def test_ten_frame_video_pads_six_and_invalidates():
    ys = [0.5 + 0.04 * i for i in range(10)]
    out = sample_video(vertical_video(ys), CFG)
    assert out.step_used == 1
    assert len(out.selected_indices()) == 10
    assert out.padded_count == 6
    assert not out.valid


def test_slow_transition_frames_discarded():
    # Strong onset, long crawl, then motion again.  Steps in hand1 y:
    # 25.6 px, ten of 2.56 px, then 15.36 px each.
    ys = [0.5, 0.55]
    for _ in range(11):
        ys.append(ys[-1] + 0.005)
    for _ in range(7):
        ys.append(ys[-1] + 0.03)
    frames = vertical_video(ys)
    assert len(frames) == 20
    out = sample_video(frames, CFG)
    # First slow samples ride on the onset window; from the third
    # consecutive slow sample on, frames drop until motion resumes.
    assert out.selected_indices() == [0, 1, 2, 3, 13, 14, 15, 16, 17, 18, 19]
    assert out.padded_count == 5
    assert out.valid  # exactly at the padding limit


def test_restart_at_smaller_step():
    # Static head, then constant 12.8 px/frame motion: the step-2 pass
    # selects only 14 frames, the step-1 re-pass fills all 16.
    ys = [0.2] * 6 + [0.2 + 0.025 * (i + 1) for i in range(28)]
    frames = vertical_video(ys)
    assert len(frames) == 34
    assert compute_step(34, 16) == 2
    out = sample_video(frames, CFG)
    assert out.step_used == 1
    assert out.padded_count == 0
    assert out.selected_indices() == list(range(6, 22))


def test_selection_stops_at_target():
    ys = [0.2 + 0.03 * i for i in range(200)]
    out = sample_video(vertical_video(ys), CFG)
    assert len(out.selected) == 16
    assert len(out.selected_indices()) == 16


def test_selected_spacing_at_least_step():
    rng = np.random.default_rng(33)
    for _ in range(100):
        frames = random_tracked_video(rng)
        out = sample_video(frames, CFG)
        idx = out.selected_indices()
        assert all(b - a >= out.step_used for a, b in zip(idx, idx[1:]))
        assert idx == sorted(idx)


def test_padding_is_a_tail_and_mask_matches():
    rng = np.random.default_rng(71)
    for _ in range(100):
        out = sample_video(random_tracked_video(rng), CFG)
        assert len(out.selected) == 16 and len(out.padding_mask) == 16
        real = [not is_padding(f) for f in out.selected]
        assert real == [not m for m in out.padding_mask]
        if out.padded_count:
            first_pad = out.padding_mask.index(True)
            assert all(out.padding_mask[first_pad:])
        assert out.valid == (out.padded_count <= CFG.max_padded)


def test_determinism():
    rng = np.random.default_rng(4)
    frames = random_tracked_video(rng, min_frames=40)
    a = sample_video(frames, CFG)
    b = sample_video(frames, CFG)
    assert a.selected == b.selected
    assert a.padding_mask == b.padding_mask
    assert (a.dominant, a.valid, a.step_used) == \
        (b.dominant, b.valid, b.step_used)


def test_raising_eta_never_selects_earlier():
    rng = np.random.default_rng(55)
    for _ in range(60):
        frames = random_tracked_video(rng, min_frames=20)
        if not frames:
            continue
        low = sample_video(frames, SamplerConfig(eta=8.0))
        high = sample_video(frames, SamplerConfig(eta=14.0))
        li, hi = low.selected_indices(), high.selected_indices()
        if li and hi and low.step_used == high.step_used:
            assert hi[0] >= li[0]


def test_matches_reference_simulation():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        frames = random_tracked_video(rng)
        out = sample_video(frames, CFG)
        expected_idx, expected_step = reference_select(frames)
        assert out.selected_indices() == expected_idx
        assert out.step_used == expected_step
        assert out.padded_count == 16 - len(expected_idx)
        assert out.valid == (16 - len(expected_idx) <= 5)
        if expected_idx:
            assert out.dominant == reference_dominance(frames, expected_idx)


def test_dominance_follows_moving_hand():
    frames = [tf(i, (0.5, 0.1), (0.5, 0.5 + 0.03 * i), (0.8, 0.5))
              for i in range(20)]
    out = sample_video(frames, CFG)
    assert out.dominant == HAND1
    mirrored = [tf(i, (0.5, 0.1), (0.8, 0.5), (0.5, 0.5 + 0.03 * i))
                for i in range(20)]
    assert sample_video(mirrored, CFG).dominant == HAND2


def test_selected_hand_movements_shape():
    frames = vertical_video([0.5, 0.56, 0.50, 0.62])
    pairs = selected_hand_movements(frames)
    assert pairs[0] == (0.0, 0.0)
    assert math.isclose(pairs[1][0], 0.06, abs_tol=1e-12)
    assert math.isclose(pairs[2][0], 0.06, abs_tol=1e-12)
    assert math.isclose(pairs[3][0], 0.12, abs_tol=1e-12)
    assert all(p[1] == 0.0 for p in pairs)
    assert selected_hand_movements([]) == []


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(target_frames=0)
    with pytest.raises(ValueError):
        SamplerConfig(eta=5.0, eta_hat=5.0)
    with pytest.raises(ValueError):
        SamplerConfig(max_padded=16)
    with pytest.raises(ValueError):
        SamplerConfig(confidence=1.2)
    with pytest.raises(ValueError):
        SamplerConfig(box_area_factor=0.5)
