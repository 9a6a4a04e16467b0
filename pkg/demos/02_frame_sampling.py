"""Show how a video is thinned to sixteen informative frames.

Three cases: a long recording visited at stride two, a clip whose
leading resting pose is skipped, and a near-static clip that restarts
at smaller strides and still ends up invalid from padding.
"""

from trisign import Centroid, SamplerConfig, TrackedFrame, sample_video


def clip(hand1_ys):
    """Vertical hand1 path below a fixed face; hand2 parked."""
    return [TrackedFrame(i, Centroid(0.5, 0.1), Centroid(0.5, y),
                         Centroid(0.8, 0.7))
            for i, y in enumerate(hand1_ys)]


cfg = SamplerConfig()

# case 1: 39 frames of steady motion; stride is 39 // 16 = 2
steady = clip([0.04 + 0.024 * i for i in range(39)])
out = sample_video(steady, cfg, video_id="steady")
print(f"steady 39-frame clip: stride {out.step_used}, "
      f"selected {[f.frame_index for f in out.selected]}")
print(f"  padded {out.padded_count}, valid {out.valid}, "
      f"dominant {out.dominant}")

# case 2: ten resting frames, then motion; the rest is never selected
rest_then_move = clip([0.5] * 10 + [0.5 + 0.03 * i for i in range(1, 23)])
out = sample_video(rest_then_move, cfg, video_id="rest-first")
first = [f.frame_index for f in out.selected if not f.frame_index < 0][:5]
print(f"\nresting lead-in: first selected frames {first}")
print(f"  (movement only exceeds the resting threshold after frame 9)")

# case 3: nearly static; every stride comes up short, the final
# stride-one pass stands, and heavy padding invalidates the clip
sluggish = clip([0.5 + 0.002 * i for i in range(40)])
out = sample_video(sluggish, cfg, video_id="sluggish")
print(f"\nnear-static clip: stride fell to {out.step_used}, "
      f"kept {16 - out.padded_count} frames, padded {out.padded_count}")
print(f"  valid: {out.valid}  (more than 5 padded slots rejects a video)")
