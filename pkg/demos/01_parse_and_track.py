"""Walk one detection stream from raw JSON lines to tracked centroids.

Shows the per-frame stages: schema parsing with clamp accounting,
confidence filtering down to one face and two hands, box expansion,
centroid extraction, and identity tracking with gap carry and the
missing-dominant rejection.
"""

import json

from trisign import (ParseStats, TrackState, centroid, expand_box,
                     read_stream, resolve_frame, select_detections)


def frame_line(index, dets):
    return json.dumps({
        "video_id": "walkthrough",
        "frame_index": index,
        "frame_size": [512, 512],
        "detections": dets,
    })


def det(cls, score, box):
    return {"class": cls, "score": score, "bbox": box}


lines = [
    # frame 0: clean frame, face plus both hands
    frame_line(0, [det("face", 0.97, [0.45, 0.10, 0.55, 0.22]),
                   det("hand", 0.91, [0.20, 0.50, 0.30, 0.62]),
                   det("hand", 0.88, [0.70, 0.52, 0.80, 0.64])]),
    # frame 1: one hand dips below the confidence threshold, and the
    # face box pokes past the left edge so a coordinate gets clamped
    frame_line(1, [det("face", 0.96, [-0.02, 0.10, 0.10, 0.22]),
                   det("hand", 0.40, [0.20, 0.50, 0.30, 0.62]),
                   det("hand", 0.90, [0.70, 0.53, 0.80, 0.65])]),
    # frame 2: three hands; only the two best survive selection
    frame_line(2, [det("face", 0.95, [0.45, 0.10, 0.55, 0.22]),
                   det("hand", 0.93, [0.21, 0.50, 0.31, 0.62]),
                   det("hand", 0.89, [0.70, 0.54, 0.80, 0.66]),
                   det("hand", 0.60, [0.40, 0.80, 0.50, 0.90])]),
]

stats = ParseStats()
frames = read_stream(lines, stats)
print(f"parsed {len(frames)} frames, "
      f"clamped coordinates: {stats.clamped_coordinates}")

state = TrackState()
for frame in frames:
    face, hands = select_detections(frame, confidence=0.55)
    print(f"\nframe {frame.frame_index}: kept "
          f"{'a face' if face else 'no face'} and {len(hands)} hand(s)")
    if face:
        grown = expand_box(face.box, 1.10)
        c = centroid(grown)
        print(f"  face box {face.box.as_tuple()}")
        print(f"  expanded {tuple(round(v, 4) for v in grown.as_tuple())}"
              f" -> centroid ({c.x:.4f}, {c.y:.4f})")
    resolved = resolve_frame(state, frame.frame_index, face, hands)
    carried = [name for name, flag in
               (("face", getattr(resolved, "face_carried", False)),
                ("hand1", getattr(resolved, "hand1_carried", False)),
                ("hand2", getattr(resolved, "hand2_carried", False)))
               if flag]
    note = f"  (carried from history: {', '.join(carried)})" if carried else ""
    print(f"  tracking: {type(resolved).__name__}{note}")

print("\nWith only one hand above threshold in frame 1, the tracker")
print("filled the gap from history instead of dropping the frame.")
