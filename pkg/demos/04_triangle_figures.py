"""Render triangle figures and count what each color covers.

Writes three 128x128 PNGs under demos/output/: a wide pose, a narrow
pose, and the all-black placeholder used for padded slots.
"""

from collections import Counter
from pathlib import Path

import numpy as np

from trisign import (HAND2, PADDING_FRAME, Centroid, TrackedFrame,
                     encode_png, render_figure)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

COLOR_NAMES = {
    (0, 0, 0): "background",
    (255, 255, 255): "triangle fill",
    (0, 255, 0): "face circle",
    (255, 0, 0): "dominant hand square",
    (0, 0, 255): "other hand triangle",
}

poses = {
    "wide": TrackedFrame(0, face=Centroid(0.5, 0.15),
                         hand1=Centroid(0.12, 0.82),
                         hand2=Centroid(0.88, 0.78)),
    "narrow": TrackedFrame(0, face=Centroid(0.5, 0.2),
                           hand1=Centroid(0.42, 0.85),
                           hand2=Centroid(0.60, 0.80)),
}

for name, frame in poses.items():
    image = render_figure(frame, dominant=HAND2)
    path = OUT / f"figure_{name}.png"
    path.write_bytes(encode_png(image))
    flat = image.pixels.reshape(-1, 3)
    counts = Counter(map(tuple, flat))
    print(f"{name} pose -> {path}")
    for color, count in counts.most_common():
        label = COLOR_NAMES.get(color, str(color))
        print(f"  {label:22s} {count:6d} px")

padded = render_figure(PADDING_FRAME)
(OUT / "figure_padded.png").write_bytes(encode_png(padded))
assert not np.any(padded.pixels)
print(f"\npadded slot -> {OUT / 'figure_padded.png'} (all background)")
