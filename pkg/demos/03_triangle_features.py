"""Compute the 13 triangle features for one frame and probe invariance.

The hands and face form a 3-4-5 right triangle, so every feature has a
value you can check by hand.  Scaling, rotating, and translating the
same frame leaves all 13 numbers unchanged.
"""

import math

from trisign import (FEATURE_NAMES, Centroid, TrackedFrame, feature_vector,
                     heron_area, internal_angles, side_lengths)

frame = TrackedFrame(0, face=Centroid(0.2, 0.5), hand1=Centroid(0.2, 0.2),
                     hand2=Centroid(0.6, 0.2))
sides = side_lengths(frame.hand1, frame.hand2, frame.face)
print(f"sides (hand1-hand2, hand1-face, hand2-face): {sides}")
print(f"area {heron_area(sides)}  angles "
      f"{tuple(round(a, 4) for a in internal_angles(sides))}")

feats = feature_vector(frame, movement_hand1=0.05, movement_hand2=0.02)
print("\nall 13 normalized features:")
for name, value in zip(FEATURE_NAMES, feats.as_array()):
    print(f"  {name:22s} {value:.6f}")

# the same pose seen by a different camera: twice as large, tilted
# thirty degrees, shifted; movements scale with the frame
s, theta, shift = 2.0, math.radians(30.0), (0.7, -0.3)


def transformed(p):
    x, y = p.x, p.y
    return Centroid(s * (x * math.cos(theta) - y * math.sin(theta)) + shift[0],
                    s * (x * math.sin(theta) + y * math.cos(theta)) + shift[1])


moved = TrackedFrame(0, face=transformed(frame.face),
                     hand1=transformed(frame.hand1),
                     hand2=transformed(frame.hand2))
feats2 = feature_vector(moved, movement_hand1=0.05 * s,
                        movement_hand2=0.02 * s)
drift = max(abs(a - b) for a, b in zip(feats.as_array(), feats2.as_array()))
print(f"\nmax change after scale+rotate+translate: {drift:.2e}")
print("the features describe the triangle's shape, not where it sits")
