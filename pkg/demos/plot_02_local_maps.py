"""
Twists and transports
=====================

Two kinds of local maps build everything else.  A twist rotates each sphere
around a center by an angle that is constant near the center and fades to
zero before the rim.  A transport slides one disk onto another along the
last axis and is the identity on the boundary of a surrounding box.
"""

from fractions import Fraction as F

import numpy as np

from c0dynamo import BumpProfile, TransportMap, TwistMap, bump_eval, transport_apply, transport_inverse, twist_apply

# %%
# The cutoff profile is 1 on [0, 1/3] and 0 on [2/3, 1].  The smooth profile
# is C-infinity; the cubic one is only C^1 but looks the same at a glance.
xs = np.linspace(0, 1, 7)
for profile in BumpProfile:
    print(profile.value, np.round(bump_eval(profile, xs), 4))

# %%
# A half-turn twist sends a core point to its mirror image through the center.
center, r = (F(5, 12), F(1, 2)), F(1, 24)
T = TwistMap(center, r, turns=F(1, 2))
a = np.array([float(c) for c in center])
p = a + [float(r) / 6, 0.0]
print("twist image:", twist_apply(T, p), " mirror:", a - [float(r) / 6, 0.0])

# %%
# Spheres are preserved exactly, so distances to the center do not move.
rng = np.random.default_rng(0)
pts = a + rng.uniform(-1, 1, (5, 2)) * float(r)
print("radial drift:", np.abs(np.linalg.norm(twist_apply(T, pts) - a, axis=1) - np.linalg.norm(pts - a, axis=1)))

# %%
# A transport moving the disk at height 1/2 down to height 3/8.  Inside the
# source disk it is a pure translation, and it undoes itself exactly.
src, dst = center, (center[0], F(3, 8))
box_lo = (center[0] - 3 * r / 2, F(3, 8) - 3 * r / 2)
box_hi = (center[0] + 3 * r / 2, F(1, 2) + 3 * r / 2)
M = TransportMap(box_lo, box_hi, src, dst, r, r / 2)
q = a + [0.3 * float(r), -0.2 * float(r)]
print("translated by", transport_apply(M, q) - q)
print("round trip error", np.abs(transport_inverse(M, transport_apply(M, q)) - q).max())
