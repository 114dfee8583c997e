"""
Strips, disks and the dense sequence
====================================

The cube is cut into strips ``H_n = [1/(n+1), 1/n] x [0,1]^(d-1)`` that pile
up against the face ``x1 = 0``.  Every strip from 2 on carries one disk.
Even strips store the encoded sequence in the last coordinate of the disk
center, odd strips store a fixed dense enumeration of ``(1/4, 3/4)``.
"""

from fractions import Fraction

from c0dynamo import LayoutParams, SequenceSpec, containment_check, layout, strip_index
from c0dynamo.layout import dyadic_point

params = LayoutParams(d=2)
alpha = SequenceSpec.periodic(prefix=["1/2"], block=["1/4", "3/4"])

# %%
# Where does a point live?  ``strip_index`` answers with exact arithmetic.
for x1 in (0.9, 0.45, Fraction(1, 3), 0.01):
    print(f"x1 = {x1}: strip {strip_index(x1)}")

# %%
# The first few disks.  Radii shrink like 1/(4 n (n+1)), so each disk fits in
# its strip with room to spare.
for n in range(2, 9):
    disk = layout(params, alpha, n)
    what = f"alpha({n // 2})" if n % 2 == 0 else f"p({n // 2})"
    print(f"strip {n}: center {tuple(map(str, disk.center))}, radius {disk.radius}  [{what}]")

# %%
# The dense points come level by level: 1/2, then 3/8 and 5/8, then the
# four sixteenths, and so on.
print([str(dyadic_point(n)) for n in range(1, 16)])

# %%
# Containment is decided exactly, here for the extreme values 1/4 and 3/4.
for value in ("1/4", "3/4"):
    spec = SequenceSpec.constant(value)
    ok = all(containment_check(params, spec, n) for n in range(2, 2001))
    print(f"alpha = {value}: every disk up to strip 2000 inside its strip: {ok}")
