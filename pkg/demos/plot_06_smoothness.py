"""
How flat is the map near the limit face?
========================================

Twists on far strips turn by tiny angles inside tiny disks.  Comparing a
point of strip ``m`` with its shadow on ``x1 = 0`` gives difference
quotients bounded by ``(m+1) 2 pi r(m) / 2^(m+1)``, which falls off
exponentially.  Jacobian determinants stay at 1 since the twists preserve
volume.
"""

from c0dynamo import LayoutParams, SequenceSpec, assemble, smoothness_bound, smoothness_scan

params = LayoutParams(d=2)
f = assemble(params, SequenceSpec.periodic([], ["1/4", "3/4"]))

print(" m   max quotient      bound   |det-1| core")
for m in range(2, 11):
    rep = smoothness_scan(f, m, samples=5000, rng=m)
    print(f"{m:2d}   {rep.max_quotient:.3e}   {rep.bound:.3e}   {rep.max_det_deviation_core:.1e}")

# %%
# The bound alone, further out.
print([f"{smoothness_bound(params, m):.1e}" for m in (20, 30, 40)])
