"""
Conjugating two encodings
=========================

If two sequences differ by something that tends to zero (here: they agree
from some point on), their systems are conjugate.  The witness slides each
disk where they differ onto its partner and leaves the rest of the cube
alone.
"""

from c0dynamo import LayoutParams, SequenceSpec, assemble, build_witness, c0_equivalent, verify_witness

params = LayoutParams(d=2)
alpha = SequenceSpec.periodic(prefix=["1/2", "1/3"], block=["1/4", "3/4"])
beta = SequenceSpec.periodic(prefix=["3/8", "2/3", "3/4"], block=["3/4", "1/4"])

decision = c0_equivalent(alpha, beta)
print(decision)

# %%
# One transport per even strip where the values differ.
W = build_witness(alpha, beta, params)
for n, M in W.transports:
    print(f"strip {n}: shift {M.shift}, box side {M.sup_diameter()}")

# %%
# The conjugacy equation h o f_alpha = f_beta o h, checked on 10^5 samples
# drawn from cores, annuli, box faces and the accumulation face x1 = 0.
f_alpha, f_beta = assemble(params, alpha), assemble(params, beta)
print("max defect:", verify_witness(W, f_alpha, f_beta, samples=100_000, rng=0))

# %%
# Centers go to centers with exact rational arithmetic.
for n in (2, 4, 6):
    print(n, W.apply_exact(f_alpha.disk(n).center) == f_beta.disk(n).center)
