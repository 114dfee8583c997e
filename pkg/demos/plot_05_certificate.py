"""
When no conjugacy exists
========================

For sequences whose difference does not tend to zero the tool produces a
certificate instead: an index class where the two sequences are stuck at
different values ``a != b``, and dense-sequence indices whose points
approach ``a``.  Centers on one side converge while their partners on the
other side cannot.
"""

from c0dynamo import LayoutParams, SequenceSpec, build_certificate, build_witness, verify_certificate
from c0dynamo.conjugacy import NotEquivalentError

params = LayoutParams(d=2)
alpha = SequenceSpec.periodic(prefix=[], block=["1/4", "3/4"])
beta = SequenceSpec.periodic(prefix=[], block=["3/4", "1/4"])

try:
    build_witness(alpha, beta, params)
except NotEquivalentError as exc:
    print("no witness:", exc)

C = build_certificate(alpha, beta, params)
print(f"a = {C.a}, b = {C.b}, indices n_k = {C.residue_start} + {C.residue_period} (k - 1)")
print("dense indices:", C.dense_indices)
print("certificate checks out:", verify_certificate(C, alpha, beta, params))
