"""
Rotations of the 2-torus
========================

Irrational numbers are handled as exact rational combinations of named
symbols that the user vouches are independent together with 1.  A matrix in
GL(2, Z) acts linearly on the rotation vector, and two minimal rotations are
conjugate exactly when one is carried to the other.
"""

from c0dynamo import apply_unimodular, decide_conjugacy, fixed_locus, is_minimal, orbit_sample
from c0dynamo.torus import parse_rotation

T = parse_rotation("sqrt2,sqrt3")
print(T, "minimal:", is_minimal(T))
print(parse_rotation("sqrt2,1-sqrt2"), "minimal:", is_minimal(parse_rotation("sqrt2,1-sqrt2")))

# %%
# A shear moves (sqrt2, sqrt3) to (sqrt2 + sqrt3, sqrt3), and the solver
# finds that shear again from the two rotations alone.
T2 = apply_unimodular(((1, 1), (0, 1)), (0, 0), T)
print(T2, "->", decide_conjugacy(T, T2))

# %%
# Doubling one coordinate needs a matrix of determinant 2, so no conjugacy.
print(decide_conjugacy(T, parse_rotation("2*sqrt2,sqrt3")))

# %%
# Fixed sets of a few matrices acting on the torus.
for A in (((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((2, 1), (1, 1)), ((-1, 0), (0, -1))):
    print(A, "->", fixed_locus(A))

# %%
# Part of the orbit under matrices with entries in {-1, 0, 1}.
orbit = orbit_sample(T, 1)
print(len(orbit), "images, e.g.", ", ".join(map(str, orbit[:4])))
