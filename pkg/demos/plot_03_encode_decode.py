"""
Encoding a sequence and reading it back
=======================================

``assemble`` turns a sequence into a diffeomorphism of the cube.  The
decoder treats the result as a black box: it scans a probe line through
each even strip, finds where points move, and checks that core points come
back after exactly ``2^(n+1)`` steps.
"""

import numpy as np

from c0dynamo import LayoutParams, SequenceSpec, assemble, decode, decode_strip

params = LayoutParams(d=2)
alpha = SequenceSpec.periodic(prefix=["37/100", "2/3"], block=["1/4", "1/2", "3/4"])
f = assemble(params, alpha)

# %%
# The map only moves points inside disks; everywhere else it is the identity.
print(f.eval([0.9, 0.3]), f.eval([0.0, 0.7]))

# %%
# A core point of strip 3 has period 2^4 = 16.
c = np.array([float(v) for v in f.disk(3).center])
p = c + [0.0, float(f.disk(3).radius) / 6]
orbit = [p]
for _ in range(16):
    orbit.append(f.eval(orbit[-1]))
print("distance after 8 steps:", np.linalg.norm(orbit[8] - p))
print("distance after 16 steps:", np.linalg.norm(orbit[16] - p))

# %%
# Reading back the first eight values.
recovered = decode(f, params, N=8)
print("decoded:", np.round(recovered, 12))
print("encoded:", [float(alpha(j)) for j in range(1, 9)])

# %%
# The full report of one strip.
print(decode_strip(f, params, 4))
