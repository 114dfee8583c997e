"""The assembled diffeomorphism of the cube encoding a sequence.

Strip ``n >= 2`` carries one twist centered at its layout disk with
``1 / 2^(n+1)`` turns at the core; everything else, including strip 1 and
the face ``x1 = 0``, is fixed.  A point meets at most one disk, so
evaluation is exact per point without truncating the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bump import BumpProfile
from .layout import DiskSpec, LayoutParams, layout
from .maps import TwistMap, _as_points, twist_many, twist_point
from .sequences import SequenceSpec

__all__ = ["AssembledSystem", "assemble", "MAX_FLOAT_STRIP"]

# Beyond this strip the core angle 2*pi/2^(n+1) underflows binary64, so the
# floating-point map is the identity there.
MAX_FLOAT_STRIP = 1074


@dataclass(frozen=True)
class AssembledSystem:
    params: LayoutParams
    spec: SequenceSpec
    profile: BumpProfile = BumpProfile.SMOOTH
    direction: int = 1
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "profile", BumpProfile(self.profile))
        if self.direction not in (1, -1):
            raise ValueError("direction is +1 (forward) or -1 (inverse)")

    @property
    def d(self) -> int:
        return self.params.d

    def turns(self, n: int) -> Fraction:
        return Fraction(self.direction, 2 ** (n + 1))

    def disk(self, n: int) -> DiskSpec | None:
        return layout(self.params, self.spec, n)

    def twist(self, n: int) -> TwistMap | None:
        disk = self.disk(n)
        if disk is None:
            return None
        return TwistMap(disk.center, disk.radius, self.turns(n), self.profile)

    def inverse(self) -> "AssembledSystem":
        return AssembledSystem(self.params, self.spec, self.profile, -self.direction)

    def _strip_floats(self, n: int):
        hit = self._cache.get(n)
        if hit is None:
            disk = self.disk(n)
            hit = (tuple(float(c) for c in disk.center), float(disk.radius), float(self.turns(n)))
            self._cache[n] = hit
        return hit

    def _point_params(self, pts):
        """Per-row (centers, radii, turns, active) for rows lying in some strip n >= 2."""
        x1 = pts[:, 0]
        active = (x1 > 0.0) & (x1 <= 1.0)
        n = np.zeros(len(pts), dtype=np.int64)
        with np.errstate(divide="ignore", over="ignore"):
            inv = np.where(active, 1.0 / np.where(active, x1, 1.0), 0.0)
        active &= (inv >= 2.0) & (inv < MAX_FLOAT_STRIP + 1)
        n[active] = np.floor(inv[active]).astype(np.int64)
        centers = np.zeros_like(pts)
        radii = np.ones(len(pts))
        turns = np.zeros(len(pts))
        if np.any(active):
            strips, where = np.unique(n[active], return_inverse=True)
            table = [self._strip_floats(int(k)) for k in strips]
            c_tab = np.array([t[0] for t in table])
            centers[active] = c_tab[where]
            radii[active] = np.array([t[1] for t in table])[where]
            turns[active] = np.array([t[2] for t in table])[where]
        return centers, radii, turns, active

    def eval(self, p):
        """Image of one point ``(d,)`` or a batch ``(m, d)``."""
        pts, single = _as_points(p)
        if single:
            return np.array(self._eval_point(pts[0].tolist()))
        centers, radii, turns, active = self._point_params(pts)
        out = pts.copy()
        if np.any(active):
            out[active] = twist_many(
                pts[active], centers[active], radii[active], turns[active], self.profile
            )
        return out

    __call__ = eval

    def _eval_point(self, p: list) -> list:
        x1 = p[0]
        if not 0.0 < x1 <= 1.0:
            return p
        n = math.floor(1.0 / x1)
        if n < 2 or n > MAX_FLOAT_STRIP:
            return p
        c, r, q = self._strip_floats(n)
        return twist_point(c, r, q, self.profile, p)

    def iterate(self, p, k: int):
        """``k``-fold composition; negative ``k`` iterates the inverse."""
        k = int(k)
        if k < 0:
            return self.inverse().iterate(p, -k)
        pts, single = _as_points(p)
        if single:
            q = pts[0].tolist()
            for _ in range(k):
                q = self._eval_point(q)
            return np.array(q)
        out = pts.copy()
        centers, radii, turns, active = self._point_params(pts)
        if not np.any(active) or k == 0:
            return out
        c, r, t = centers[active], radii[active], turns[active]
        cur = pts[active]
        # orbits never leave their disk, so the per-row twist data is fixed
        for _ in range(k):
            cur = twist_many(cur, c, r, t, self.profile)
        out[active] = cur
        return out

    def config(self) -> dict:
        """Plain-data description used by the JSON layer."""
        return {"params": self.params, "spec": self.spec, "profile": self.profile.value}


def assemble(params: LayoutParams, spec: SequenceSpec, profile="smooth") -> AssembledSystem:
    """Build the strip-and-twist system encoding ``spec``.

    Decidable specs are already range-checked at construction; opaque specs
    are checked lazily, the first time a strip is evaluated.
    """
    if not isinstance(spec, SequenceSpec):
        raise TypeError("spec must be a SequenceSpec")
    return AssembledSystem(params, spec, BumpProfile(profile))
