"""Local building blocks: disk twists and fiberwise disk transports.

Both maps act on arrays of points of shape ``(m, d)`` or ``(d,)`` and are the
identity outside a compact region.  A twist rotates every sphere about its
center inside the plane of the last two coordinates; a transport slides a
disk along the last axis and tapers back to the identity on the boundary of
an enclosing box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .bump import BumpProfile, scalar_eval, unchecked_eval

__all__ = ["TwistMap", "TransportMap", "InvalidTransportError"]


class InvalidTransportError(ValueError):
    """The translated chord would leave the box, or the taper crosses a face."""


def _as_points(p):
    arr = np.asarray(p, dtype=float)
    if arr.ndim == 1:
        return arr[None, :], True
    return arr, False


@dataclass(frozen=True)
class TwistMap:
    """Twist of the ball ``|p - center| < radius`` by ``2 pi turns phi(rho/radius)``."""

    center: tuple
    radius: Fraction
    turns: Fraction
    profile: BumpProfile = BumpProfile.SMOOTH
    _c: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("twist radius must be positive")
        if len(self.center) < 2:
            raise ValueError("twists need at least two coordinates")
        object.__setattr__(self, "_c", np.array([float(c) for c in self.center]))

    @property
    def d(self) -> int:
        return len(self.center)

    def inverse(self) -> "TwistMap":
        return replace(self, turns=-self.turns)

    def angle(self, rho):
        """Rotation angle applied on the sphere of radius ``rho``."""
        rho = np.asarray(rho, dtype=float)
        r = float(self.radius)
        s = rho / r
        phi = np.where(s < 1.0, unchecked_eval(self.profile, np.minimum(s, 1.0)), 0.0)
        return 2.0 * math.pi * float(self.turns) * phi

    def __call__(self, p):
        return twist_apply(self, p)


def _rotate_last_two(u, theta):
    c, s = np.cos(theta), np.sin(theta)
    a, b = u[:, -2].copy(), u[:, -1].copy()
    u[:, -2] = c * a - s * b
    u[:, -1] = s * a + c * b
    return u


def twist_many(pts, centers, radii, turns, profile):
    """Twist each row of ``pts`` about its own center, radius and turn count.

    ``centers`` has the shape of ``pts``; ``radii`` and ``turns`` are per-row.
    Rows whose angle vanishes are returned bit-for-bit unchanged.
    """
    out = pts.copy()
    u = pts - centers
    rho = np.sqrt(np.einsum("ij,ij->i", u, u))
    s = rho / radii
    inside = s < 1.0
    phi = np.zeros_like(s)
    phi[inside] = unchecked_eval(profile, s[inside])
    theta = 2.0 * math.pi * turns * phi
    moving = theta != 0.0
    if np.any(moving):
        um = _rotate_last_two(u[moving], theta[moving])
        out[moving] = centers[moving] + um
    return out


def twist_apply(T: TwistMap, p):
    pts, single = _as_points(p)
    m = len(pts)
    out = twist_many(
        pts,
        np.broadcast_to(T._c, pts.shape),
        np.full(m, float(T.radius)),
        np.full(m, float(T.turns)),
        T.profile,
    )
    return out[0] if single else out


def twist_inverse(T: TwistMap, p):
    return twist_apply(T.inverse(), p)


def twist_point(c: tuple, r: float, turns: float, profile, p: list) -> list:
    """Single-point twist on plain floats, used by hot iteration loops."""
    sq = 0.0
    for a, b in zip(p, c):
        sq += (a - b) * (a - b)
    rho = math.sqrt(sq)
    if rho >= r:
        return p
    phi = scalar_eval(profile, rho / r)
    if phi == 0.0:
        return p
    theta = 2.0 * math.pi * turns * phi
    ct, st = math.cos(theta), math.sin(theta)
    a, b = p[-2] - c[-2], p[-1] - c[-1]
    q = list(p)
    q[-2] = c[-2] + ct * a - st * b
    q[-1] = c[-1] + st * a + ct * b
    return q


@dataclass(frozen=True)
class TransportMap:
    """Homeomorphism sliding the disk ``D(source, radius)`` onto ``D(target, radius)``.

    On every fiber parallel to the last axis the map is monotone piecewise
    linear: the chord of the source disk is translated rigidly by the
    (tapered) displacement and the two remaining segments of the fiber are
    stretched linearly onto what is left of the box extent.
    """

    box_lo: tuple
    box_hi: tuple
    source: tuple
    target: tuple
    radius: Fraction
    margin: Fraction
    profile: BumpProfile = BumpProfile.SMOOTH

    def __post_init__(self):
        d = len(self.source)
        if not (len(self.box_lo) == len(self.box_hi) == len(self.target) == d):
            raise InvalidTransportError("box, source and target dimensions differ")
        if any(a != b for a, b in zip(self.source[:-1], self.target[:-1])):
            raise InvalidTransportError("displacement must be parallel to the last axis")
        if self.radius <= 0 or self.margin <= 0:
            raise InvalidTransportError("radius and margin must be positive")
        r = self.radius
        for lo, hi in zip(self.box_lo, self.box_hi):
            if not lo < hi:
                raise InvalidTransportError("empty box")
        # closed disks strictly inside the open box
        for c in (self.source, self.target):
            for lo, hi, x in zip(self.box_lo, self.box_hi, c):
                if not (lo < x - r and x + r < hi):
                    raise InvalidTransportError(f"disk around {c} not interior to the box")
        # taper cylinder must close up before the side faces
        reach = r + self.margin
        for lo, hi, x in zip(self.box_lo[:-1], self.box_hi[:-1], self.source[:-1]):
            if x - reach < lo or x + reach > hi:
                raise InvalidTransportError("taper region crosses a side face of the box")

    @property
    def d(self) -> int:
        return len(self.source)

    @property
    def shift(self) -> Fraction:
        return self.target[-1] - self.source[-1]

    def sup_diameter(self) -> Fraction:
        return max(hi - lo for lo, hi in zip(self.box_lo, self.box_hi))

    def __call__(self, p):
        return transport_apply(self, p)

    def _fibers(self, pts):
        lo = np.array([float(v) for v in self.box_lo])
        hi = np.array([float(v) for v in self.box_hi])
        inside = np.all((pts > lo) & (pts < hi), axis=1)
        x = np.array([float(v) for v in self.source])
        r, margin = float(self.radius), float(self.margin)
        q = pts[inside]
        w = q[:, :-1] - x[:-1]
        rho = np.sqrt(np.einsum("ij,ij->i", w, w))
        chord = np.sqrt(np.maximum(r * r - rho * rho, 0.0))
        t = np.clip((rho - r) / margin, 0.0, 1.0)
        delta = float(self.shift) * unchecked_eval(self.profile, (1.0 + t) / 3.0)
        A, B = lo[-1], hi[-1]
        return inside, x[-1] - chord, x[-1] + chord, delta, A, B

    def piecewise(self, p):
        """Fiber breakpoints ``(A, lo, hi, B) -> (A, lo+delta, hi+delta, B)`` for one point."""
        pts, _ = _as_points(p)
        inside, c_lo, c_hi, delta, A, B = self._fibers(pts)
        if not inside[0]:
            return None
        return (A, c_lo[0], c_hi[0], B), (A, c_lo[0] + delta[0], c_hi[0] + delta[0], B)


def transport_apply(M: TransportMap, p):
    pts, single = _as_points(p)
    out = pts.copy()
    inside, c_lo, c_hi, delta, A, B = M._fibers(pts)
    z = pts[inside, -1]
    znew = np.where(
        z < c_lo,
        A + (z - A) * (c_lo + delta - A) / (c_lo - A),
        np.where(z > c_hi, B - (B - z) * (B - c_hi - delta) / (B - c_hi), z + delta),
    )
    out[inside, -1] = np.where(delta == 0.0, z, znew)
    return out[0] if single else out


def transport_inverse(M: TransportMap, p):
    pts, single = _as_points(p)
    out = pts.copy()
    inside, c_lo, c_hi, delta, A, B = M._fibers(pts)
    z = pts[inside, -1]
    lo2, hi2 = c_lo + delta, c_hi + delta
    znew = np.where(
        z < lo2,
        A + (z - A) * (c_lo - A) / (lo2 - A),
        np.where(z > hi2, B - (B - z) * (B - c_hi) / (B - hi2), z - delta),
    )
    out[inside, -1] = np.where(delta == 0.0, z, znew)
    return out[0] if single else out


def transport_apply_exact(M: TransportMap, p: tuple):
    """Exact image of a rational point where the map is affine with rational data.

    Outside the open box the map is the identity; on the source disk it is
    the translation by ``target - source``.  Elsewhere the image involves a
    square root and is returned in floating point.
    """
    p = tuple(Fraction(v) for v in p)
    if not all(lo < v < hi for lo, hi, v in zip(M.box_lo, M.box_hi, p)):
        return p
    if sum((a - b) ** 2 for a, b in zip(p, M.source)) <= M.radius**2:
        return p[:-1] + (p[-1] + M.shift,)
    return tuple(float(v) for v in transport_apply(M, [float(v) for v in p]))
