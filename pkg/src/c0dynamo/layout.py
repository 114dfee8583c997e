"""Exact geometry of the strip decomposition of the cube.

The cube ``[0,1]^d`` is cut into slabs ``H_n = [1/(n+1), 1/n] x [0,1]^(d-1)``
that accumulate at the face ``x1 = 0``.  Every slab ``n >= 2`` hosts one
encoding disk; even slabs carry the sequence being encoded, odd slabs carry
a fixed dense sequence.  All layout arithmetic is done in
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable

__all__ = [
    "Point",
    "Strip",
    "DiskSpec",
    "LayoutParams",
    "strip_index",
    "strip",
    "midline",
    "quarter_radius",
    "dyadic_point",
    "layout",
    "containment_check",
    "RADIUS_RULES",
    "DENSE_RULES",
]

Point = tuple  # tuple of d coordinates (Fraction or float)


def _exact(x) -> Fraction:
    """Convert to Fraction; floats are converted by their exact binary value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    return Fraction(float(x))


def strip_index(x1) -> int:
    """Index ``n`` of the slab containing first coordinate ``x1``.

    Returns ``n = floor(1/x1)`` so that ``1/(n+1) < x1 <= 1/n``.  Shared
    boundary values ``1/n`` go to strip ``n``.
    """
    if isinstance(x1, (int, Fraction)):
        if not 0 < x1 <= 1:
            raise ValueError(f"strip_index needs 0 < x1 <= 1, got {x1}")
        return math.floor(1 / Fraction(x1))
    x1 = float(x1)
    if not 0.0 < x1 <= 1.0:
        raise ValueError(f"strip_index needs 0 < x1 <= 1, got {x1}")
    return math.floor(1.0 / x1)


@dataclass(frozen=True)
class Strip:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("strip index must be positive")

    @property
    def lo(self) -> Fraction:
        return Fraction(1, self.index + 1)

    @property
    def hi(self) -> Fraction:
        return Fraction(1, self.index)

    @property
    def half_width(self) -> Fraction:
        return (self.hi - self.lo) / 2


def strip(n: int) -> Strip:
    return Strip(n)


def midline(n: int) -> Fraction:
    """First coordinate of the slab midline, ``(1/n + 1/(n+1)) / 2``."""
    return (Fraction(1, n) + Fraction(1, n + 1)) / 2


def quarter_radius(n: int) -> Fraction:
    """Disk radius ``1/(4n(n+1))``, half of the slab half-width."""
    return Fraction(1, 4 * n * (n + 1))


def dyadic_point(n: int) -> Fraction:
    """Breadth-first dyadic enumeration of the open interval (1/4, 3/4).

    ``p(1) = 1/2, p(2) = 3/8, p(3) = 5/8, p(4) = 5/16, ...``
    """
    if n < 1:
        raise ValueError("dense sequence is indexed from 1")
    level = n.bit_length() - 1
    j = n - (1 << level) + 1
    return Fraction(1, 4) + Fraction(2 * j - 1, 1 << (level + 2))


RADIUS_RULES: dict[str, Callable[[int], Fraction]] = {"quarter": quarter_radius}
DENSE_RULES: dict[str, Callable[[int], Fraction]] = {"dyadic": dyadic_point}


@dataclass(frozen=True)
class DiskSpec:
    """Closed Euclidean ball given by an exact center and radius."""

    center: tuple
    radius: Fraction

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")
        for c in self.center:
            if c - self.radius < 0 or c + self.radius > 1:
                raise ValueError(f"disk {self} leaves the unit cube")

    @property
    def d(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class LayoutParams:
    d: int = 2
    radius_rule: str = "quarter"
    dense_rule: str = "dyadic"

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension must be at least 2")
        if self.radius_rule not in RADIUS_RULES:
            raise ValueError(f"unknown radius rule {self.radius_rule!r}")
        if self.dense_rule not in DENSE_RULES:
            raise ValueError(f"unknown dense rule {self.dense_rule!r}")

    def radius(self, n: int) -> Fraction:
        return RADIUS_RULES[self.radius_rule](n)

    def midline(self, n: int) -> Fraction:
        return midline(n)

    def dense(self, j: int) -> Fraction:
        return DENSE_RULES[self.dense_rule](j)

    def to_dict(self) -> dict:
        return {"d": self.d, "radius_rule": self.radius_rule, "dense_rule": self.dense_rule}


def _center(params: LayoutParams, n: int, last) -> tuple:
    half = Fraction(1, 2)
    return (params.midline(n),) + (half,) * (params.d - 2) + (last,)


def layout(params: LayoutParams, spec, n: int) -> DiskSpec | None:
    """Encoding disk of strip ``n`` (``None`` for strip 1).

    Strip ``2j`` is centered at ``(k(2j), 1/2, ..., 1/2, alpha(j))`` and strip
    ``2j+1`` at ``(k(2j+1), 1/2, ..., 1/2, p(j))``.
    """
    if n < 1:
        raise ValueError("strips are indexed from 1")
    if n == 1:
        return None
    j, odd = divmod(n, 2)
    last = params.dense(j) if odd else spec.value(j)
    if not isinstance(last, (int, Fraction)):
        last = _exact(last)
    return DiskSpec(_center(params, n, Fraction(last)), params.radius(n))


def containment_check(params: LayoutParams, spec, n: int, radius=None) -> bool:
    """Whether the closed disk of strip ``n`` lies in the open interior of ``H_n``.

    Decided by exact rational comparison.  Float sequence values are compared
    through their exact binary expansion.  ``radius`` overrides the layout
    radius, to probe hypothetical radii.
    """
    if n < 2:
        raise ValueError("containment is only defined for strips n >= 2")
    j, odd = divmod(n, 2)
    last = _exact(params.dense(j) if odd else spec.value(j))
    r = params.radius(n) if radius is None else _exact(radius)
    s = Strip(n)
    center = _center(params, n, last)
    if not (s.lo < center[0] - r and center[0] + r < s.hi):
        return False
    return all(0 < c - r and c + r < 1 for c in center[1:])
