"""Black-box analysis of cube maps from the constructed family.

:func:`decode_strip` reads the encoded value of a strip off the dynamics
alone: along the probe line through the strip's known midline, a twist
moves exactly the points at distance ``0 < |t - c| < 2r/3`` from its
center, and a core point returns after exactly ``2^(n+1)`` steps.  Both
facts survive conjugation, which is what makes the encoding a reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .layout import LayoutParams
from .system import AssembledSystem

__all__ = [
    "DecodeError",
    "EmptyStripError",
    "InvariantViolationError",
    "DecodeReport",
    "SmoothnessReport",
    "probe_line",
    "displacement_scan",
    "decode_strip",
    "decode",
    "first_return",
    "smoothness_bound",
    "smoothness_bound_over_2pi",
    "smoothness_scan",
]


class DecodeError(ValueError):
    def __init__(self, message, strip=None):
        super().__init__(message if strip is None else f"strip {strip}: {message}")
        self.strip = strip


class EmptyStripError(DecodeError):
    """No moving points were found on the probe line."""


class InvariantViolationError(DecodeError):
    """The core period is not the one the construction prescribes."""


@dataclass(frozen=True)
class DecodeReport:
    strip: int
    center: float
    period: int
    support: tuple
    residual: float


@dataclass(frozen=True)
class SmoothnessReport:
    strip: int
    max_quotient: float
    bound: float
    samples: int
    violations: int
    max_det_deviation_off_support: float
    max_det_deviation_core: float
    min_det: float
    jacobian_points: int = field(default=0)


def probe_line(params: LayoutParams, n: int, t) -> np.ndarray:
    """Points ``(k(n), 1/2, ..., 1/2, t)`` for an array of last coordinates."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    pts = np.full((len(t), params.d), 0.5)
    pts[:, 0] = float(params.midline(n))
    pts[:, -1] = t
    return pts


def displacement_scan(g, params: LayoutParams, n: int, step=None):
    """Sample ``|g(p(t)) - p(t)|`` over ``t in [1/4 - r, 3/4 + r]``.

    Returns ``(t, displacement)``; the default step is ``r(n)/8``.
    """
    r = float(params.radius(n))
    step = r / 8 if step is None else step
    count = int(math.floor((0.5 + 2 * r) / step)) + 1
    t = 0.25 - r + step * np.arange(count)
    pts = probe_line(params, n, t)
    disp = np.linalg.norm(np.asarray(g(pts)) - pts, axis=1)
    return t, disp


def _moves(g, params, n, t, threshold) -> bool:
    p = probe_line(params, n, [t])[0]
    return float(np.linalg.norm(np.asarray(g(p)) - p)) > threshold


def _bisect_edge(g, params, n, still, moving, threshold, width):
    while abs(moving - still) > width:
        mid = 0.5 * (still + moving)
        if _moves(g, params, n, mid, threshold):
            moving = mid
        else:
            still = mid
    return 0.5 * (still + moving)


def first_return(g, p, tol: float, limit: int) -> tuple[int | None, float]:
    """Least ``k <= limit`` with ``|g^k(p) - p| < tol`` and the distance there."""
    start = np.asarray(p, dtype=float)
    q = start
    for k in range(1, limit + 1):
        q = np.asarray(g(q))
        dist = float(np.linalg.norm(q - start))
        if dist < tol:
            return k, dist
    return None, float("nan")


def decode_strip(g, params: LayoutParams, n: int, tol: float = 1e-9) -> DecodeReport:
    """Recover the last coordinate of the strip-``n`` twist center of ``g``.

    ``g`` maps arrays of shape ``(d,)`` or ``(m, d)`` to arrays of the same
    shape.  Raises :class:`EmptyStripError` when nothing moves on the probe
    line and :class:`InvariantViolationError` when the core period is not
    ``2^(n+1)``.
    """
    if n < 2:
        raise ValueError("decoding needs a strip n >= 2")
    r = float(params.radius(n))
    step = r / 8
    t, disp = displacement_scan(g, params, n, step)
    moving = np.flatnonzero(disp > tol)
    if len(moving) == 0:
        raise EmptyStripError("no displacement on the probe line", strip=n)
    i0, i1 = moving[0], moving[-1]
    lo_still = t[i0 - 1] if i0 > 0 else t[0] - step
    hi_still = t[i1 + 1] if i1 + 1 < len(t) else t[-1] + step
    lo = _bisect_edge(g, params, n, lo_still, t[i0], tol, 1e-12)
    hi = _bisect_edge(g, params, n, hi_still, t[i1], tol, 1e-12)
    center = 0.5 * (lo + hi)

    period = 2 ** (n + 1)
    probe = probe_line(params, n, [center + r / 6])[0]
    k, residual = first_return(g, probe, tol, period)
    if k != period:
        raise InvariantViolationError(
            f"core probe returned after {k} steps, expected {period}", strip=n
        )
    return DecodeReport(n, float(center), k, (float(lo), float(hi)), float(residual))


def decode(g, params: LayoutParams, N: int, tol: float = 1e-9) -> list[float]:
    """Decoded ``alpha(1..N)`` read from strips ``2, 4, ..., 2N``."""
    return [decode_strip(g, params, 2 * j, tol).center for j in range(1, N + 1)]


def smoothness_bound_over_2pi(params: LayoutParams, m: int) -> Fraction:
    """Exact ``(m+1) r(m) / 2^(m+1)``, the difference-quotient bound divided by ``2 pi``."""
    return (m + 1) * params.radius(m) / 2 ** (m + 1)


def smoothness_bound(params: LayoutParams, m: int) -> float:
    return 2 * math.pi * float(smoothness_bound_over_2pi(params, m))


def _jacobian_dets(S: AssembledSystem, pts: np.ndarray, h: float) -> np.ndarray:
    m, d = pts.shape
    J = np.empty((m, d, d))
    for i in range(d):
        e = np.zeros(d)
        e[i] = h
        J[:, :, i] = (S(pts + e) - S(pts - e)) / (2 * h)
    return np.linalg.det(J)


def smoothness_scan(
    S: AssembledSystem,
    m: int,
    samples: int = 10_000,
    rng=None,
    fd_step: float = 1e-6,
) -> SmoothnessReport:
    """Difference quotients of the last coordinate between ``{x1 = 0}`` and strip ``m``.

    Each pair is ``p = (0, y)`` and ``p' = (x1, y)`` with ``x1`` in strip ``m``,
    i.e. a partial difference quotient in the ``x1`` direction.  Half of the
    samples are drawn from the disk's bounding box so that most of them feel
    the twist.  Jacobian determinants are estimated by central differences.
    """
    if m < 2:
        raise ValueError("smoothness scan needs m >= 2")
    rng = np.random.default_rng(rng)
    d = S.d
    disk = S.disk(m)
    c = np.array([float(v) for v in disk.center])
    r = float(disk.radius)
    lo_s, hi_s = 1.0 / (m + 1), 1.0 / m

    wide = samples // 2
    pp = np.empty((samples, d))
    pp[:wide, 0] = rng.uniform(lo_s, hi_s, wide)
    pp[:wide, 1:] = rng.uniform(0.0, 1.0, (wide, d - 1))
    pp[wide:] = c + rng.uniform(-r, r, (samples - wide, d))
    p0 = pp.copy()
    p0[:, 0] = 0.0

    f_pp = S(pp)
    f_p0 = S(p0)
    quot = np.abs(f_pp[:, -1] - f_p0[:, -1]) / np.abs(pp[:, 0] - p0[:, 0])
    bound = smoothness_bound(S.params, m)
    violations = int(np.count_nonzero(quot >= bound))

    # Jacobians: outside every support, in the annulus, and in the core
    k = max(64, min(samples // 10, 2000))
    dirs = rng.normal(size=(3 * k, d))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    radial = np.concatenate(
        [
            rng.uniform(0.7, 0.95, k),   # off support (phi = 0 beyond 2r/3)
            rng.uniform(1 / 3, 2 / 3, k),  # transition annulus
            rng.uniform(0.0, 0.3, k),    # core
        ]
    )
    jp = c + (radial * r)[:, None] * dirs
    far = np.column_stack([rng.uniform(lo_s, hi_s, k), rng.uniform(0.0, 1.0, (k, d - 1))])
    far_moving = np.linalg.norm(far - c, axis=1) < 2 * r / 3
    far = far[~far_moving]
    dets_near = _jacobian_dets(S, jp, fd_step)
    dets_far = _jacobian_dets(S, far, fd_step)
    off = np.concatenate([dets_near[:k], dets_far])
    core = dets_near[2 * k:]
    return SmoothnessReport(
        strip=m,
        max_quotient=float(quot.max()),
        bound=bound,
        samples=samples,
        violations=violations,
        max_det_deviation_off_support=float(np.abs(off - 1).max()),
        max_det_deviation_core=float(np.abs(core - 1).max()),
        min_det=float(min(dets_near.min(), dets_far.min() if len(dets_far) else np.inf)),
        jacobian_points=len(jp) + len(far),
    )
