"""Non-increasing cutoff profiles: 1 on [0, 1/3], 0 on [2/3, 1].

Two profiles are available.  ``smooth`` is the exponential transition
``sigma(1-s) / (sigma(1-s) + sigma(s))`` with ``s = 3x - 1`` and
``sigma(t) = exp(-1/t)``; it is C-infinity.  ``cubic`` is the smoothstep
``1 - s^2 (3 - 2s)``, which is only C^1 but cheap and convenient for plots.
"""

from __future__ import annotations

import math
import warnings
from enum import Enum

import numpy as np

__all__ = ["BumpProfile", "bump_eval", "bump_derivative", "UnsupportedOrderError"]


class BumpProfile(str, Enum):
    SMOOTH = "smooth"
    CUBIC = "cubic"


class UnsupportedOrderError(ValueError):
    pass


# exp(-1/t) underflows to exactly 0 for t below this, and 1/t**4 would overflow
_TINY = 1e-3


def _sigma(t):
    t = np.asarray(t, dtype=float)
    safe = np.where(t > _TINY, t, 1.0)
    return np.where(t > _TINY, np.exp(-1.0 / safe), 0.0)


def _sigma1(t):
    t = np.asarray(t, dtype=float)
    safe = np.where(t > _TINY, t, 1.0)
    return np.where(t > _TINY, np.exp(-1.0 / safe) / safe**2, 0.0)


def _sigma2(t):
    t = np.asarray(t, dtype=float)
    safe = np.where(t > _TINY, t, 1.0)
    return np.where(t > _TINY, np.exp(-1.0 / safe) * (1.0 / safe**4 - 2.0 / safe**3), 0.0)


def _smooth(x):
    s = 3.0 * x - 1.0
    g = _sigma(1.0 - s)
    h = _sigma(s)
    return g / (g + h)


def _cubic(x):
    s = np.clip(3.0 * x - 1.0, 0.0, 1.0)
    return 1.0 - s * s * (3.0 - 2.0 * s)


def _profile_fn(profile):
    profile = BumpProfile(profile)
    return _smooth if profile is BumpProfile.SMOOTH else _cubic


def _check_domain(x, strict):
    x = np.asarray(x, dtype=float)
    if np.any((x < 0.0) | (x > 1.0)):
        if strict:
            raise ValueError("bump profile argument outside [0, 1]")
        warnings.warn("bump profile argument clamped into [0, 1]", RuntimeWarning, stacklevel=3)
        x = np.clip(x, 0.0, 1.0)
    return x


def unchecked_eval(profile, x):
    """Profile value without domain checks (caller guarantees x >= 0)."""
    return _profile_fn(profile)(np.asarray(x, dtype=float))


def bump_eval(profile, x, strict: bool = False):
    """Evaluate the cutoff profile at ``x`` (scalar or array) in [0, 1]."""
    x = _check_domain(x, strict)
    out = _profile_fn(profile)(x)
    return float(out) if out.ndim == 0 else out


def bump_derivative(profile, x, order: int = 1, strict: bool = False):
    """Analytic first or second derivative of the profile with respect to x."""
    if order not in (1, 2):
        raise UnsupportedOrderError(f"derivative order {order} is not supported")
    x = _check_domain(x, strict)
    s = 3.0 * x - 1.0
    if BumpProfile(profile) is BumpProfile.CUBIC:
        inside = (s > 0.0) & (s < 1.0)
        if order == 1:
            out = np.where(inside, -18.0 * s * (1.0 - s), 0.0)
        else:
            out = np.where(inside, -54.0 * (1.0 - 2.0 * s), 0.0)
    else:
        g, h = _sigma(1.0 - s), _sigma(s)
        g1, h1 = -_sigma1(1.0 - s), _sigma1(s)
        tot = g + h
        num = g1 * h - g * h1
        if order == 1:
            out = 3.0 * num / tot**2
        else:
            g2, h2 = _sigma2(1.0 - s), _sigma2(s)
            num1 = g2 * h - g * h2
            out = 9.0 * (num1 / tot**2 - 2.0 * num * (g1 + h1) / tot**3)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def scalar_eval(profile, x: float) -> float:
    """Pure-Python profile value for hot single-point loops."""
    s = 3.0 * x - 1.0
    if s <= 0.0:
        return 1.0
    if s >= 1.0:
        return 0.0
    if profile == BumpProfile.CUBIC:
        return 1.0 - s * s * (3.0 - 2.0 * s)
    g = math.exp(-1.0 / (1.0 - s)) if 1.0 - s > _TINY else 0.0
    h = math.exp(-1.0 / s) if s > _TINY else 0.0
    return g / (g + h)
