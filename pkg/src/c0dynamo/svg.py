"""Deterministic SVG pictures of layouts, witnesses, orbits and displacement scans.

Output depends only on the inputs: element ids are derived from strip
indices, numbers are printed with a fixed precision, and nothing time- or
environment-dependent is embedded, so files can be compared byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .conjugacy import ConjugacyWitness
from .system import AssembledSystem

__all__ = ["render_layout", "render_orbit", "render_displacement", "MAX_DEPTH"]

MAX_DEPTH = 12
SIZE = 600
PAD = 40


def _f(x) -> str:
    s = f"{float(x):.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    def __init__(self, title: str, size: int = SIZE, pad: int = PAD):
        self.size, self.pad = size, pad
        self.scale = size - 2 * pad
        self.lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">',
            f"<title>{escape(title)}</title>",
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
            'markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#c0392b"/></marker></defs>',
        ]

    def x(self, u):
        return self.pad + float(u) * self.scale

    def y(self, v):
        return self.pad + (1.0 - float(v)) * self.scale

    def add(self, element: str):
        self.lines.append(element)

    def frame(self):
        self.add(
            f'<rect id="cube" x="{_f(self.x(0))}" y="{_f(self.y(1))}" width="{_f(self.scale)}" '
            f'height="{_f(self.scale)}" fill="none" stroke="black" stroke-width="1.5"/>'
        )

    def text(self, x, y, body, ident=None, size=12):
        ident = f' id="{ident}"' if ident else ""
        self.add(f'<text{ident} x="{_f(x)}" y="{_f(y)}" font-family="monospace" font-size="{size}">{escape(body)}</text>')

    def render(self) -> str:
        return "\n".join(self.lines + ["</svg>", ""])


def _strip_lines(cv: _Canvas, last_strip: int):
    cv.add('<g id="strips" stroke="#888" stroke-width="0.7">')
    for n in range(1, last_strip + 2):
        x = cv.x(Fraction(1, n))
        cv.add(f'<line id="strip-line-{n}" x1="{_f(x)}" y1="{_f(cv.y(0))}" x2="{_f(x)}" y2="{_f(cv.y(1))}"/>')
    cv.add("</g>")


def _circle(cv, ident, cx, cy, r, style):
    cv.add(f'<circle id="{ident}" cx="{_f(cv.x(cx))}" cy="{_f(cv.y(cy))}" r="{_f(float(r) * cv.scale)}" {style}/>')


def render_layout(obj, depth: int = 3) -> str:
    """Strips and encoding disks for strips ``2..2*depth``, projected on ``(x1, x_d)``.

    ``obj`` is an :class:`AssembledSystem` or a :class:`ConjugacyWitness`;
    a witness is drawn as its boxes with source and target disks joined by
    an arrow along the last axis.
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be in 1..{MAX_DEPTH}")
    last = 2 * depth
    if isinstance(obj, AssembledSystem):
        d = obj.d
        cv = _Canvas(f"strip layout, d={d}, strips 2..{last}")
    elif isinstance(obj, ConjugacyWitness):
        d = obj.params.d
        cv = _Canvas(f"conjugacy witness, d={d}, strips 2..{last}")
    else:
        raise TypeError("render_layout takes a system or a witness")
    cv.frame()
    _strip_lines(cv, last)

    if isinstance(obj, AssembledSystem):
        cv.add('<g id="disks">')
        for n in range(2, last + 1):
            disk = obj.disk(n)
            cx, cy, r = disk.center[0], disk.center[-1], disk.radius
            color = "#2e86c1" if n % 2 == 0 else "#7f8c8d"
            _circle(cv, f"disk-{n}", cx, cy, r, f'fill="{color}" fill-opacity="0.25" stroke="{color}"')
            _circle(cv, f"support-{n}", cx, cy, 2 * r / 3, f'fill="none" stroke="{color}" stroke-dasharray="2,2"')
        cv.add("</g>")
    else:
        cv.add('<g id="transports">')
        for n, M in obj.transports:
            if n > last:
                continue
            lo, hi = M.box_lo, M.box_hi
            cv.add(
                f'<rect id="box-{n}" x="{_f(cv.x(lo[0]))}" y="{_f(cv.y(hi[-1]))}" '
                f'width="{_f(cv.x(hi[0]) - cv.x(lo[0]))}" height="{_f(cv.y(lo[-1]) - cv.y(hi[-1]))}" '
                'fill="none" stroke="#27ae60"/>'
            )
            _circle(cv, f"source-{n}", M.source[0], M.source[-1], M.radius,
                    'fill="#2e86c1" fill-opacity="0.25" stroke="#2e86c1"')
            _circle(cv, f"target-{n}", M.target[0], M.target[-1], M.radius,
                    'fill="#e67e22" fill-opacity="0.25" stroke="#e67e22"')
            cv.add(
                f'<line id="arrow-{n}" data-length="{abs(M.shift)}" data-shift="{M.shift}" '
                f'x1="{_f(cv.x(M.source[0]))}" y1="{_f(cv.y(M.source[-1]))}" '
                f'x2="{_f(cv.x(M.target[0]))}" y2="{_f(cv.y(M.target[-1]))}" '
                'stroke="#c0392b" marker-end="url(#arrow)"/>'
            )
        cv.add("</g>")
    if d > 2:
        cv.text(cv.pad, cv.size - 10, f"projection onto coordinates (1, {d})", ident="legend")
    return cv.render()


def render_orbit(points, title: str = "orbit") -> str:
    """Orbit points projected on ``(x1, x_d)``, auto-zoomed to their bounding box."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    lo = pts[:, [0, -1]].min(axis=0)
    hi = pts[:, [0, -1]].max(axis=0)
    span = float(max(hi - lo)) or 1.0
    mid = (lo + hi) / 2
    cv = _Canvas(title)
    cv.frame()
    cv.add('<g id="orbit" fill="#2e86c1">')
    for i, p in enumerate(pts):
        u = 0.5 + (p[0] - mid[0]) / (1.1 * span)
        v = 0.5 + (p[-1] - mid[1]) / (1.1 * span)
        cv.add(f'<circle id="pt-{i}" cx="{_f(cv.x(u))}" cy="{_f(cv.y(v))}" r="2"/>')
    cv.add("</g>")
    cv.text(cv.pad, 25, f"window center ({mid[0]:.6g}, {mid[1]:.6g}), width {1.1 * span:.3g}", ident="legend")
    return cv.render()


def render_displacement(t, disp, title: str = "displacement scan") -> str:
    """Displacement along a probe line, normalized to the unit square."""
    t = np.asarray(t, dtype=float)
    disp = np.asarray(disp, dtype=float)
    top = float(disp.max()) or 1.0
    u = (t - t.min()) / ((t.max() - t.min()) or 1.0)
    v = disp / top
    cv = _Canvas(title)
    cv.frame()
    path = " ".join(f"{_f(cv.x(a))},{_f(cv.y(b))}" for a, b in zip(u, v))
    cv.add(f'<polyline id="scan" points="{path}" fill="none" stroke="#2e86c1"/>')
    cv.text(cv.pad, 25, f"t in [{t.min():.6g}, {t.max():.6g}], max displacement {top:.3g}", ident="legend")
    return cv.render()
