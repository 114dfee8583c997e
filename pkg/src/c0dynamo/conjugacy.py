"""Conjugacy witnesses and non-conjugacy certificates between assembled systems.

For c0-equivalent specs the witness is pasted together from one transport
per even strip where the two sequences differ, and is the identity
everywhere else.  For inequivalent specs the certificate records a residue
class of indices on which the two sequences are stuck at different values,
together with dense-sequence indices approaching the first value, so that
the encoded centers of one system converge while the matching centers of
the other do not.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .bump import BumpProfile
from .layout import LayoutParams, dyadic_point, midline
from .maps import TransportMap, _as_points, transport_apply, transport_apply_exact, transport_inverse
from .sequences import C0Decision, C0Verdict, SequenceSpec, c0_equivalent, tail_window
from .system import AssembledSystem

__all__ = [
    "NotEquivalentError",
    "CertificateError",
    "ConjugacyWitness",
    "NonConjugacyCertificate",
    "build_witness",
    "verify_witness",
    "stratified_samples",
    "shifted_witness",
    "build_certificate",
    "verify_certificate",
    "nearest_dense_index",
]


class NotEquivalentError(ValueError):
    def __init__(self, decision: C0Decision):
        msg = f"specs are not c0-equivalent ({decision.verdict.value}"
        if decision.position is not None:
            msg += f"; differ by {decision.gap} at index {decision.position}, period {decision.period}"
        super().__init__(msg + ")")
        self.decision = decision


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class ConjugacyWitness:
    """Piecewise homeomorphism ``h`` with ``h o f_alpha = f_beta o h``.

    ``transports`` is a tuple of ``(strip, TransportMap)`` pairs, one per even
    strip where the encoded values differ; all other strips are fixed.
    """

    params: LayoutParams
    transports: tuple = ()

    @property
    def by_strip(self) -> dict:
        return dict(self.transports)

    def _single(self, p, fn):
        x1 = p[0]
        if 0.0 < x1 <= 1.0:
            M = self.by_strip.get(math.floor(1.0 / x1))
            if M is not None:
                return fn(M, p)
        return p.copy()

    def apply(self, p):
        pts, single = _as_points(p)
        if single:
            return self._single(pts[0], transport_apply)
        out = pts.copy()
        for _, M in self.transports:
            out = transport_apply(M, out)
        return out

    __call__ = apply

    def inverse(self, p):
        pts, single = _as_points(p)
        if single:
            return self._single(pts[0], transport_inverse)
        out = pts.copy()
        for _, M in self.transports:
            out = transport_inverse(M, out)
        return out

    def apply_exact(self, p: tuple) -> tuple:
        """Exact image of a rational point (identity and disk regions are affine)."""
        p = tuple(Fraction(v) for v in p)
        if 0 < p[0] <= 1:
            M = self.by_strip.get(math.floor(1 / p[0]))
            if M is not None:
                return transport_apply_exact(M, p)
        return p

    def tail_bound(self, N: int) -> Fraction:
        """``max |R_n|`` over boxes in strips ``>= N``; bounds ``|h(p) - p|`` for ``x1 < 1/N``."""
        return max((M.sup_diameter() for n, M in self.transports if n >= N), default=Fraction(0))


def _transport_for(params, n, a_last, b_last, profile) -> TransportMap:
    r = params.radius(n)
    k = midline(n)
    half = Fraction(1, 2)
    pad = 3 * r / 2
    lo = (k - pad,) + (half - pad,) * (params.d - 2) + (min(a_last, b_last) - pad,)
    hi = (k + pad,) + (half + pad,) * (params.d - 2) + (max(a_last, b_last) + pad,)
    mid = (half,) * (params.d - 2)
    return TransportMap(
        lo, hi, (k,) + mid + (a_last,), (k,) + mid + (b_last,), r, r / 2, BumpProfile(profile)
    )


def build_witness(
    spec_a: SequenceSpec, spec_b: SequenceSpec, params: LayoutParams, profile="smooth"
) -> ConjugacyWitness:
    """Witness conjugating the system of ``spec_a`` to that of ``spec_b``.

    Raises :class:`NotEquivalentError` carrying the c0 refutation when the
    specs are not c0-equivalent.
    """
    decision = c0_equivalent(spec_a, spec_b)
    if decision.verdict is not C0Verdict.EQUIVALENT:
        raise NotEquivalentError(decision)
    transports = []
    for j in range(1, decision.agree_from):
        a, b = spec_a.value(j), spec_b.value(j)
        if a != b:
            transports.append((2 * j, _transport_for(params, 2 * j, a, b, profile)))
    return ConjugacyWitness(params, tuple(transports))


def shifted_witness(W: ConjugacyWitness, offset) -> ConjugacyWitness:
    """Copy of ``W`` with every box and disk pair moved along the last axis.

    A deliberately wrong witness, used as a negative control.
    """
    offset = Fraction(offset)

    def move(t):
        return t[:-1] + (t[-1] + offset,)

    moved = tuple(
        (n, replace(M, box_lo=move(M.box_lo), box_hi=move(M.box_hi),
                    source=move(M.source), target=move(M.target)))
        for n, M in W.transports
    )
    return ConjugacyWitness(W.params, moved)


def stratified_samples(sys_a: AssembledSystem, W: ConjugacyWitness, samples: int, rng=None):
    """Sample points from disk cores, supports, strip bulk, box faces and near ``x1 = 0``."""
    rng = np.random.default_rng(rng)
    d = sys_a.d
    strips = range(2, 13)
    per = max(1, samples // (len(strips) * 5 + 2))
    chunks = []

    def ball(c, r, lo, hi, m):
        v = rng.normal(size=(m, d))
        v /= np.linalg.norm(v, axis=1)[:, None]
        rad = rng.uniform(lo, hi, m) * r
        return c + rad[:, None] * v

    by_strip = W.by_strip
    for n in strips:
        disk = sys_a.disk(n)
        c = np.array([float(v) for v in disk.center])
        r = float(disk.radius)
        chunks.append(ball(c, r, 0.0, 1 / 3, per))
        chunks.append(ball(c, r, 1 / 3, 2 / 3, per))
        bulk = rng.uniform(0.0, 1.0, (per, d))
        bulk[:, 0] = rng.uniform(1 / (n + 1), 1 / n, per)
        chunks.append(bulk)
        M = by_strip.get(n)
        if M is not None:
            lo = np.array([float(v) for v in M.box_lo])
            hi = np.array([float(v) for v in M.box_hi])
            tgt = np.array([float(v) for v in M.target])
            chunks.append(ball(tgt, r, 0.0, 1.0, per))
            face = rng.uniform(lo, hi, (per, d))
            axis = rng.integers(0, d, per)
            side = rng.integers(0, 2, per)
            eps = rng.uniform(-1e-7, 1e-7, per)
            face[np.arange(per), axis] = np.where(side, hi[axis], lo[axis]) + eps
            chunks.append(face)
        else:
            chunks.append(ball(c, r, 0.6, 1.1, 2 * per))
    near = rng.uniform(0.0, 1.0, (2 * per, d))
    near[:per, 0] = rng.uniform(0.0, 1e-3, per)
    near[per:, 0] = 10.0 ** rng.uniform(-12, -3, per)
    near[:8, 0] = 0.0
    chunks.append(near)
    pts = np.concatenate(chunks)
    if len(pts) < samples:
        extra = rng.uniform(0.0, 1.0, (samples - len(pts), d))
        pts = np.concatenate([pts, extra])
    return np.clip(pts[:samples], 0.0, 1.0)


def verify_witness(
    W: ConjugacyWitness,
    sys_a: AssembledSystem,
    sys_b: AssembledSystem,
    samples: int = 100_000,
    rng=None,
) -> float:
    """Max over stratified samples of ``|h(f_a(p)) - f_b(h(p))|``."""
    if sys_a.params != sys_b.params or W.params != sys_a.params:
        raise ValueError("witness and systems must share layout parameters")
    pts = stratified_samples(sys_a, W, samples, rng)

    def defect(chunk):
        lhs = W.apply(sys_a.eval(chunk))
        rhs = sys_b.eval(W.apply(chunk))
        return float(np.max(np.linalg.norm(lhs - rhs, axis=1)))

    chunks = np.array_split(pts, max(1, math.ceil(len(pts) / 25_000)))
    workers = min(thread_cap(), len(chunks))
    if workers == 1:
        return max(map(defect, chunks))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return max(pool.map(defect, chunks))


def thread_cap() -> int:
    """Worker threads allowed for sampling, capped by ``C0DYNAMO_THREADS``."""
    cap = os.cpu_count() or 1
    env = os.environ.get("C0DYNAMO_THREADS")
    if env:
        try:
            cap = min(cap, max(1, int(env)))
        except ValueError:
            raise ValueError(f"C0DYNAMO_THREADS must be a positive integer, got {env!r}") from None
    return cap


@dataclass(frozen=True)
class NonConjugacyCertificate:
    """Data showing the encoded centers cannot be matched by any homeomorphism.

    Along indices ``n_k = residue_start + (k-1) residue_period`` the first spec
    equals ``a`` and the second equals ``b``; ``dense_indices[k-1] = m_k``
    satisfies ``|p(m_k) - a| < 2^-k``.
    """

    a: Fraction
    b: Fraction
    gap: Fraction
    residue_start: int
    residue_period: int
    dense_indices: tuple

    @property
    def K(self) -> int:
        return len(self.dense_indices)

    def index(self, k: int) -> int:
        return self.residue_start + (k - 1) * self.residue_period


def nearest_dense_index(a: Fraction, level: int) -> int:
    """Index of the level-``level`` dyadic point closest to ``a``."""
    size = 1 << level
    scale = 1 << (level + 2)
    j = math.floor(((a - Fraction(1, 4)) * scale + 1) / 2)
    best = None
    for cand in (j - 1, j, j + 1):
        if 1 <= cand <= size:
            n = size + cand - 1
            if best is None or abs(dyadic_point(n) - a) < abs(dyadic_point(best) - a):
                best = n
    return best


def build_certificate(
    spec_a: SequenceSpec, spec_b: SequenceSpec, params: LayoutParams, K: int | None = None
) -> NonConjugacyCertificate:
    """Certificate that the systems of two c0-inequivalent specs are not conjugate."""
    if params.dense_rule != "dyadic":
        raise CertificateError("certificates are implemented for the dyadic dense rule")
    decision = c0_equivalent(spec_a, spec_b)
    if decision.verdict is C0Verdict.UNDECIDABLE:
        raise CertificateError("certificates need specs with decidable tails")
    if decision.verdict is C0Verdict.EQUIVALENT:
        raise CertificateError("specs are c0-equivalent; their systems are conjugate")
    start, period = tail_window(spec_a, spec_b)
    n0 = decision.position
    a, b = spec_a.value(n0), spec_b.value(n0)
    gap = abs(a - b)
    if K is None:
        K = max(12, math.ceil(math.log2(2 / gap)) + 1)
    dense = []
    level = 0
    for k in range(1, K + 1):
        bound = Fraction(1, 2**k)
        while True:
            m = nearest_dense_index(a, level)
            level += 1
            if abs(dyadic_point(m) - a) < bound and (not dense or m > dense[-1]):
                dense.append(m)
                break
    return NonConjugacyCertificate(a, b, gap, n0, period, tuple(dense))


def _center(params, n, last):
    return (midline(n),) + (Fraction(1, 2),) * (params.d - 2) + (Fraction(last),)


def _sup(u, v):
    return max(abs(x - y) for x, y in zip(u, v))


def verify_certificate(
    C: NonConjugacyCertificate,
    spec_a: SequenceSpec,
    spec_b: SequenceSpec,
    params: LayoutParams,
) -> bool:
    """Exact check of every claim carried by the certificate."""
    if not (spec_a.decidable and spec_b.decidable):
        return False
    if C.a == C.b or C.gap != abs(C.a - C.b) or C.K < 1 or C.residue_period < 1:
        return False
    # the residue class must live in the joint periodic regime
    start, period = tail_window(spec_a, spec_b)
    if C.residue_start < start or C.residue_period % period != 0:
        return False
    for t in range(3):
        n = C.residue_start + t * C.residue_period
        if spec_a.value(n) != C.a or spec_b.value(n) != C.b:
            return False
    ms = C.dense_indices
    if any(m2 <= m1 for m1, m2 in zip(ms, ms[1:])) or ms[0] < 1:
        return False
    for k, m in enumerate(ms, start=1):
        if not abs(params.dense(m) - C.a) < Fraction(1, 2**k):
            return False

    # interleaved centers: x_{2k} at strip 2 n_k, x_{2k+1} at strip 2 m_k + 1
    limit_a = (Fraction(1, 2),) * (params.d - 2) + (C.a,)
    settled = False
    for k, m in enumerate(ms, start=1):
        n = C.index(k)
        x_even = _center(params, 2 * n, spec_a.value(n))
        x_odd = _center(params, 2 * m + 1, params.dense(m))
        y_even = _center(params, 2 * n, spec_b.value(n))
        y_odd = x_odd  # odd strips do not depend on the encoded sequence
        eps = Fraction(1, 2**k)
        # x side converges to (0, 1/2, ..., a)
        if _sup(x_even[1:], limit_a) != 0 or x_even[0] > Fraction(1, n):
            return False
        if _sup(x_odd[1:], limit_a) >= eps or x_odd[0] > Fraction(1, 2 * m):
            return False
        # y side keeps consecutive terms apart by nearly the gap
        if _sup(y_even, y_odd) < C.gap - eps:
            return False
        settled = settled or 2 * eps <= C.gap
    return settled
