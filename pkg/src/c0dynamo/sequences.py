"""Symbolic sequences in [1/4, 3/4]^N and the c0 relation between them.

A :class:`SequenceSpec` is indexed from 1.  Eventually constant and
eventually periodic sequences have decidable tails, so c0 equivalence
(``alpha(n) - beta(n) -> 0``) is decided exactly for them: two eventually
periodic sequences are c0-equivalent iff they are eventually equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np

__all__ = [
    "SequenceKind",
    "SequenceSpec",
    "C0Verdict",
    "C0Decision",
    "c0_equivalent",
    "LOWER",
    "UPPER",
]

LOWER = Fraction(1, 4)
UPPER = Fraction(3, 4)


class SequenceKind(str, Enum):
    EVENTUALLY_CONSTANT = "eventually_constant"
    PERIODIC_TAIL = "periodic_tail"
    OPAQUE = "opaque"


class InvalidSpecError(ValueError):
    pass


def _rational(v) -> Fraction:
    if isinstance(v, float):
        raise InvalidSpecError(f"sequence value {v!r} must be exact, not a float")
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


@dataclass(frozen=True)
class SequenceSpec:
    """An element of ``[1/4, 3/4]^N``, indexed from 1.

    Use the constructors :meth:`constant`, :meth:`eventually_constant`,
    :meth:`periodic` and :meth:`opaque` rather than the raw fields.
    """

    kind: SequenceKind
    prefix: tuple = ()
    block: tuple = ()
    callback: Callable[[int], object] | None = None

    def __post_init__(self):
        kind = SequenceKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is SequenceKind.OPAQUE:
            if self.callback is None:
                raise InvalidSpecError("opaque sequences need a callback")
            return
        prefix = tuple(_rational(v) for v in self.prefix)
        block = tuple(_rational(v) for v in self.block)
        if not block:
            raise InvalidSpecError("tail block must have length >= 1")
        if kind is SequenceKind.EVENTUALLY_CONSTANT and len(block) != 1:
            raise InvalidSpecError("eventually constant sequences have a single tail value")
        for v in prefix + block:
            if not LOWER <= v <= UPPER:
                raise InvalidSpecError(f"value {v} outside [1/4, 3/4]")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "block", block)

    @classmethod
    def constant(cls, value) -> "SequenceSpec":
        return cls(SequenceKind.EVENTUALLY_CONSTANT, (), (value,))

    @classmethod
    def eventually_constant(cls, prefix, value) -> "SequenceSpec":
        return cls(SequenceKind.EVENTUALLY_CONSTANT, tuple(prefix), (value,))

    @classmethod
    def periodic(cls, prefix, block) -> "SequenceSpec":
        return cls(SequenceKind.PERIODIC_TAIL, tuple(prefix), tuple(block))

    @classmethod
    def opaque(cls, callback) -> "SequenceSpec":
        return cls(SequenceKind.OPAQUE, callback=callback)

    @property
    def decidable(self) -> bool:
        return self.kind is not SequenceKind.OPAQUE

    @property
    def period(self) -> int:
        return len(self.block)

    def value(self, j: int):
        """``alpha(j)`` for ``j >= 1``."""
        if j < 1:
            raise IndexError("sequences are indexed from 1")
        if self.kind is SequenceKind.OPAQUE:
            v = self.callback(j)
            if not LOWER <= v <= UPPER:
                raise InvalidSpecError(f"opaque value alpha({j}) = {v} outside [1/4, 3/4]")
            return v
        if j <= len(self.prefix):
            return self.prefix[j - 1]
        return self.block[(j - 1 - len(self.prefix)) % len(self.block)]

    __call__ = value

    def values_float(self, j) -> np.ndarray:
        """Vectorized float values ``alpha(j)`` for an integer array ``j >= 1``."""
        j = np.asarray(j, dtype=np.int64)
        if self.kind is SequenceKind.OPAQUE:
            flat = [float(self.value(int(v))) for v in j.ravel()]
            return np.array(flat, dtype=float).reshape(j.shape)
        pre = np.array([float(v) for v in self.prefix], dtype=float)
        blk = np.array([float(v) for v in self.block], dtype=float)
        out = np.empty(j.shape, dtype=float)
        in_pre = j <= len(pre)
        if len(pre):
            out[in_pre] = pre[np.clip(j[in_pre] - 1, 0, len(pre) - 1)]
        out[~in_pre] = blk[(j[~in_pre] - 1 - len(pre)) % len(blk)]
        return out

    def head(self, n: int) -> list:
        return [self.value(j) for j in range(1, n + 1)]


class C0Verdict(str, Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    UNDECIDABLE = "undecidable_for_kind"


@dataclass(frozen=True)
class C0Decision:
    """Outcome of :func:`c0_equivalent`.

    ``agree_from`` is the least index from which the sequences coincide
    (equivalent case).  ``position`` and ``gap`` name the first tail index
    where they differ and the size of the difference there; the difference
    recurs with that size once per ``period`` indices.
    """

    verdict: C0Verdict
    agree_from: int | None = None
    position: int | None = None
    gap: Fraction | None = None
    period: int | None = None

    def __bool__(self) -> bool:
        return self.verdict is C0Verdict.EQUIVALENT


def tail_window(a: SequenceSpec, b: SequenceSpec) -> tuple[int, int]:
    """First index of the joint periodic regime and its period (lcm of blocks)."""
    start = max(len(a.prefix), len(b.prefix)) + 1
    return start, math.lcm(a.period, b.period)


def c0_equivalent(a: SequenceSpec, b: SequenceSpec) -> C0Decision:
    if not (a.decidable and b.decidable):
        return C0Decision(C0Verdict.UNDECIDABLE)
    start, period = tail_window(a, b)
    for n in range(start, start + period):
        if a.value(n) != b.value(n):
            return C0Decision(
                C0Verdict.NOT_EQUIVALENT,
                position=n,
                gap=abs(a.value(n) - b.value(n)),
                period=period,
            )
    agree = start
    while agree > 1 and a.value(agree - 1) == b.value(agree - 1):
        agree -= 1
    return C0Decision(C0Verdict.EQUIVALENT, agree_from=agree, period=period)
