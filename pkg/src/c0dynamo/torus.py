"""Translations of the 2-torus and their conjugacy under GL(2, Z).

Rotation numbers are :class:`FormalReal` values: exact rational combinations
of a rational unit ``"1"`` and user-attested irrational symbols, with
``{1} + symbols`` assumed linearly independent over Q.  The GL(2, Z) action
is linear, so no product of irrationals ever has to be formed.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

__all__ = [
    "FormalReal",
    "TorusRotation",
    "UnimodularWitness",
    "Refutation",
    "FixedLocus",
    "NotMinimalError",
    "is_minimal",
    "apply_unimodular",
    "decide_conjugacy",
    "fixed_locus",
    "orbit_sample",
    "unimodular_matrices",
    "parse_rotation",
]

ONE = "1"
_SYMBOL = r"[A-Za-z_][A-Za-z0-9_]*"
_TERM = re.compile(
    rf"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(?:\*\s*({_SYMBOL}))?|({_SYMBOL}))\s*"
)


class NotMinimalError(ValueError):
    pass


class FormalReal:
    """Finite rational combination ``sum coeff[s] * s`` with ``"1"`` the rational unit."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, object] | None = None):
        clean = {}
        for sym, c in (terms or {}).items():
            if isinstance(c, float):
                raise TypeError("formal real coefficients must be exact")
            c = Fraction(c)
            if c:
                clean[str(sym)] = c
        self._terms = tuple(sorted(clean.items()))

    @classmethod
    def rational(cls, q) -> "FormalReal":
        return cls({ONE: q})

    @classmethod
    def symbol(cls, name: str, coeff=1) -> "FormalReal":
        return cls({name: coeff})

    @classmethod
    def parse(cls, text: str) -> "FormalReal":
        """Parse shorthand such as ``"1/2+1*sqrt2"``, ``"2*sqrt2"`` or ``"1-sqrt2"``."""
        text = text.strip()
        if not text:
            raise ValueError("empty formal real")
        terms: dict[str, Fraction] = {}
        pos = 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if m is None or m.end() == pos or (pos > 0 and m.group(1) is None):
                raise ValueError(f"cannot parse formal real {text!r} at column {pos + 1}")
            sign = -1 if m.group(1) == "-" else 1
            if m.group(4):
                sym, c = m.group(4), Fraction(1)
            else:
                c = Fraction(m.group(2))
                sym = m.group(3) or ONE
            terms[sym] = terms.get(sym, Fraction(0)) + sign * c
            pos = m.end()
        return cls(terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coeff(self, sym: str) -> Fraction:
        return self.terms.get(sym, Fraction(0))

    @property
    def rational_part(self) -> Fraction:
        return self.coeff(ONE)

    @property
    def symbols(self) -> set:
        return {s for s, _ in self._terms if s != ONE}

    def mod1(self) -> "FormalReal":
        t = self.terms
        t[ONE] = t.get(ONE, Fraction(0)) % 1
        return FormalReal(t)

    def __add__(self, other):
        if not isinstance(other, FormalReal):
            other = FormalReal.rational(other)
        t = self.terms
        for s, c in other._terms:
            t[s] = t.get(s, Fraction(0)) + c
        return FormalReal(t)

    __radd__ = __add__

    def __neg__(self):
        return FormalReal({s: -c for s, c in self._terms})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, FormalReal) or isinstance(k, float):
            raise TypeError("formal reals only scale by exact rationals")
        return FormalReal({s: c * k for s, c in self._terms})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FormalReal) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"FormalReal({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for s, c in self._terms:
            body = str(abs(c)) if s == ONE else (s if abs(c) == 1 else f"{abs(c)}*{s}")
            parts.append(("-" if c < 0 else "+") + body)
        out = "".join(parts)
        return out[1:] if out[0] == "+" else out


@dataclass(frozen=True)
class TorusRotation:
    """``(x, y) -> (x + alpha, y + beta)`` on ``(R/Z)^2``, kept in canonical form."""

    alpha: FormalReal
    beta: FormalReal

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.alpha.mod1())
        object.__setattr__(self, "beta", self.beta.mod1())

    @property
    def symbols(self) -> list:
        return sorted(self.alpha.symbols | self.beta.symbols)

    def __str__(self):
        return f"({self.alpha}, {self.beta})"


def parse_rotation(text: str) -> TorusRotation:
    """``"sqrt2,sqrt3"`` -> rotation by (sqrt2, sqrt3)."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"rotation needs two comma-separated components, got {text!r}")
    return TorusRotation(FormalReal.parse(parts[0]), FormalReal.parse(parts[1]))


@dataclass(frozen=True)
class UnimodularWitness:
    """``A (alpha, beta)^T + m = (alpha', beta')^T`` with ``det A = +-1``."""

    A: tuple
    m: tuple = (0, 0)

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if _det(A) not in (1, -1):
            raise ValueError(f"matrix {A} is not unimodular")


@dataclass(frozen=True)
class Refutation:
    """Why no unimodular witness exists; ``stage`` names the failing check."""

    stage: str
    detail: str
    A: tuple | None = None

    STAGES = ("no_rational_solution", "non_integral", "det", "rational_mismatch")

    def __str__(self):
        return f"refuted at {self.stage}: {self.detail}"


def _det(A) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def _rank(rows: list) -> int:
    """Rank of a list of Fraction rows by exact elimination."""
    M = [list(r) for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _irrational_vectors(T: TorusRotation, symbols: list):
    return [T.alpha.coeff(s) for s in symbols], [T.beta.coeff(s) for s in symbols]


def is_minimal(T: TorusRotation) -> bool:
    """Whether ``1, alpha, beta`` are rationally independent (under the attestation)."""
    syms = T.symbols
    if len(syms) < 2:
        return False
    u, v = _irrational_vectors(T, syms)
    return _rank([u, v]) == 2


def apply_unimodular(A, m, T: TorusRotation) -> TorusRotation:
    """Image ``A (alpha, beta)^T + m`` reduced mod 1."""
    A = tuple(tuple(int(v) for v in row) for row in A)
    if _det(A) not in (1, -1):
        raise ValueError(f"matrix {A} is not unimodular (det {_det(A)})")
    m = tuple(int(v) for v in m)
    return TorusRotation(
        A[0][0] * T.alpha + A[0][1] * T.beta + m[0],
        A[1][0] * T.alpha + A[1][1] * T.beta + m[1],
    )


def _solve_pair(u: list, v: list, w: list):
    """Unique rational ``(a, b)`` with ``a u + b v = w``, or ``None``; ``u, v`` independent."""
    # pick two rows where (u, v) is invertible
    for i, j in itertools.combinations(range(len(u)), 2):
        det = u[i] * v[j] - u[j] * v[i]
        if det != 0:
            a = (w[i] * v[j] - w[j] * v[i]) / det
            b = (u[i] * w[j] - u[j] * w[i]) / det
            if all(a * x + b * y == z for x, y, z in zip(u, v, w)):
                return a, b
            return None
    raise NotMinimalError("coefficient vectors are dependent")


def decide_conjugacy(T: TorusRotation, T2: TorusRotation) -> UnimodularWitness | Refutation:
    """Decide whether two minimal rotations are conjugate.

    Matching irrational coefficients gives, for each row of ``A``, a rational
    linear system with a unique solution.  A witness is returned when that
    solution is integral and unimodular and the rational parts agree mod 1;
    otherwise a :class:`Refutation` names the first failing stage.
    """
    for R in (T, T2):
        if not is_minimal(R):
            raise NotMinimalError(f"rotation {R} is not minimal")
    syms = sorted(set(T.symbols) | set(T2.symbols))
    u, v = _irrational_vectors(T, syms)
    rows = []
    for target in (T2.alpha, T2.beta):
        sol = _solve_pair(u, v, [target.coeff(s) for s in syms])
        if sol is None:
            return Refutation("no_rational_solution", f"{target} is not a rational combination of {T}")
        rows.append(sol)
    A = tuple(tuple(x for x in row) for row in rows)
    if any(x.denominator != 1 for row in A for x in row):
        return Refutation("non_integral", f"forced matrix {A} is not integral", A)
    A = tuple(tuple(int(x) for x in row) for row in A)
    det = _det(A)
    if det not in (1, -1):
        return Refutation("det", f"det={det} for forced matrix {[list(r) for r in A]}", A)
    m = []
    for row, target in zip(A, (T2.alpha, T2.beta)):
        shift = target.rational_part - (row[0] * T.alpha.rational_part + row[1] * T.beta.rational_part)
        if shift.denominator != 1:
            return Refutation("rational_mismatch", f"rational parts differ by {shift} mod 1", A)
        m.append(int(shift))
    return UnimodularWitness(A, tuple(m))


@dataclass(frozen=True)
class FixedLocus:
    """Solutions of ``A v = v`` on the torus.

    ``kind`` is ``"full"``, ``"lines"`` (``normal . v = offset mod 1`` for each
    offset) or ``"points"`` (a finite list of rational points).
    """

    kind: str
    normal: tuple | None = None
    offsets: tuple = ()
    points: tuple = ()

    def contains(self, v) -> bool:
        x, y = (Fraction(c) for c in v)
        if self.kind == "full":
            return True
        if self.kind == "lines":
            val = self.normal[0] * x + self.normal[1] * y
            return any((val - o) % 1 == 0 for o in self.offsets)
        return (x % 1, y % 1) in set(self.points)

    def __str__(self):
        if self.kind == "full":
            return "full torus"
        if self.kind == "lines":
            lhs = str(FormalReal({"x": self.normal[0], "y": self.normal[1]}))
            eqs = ", ".join(f"{lhs} = {o} mod 1" for o in self.offsets)
            return f"{len(self.offsets)} closed line(s): {eqs}"
        return f"{len(self.points)} point(s): " + ", ".join(f"({x}, {y})" for x, y in self.points)


def fixed_locus(A) -> FixedLocus:
    """Fixed set of ``v -> A v`` on ``(R/Z)^2`` for an integer matrix ``A``."""
    A = tuple(tuple(int(x) for x in row) for row in A)
    B = ((A[0][0] - 1, A[0][1]), (A[1][0], A[1][1] - 1))
    entries = [x for row in B for x in row]
    if not any(entries):
        return FixedLocus("full")
    det = _det(B)
    if det != 0:
        # v in B^{-1} Z^2 mod Z^2: |det| points, reached from z in [0, |det|)^2
        inv = ((Fraction(B[1][1], det), Fraction(-B[0][1], det)),
               (Fraction(-B[1][0], det), Fraction(B[0][0], det)))
        pts = set()
        n = abs(det)
        for z0 in range(n):
            for z1 in range(n):
                pts.add(((inv[0][0] * z0 + inv[0][1] * z1) % 1, (inv[1][0] * z0 + inv[1][1] * z1) % 1))
        return FixedLocus("points", points=tuple(sorted(pts)))
    # rank one: B = col * row with row primitive; B v in Z^2 iff row.v in (1/g) Z, g = gcd(col)
    row = next(r for r in B if any(r))
    gr = math.gcd(*row)
    row = (row[0] // gr, row[1] // gr)
    col = tuple(
        (r[0] // row[0]) if row[0] else (r[1] // row[1]) for r in B
    )
    g = math.gcd(*col)
    return FixedLocus("lines", normal=row, offsets=tuple(Fraction(j, g) for j in range(g)))


def unimodular_matrices(height: int):
    """All 2x2 integer matrices with entries in ``[-height, height]`` and det +-1."""
    rng = range(-height, height + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if a * d - b * c in (1, -1):
            yield ((a, b), (c, d))


def orbit_sample(T: TorusRotation, height: int) -> list:
    """Distinct images of ``T`` under unimodular matrices of bounded height."""
    if height < 1:
        raise ValueError("height must be >= 1")
    seen = {}
    for A in unimodular_matrices(height):
        R = apply_unimodular(A, (0, 0), T)
        seen.setdefault((R.alpha, R.beta), R)
    return sorted(seen.values(), key=str)
