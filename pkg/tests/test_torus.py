import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c0dynamo import (
    FormalReal,
    Refutation,
    TorusRotation,
    UnimodularWitness,
    apply_unimodular,
    decide_conjugacy,
    fixed_locus,
    is_minimal,
    orbit_sample,
)
from c0dynamo.torus import NotMinimalError, parse_rotation, unimodular_matrices

R = parse_rotation
SYMS = ["s1", "s2", "s3"]


def brute_unimodular(height):
    """Oracle enumeration written independently of the library."""
    out = []
    for a, b, c, d in itertools.product(range(-height, height + 1), repeat=4):
        if abs(a * d - b * c) == 1:
            out.append(((a, b), (c, d)))
    return out


UNI3 = brute_unimodular(3)


def random_rotation(rng):
    while True:
        terms = [{s: F(int(rng.integers(-3, 4)), int(rng.integers(1, 3))) for s in SYMS} for _ in range(2)]
        for t in terms:
            t["1"] = F(int(rng.integers(0, 12)), 12)
        T = TorusRotation(FormalReal(terms[0]), FormalReal(terms[1]))
        if is_minimal(T):
            return T


def brute_conjugate(T, T2):
    return [A for A in UNI3 if apply_unimodular(A, (0, 0), T) == T2]


# ---------------------------------------------------------------- formal reals


def test_formal_real_parsing_and_arithmetic():
    x = FormalReal.parse("1/2+1*sqrt2")
    assert x.terms == {"1": F(1, 2), "sqrt2": F(1)}
    assert FormalReal.parse("2*sqrt2") == FormalReal.symbol("sqrt2", 2)
    assert FormalReal.parse("1-sqrt2").coeff("sqrt2") == -1
    assert (x + x - x) == x
    assert (3 * x).mod1().rational_part == F(1, 2)
    assert FormalReal({"a": 0}) == FormalReal()
    with pytest.raises(ValueError):
        FormalReal.parse("sqrt2 sqrt3")
    with pytest.raises(TypeError):
        FormalReal({"a": 0.5})


def test_rotation_canonical_form():
    T = R("5/4+sqrt2,-sqrt3")
    assert T.alpha.rational_part == F(1, 4)
    assert T.beta.rational_part == 0
    with pytest.raises(ValueError):
        R("sqrt2")


# ---------------------------------------------------------------- minimality


@pytest.mark.parametrize(
    "text,expected",
    [("sqrt2,sqrt3", True), ("1/2,sqrt2", False), ("sqrt2,1-sqrt2", False), ("sqrt2,2*sqrt2+1/3", False), ("sqrt2,sqrt2+sqrt3", True)],
)
def test_is_minimal_examples(text, expected):
    assert is_minimal(R(text)) is expected


def test_minimality_invariant_under_action(rng):
    for _ in range(50):
        T = random_rotation(rng)
        A = UNI3[rng.integers(len(UNI3))]
        assert is_minimal(apply_unimodular(A, (0, 0), T))
    T = R("sqrt2,1-sqrt2")
    assert not is_minimal(apply_unimodular(((2, 1), (1, 1)), (0, 0), T))


# ---------------------------------------------------------------- action


def test_apply_examples():
    T = R("sqrt2,sqrt3")
    assert apply_unimodular(((1, 0), (0, 1)), (0, 0), T) == T
    assert apply_unimodular(((1, 1), (0, 1)), (0, 0), T) == R("sqrt2+sqrt3,sqrt3")
    assert apply_unimodular(((0, 1), (1, 0)), (0, 0), T) == R("sqrt3,sqrt2")
    with pytest.raises(ValueError):
        apply_unimodular(((2, 0), (0, 1)), (0, 0), T)


def test_unimodular_witness_validation():
    with pytest.raises(ValueError):
        UnimodularWitness(((2, 0), (0, 1)))
    assert sorted(unimodular_matrices(2)) == sorted(brute_unimodular(2))


# ---------------------------------------------------------------- decision


def test_decide_examples():
    T = R("sqrt2,sqrt3")
    w = decide_conjugacy(T, R("sqrt2+sqrt3,sqrt3"))
    assert w.A == ((1, 1), (0, 1))
    w = decide_conjugacy(T, T)
    assert w.A == ((1, 0), (0, 1)) and w.m == (0, 0)
    ref = decide_conjugacy(T, R("2*sqrt2,sqrt3"))
    assert isinstance(ref, Refutation) and ref.stage == "det" and ref.A == ((2, 0), (0, 1))
    assert "det=2" in str(ref)


@pytest.mark.parametrize(
    "left,right,stage",
    [
        ("sqrt2,sqrt3", "sqrt5,sqrt3+sqrt5", "no_rational_solution"),
        ("sqrt2,sqrt3", "1/2*sqrt2,sqrt3", "non_integral"),
        ("sqrt2,sqrt3", "sqrt2+1/3,sqrt3", "rational_mismatch"),
    ],
)
def test_refutation_stages(left, right, stage):
    assert decide_conjugacy(R(left), R(right)).stage == stage


def test_rational_shift_recorded_in_m():
    T = R("1/3+sqrt2,sqrt3")
    T2 = R("1/3+sqrt2+sqrt3,sqrt3")
    w = decide_conjugacy(T, T2)
    assert apply_unimodular(w.A, w.m, T) == T2


def test_non_minimal_refused():
    with pytest.raises(NotMinimalError):
        decide_conjugacy(R("sqrt2,1/2"), R("sqrt2,sqrt3"))


def test_soundness_and_completeness(rng):
    found = 0
    for i in range(200):
        T = random_rotation(rng)
        if i % 2 == 0:
            A = UNI3[rng.integers(len(UNI3))]
            T2 = apply_unimodular(A, (0, 0), T)
        else:
            T2 = random_rotation(rng)
        res = decide_conjugacy(T, T2)
        brute = brute_conjugate(T, T2)
        if isinstance(res, UnimodularWitness):
            found += 1
            assert apply_unimodular(res.A, res.m, T) == T2
            if max(abs(x) for row in res.A for x in row) <= 3:
                assert brute == [res.A]
        else:
            assert brute == []
        if i % 2 == 0:
            assert isinstance(res, UnimodularWitness) and res.A == A
    assert found >= 100


def test_refutation_stability(rng):
    T, T2 = R("sqrt2,sqrt3"), R("2*sqrt2,sqrt3")
    for _ in range(20):
        A = UNI3[rng.integers(len(UNI3))]
        B = UNI3[rng.integers(len(UNI3))]
        res = decide_conjugacy(apply_unimodular(A, (0, 0), T), apply_unimodular(B, (0, 0), T2))
        assert isinstance(res, Refutation)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(UNI3), st.sampled_from(UNI3))
def test_conjugacy_composes(A, B):
    T = R("1/5+sqrt2,sqrt3-1/7")
    T1 = apply_unimodular(A, (0, 0), T)
    T2 = apply_unimodular(B, (0, 0), T1)
    w = decide_conjugacy(T, T2)
    assert isinstance(w, UnimodularWitness)
    BA = tuple(tuple(sum(B[i][k] * A[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    assert w.A == BA


# ---------------------------------------------------------------- fixed locus


def fixed_oracle(A, v):
    x, y = v
    return ((A[0][0] - 1) * x + A[0][1] * y) % 1 == 0 and (A[1][0] * x + (A[1][1] - 1) * y) % 1 == 0


GRID = [(F(i, 12), F(j, 12)) for i in range(12) for j in range(12)] + [(F(i, 10), F(j, 10)) for i in range(10) for j in range(10)]


def test_fixed_locus_examples():
    assert fixed_locus(((1, 0), (0, 1))).kind == "full"
    swap = fixed_locus(((0, 1), (1, 0)))
    assert swap.kind == "lines" and len(swap.offsets) == 1
    assert swap.contains((F(1, 3), F(1, 3))) and not swap.contains((F(1, 3), F(1, 2)))
    shear = fixed_locus(((1, 1), (0, 1)))
    assert shear.kind == "lines" and shear.normal == (0, 1) and shear.offsets == (0,)
    cat = fixed_locus(((2, 1), (1, 1)))
    assert cat.kind == "points" and len(cat.points) == 1
    assert str(cat) == "1 point(s): (0, 0)"


@pytest.mark.parametrize("A", brute_unimodular(2) + [((3, 0), (0, 1)), ((1, 4), (0, 1)), ((-1, 0), (0, -1)), ((1, 0), (2, 3))])
def test_fixed_locus_matches_grid_oracle(A):
    locus = fixed_locus(A)
    for v in GRID:
        assert locus.contains(v) == fixed_oracle(A, v)
    if locus.kind == "points":
        B = (A[0][0] - 1) * (A[1][1] - 1) - A[0][1] * A[1][0]
        assert len(locus.points) == abs(B)
    if A != ((1, 0), (0, 1)):
        assert locus.kind != "full"


# ---------------------------------------------------------------- orbits


def test_orbit_sample():
    T = R("sqrt2,sqrt3")
    orbit = orbit_sample(T, 1)
    assert len(orbit) >= 8
    assert R("sqrt3,sqrt2") in orbit and R("-sqrt2,sqrt3") in orbit
    assert len(set(orbit)) == len(orbit)
    # closure under inverses at the same height
    inv_images = {apply_unimodular(((d, -b), (-c, a)), (0, 0), S)
                  for ((a, b), (c, d)) in unimodular_matrices(1) for S in [T]}
    assert inv_images <= set(orbit)
    with pytest.raises(ValueError):
        orbit_sample(T, 0)
