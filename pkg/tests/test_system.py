import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c0dynamo import LayoutParams, SequenceSpec, assemble
from c0dynamo.layout import dyadic_point, midline, quarter_radius
from c0dynamo.sequences import InvalidSpecError

from conftest import specs

SPEC = SequenceSpec.periodic(["1/2"], ["1/4", "3/4"])


def center(S, n):
    return np.array([float(c) for c in S.disk(n).center])


def core_points(rng, S, n, count):
    """Random points at distance < r/3 from the strip-n center."""
    c, r = center(S, n), float(S.disk(n).radius)
    u = rng.normal(size=(count, S.d))
    u /= np.linalg.norm(u, axis=1)[:, None]
    return c + u * rng.uniform(0.05, 0.33, count)[:, None] * r


def test_centers():
    S = assemble(LayoutParams(3), SequenceSpec.constant("1/2"))
    assert S.disk(2).center == (F(5, 12), F(1, 2), F(1, 2))
    S = assemble(LayoutParams(2), SequenceSpec.eventually_constant(["1/4"], "1/2"))
    assert S.disk(2).center[-1] == F(1, 4)
    assert S.disk(3).center == (midline(3), dyadic_point(1))
    assert S.turns(5) == F(1, 64)


def test_identity_examples():
    S = assemble(LayoutParams(3), SPEC)
    for p in ([0, 0.3, 0.7], [0.9, 0.5, 0.5], list(center(S, 4))):
        assert np.array_equal(S.eval(p), np.array(p, dtype=float))


def test_eval_core_rotation_example():
    S = assemble(LayoutParams(2), SPEC)
    c, r = center(S, 2), float(quarter_radius(2))
    p = c + [0.0, r / 6]
    theta = 2 * math.pi / 8
    # rotate (0, r/6) by theta in the (x1, x2) plane
    expect = c + [-r / 6 * math.sin(theta), r / 6 * math.cos(theta)]
    assert np.max(np.abs(S.eval(p) - expect)) < 1e-12


@pytest.mark.parametrize("d", [2, 3])
def test_boundary_identity(rng, d):
    S = assemble(LayoutParams(d), SPEC)
    for axis in range(d):
        for value in (0.0, 1.0):
            pts = rng.uniform(0, 1, (1000, d))
            pts[:, axis] = value
            assert np.array_equal(S.eval(pts), pts)


def test_locality(rng):
    S = assemble(LayoutParams(4), SPEC)
    pts = rng.uniform(0, 1, (20000, 4))
    pts[:10000, 0] = rng.uniform(0, 0.5, 10000)
    pts[5000:10000] = np.concatenate([core_points(rng, S, n, 500) for n in range(2, 12)])
    out = S.eval(pts)
    assert np.array_equal(out[:, :2], pts[:, :2])
    moved = np.any(out != pts, axis=1)
    in_disk = np.zeros(len(pts), bool)
    for i, p in enumerate(pts):
        n = math.floor(1 / p[0]) if p[0] > 0 else 0
        if n >= 2:
            in_disk[i] = np.linalg.norm(p - center(S, n)) < float(S.disk(n).radius)
    assert not np.any(moved & ~in_disk)
    assert moved.sum() >= 5000


def test_single_and_batch_agree(rng):
    S = assemble(LayoutParams(2), SPEC)
    pts = np.concatenate([core_points(rng, S, n, 50) for n in range(2, 10)])
    batch = S.eval(pts)
    for p, q in zip(pts, batch):
        assert np.max(np.abs(S.eval(p) - q)) < 1e-15


@pytest.mark.parametrize("d", [2, 3])
def test_bijectivity(rng, d):
    S = assemble(LayoutParams(d), SPEC)
    pts = rng.uniform(0, 1, (100000, d))
    pts[:50000, 0] = rng.uniform(0, 0.34, 50000)
    assert np.max(np.abs(S.inverse().eval(S.eval(pts)) - pts)) < 1e-12
    assert np.max(np.abs(S.iterate(S.iterate(pts[:1000], 5), -5) - pts[:1000])) < 1e-12


def test_iterate_zero_and_half_period(rng):
    S = assemble(LayoutParams(2), SPEC)
    p = core_points(rng, S, 5, 1)[0]
    assert np.array_equal(S.iterate(p, 0), p)
    r = float(S.disk(5).radius)
    half = S.iterate(p, 2**5)
    rho = np.linalg.norm(p - center(S, 5))
    # rotation by pi moves a point by 2 rho
    assert np.linalg.norm(half - p) == pytest.approx(2 * rho, rel=1e-9)
    assert np.linalg.norm(half - p) > 1e-3 * r


@pytest.mark.parametrize("n", range(2, 9))
def test_exact_period_spectrum(rng, n):
    S = assemble(LayoutParams(2), SPEC)
    period = 2 ** (n + 1)
    pts = core_points(rng, S, n, 20)
    cur = pts.copy()
    first = np.full(len(pts), -1)
    for k in range(1, period + 1):
        cur = S.eval(cur)
        hit = (np.linalg.norm(cur - pts, axis=1) < 1e-9) & (first < 0)
        first[hit] = k
    assert np.all(first == period)


def test_batch_iterate_matches_loop(rng):
    S = assemble(LayoutParams(3), SPEC)
    pts = np.concatenate([core_points(rng, S, n, 10) for n in range(2, 7)] + [rng.uniform(0, 1, (20, 3))])
    loop = pts.copy()
    for _ in range(17):
        loop = S.eval(loop)
    assert np.max(np.abs(S.iterate(pts, 17) - loop)) < 1e-13


def test_far_strips_are_identity_in_floats():
    S = assemble(LayoutParams(2), SequenceSpec.constant("1/2"))
    p = np.array([1 / 2000.5, 0.5 + 1e-6])
    assert np.array_equal(S.eval(p), p)


def test_opaque_spec_checked_lazily():
    S = assemble(LayoutParams(2), SequenceSpec.opaque(lambda j: 0.9 if j == 2 else 0.5))
    S.eval([0.4, 0.5])
    with pytest.raises(InvalidSpecError):
        S.eval([0.23, 0.5])


@settings(max_examples=30, deadline=None)
@given(specs(), st.integers(2, 40))
def test_disks_disjoint_from_neighbors(spec, n):
    S = assemble(LayoutParams(2), spec)
    for m in (n, n + 1):
        disk = S.disk(m)
        assert F(1, m + 1) < disk.center[0] - disk.radius
        assert disk.center[0] + disk.radius < F(1, m)
