from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from c0dynamo import LayoutParams, SequenceSpec

# Values with small denominators inside [1/4, 3/4].
GRID = sorted({Fraction(p, q) for q in range(1, 13) for p in range(q + 1) if Fraction(1, 4) <= Fraction(p, q) <= Fraction(3, 4)})

values = st.sampled_from(GRID)


@st.composite
def specs(draw, max_prefix=4, max_block=4):
    prefix = draw(st.lists(values, max_size=max_prefix))
    if draw(st.booleans()):
        return SequenceSpec.eventually_constant(prefix, draw(values))
    return SequenceSpec.periodic(prefix, draw(st.lists(values, min_size=1, max_size=max_block)))


def random_spec(rng, max_prefix=4, max_block=4, pool=GRID):
    prefix = [pool[i] for i in rng.integers(0, len(pool), rng.integers(0, max_prefix + 1))]
    if rng.random() < 0.3:
        return SequenceSpec.eventually_constant(prefix, pool[rng.integers(0, len(pool))])
    block = [pool[i] for i in rng.integers(0, len(pool), rng.integers(1, max_block + 1))]
    return SequenceSpec.periodic(prefix, block)


def equivalent_partner(rng, spec, pool=GRID):
    """A spec that differs from ``spec`` only on a fresh finite prefix."""
    extra = int(rng.integers(1, 4))
    n = len(spec.prefix) + extra
    prefix = [pool[i] for i in rng.integers(0, len(pool), n)]
    # Keep the tail phase aligned: after n entries, continue with spec's values.
    start = n + 1
    block = [spec.value(start + i) for i in range(spec.period)]
    if spec.kind.value == "eventually_constant":
        return SequenceSpec.eventually_constant(prefix, block[0])
    return SequenceSpec.periodic(prefix, block)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def params2():
    return LayoutParams(2)


@pytest.fixture
def params3():
    return LayoutParams(3)
