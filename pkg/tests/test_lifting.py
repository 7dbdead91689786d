import random

import pytest
from hypothesis import given, settings, strategies as st

from zerosum import (
    GroupSpec,
    Sequence,
    construct_egz_lower,
    count_table,
    find_2x,
    find_3x,
    find_5x,
    random_sequence,
)
from zerosum.errors import PreconditionError, UnsupportedGroupError
from zerosum.sequences import repeat

C33 = GroupSpec.homocyclic(3, 3)
C93 = GroupSpec.homocyclic(9, 3)
C273 = GroupSpec.homocyclic(27, 3)


def assert_witness(w, S, length):
    assert w.sub.length() == length
    assert w.sub.is_zero_sum()
    assert S.contains(w.sub)


def test_2x_n1(rng):
    for _ in range(50):
        S = random_sequence(C33, 13, rng)
        assert_witness(find_2x(S), S, 6)


def test_2x_n2(rng):
    for _ in range(10):
        S = random_sequence(C93, 55, rng)
        w = find_2x(S)
        assert_witness(w, S, 18)
        assert w.info["depth"] == 1 and w.info["blocks"] == 13


def test_2x_zeros():
    S = repeat(C93, (0, 0, 0), 55)
    assert find_2x(S).sub == repeat(C93, (0, 0, 0), 18)


def test_2x_n3(rng):
    S = random_sequence(C273, 181, rng)
    w = find_2x(S)
    assert_witness(w, S, 54)
    assert w.info["depth"] == 2


def test_2x_above_threshold(rng):
    S = random_sequence(C93, 70, rng)
    assert_witness(find_2x(S), S, 18)


def test_3x(rng):
    for _ in range(50):
        S = random_sequence(C33, 15, rng)
        assert_witness(find_3x(S), S, 9)
    S = random_sequence(C93, 51, rng)
    assert_witness(find_3x(S), S, 27)


def test_3x_below_threshold():
    S = construct_egz_lower(C33, 3)
    assert count_table(S)[9] == 0
    with pytest.raises(PreconditionError):
        find_3x(S)


def test_5x(rng):
    for _ in range(30):
        S = random_sequence(C33, 21, rng)
        assert_witness(find_5x(S), S, 15)
    S = random_sequence(C93, 69, rng)
    assert_witness(find_5x(S), S, 45)


def test_5x_zeros():
    S = repeat(C33, (0, 0, 0), 21)
    assert find_5x(S).sub == repeat(C33, (0, 0, 0), 15)


@pytest.mark.parametrize("f,n", [(find_2x, 12), (find_3x, 14), (find_5x, 20)])
def test_preconditions(f, n):
    with pytest.raises(PreconditionError):
        f(repeat(C33, (1, 0, 0), n))


def test_unsupported_group():
    with pytest.raises(UnsupportedGroupError):
        find_3x(repeat(GroupSpec.homocyclic(5, 3), (0, 0, 0), 40))
    with pytest.raises(UnsupportedGroupError):
        find_3x(repeat(GroupSpec.homocyclic(3, 2), (0, 0), 40))


def test_deterministic(rng):
    S = random_sequence(C93, 55, rng)
    assert find_2x(S) == find_2x(S)


@settings(max_examples=40)
@given(st.integers(0, 2**32), st.integers(0, 5))
def test_finders_on_skewed_inputs(seed, support):
    # few distinct elements stress the multiset bookkeeping
    rng = random.Random(seed)
    pool = [tuple(rng.randrange(9) for _ in range(3)) for _ in range(support + 1)]
    S = Sequence(C93, [rng.choice(pool) for _ in range(69)])
    assert_witness(find_2x(S), S, 18)
    assert_witness(find_5x(S), S, 45)


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=13, max_size=16))
def test_cross_validation_n1(items):
    S = Sequence(C33, items)
    counts = count_table(S)
    assert counts[6] > 0
    assert_witness(find_2x(S), S, 6)
    if S.length() >= 15:
        assert counts[9] > 0
        assert_witness(find_3x(S), S, 9)
