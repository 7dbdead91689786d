import math

import pytest
from hypothesis import given, strategies as st

from conftest import sequences
from zerosum import (
    GroupSpec,
    Sequence,
    construct_cor5_lower,
    construct_thm2_lower,
    construct_thm6_lower,
    count_mod_p,
    count_table,
    find_zero_sum_length_in,
    find_zero_sum_of_length,
    random_sequence,
    zero_sum_length_spectrum,
)
from zerosum.errors import BudgetExceeded, DomainError
from zerosum.selftest import brute_force_counts
from zerosum.sequences import repeat

C3 = GroupSpec((3,))
C33 = GroupSpec.homocyclic(3, 3)


def test_count_examples():
    assert count_table(repeat(C3, (0,), 3)).counts == (1, 3, 3, 1)
    assert count_table(repeat(C3, (1,), 3)).counts == (1, 0, 0, 1)
    assert count_table(construct_thm2_lower(3, 3)).counts == (1, 0, 0, 0, 0, 0, 0, 1)


def test_count_mod_p_example():
    assert count_mod_p(repeat(C3, (1,), 3), 3) == {0: 1, 1: 0, 2: 0, 3: 1}


def test_count_mod_p_matches_table(rng):
    for _ in range(20):
        S = random_sequence(C33, 12, rng)
        assert count_mod_p(S, 3) == count_table(S).mod(3)


def test_big_counts_are_exact():
    S = repeat(C3, (0,), 80)
    assert count_table(S).counts == tuple(math.comb(80, k) for k in range(81))


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_table(repeat(C33, (0, 0, 0), 10), budget=100)


def test_find_examples():
    assert find_zero_sum_of_length(construct_thm6_lower(3, 1), 0).sub.length() == 0
    S = Sequence(C33, {(1, 0, 0): 3, (0, 1, 0): 1})
    assert find_zero_sum_of_length(S, 3).sub == repeat(C33, (1, 0, 0), 3)
    with pytest.raises(DomainError):
        find_zero_sum_of_length(S, 5)


def test_find_is_deterministic(rng):
    S = random_sequence(C33, 13, rng)
    assert find_zero_sum_of_length(S, 6) == find_zero_sum_of_length(S, 6)


def test_length_13_has_six(rng):
    for _ in range(200):
        w = find_zero_sum_of_length(random_sequence(C33, 13, rng), 6)
        assert w is not None and w.sub.is_zero_sum()


def test_find_in_examples():
    S = Sequence(C33, [(0, 0, 0), (1, 2, 0), (2, 2, 2)])
    assert find_zero_sum_length_in(S, range(1, 4)).sub == Sequence(C33, [(0, 0, 0)])
    T = construct_thm6_lower(3, 1)
    assert find_zero_sum_length_in(T, range(1, 5)) is None
    assert find_zero_sum_length_in(T, {5, 6}).target_length == 5


def test_spectrum_examples():
    assert zero_sum_length_spectrum(construct_thm2_lower(5, 3)) == {13}
    assert zero_sum_length_spectrum(construct_cor5_lower(3, 1)) == {6}
    assert zero_sum_length_spectrum(construct_thm6_lower(5, 1)) == {9, 10}


@given(sequences(max_size=11))
def test_oracle_equivalence(S):
    assert list(count_table(S).counts) == brute_force_counts(S)


@given(sequences(max_size=12))
def test_table_invariants(S):
    t = count_table(S)
    ell = S.length()
    assert t[0] == 1
    assert all(t[k] <= math.comb(ell, k) for k in range(ell + 1))
    assert t.spectrum() == zero_sum_length_spectrum(S)


@given(st.integers(0, 30), st.sampled_from(["3", "2,2", "3,3,3"]))
def test_all_zero(n, spec):
    G = GroupSpec.parse(spec)
    t = count_table(repeat(G, G.zero(), n))
    assert t.counts == tuple(math.comb(n, k) for k in range(n + 1))


@given(st.data())
def test_completeness_and_soundness(data):
    S = data.draw(sequences(max_size=10))
    k = data.draw(st.integers(0, S.length()))
    w = find_zero_sum_of_length(S, k)
    assert (w is not None) == (count_table(S)[k] > 0)
    if w is not None:
        assert w.sub.length() == k and w.sub.is_zero_sum()
        S.remove(w.sub)


@given(st.data())
def test_find_in_prefers_smallest(data):
    S = data.draw(sequences(max_size=10))
    L = data.draw(st.sets(st.integers(1, max(1, S.length())), min_size=1, max_size=4))
    L = {k for k in L if k <= S.length()}
    w = find_zero_sum_length_in(S, L)
    hits = sorted(k for k in L if count_table(S)[k] > 0)
    if hits:
        assert w is not None and w.target_length == hits[0]
    else:
        assert w is None


def test_to_json():
    js = count_table(repeat(C3, (0,), 2)).to_json()
    assert js == {"length": 2, "counts": {"0": "1", "1": "2", "2": "1"}}
