import pytest

from zerosum import (
    GroupSpec,
    construct_cor5_lower,
    construct_egz_lower,
    construct_thm2_lower,
    construct_thm3_lower,
    construct_thm6_lower,
    count_table,
    zero_sum_length_spectrum,
)
from zerosum.constructions import egz_lower, thm6_lower
from zerosum.errors import DomainError
from zerosum.selftest import brute_force_counts


@pytest.mark.parametrize("p,r", [(3, 3), (5, 3), (7, 3), (5, 4), (2, 4), (3, 2)])
def test_thm2_minimal(p, r):
    S = construct_thm2_lower(p, r)
    assert S.length() == r * p - r + 1 and S.is_zero_sum()
    assert zero_sum_length_spectrum(S) == {S.length()}


def test_thm2_brute_force():
    S = construct_thm2_lower(3, 3)
    counts = brute_force_counts(S)
    assert counts[1:-1] == [0] * 6 and counts[-1] == 1


@pytest.mark.parametrize("p,k", [(5, 2), (5, 3), (7, 2), (7, 3), (7, 4), (7, 5)])
def test_thm3(p, k):
    S = construct_thm3_lower(p, 1, 3, k)
    D = S.group.davenport_star()
    assert min(zero_sum_length_spectrum(S)) > D - k


def test_thm3_n2():
    S = construct_thm3_lower(5, 2, 3, 2)
    assert S.group == GroupSpec.homocyclic(25, 3)


@pytest.mark.parametrize("args", [(5, 1, 2, 2), (5, 1, 5, 2), (5, 1, 3, 4), (6, 1, 3, 2)])
def test_thm3_domain(args):
    with pytest.raises(DomainError):
        construct_thm3_lower(*args)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2), (7, 1)])
def test_thm6(p, n):
    q = p**n
    S = construct_thm6_lower(p, n)
    assert S.length() == 4 * q - 3
    assert zero_sum_length_spectrum(S) == {2 * q - 1, 2 * q}


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_cor5(p, n):
    q = p**n
    S = construct_cor5_lower(p, n)
    assert S.length() == 4 * q - 4
    assert zero_sum_length_spectrum(S) == {2 * q}


def test_thm6_brute_force_spectrum():
    S = construct_thm6_lower(3, 1)
    counts = brute_force_counts(S)
    assert {k for k, c in enumerate(counts) if k and c} == {5, 6}


def test_odd_prime_required():
    for f in (construct_thm6_lower, construct_cor5_lower):
        with pytest.raises(DomainError):
            f(2, 1)


def test_thm6_contains_minus_one_as_residue():
    S = construct_thm6_lower(3, 1)
    assert S.multiplicity((1, 1, 2)) == 2 and S.multiplicity((1, 1, 0)) == 1
    assert thm6_lower(3, 1).spectrum == {5, 6}


@pytest.mark.parametrize("spec,k", [("3^1^3", 3), ("3^1^3", 1), ("3^1^2", 2), ("9,9", 1), ("2,4", 2)])
def test_egz(spec, k):
    G = GroupSpec.parse(spec)
    S = construct_egz_lower(G, k)
    e = G.exponent()
    assert S.length() == k * e + G.davenport_star() - 2
    assert count_table(S)[k * e] == 0


def test_egz_c33_k3():
    S = construct_egz_lower(GroupSpec.homocyclic(3, 3), 3)
    assert S.length() == 14 and count_table(S)[9] == 0


def test_egz_non_p_group_uses_search():
    G = GroupSpec.parse("2,6")
    S = construct_egz_lower(G, 1)
    assert S.length() == 6 + 7 - 2
    assert egz_lower(G, 1).spectrum.isdisjoint({6})
