"""Explicit extremal sequences, each certified on emission.

Every generator computes the zero-sum length spectrum of what it builds and
raises InvariantViolation if the claimed property fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dp import zero_sum_length_spectrum
from .errors import DomainError, InvariantViolation, PreconditionError
from .groups import GroupSpec, is_prime
from .sequences import Sequence


@dataclass(frozen=True)
class Construction:
    sequence: Sequence
    spectrum: frozenset[int]
    claim: str

    def to_json(self) -> dict:
        return {
            "group": self.sequence.group.spec_string(),
            "length": self.sequence.length(),
            "spectrum": sorted(self.spectrum),
            "claim": self.claim,
            "certified": True,
        }


def _unit(r: int, j: int) -> tuple[int, ...]:
    e = [0] * r
    e[j] = 1
    return tuple(e)


def _basis_part(G: GroupSpec, mult: int) -> dict:
    return {_unit(G.rank(), j): mult for j in range(G.rank())}


def _certify(S: Sequence, ok, claim: str) -> Construction:
    spec = frozenset(zero_sum_length_spectrum(S))
    if not ok(spec):
        raise InvariantViolation(f"construction failed its certificate ({claim}); spectrum {sorted(spec)}")
    return Construction(S, spec, claim)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def thm2_lower(p: int, r: int) -> Construction:
    _check_prime(p)
    if r < 2:
        raise DomainError("rank r must be at least 2")
    G = GroupSpec.homocyclic(p, r)
    counts = _basis_part(G, p - 1)
    counts[(1,) * r] = 1
    S = Sequence(G, counts)
    D = r * p - r + 1
    if S.length() != D:
        raise InvariantViolation("length differs from rp - r + 1")
    return _certify(S, lambda s: s == {D}, "minimal zero-sum sequence of length D(G)")


def construct_thm2_lower(p: int, r: int) -> Sequence:
    """e_1^[p-1] ... e_r^[p-1] (1,...,1) over C_p^r: a minimal zero-sum sequence of length D(G)."""
    return thm2_lower(p, r).sequence


def _check_thm3_range(p: int, r: int, k: int) -> None:
    _check_prime(p)
    if not 3 <= r < p:
        raise DomainError(f"need 3 <= r < p, got r={r}, p={p}")
    if not 2 <= k <= p - r + 1:
        raise DomainError(f"need 2 <= k <= p - r + 1 = {p - r + 1}, got k={k}")


def thm3_lower(p: int, n: int, r: int, k: int) -> Construction:
    _check_thm3_range(p, r, k)
    if n < 1:
        raise DomainError("n must be at least 1")
    q = p**n
    G = GroupSpec.homocyclic(q, r)
    c = math.ceil(k / (r - 1))
    counts = _basis_part(G, q - 1)
    counts[(1,) * r] = c
    S = Sequence(G, counts)
    D = G.davenport_star()
    if S.length() != D + c - 1:
        raise InvariantViolation("length differs from D(G) + ceil(k/(r-1)) - 1")
    shortest = r * q - (r - 1) * c
    claim = f"shortest zero-sum has length {shortest} > D(G) - k = {D - k}"
    return _certify(S, lambda s: bool(s) and min(s) == shortest and shortest > D - k, claim)


def construct_thm3_lower(p: int, n: int, r: int, k: int) -> Sequence:
    """e_i^[p^n-1] for each i, then (1,...,1)^[ceil(k/(r-1))], over C_{p^n}^r."""
    return thm3_lower(p, n, r, k).sequence


def _rank3_frame(p: int, n: int) -> tuple[GroupSpec, dict, int]:
    _check_prime(p)
    if p == 2:
        raise DomainError("p must be odd")
    if n < 1:
        raise DomainError("n must be at least 1")
    q = p**n
    G = GroupSpec.homocyclic(q, 3)
    counts = _basis_part(G, q - 1)
    counts[(1, 1, q - 1)] = q - 1
    return G, counts, q


def thm6_lower(p: int, n: int) -> Construction:
    G, counts, q = _rank3_frame(p, n)
    counts[(1, 1, 0)] = 1
    S = Sequence(G, counts)
    if S.length() != 4 * q - 3:
        raise InvariantViolation("length differs from 4p^n - 3")
    want = {2 * q - 1, 2 * q}
    return _certify(S, lambda s: s == want, "zero-sum lengths are exactly 2q - 1 and 2q")


def construct_thm6_lower(p: int, n: int) -> Sequence:
    """(1,0,0)^[q-1] (0,1,0)^[q-1] (0,0,1)^[q-1] (1,1,-1)^[q-1] (1,1,0) over C_q^3, q = p^n."""
    return thm6_lower(p, n).sequence


def cor5_lower(p: int, n: int) -> Construction:
    G, counts, q = _rank3_frame(p, n)
    S = Sequence(G, counts)
    if S.length() != 4 * q - 4:
        raise InvariantViolation("length differs from 4p^n - 4")
    return _certify(S, lambda s: s == {2 * q}, "the only zero-sum length is 2q")


def construct_cor5_lower(p: int, n: int) -> Sequence:
    """(1,0,0)^[q-1] (0,1,0)^[q-1] (0,0,1)^[q-1] (1,1,-1)^[q-1] over C_q^3, q = p^n."""
    return cor5_lower(p, n).sequence


def zero_sum_free_of_length_d_minus_1(G: GroupSpec, search_budget=None) -> Sequence:
    """A zero-sum free sequence of length D(G) - 1.

    For p-groups D(G) = D*(G), so e_1^[n_1-1] ... e_r^[n_r-1] works; for
    C_p^r this is the minimal zero-sum from thm2_lower minus (1,...,1).
    Other groups need the exhaustive search.
    """
    if G.is_p_group():
        return Sequence(G, {_unit(G.rank(), j): n - 1 for j, n in enumerate(G.invariant_factors)})
    from .search import EXHAUSTIVE, Budget, LengthSet, max_avoiding

    cert = max_avoiding(G, LengthSet.all_positive(), search_budget or Budget(seconds=60))
    if cert.status != EXHAUSTIVE:
        raise PreconditionError(f"no zero-sum free sequence of length D({G}) - 1 certified within the budget")
    return cert.witness


def egz_lower(G: GroupSpec, k: int, W: Sequence | None = None) -> Construction:
    if k < 1:
        raise DomainError("k must be at least 1")
    if W is None:
        W = zero_sum_free_of_length_d_minus_1(G)
    if W.group != G:
        raise DomainError("W lives in a different group")
    target = k * G.exponent()
    counts = W.counts()
    counts[G.zero()] += target - 1
    S = Sequence(G, counts)
    return _certify(S, lambda s: target not in s, f"no zero-sum subsequence of length {target}")


def construct_egz_lower(G: GroupSpec, k: int, W: Sequence | None = None) -> Sequence:
    """0^[k exp(G) - 1] W for a zero-sum free W of length D(G) - 1."""
    return egz_lower(G, k, W).sequence


BUILDERS = {
    "thm2": thm2_lower,
    "thm3": thm3_lower,
    "thm6": thm6_lower,
    "cor5": cor5_lower,
    "egz": egz_lower,
}
