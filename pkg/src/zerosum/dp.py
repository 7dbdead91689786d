"""Counting and extracting zero-sum subsequences by dynamic programming.

The state after processing a prefix of the (expanded) sequence is a table
indexed by (cardinality c, group element g) holding the number of index
subsets of size c with sum g.  Adding an element x updates every layer by
T[c] += T[c-1] shifted by x, which on mixed-radix indices is a gather with
the permutation G.translation(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import BudgetExceeded, DomainError, InvariantViolation
from .groups import GroupSpec
from .sequences import Sequence

#: upper bound on table cells (|S|+1) * |G| for one DP call
DEFAULT_CELL_BUDGET = 50_000_000

# C(66, 33) < 2**63 <= C(67, 33): up to this length int64 cannot overflow
_INT64_MAX_LENGTH = 66


@dataclass(frozen=True)
class CountTable:
    """N^k(S) for k = 0..|S|, as exact integers."""

    group: GroupSpec
    source_length: int
    counts: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k <= self.source_length else 0

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.counts))

    def mod(self, p: int) -> dict[int, int]:
        return {k: c % p for k, c in enumerate(self.counts)}

    def spectrum(self) -> set[int]:
        return {k for k, c in enumerate(self.counts) if k > 0 and c > 0}

    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> dict:
        return {"length": self.source_length, "counts": {str(k): str(c) for k, c in enumerate(self.counts)}}


@dataclass(frozen=True)
class Witness:
    """A zero-sum subsequence of a prescribed length."""

    sub: Sequence
    target_length: int
    info: dict = field(default_factory=dict, compare=False)

    def check(self, source: Sequence | None = None) -> None:
        """Raise InvariantViolation unless the witness is sound."""
        if self.sub.length() != self.target_length:
            raise InvariantViolation(f"witness has length {self.sub.length()}, expected {self.target_length}")
        if not self.sub.is_zero_sum():
            raise InvariantViolation(f"witness sums to {self.sub.sigma()}, not 0")
        if source is not None and not source.contains(self.sub):
            raise InvariantViolation("witness is not a subsequence of its source")


def _check_budget(S: Sequence, what: str, budget: int | None) -> None:
    limit = DEFAULT_CELL_BUDGET if budget is None else budget
    cells = (S.length() + 1) * S.group.order()
    if cells > limit:
        raise BudgetExceeded(what, cells, limit)


@lru_cache(maxsize=4096)
def _perm(G: GroupSpec, g: tuple[int, ...]) -> np.ndarray:
    perm = G.translation(g)
    perm.setflags(write=False)
    return perm


def _run_counts(S: Sequence, dtype, modulus: int | None) -> np.ndarray:
    G = S.group
    ell = S.length()
    T = np.zeros((ell + 1, G.order()), dtype=dtype)
    T[0, 0] = 1
    done = 0
    for g in S:
        perm = _perm(G, g)
        done += 1
        # rows 1..done; the right-hand side is evaluated before assignment
        T[1 : done + 1] = T[1 : done + 1] + T[0:done][:, perm]
        if modulus is not None:
            T[1 : done + 1] %= modulus
    return T


def count_table(S: Sequence, budget: int | None = None) -> CountTable:
    """Exact N^k(S) for every k."""
    _check_budget(S, "count_table", budget)
    ell = S.length()
    dtype = np.int64 if ell <= _INT64_MAX_LENGTH else object
    T = _run_counts(S, dtype, None)
    counts = tuple(int(x) for x in T[:, 0])
    return CountTable(S.group, ell, counts)


def count_mod_p(S: Sequence, p: int, budget: int | None = None) -> dict[int, int]:
    """N^k(S) mod p for every k, with all arithmetic done mod p."""
    if p < 2:
        raise DomainError(f"modulus {p} < 2")
    _check_budget(S, "count_mod_p", budget)
    T = _run_counts(S, np.int64, p)
    return {k: int(x) for k, x in enumerate(T[:, 0])}


class _Reach:
    """Boolean reachability layers, one snapshot per processed item."""

    def __init__(self, S: Sequence, kmax: int):
        G = S.group
        self.G = G
        self.items = list(S)
        n = G.order()
        R = np.zeros((kmax + 1, n), dtype=bool)
        R[0, 0] = True
        self.layers = [R]
        for g in self.items:
            perm = _perm(G, g)
            nxt = R.copy()
            nxt[1:] |= R[:-1][:, perm]
            self.layers.append(nxt)
            R = nxt

    def final(self) -> np.ndarray:
        return self.layers[-1]

    def extract(self, k: int, target_index: int = 0) -> list[tuple[int, ...]]:
        """Backtrack a size-k subsequence summing to the given element.

        Walking items from last to first, an item is skipped whenever the
        target stays reachable without it, so earlier items are preferred.
        """
        G = self.G
        out = []
        c, t = k, target_index
        for i in range(len(self.items), 0, -1):
            if c == 0:
                break
            if self.layers[i - 1][c, t]:
                continue
            g = self.items[i - 1]
            out.append(g)
            c -= 1
            t = G.index(G.sub(G.element(t), g))
        if c != 0 or t != 0:
            raise InvariantViolation("DP backtrack did not reach the empty subsequence")
        return out


def _reach(S: Sequence, kmax: int, budget: int | None) -> _Reach:
    limit = DEFAULT_CELL_BUDGET if budget is None else budget
    cells = (S.length() + 1) * (kmax + 1) * S.group.order()
    if cells > limit:
        raise BudgetExceeded("witness extraction", cells, limit)
    return _Reach(S, kmax)


def find_zero_sum_of_length(S: Sequence, k: int, budget: int | None = None) -> Witness | None:
    """A zero-sum subsequence of length exactly k, or None if there is none."""
    if not 0 <= k <= S.length():
        raise DomainError(f"length {k} outside [0, {S.length()}]")
    if k == 0:
        return Witness(Sequence(S.group), 0)
    R = _reach(S, k, budget)
    if not R.final()[k, 0]:
        return None
    w = Witness(Sequence(S.group, R.extract(k)), k)
    w.check(S)
    return w


def find_zero_sum_length_in(S: Sequence, L: Iterable[int], budget: int | None = None) -> Witness | None:
    """A zero-sum subsequence with length in L, preferring the smallest length."""
    lengths = sorted(set(L))
    if not lengths:
        return None
    if lengths[0] < 0 or lengths[-1] > S.length():
        raise DomainError(f"lengths {lengths} not within [0, {S.length()}]")
    if lengths[0] == 0:
        return Witness(Sequence(S.group), 0)
    R = _reach(S, lengths[-1], budget)
    top = R.final()
    for k in lengths:
        if top[k, 0]:
            w = Witness(Sequence(S.group, R.extract(k)), k)
            w.check(S)
            return w
    return None


def zero_sum_length_spectrum(S: Sequence, budget: int | None = None) -> set[int]:
    """All k >= 1 with N^k(S) > 0."""
    _check_budget(S, "zero_sum_length_spectrum", budget)
    G = S.group
    R = np.zeros((S.length() + 1, G.order()), dtype=bool)
    R[0, 0] = True
    for g in S:
        R[1:] |= R[:-1][:, _perm(G, g)]
    return {k for k in range(1, S.length() + 1) if R[k, 0]}
