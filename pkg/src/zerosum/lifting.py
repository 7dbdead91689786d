"""Constructive finders for zero-sums of length 2*3^n, 3*3^n and 5*3^n over C_{3^n}^3.

find_2x lifts through pi: C_{3^n}^3 -> C_3^3, x -> 3^{n-1} x.  Over C_3^3
every sequence of length 19 has a zero-sum triple, so a long sequence can
be cut into t = 7*3^{n-1} - 8 disjoint blocks whose sums lie in ker pi, which
is identified with C_{3^{n-1}}^3.  A zero-sum of length 2*3^{n-1} among the
block sums (found recursively) selects blocks whose union is the answer.
"""

from __future__ import annotations

import math
from collections import Counter

from .dp import Witness, find_zero_sum_of_length
from .errors import InvariantViolation, PreconditionError, UnsupportedGroupError
from .groups import GroupSpec, kernel_group, kernel_iso, projection_hom, quotient_group
from .sequences import Sequence

# s(C_3^3): every sequence of this length over C_3^3 has a zero-sum triple
_S_C33 = 19


def _level(G: GroupSpec) -> int:
    if G.rank() != 3 or not G.is_homocyclic() or G.prime != 3:
        raise UnsupportedGroupError(f"expected C_(3^n)^3, got {G}")
    return round(math.log(G.exponent(), 3))


def threshold_2x(n: int) -> int:
    return 7 * 3**n - 8


def threshold_3x(n: int) -> int:
    return 6 * 3**n - 3


def threshold_5x(n: int) -> int:
    return 8 * 3**n - 3


def _done(S: Sequence, sub: Sequence, target: int, info: dict) -> Witness:
    w = Witness(sub, target, info)
    w.check(S)
    return w


def find_2x(S: Sequence) -> Witness:
    """A zero-sum subsequence of length 2*3^n of S, given |S| >= 7*3^n - 8."""
    G = S.group
    n = _level(G)
    need = threshold_2x(n)
    if S.length() < need:
        raise PreconditionError(f"find_2x needs |S| >= {need} over {G}, got {S.length()}")
    target = 2 * 3**n
    if n == 1:
        w = find_zero_sum_of_length(S, target)
        if w is None:
            raise InvariantViolation(f"no zero-sum of length 6 in a length-{S.length()} sequence over C_3^3")
        return _done(S, w.sub, target, {"depth": 0, "blocks": 0})

    Q = quotient_group(G)
    K = kernel_group(G)
    t = threshold_2x(n - 1)
    residual = list(S)
    blocks: list[list[tuple[int, ...]]] = []
    for i in range(1, t + 1):
        if len(residual) != S.length() - 3 * (i - 1) or len(residual) < _S_C33:
            raise InvariantViolation(f"residual length {len(residual)} before block {i}")
        projected = [projection_hom(g, G) for g in residual]
        w = find_zero_sum_of_length(Sequence(Q, projected), 3)
        if w is None:
            raise InvariantViolation(f"no zero-sum triple among {len(projected)} elements of C_3^3")
        # map projected elements back to the earliest residual items
        block = []
        want = Counter(w.sub)
        keep = []
        for g, pg in zip(residual, projected):
            if want[pg] > 0:
                want[pg] -= 1
                block.append(g)
            else:
                keep.append(g)
        blocks.append(block)
        residual = keep

    sums = [Sequence(G, b).sigma() for b in blocks]
    images = [kernel_iso(s, G) for s in sums]
    inner = find_2x(Sequence(K, images))
    chosen: list[tuple[int, ...]] = []
    want = Counter(inner.sub)
    used = 0
    for block, img in zip(blocks, images):
        if want[img] > 0:
            want[img] -= 1
            chosen.extend(block)
            used += 1
    if used != 2 * 3 ** (n - 1):
        raise InvariantViolation(f"selected {used} blocks, expected {2 * 3 ** (n - 1)}")
    info = {"depth": inner.info["depth"] + 1, "blocks": t}
    return _done(S, Sequence(G, chosen), target, info)


def find_3x(S: Sequence) -> Witness:
    """A zero-sum subsequence of length 3*3^n of S, given |S| >= 6*3^n - 3."""
    G = S.group
    n = _level(G)
    need = threshold_3x(n)
    if S.length() < need:
        raise PreconditionError(f"find_3x needs |S| >= {need} over {G}, got {S.length()}")
    target = 3 * 3**n
    w = find_zero_sum_of_length(S, target)
    if w is None:
        raise InvariantViolation(f"no zero-sum of length {target} in a length-{S.length()} sequence over {G}")
    return _done(S, w.sub, target, {"depth": 0})


def find_5x(S: Sequence) -> Witness:
    """A zero-sum subsequence of length 5*3^n of S, given |S| >= 8*3^n - 3.

    Takes a 2*3^n zero-sum T, then a 3*3^n zero-sum of S T^{-1}.
    """
    G = S.group
    n = _level(G)
    need = threshold_5x(n)
    if S.length() < need:
        raise PreconditionError(f"find_5x needs |S| >= {need} over {G}, got {S.length()}")
    first = find_2x(S)
    rest = S.remove(first.sub)
    second = find_3x(rest)
    info = {"depth": first.info["depth"], "parts": [first.target_length, second.target_length]}
    return _done(S, first.sub + second.sub, 5 * 3**n, info)


FINDERS = {"2x": find_2x, "3x": find_3x, "5x": find_5x}
