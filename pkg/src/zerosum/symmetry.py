"""Symmetry reduction for sequences.

For elementary abelian C_p^r the full group GL_r(F_p) is used: the canonical
form is the lexicographically least sorted image, computed exactly by a
small backtracking search.  For every other group we use the "weak" group of
coordinate permutations among equal invariant factors combined with a global
unit scaling, which is enumerated explicitly.

Sequences are compared through their sorted index lists (index order equals
lexicographic order on residue tuples).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .groups import Element, GroupSpec


def _sorted_indices(S) -> list[int]:
    G = S.group
    return sorted(G.index(g) for g in S)


# -- elementary groups: full linear group -------------------------------------


def gl_canonical_indices(G: GroupSpec, idx: list[int]) -> list[int]:
    """Least sorted image of the multiset ``idx`` under GL_r(F_p).

    In the optimal image the elements lying in the span of the first j chosen
    basis preimages are exactly the ones with index < p^j, and the first
    element outside that span is sent to index p^j.  So we grow a basis one
    preimage at a time, branching over which remaining element goes to p^j.
    """
    p = G.prime
    counts: dict[Element, int] = {}
    for i in idx:
        g = G.element(i)
        counts[g] = counts.get(g, 0) + 1
    zero = G.zero()
    best: list[list[int] | None] = [None]

    def extend(img: dict[Element, int], rest: dict[Element, int], prefix: list[int], j: int):
        b = best[0]
        if b is not None:
            head = b[: len(prefix)]
            if prefix > head:
                return
        if not rest:
            if b is None or prefix < b:
                best[0] = prefix
            return
        step = p**j
        for x in rest:
            new_img = dict(img)
            for v, iv in img.items():
                for c in range(1, p):
                    new_img[G.add(v, G.scalar_mul(c, x))] = iv + c * step
            seg = []
            left = {}
            for y, m in rest.items():
                iy = new_img.get(y)
                if iy is None:
                    left[y] = m
                else:
                    seg.extend([iy] * m)
            seg.sort()
            extend(new_img, left, prefix + seg, j + 1)

    start = {zero: 0}
    rest = dict(counts)
    base = [0] * rest.pop(zero, 0)
    extend(start, rest, base, 0)
    return best[0]


def gl_is_canonical(G: GroupSpec, idx: list[int]) -> bool:
    """Whether the sorted list ``idx`` is its own GL-least image.

    Same branching as gl_canonical_indices, but compared against the fixed
    target so that we can stop at the first strictly smaller image.
    """
    p = G.prime
    target = list(idx)
    counts: dict[Element, int] = {}
    for i in target:
        g = G.element(i)
        counts[g] = counts.get(g, 0) + 1
    zero = G.zero()

    def smaller_exists(img, rest, filled, j):
        # filled entries agree with target so far
        if not rest:
            return False
        step = p**j
        for x in rest:
            new_img = dict(img)
            for v, iv in img.items():
                for c in range(1, p):
                    new_img[G.add(v, G.scalar_mul(c, x))] = iv + c * step
            seg = []
            left = {}
            for y, m in rest.items():
                iy = new_img.get(y)
                if iy is None:
                    left[y] = m
                else:
                    seg.extend([iy] * m)
            seg.sort()
            head = target[filled : filled + len(seg)]
            if seg < head:
                return True
            if seg == head and smaller_exists(new_img, left, filled + len(seg), j + 1):
                return True
        return False

    rest = dict(counts)
    nz = rest.pop(zero, 0)
    return not smaller_exists({zero: 0}, rest, nz, 0)


# -- general groups: the weak group ------------------------------------------


@lru_cache(maxsize=None)
def weak_group(G: GroupSpec) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All (coordinate permutation, unit) pairs of the weak symmetry group.

    A permutation only moves coordinates among equal invariant factors; the
    unit c is coprime to exp(G) and multiplies every coordinate.
    """
    f = G.invariant_factors
    blocks: dict[int, list[int]] = {}
    for j, n in enumerate(f):
        blocks.setdefault(n, []).append(j)
    block_perms = [list(itertools.permutations(js)) for js in blocks.values()]
    perms = []
    for combo in itertools.product(*block_perms):
        perm = list(range(len(f)))
        for js, image in zip(blocks.values(), combo):
            for a, b in zip(js, image):
                perm[a] = b
        perms.append(tuple(perm))
    e = G.exponent()
    units = [c for c in range(1, e) if math.gcd(c, e) == 1] or [1]
    return tuple((perm, c) for perm in perms for c in units)


def apply_weak(G: GroupSpec, t: tuple[tuple[int, ...], int], g: Element) -> Element:
    perm, c = t
    out = [0] * len(g)
    for j, x in enumerate(g):
        out[perm[j]] = x
    return tuple((c * x) % n for x, n in zip(out, G.invariant_factors))


@lru_cache(maxsize=None)
def _weak_index_maps(G: GroupSpec) -> tuple[tuple[int, ...], ...]:
    maps = []
    for t in weak_group(G):
        maps.append(tuple(G.index(apply_weak(G, t, G.element(i))) for i in range(G.order())))
    return tuple(maps)


def weak_canonical_indices(G: GroupSpec, idx: list[int]) -> list[int]:
    return min(sorted(m[i] for i in idx) for m in _weak_index_maps(G))


def weak_orbit_minima(G: GroupSpec, within: list[int] | None = None, stabilizing: int | None = None) -> list[int]:
    """Indices that are least in their orbit.

    The orbit is taken under the weak group, or under the stabilizer of the
    index ``stabilizing`` when given; ``within`` restricts the candidates.
    """
    maps = _weak_index_maps(G)
    if stabilizing is not None:
        maps = tuple(m for m in maps if m[stabilizing] == stabilizing)
    pool = range(G.order()) if within is None else within
    return [i for i in pool if all(m[i] >= i for m in maps)]


# -- public entry points ------------------------------------------------------


def canonical_indices(G: GroupSpec, idx: list[int]) -> list[int]:
    idx = sorted(idx)
    if not idx:
        return []
    if G.is_elementary():
        return gl_canonical_indices(G, idx)
    return weak_canonical_indices(G, idx)


def is_canonical(G: GroupSpec, idx: list[int]) -> bool:
    idx = sorted(idx)
    if not idx:
        return True
    if G.is_elementary():
        return gl_is_canonical(G, idx)
    return weak_canonical_indices(G, idx) == idx


def canonical_form(S):
    """Least image of S under the symmetry group used for its group.

    GL_r(F_p) for elementary abelian groups; the weak group otherwise.
    """
    from .sequences import Sequence

    G = S.group
    return Sequence.from_indices(G, canonical_indices(G, _sorted_indices(S)))
