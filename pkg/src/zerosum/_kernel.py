"""Compiled DFS kernels for the extremal search.

Subsets of G are uint64-word bitsets.  Translating a bitset by g is a
composition of per-coordinate rotations, each a masked pair of word shifts.
Groups of order <= 128 use a two-word kernel that keeps every set in scalar
registers; larger groups use the generic multi-word kernel.

Both kernels are resumable: they stop when the node limit of a slice is hit,
leaving their whole state in the caller's arrays.

State layout (shared by both kernels):
  NR[d, c, :]  the negation -R_c of R_c, the set of sums of size-c
               subsequences of the depth-d sequence.  Candidate h is blocked
               by layer c exactly when bit h of NR[d, c] is set.  In DAVENPORT
               mode only layer 0 is used and holds -(all subsequence sums).
  pos[d]       next candidate index to try at depth d
  wsz[d]       size p^j of the span of path[:d] (echelon rule only)
  path[d]      element index chosen at depth d
  state        [depth, nodes]
  best         [length]; best_path receives the first deepest sequence.
"""

from __future__ import annotations

import numpy as np
from numba import njit

DAVENPORT = 0
LAYERED = 1

DONE = 0
PAUSED = 1

SMALL_ORDER = 128


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, inline="always")
def _lowbit(x):
    return _popcount((x & (~x + np.uint64(1))) - np.uint64(1))


@njit(cache=True, inline="always")
def _single(i, w):
    if (i >> 6) == w:
        return np.uint64(1) << np.uint64(i & 63)
    return np.uint64(0)


@njit(cache=True, inline="always")
def _shl2(x0, x1, q, b):
    if q == 0:
        if b == 0:
            return x0, x1
        return x0 << np.uint64(b), (x1 << np.uint64(b)) | (x0 >> np.uint64(64 - b))
    if q == 1:
        return np.uint64(0), x0 << np.uint64(b)
    return np.uint64(0), np.uint64(0)


@njit(cache=True, inline="always")
def _shr2(x0, x1, q, b):
    if q == 0:
        if b == 0:
            return x0, x1
        return (x0 >> np.uint64(b)) | (x1 << np.uint64(64 - b)), x1 >> np.uint64(b)
    if q == 1:
        return x1 >> np.uint64(b), np.uint64(0)
    return np.uint64(0), np.uint64(0)


@njit(cache=True, inline="always")
def _translate2(x0, x1, g, nops, lo, hi, ql, bl, qr, br):
    for t in range(nops[g]):
        a0, a1 = _shl2(x0 & lo[g, t, 0], x1 & lo[g, t, 1], ql[g, t], bl[g, t])
        b0, b1 = _shr2(x0 & hi[g, t, 0], x1 & hi[g, t, 1], qr[g, t], br[g, t])
        x0 = a0 | b0
        x1 = a1 | b1
    return x0, x1


@njit(cache=True)
def dfs_small(
    NR, pos, wsz, path, state, best, best_path,
    mode, N, lset, nops, lo, hi, ql, bl, qr, br, neg,
    p, echelon, allow, allow2, x1, base, cap, node_limit,
):
    """Two-word kernel (|G| <= 128).  Returns DONE or PAUSED."""
    M = NR.shape[1] - 1
    nL = lset.shape[0]
    full = ~np.uint64(0)
    d = state[0]
    nodes = state[1]
    budget_end = nodes + node_limit
    while True:
        if d < base:
            state[0] = d
            state[1] = nodes
            return DONE
        if nodes >= budget_end:
            state[0] = d
            state[1] = nodes
            return PAUSED
        if d >= cap:
            d -= 1
            continue
        hi_idx = N - 1
        if echelon and wsz[d] < N:
            hi_idx = wsz[d]
        use2 = x1 >= 0 and d > 0 and path[d - 1] == x1
        found = -1
        i = pos[d]
        while i <= hi_idx:
            w = i >> 6
            word = full << np.uint64(i & 63)
            if (w << 6) + 63 > hi_idx:
                word &= full >> np.uint64((w << 6) + 63 - hi_idx)
            if mode == DAVENPORT:
                word &= ~NR[d, 0, w]
            else:
                for li in range(nL):
                    word &= ~NR[d, lset[li] - 1, w]
            if x1 >= 0:
                if use2:
                    word &= allow2[w] | (allow[w] & _single(x1, w))
                else:
                    word &= allow[w]
            if word:
                found = (w << 6) + _lowbit(word)
                break
            i = (w + 1) << 6
        if found < 0:
            d -= 1
            continue
        g = found
        pos[d] = g + 1
        path[d] = g
        c = d + 1
        ng = neg[g]
        if mode == DAVENPORT:
            y0 = NR[d, 0, 0]
            y1 = NR[d, 0, 1]
            t0, t1 = _translate2(y0, y1, ng, nops, lo, hi, ql, bl, qr, br)
            y0 |= t0
            y1 |= t1
            NR[c, 0, 0] = y0
            NR[c, 0, 1] = y1
        else:
            NR[c, 0, 0] = NR[d, 0, 0]
            NR[c, 0, 1] = NR[d, 0, 1]
            for k in range(1, M + 1):
                t0, t1 = _translate2(NR[d, k - 1, 0], NR[d, k - 1, 1], ng, nops, lo, hi, ql, bl, qr, br)
                NR[c, k, 0] = NR[d, k, 0] | t0
                NR[c, k, 1] = NR[d, k, 1] | t1
        nodes += 1
        if echelon and g == wsz[d]:
            wsz[c] = wsz[d] * p
        else:
            wsz[c] = wsz[d]
        pos[c] = g
        if c > best[0]:
            best[0] = c
            for j in range(c):
                best_path[j] = path[j]
        if mode == DAVENPORT:
            # every sum of the remaining part T lies outside -A, and a
            # zero-sum free T has at least |T| distinct sums
            filled = _popcount(NR[c, 0, 0]) + _popcount(NR[c, 0, 1])
            if c + (N - filled) <= best[0]:
                continue
        d = c


@njit(cache=True, inline="always")
def _translate_wide(NR, d, k, out, g, nops, lo, hi, ql, bl, qr, br, cur, a):
    W = out.shape[0]
    for w in range(W):
        cur[w] = NR[d, k, w]
    for t in range(nops[g]):
        q = ql[g, t]
        lb = bl[g, t]
        for w in range(W - 1, -1, -1):
            v = np.uint64(0)
            s = w - q
            if s >= 0:
                v = (cur[s] & lo[g, t, s]) << np.uint64(lb)
                if lb > 0 and s >= 1:
                    v |= (cur[s - 1] & lo[g, t, s - 1]) >> np.uint64(64 - lb)
            a[w] = v
        q = qr[g, t]
        rb = br[g, t]
        for w in range(W):
            s = w + q
            if s < W:
                v = (cur[s] & hi[g, t, s]) >> np.uint64(rb)
                if rb > 0 and s + 1 < W:
                    v |= (cur[s + 1] & hi[g, t, s + 1]) << np.uint64(64 - rb)
                a[w] |= v
        for w in range(W):
            cur[w] = a[w]
    for w in range(W):
        out[w] = cur[w]


@njit(cache=True)
def dfs_wide(
    NR, pos, wsz, path, state, best, best_path,
    mode, N, lset, nops, lo, hi, ql, bl, qr, br, neg,
    p, echelon, allow, allow2, x1, base, cap, node_limit,
):
    """Generic multi-word kernel.  Same contract as dfs_small."""
    W = NR.shape[2]
    M = NR.shape[1] - 1
    nL = lset.shape[0]
    cur = np.empty(W, dtype=np.uint64)
    a = np.empty(W, dtype=np.uint64)
    tmp = np.empty(W, dtype=np.uint64)
    full = ~np.uint64(0)
    d = state[0]
    nodes = state[1]
    budget_end = nodes + node_limit
    while True:
        if d < base:
            state[0] = d
            state[1] = nodes
            return DONE
        if nodes >= budget_end:
            state[0] = d
            state[1] = nodes
            return PAUSED
        if d >= cap:
            d -= 1
            continue
        hi_idx = N - 1
        if echelon and wsz[d] < N:
            hi_idx = wsz[d]
        use2 = x1 >= 0 and d > 0 and path[d - 1] == x1
        found = -1
        i = pos[d]
        while i <= hi_idx:
            w = i >> 6
            word = full << np.uint64(i & 63)
            if (w << 6) + 63 > hi_idx:
                word &= full >> np.uint64((w << 6) + 63 - hi_idx)
            if mode == DAVENPORT:
                word &= ~NR[d, 0, w]
            else:
                for li in range(nL):
                    word &= ~NR[d, lset[li] - 1, w]
            if x1 >= 0:
                if use2:
                    word &= allow2[w] | (allow[w] & _single(x1, w))
                else:
                    word &= allow[w]
            if word:
                found = (w << 6) + _lowbit(word)
                break
            i = (w + 1) << 6
        if found < 0:
            d -= 1
            continue
        g = found
        pos[d] = g + 1
        path[d] = g
        c = d + 1
        ng = neg[g]
        if mode == DAVENPORT:
            _translate_wide(NR, d, 0, tmp, ng, nops, lo, hi, ql, bl, qr, br, cur, a)
            for w in range(W):
                NR[c, 0, w] = NR[d, 0, w] | tmp[w]
        else:
            for w in range(W):
                NR[c, 0, w] = NR[d, 0, w]
            for k in range(1, M + 1):
                _translate_wide(NR, d, k - 1, tmp, ng, nops, lo, hi, ql, bl, qr, br, cur, a)
                for w in range(W):
                    NR[c, k, w] = NR[d, k, w] | tmp[w]
        nodes += 1
        if echelon and g == wsz[d]:
            wsz[c] = wsz[d] * p
        else:
            wsz[c] = wsz[d]
        pos[c] = g
        if c > best[0]:
            best[0] = c
            for j in range(c):
                best_path[j] = path[j]
        if mode == DAVENPORT:
            filled = 0
            for w in range(W):
                filled += _popcount(NR[c, 0, w])
            if c + (N - filled) <= best[0]:
                continue
        d = c
