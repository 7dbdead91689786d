"""Counting congruences for zero-sum subsequences and their exact-arithmetic helpers.

All congruence checks use N^k mod p from count_mod_p, so lengths in the
hundreds stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dp import count_mod_p, count_table
from .errors import BudgetExceeded, DomainError, UnsupportedGroupError
from .groups import GroupSpec, is_prime
from .sequences import Sequence

OLSON = "olson"
COROLLARY_PN = "corollary_pn"
WINDOW_IDENTITY = "window_identity"

DEFAULT_WINDOW_BUDGET = 200_000


@dataclass(frozen=True)
class CongruenceReport:
    statement_id: str
    inputs: dict
    lhs_residue: int
    holds: bool
    guaranteed: bool = False

    def to_json(self) -> dict:
        return {
            "statement": self.statement_id,
            "inputs": self.inputs,
            "lhs_residue": self.lhs_residue,
            "holds": self.holds,
            "guaranteed": self.guaranteed,
        }


@dataclass(frozen=True)
class WindowReport:
    """Exact comparison of both sides of the window double-counting identity."""

    inputs: dict
    lhs: int
    rhs: int
    windows: int
    statement_id: str = WINDOW_IDENTITY

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "statement": self.statement_id,
            "inputs": self.inputs,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "distinct_windows": self.windows,
            "holds": self.holds,
        }


def _require_p_group(S: Sequence, p: int) -> GroupSpec:
    G = S.group
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if G.prime != p:
        raise UnsupportedGroupError(f"{G} is not a {p}-group")
    return G


def olson_alternating(S: Sequence, p: int) -> CongruenceReport:
    """sum_k (-1)^k N^k(S) mod p, which vanishes once |S| >= D*(G)."""
    G = _require_p_group(S, p)
    N = count_mod_p(S, p)
    lhs = sum((-1) ** k * c for k, c in N.items()) % p
    ell = S.length()
    inputs = {"group": G.spec_string(), "length": ell, "p": p, "D*": G.davenport_star()}
    return CongruenceReport(OLSON, inputs, lhs, lhs == 0, ell >= G.davenport_star())


def corollary_pn(S: Sequence, p: int, q: int) -> CongruenceReport:
    """sum_j (-1)^j N^{jq}(S) mod p for q a power of p.

    Vanishes once |S| >= D*(G) + q - 1.
    """
    G = _require_p_group(S, p)
    if q < 1 or p ** round(math.log(q, p)) != q:
        raise DomainError(f"{q} is not a power of {p}")
    N = count_mod_p(S, p)
    ell = S.length()
    lhs = sum((-1) ** j * N[j * q] for j in range(ell // q + 1)) % p
    inputs = {"group": G.spec_string(), "length": ell, "p": p, "q": q, "D*": G.davenport_star()}
    return CongruenceReport(COROLLARY_PN, inputs, lhs, lhs == 0, ell >= G.davenport_star() + q - 1)


def _sub_multisets(entries, m):
    """(counts, weight) for every sub-multiset of total size m.

    weight is the number of index subsets giving that multiset,
    the product of C(mult_i, t_i).
    """
    mults = [c for _, c in entries]
    suffix = [0] * (len(mults) + 1)
    for i in range(len(mults) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + mults[i]

    def rec(i, left):
        if i == len(mults):
            if left == 0:
                yield (), 1
            return
        lo = max(0, left - suffix[i + 1])
        for t in range(lo, min(mults[i], left) + 1):
            for rest, w in rec(i + 1, left - t):
                yield (t,) + rest, w * math.comb(mults[i], t)

    yield from rec(0, m)


def window_identity_check(S: Sequence, j: int, m: int, budget: int | None = None) -> WindowReport:
    """Check sum_{T | S, |T| = m} N^j(T) = C(|S|-j, m-j) N^j(S) exactly.

    Windows T are index subsets; equal sub-multisets are enumerated once and
    weighted by how many index subsets produce them.
    """
    ell = S.length()
    if not 0 <= j <= m <= ell:
        raise DomainError(f"need 0 <= j <= m <= |S|, got j={j}, m={m}, |S|={ell}")
    limit = DEFAULT_WINDOW_BUDGET if budget is None else budget
    entries = S.entries
    lhs = 0
    windows = 0
    for ts, w in _sub_multisets(entries, m):
        windows += 1
        if windows > limit:
            raise BudgetExceeded("window enumeration", windows, limit)
        T = Sequence(S.group, {g: t for (g, _), t in zip(entries, ts) if t})
        lhs += w * count_table(T)[j]
    rhs = math.comb(ell - j, m - j) * count_table(S)[j]
    inputs = {"group": S.group.spec_string(), "length": ell, "j": j, "m": m}
    return WindowReport(inputs, lhs, rhs, windows)


def lucas_binomial(a: int, b: int, p: int) -> int:
    """C(a, b) mod p as the product of digit-wise binomials in base p."""
    if a < 0 or b < 0:
        raise DomainError("binomial arguments must be nonnegative")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    out = 1
    while a or b:
        a, ai = divmod(a, p)
        b, bi = divmod(b, p)
        if bi > ai:
            return 0
        out = out * math.comb(ai, bi) % p
    return out % p


def bareiss_det(M: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise DomainError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for jj in range(k + 1, n):
                A[i][jj] = (A[i][jj] * A[k][k] - A[i][k] * A[k][jj]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank_mod_p(M: list[list[int]], p: int) -> int:
    A = [[x % p for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(rows):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def lemma6_matrix(a: int, k: int) -> list[list[int]]:
    """Rows i = 0..k: (C(a+k, i), C(2k-1, i), C(2k-2, i), ..., C(k, i))."""
    tops = [a + k] + list(range(2 * k - 1, k - 1, -1))
    return [[math.comb(t, i) for t in tops] for i in range(k + 1)]


def lemma6_matrix_det(a: int, k: int) -> tuple[int, int]:
    """(det of the binomial matrix, (-1)^{k(k+1)/2} C(a, k))."""
    if a < 1 or k < 1:
        raise DomainError("need a, k >= 1")
    det = bareiss_det(lemma6_matrix(a, k))
    formula = (-1) ** (k * (k + 1) // 2) * math.comb(a, k)
    return det, formula


@dataclass(frozen=True)
class RankReport:
    p: int
    n: int
    r: int
    k: int
    length: int
    rank_A: int
    rank_augmented: int
    det_augmented: int
    det_formula: int
    binom_residue: int
    lucas_residue: int
    details: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return (
            self.rank_A <= self.k
            and self.rank_augmented == self.k + 1
            and self.det_augmented == self.det_formula
            and self.binom_residue == self.lucas_residue != 0
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "r": self.r,
            "k": self.k,
            "length": self.length,
            "rank_A_mod_p": self.rank_A,
            "rank_bA_mod_p": self.rank_augmented,
            "det_bA": str(self.det_augmented),
            "det_formula": str(self.det_formula),
            "binom_mod_p": self.binom_residue,
            "lucas_reduced": self.lucas_residue,
            "certified": self.certified,
        }


def theorem3_rank_argument(p: int, n: int, r: int, k: int) -> RankReport:
    """The linear-algebra contradiction behind s_{<= D-k}(C_{p^n}^r) <= D + k.

    A sequence of length |S| = r p^n - r + 1 + k without short zero-sums
    yields a solution X of A X + b = 0 (mod p) with b = (C(|S|, i))_i and A the
    (k+1) x k binomial matrix with columns C(2k-1, .), ..., C(k, .).  That is
    impossible when (b | A) has rank k + 1 mod p, which follows from
    det(b | A) = +-C(r p^n - r + 1, k) and C(r p^n - r + 1, k) = C(p - r + 1, k)
    (mod p) by Lucas.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n < 1:
        raise DomainError("n must be at least 1")
    if not 3 <= r < p:
        raise DomainError(f"need 3 <= r < p, got r={r}, p={p}")
    if not 2 <= k <= p - r + 1:
        raise DomainError(f"need 2 <= k <= p - r + 1 = {p - r + 1}, got k={k}")
    a = r * p**n - r + 1
    length = a + k
    b = [math.comb(length, i) for i in range(k + 1)]
    A = [[math.comb(t, i) for t in range(2 * k - 1, k - 1, -1)] for i in range(k + 1)]
    bA = [[bi] + row for bi, row in zip(b, A)]
    det = bareiss_det(bA)
    formula = (-1) ** (k * (k + 1) // 2) * math.comb(a, k)
    return RankReport(
        p, n, r, k, length,
        rank_mod_p(A, p),
        rank_mod_p(bA, p),
        det,
        formula,
        math.comb(a, k) % p,
        lucas_binomial(p - r + 1, k, p),
    )


@dataclass(frozen=True)
class Theorem6Constants:
    p: int
    n: int
    constant: int
    coefficients: dict
    forced_top_count: int

    @property
    def contradiction(self) -> bool:
        # N^{4q-2}(S) is 0 or 1 (only S itself can have that length)
        return self.forced_top_count % self.p not in (0, 1)


def theorem6_window_constants(p: int, n: int) -> Theorem6Constants:
    """Residues used to show s_{<= D - q}(C_q^3) <= D + q with q = p^n.

    For |S| = 4q - 2 with no zero-sum of length <= 2q - 2, averaging the
    alternating congruence over all windows of length 3q - 2 gives the
    constant C(4q-2, 3q-2) and coefficients C(4q-2-j, 3q-2-j) for
    j in [2q-1, 3q-2].  The top count N^{4q-2}(S) is then forced to be
    congruent to constant - 1 (reading the top term as N^{4q-2}).
    """
    if not is_prime(p) or p == 2:
        raise DomainError("p must be an odd prime")
    q = p**n
    L = 4 * q - 2
    m = 3 * q - 2
    constant = math.comb(L, m) % p
    coeffs = {j: math.comb(L - j, m - j) % p for j in range(2 * q - 1, m + 1)}
    return Theorem6Constants(p, n, constant, coeffs, (constant - 1) % p)


__all__ = [
    "CongruenceReport",
    "WindowReport",
    "RankReport",
    "olson_alternating",
    "corollary_pn",
    "window_identity_check",
    "lucas_binomial",
    "bareiss_det",
    "rank_mod_p",
    "lemma6_matrix",
    "lemma6_matrix_det",
    "theorem3_rank_argument",
    "theorem6_window_constants",
]
