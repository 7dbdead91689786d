"""Acceptance checks, runnable from the CLI and from pytest.

Each check returns a CheckResult; ``scale`` shrinks trial counts for the
fast tier while keeping every exhaustive computation intact.
"""

from __future__ import annotations

import math
import os
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import congruences as cg
from . import constructions as cs
from .dp import count_table, zero_sum_length_spectrum
from .groups import GroupSpec
from .lifting import find_2x, find_3x, find_5x
from .search import Budget, LengthSet, compute_s_L, davenport, verify_upper_bound
from .sequences import Sequence, random_sequence


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    elapsed: float
    limit: float | None
    details: list[str] = field(default_factory=list)

    @property
    def within_time(self) -> bool:
        return self.limit is None or self.elapsed <= self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        lim = f" (limit {self.limit:g}s)" if self.limit is not None else ""
        note = "" if self.within_time else " [over time]"
        return f"[{tag}] {self.number:2d}. {self.title}: {self.elapsed:.2f}s{lim}{note}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.ok,
            "elapsed_seconds": round(self.elapsed, 3),
            "limit_seconds": self.limit,
            "details": self.details,
        }


class _Check:
    def __init__(self, number, title, limit):
        self.result = CheckResult(number, title, True, 0.0, limit)
        self._t0 = time.monotonic()

    def expect(self, cond: bool, what: str) -> None:
        if not cond:
            self.result.passed = False
            self.result.details.append("failed: " + what)

    def note(self, text: str) -> None:
        self.result.details.append(text)

    def done(self) -> CheckResult:
        self.result.elapsed = time.monotonic() - self._t0
        return self.result


def _n(full: int, scale: float) -> int:
    return max(1, math.ceil(full * scale))


def check_davenport(scale: float = 1.0) -> CheckResult:
    c = _Check(1, "Davenport constants of C_3^3, C_3^2, C_5^3", 30.0)
    for spec, want in (("3^1^3", 7), ("3^1^2", 5), ("5^1^3", 13)):
        t0 = time.monotonic()
        v = davenport(GroupSpec.parse(spec))
        dt = time.monotonic() - t0
        c.note(f"D({spec}) = {v.value} in {dt:.2f}s, {v.certificate.nodes_explored} nodes")
        c.expect(v.exact and v.value == want, f"D({spec}) = {want}")
        c.expect(dt <= 10.0, f"D({spec}) within 10s")
    return c.done()


def check_short_zero_sums(scale: float = 1.0) -> CheckResult:
    c = _Check(2, "s_{<=5}(C_3^3) = 9 with a certified witness", 300.0)
    G = GroupSpec.homocyclic(3, 3)
    v = compute_s_L(G, LengthSet.range(1, 5))
    c.expect(v.exact and v.value == 9, "s_{<=5}(C_3^3) = 9, exhaustive")
    w = v.certificate.witness
    spec = zero_sum_length_spectrum(w)
    c.note(f"witness length {w.length()}, spectrum {sorted(spec)}")
    c.expect(w.length() == 8 and spec <= {6, 7, 8, 9}, "witness of length 8 with spectrum in {6,7,8,9}")
    return c.done()


def check_rank3_bound(scale: float = 1.0) -> CheckResult:
    c = _Check(3, "s_{<=4}(C_3^3) = 10 and its lower-bound construction", 1800.0)
    G = GroupSpec.homocyclic(3, 3)
    v = compute_s_L(G, LengthSet.range(1, 4))
    c.note(f"s_{{<=4}}(C_3^3) = {v.lower_bound}, exact={v.exact}")
    c.expect(v.exact and v.value == 10, "s_{<=4}(C_3^3) = 10, exhaustive")
    con = cs.thm6_lower(3, 1)
    c.expect(con.spectrum == {5, 6}, "construct_thm6_lower(3,1) spectrum = {5,6}")
    return c.done()


def check_cor5(scale: float = 1.0) -> CheckResult:
    c = _Check(4, "construct_cor5_lower spectra", 2.0)
    for p, length, spec in ((3, 8, {6}), (5, 16, {10})):
        con = cs.cor5_lower(p, 1)
        c.expect(con.sequence.length() == length and con.spectrum == spec, f"p={p}: length {length}, spectrum {spec}")
    return c.done()


def check_minimal_zero_sums(scale: float = 1.0) -> CheckResult:
    c = _Check(5, "construct_thm2_lower is a minimal zero-sum sequence", 10.0)
    for p, r in ((3, 3), (5, 3), (7, 3), (5, 4)):
        con = cs.thm2_lower(p, r)
        D = r * p - r + 1
        c.expect(con.spectrum == {D}, f"(p,r)=({p},{r}) spectrum = {{{D}}}")
    return c.done()


def check_rank_argument(scale: float = 1.0) -> CheckResult:
    c = _Check(6, "rank argument and construct_thm3_lower for p in {5,7}, r=3", 60.0)
    for p in (5, 7):
        for k in range(2, p - 1):
            rep = cg.theorem3_rank_argument(p, 1, 3, k)
            c.expect(rep.rank_A <= k and rep.rank_augmented == k + 1, f"rank conditions at p={p}, k={k}")
            c.expect(rep.certified, f"rank argument certified at p={p}, k={k}")
            con = cs.thm3_lower(p, 1, 3, k)
            D = con.sequence.group.davenport_star()
            c.expect(min(con.spectrum) > D - k, f"thm3 construction min spectrum > D-k at p={p}, k={k}")
    return c.done()


CONGRUENCE_GROUPS = ("3^1^2", "3^1^3", "5^1^3", "9,9,9")


def _powers(p: int, top: int) -> list[int]:
    out, q = [], p
    while q <= top:
        out.append(q)
        q *= p
    return out


def check_congruences(scale: float = 1.0, seed: int = 2024) -> CheckResult:
    c = _Check(7, "congruence suite", 300.0)
    rng = random.Random(seed)
    trials = _n(1000, scale)
    for spec in CONGRUENCE_GROUPS:
        G = GroupSpec.parse(spec)
        p, D = G.prime, G.davenport_star()
        bad_o = bad_c = 0
        for _ in range(trials):
            S = random_sequence(G, rng.randint(D, D + 8), rng)
            bad_o += not cg.olson_alternating(S, p).holds
            q = rng.choice(_powers(p, G.exponent() * p))
            S = random_sequence(G, rng.randint(D + q - 1, D + q + 7), rng)
            bad_c += not cg.corollary_pn(S, p, q).holds
        c.note(f"{spec}: olson failures {bad_o}/{trials}, corollary failures {bad_c}/{trials}")
        c.expect(bad_o == 0 and bad_c == 0, f"no congruence failures over {spec}")
    G = GroupSpec.homocyclic(3, 3)
    bad_w = 0
    windows = _n(200, scale)
    for _ in range(windows):
        S = random_sequence(G, rng.randint(1, 10), rng)
        m = rng.randint(0, S.length())
        j = rng.randint(0, m)
        bad_w += not cg.window_identity_check(S, j, m).holds
    c.note(f"window identity failures {bad_w}/{windows}")
    c.expect(bad_w == 0, "window identity exact on every instance")
    return c.done()


def check_binomials(scale: float = 1.0) -> CheckResult:
    c = _Check(8, "Lucas residues and the binomial determinant", 10.0)
    for p in (2, 3, 5, 7):
        for a in range(201):
            for b in range(a + 1):
                if cg.lucas_binomial(a, b, p) != math.comb(a, b) % p:
                    c.expect(False, f"lucas({a},{b},{p})")
    for k in range(1, 9):
        for a in range(1, 13):
            det, formula = cg.lemma6_matrix_det(a, k)
            c.expect(det == formula, f"determinant at a={a}, k={k}")
    return c.done()


def check_lifting_c33(scale: float = 1.0, seed: int = 15) -> CheckResult:
    c = _Check(9, "find_3x / find_5x over C_3^3 and the sharp lower bound", 600.0)
    rng = random.Random(seed)
    G = GroupSpec.homocyclic(3, 3)
    trials = _n(10_000, scale)
    ok3 = sum(find_3x(random_sequence(G, 15, rng)).sub.length() == 9 for _ in range(trials))
    ok5 = sum(find_5x(random_sequence(G, 21, rng)).sub.length() == 15 for _ in range(trials))
    c.note(f"find_3x {ok3}/{trials}, find_5x {ok5}/{trials}")
    c.expect(ok3 == trials and ok5 == trials, "every random sequence yields a witness")
    S = cs.construct_egz_lower(G, 3)
    c.expect(S.length() == 14 and count_table(S)[9] == 0, "egz construction has length 14 and N^9 = 0")
    return c.done()


def check_lifting_deep(scale: float = 1.0, seed: int = 55) -> CheckResult:
    c = _Check(10, "find_2x over C_9^3 and C_27^3", 720.0)
    rng = random.Random(seed)
    G9 = GroupSpec.homocyclic(9, 3)
    runs = _n(100, scale)
    t0 = time.monotonic()
    depths = set()
    good = 0
    for _ in range(runs):
        w = find_2x(random_sequence(G9, 55, rng))
        good += w.sub.length() == 18 and w.sub.is_zero_sum()
        depths.add(w.info["depth"])
    dt9 = time.monotonic() - t0
    c.note(f"C_9^3: {good}/{runs} in {dt9:.1f}s, depths {sorted(depths)}")
    c.expect(good == runs and depths == {1} and dt9 <= 120, "C_9^3 witnesses of length 18 at depth 1 within 2 min")
    G27 = GroupSpec.homocyclic(27, 3)
    runs = _n(10, scale)
    t0 = time.monotonic()
    good = sum(find_2x(random_sequence(G27, 181, rng)).sub.length() == 54 for _ in range(runs))
    dt27 = time.monotonic() - t0
    c.note(f"C_27^3: {good}/{runs} in {dt27:.1f}s")
    c.expect(good == runs and dt27 <= 600, "C_27^3 witnesses of length 54 within 10 min")
    return c.done()


SMALL_GROUPS = ("2", "3", "4", "2,2", "5", "6", "7", "8", "2,4", "2,2,2", "9", "3,3", "10", "11", "12", "2,6",
                "13", "14", "15", "16", "4,4", "2,8", "2,2,4", "2,2,2,2", "18", "3,6", "20", "2,10", "21",
                "22", "24", "2,12", "2,2,6", "25", "5,5", "26", "27", "3,9", "3,3,3")


def brute_force_counts(S: Sequence) -> list[int]:
    """N^k(S) by enumerating all 2^|S| index subsets."""
    G = S.group
    items = list(S)
    out = [0] * (len(items) + 1)
    for mask in range(1 << len(items)):
        total = [0] * G.rank()
        size = 0
        for i, g in enumerate(items):
            if mask >> i & 1:
                size += 1
                total = [a + b for a, b in zip(total, g)]
        if all(t % n == 0 for t, n in zip(total, G.invariant_factors)):
            out[size] += 1
    return out


def check_dp_oracle(scale: float = 1.0, seed: int = 11) -> CheckResult:
    c = _Check(11, "count_table against brute-force enumeration", 120.0)
    rng = random.Random(seed)
    trials = _n(500, scale)
    bad = 0
    for _ in range(trials):
        G = GroupSpec.parse(rng.choice(SMALL_GROUPS))
        S = random_sequence(G, rng.randint(0, 12), rng)
        bad += list(count_table(S).counts) != brute_force_counts(S)
    c.note(f"{bad} mismatches in {trials} trials")
    c.expect(bad == 0, "exact equality on every trial")
    return c.done()


def check_long_tier(scale: float = 1.0, hours: float = 12.0, checkpoint_dir: str | None = None) -> CheckResult:
    c = _Check(12, "long tier: s_{<=3}(C_3^3) = 17, s(C_3^3) <= 19, s_{9}(C_3^3) <= 15", None)
    G = GroupSpec.homocyclic(3, 3)
    third = Budget(seconds=hours * 1200)

    def ckpt(name):
        return None if checkpoint_dir is None else os.path.join(checkpoint_dir, name)

    v = compute_s_L(G, LengthSet.range(1, 3), third, checkpoint=ckpt("s_le3_c33.ckpt"))
    c.note(f"s_{{<=3}}(C_3^3): {v.to_json()}, {v.certificate.nodes_explored} nodes")
    c.expect(v.exact and v.value == 17, "s_{<=3}(C_3^3) = 17")
    for L, ell, name in ((LengthSet.of([3]), 19, "s_c33_19.ckpt"), (LengthSet.of([9]), 15, "s9_c33_15.ckpt")):
        ub = verify_upper_bound(G, L, ell, third, checkpoint=ckpt(name))
        c.note(f"L={L}, length {ell}: confirmed={ub.confirmed}, {ub.certificate.nodes_explored} nodes")
        c.expect(ub.confirmed is True, f"every length-{ell} sequence over C_3^3 has a zero-sum length in {{{L}}}")
    return c.done()


CHECKS: dict[int, Callable[..., CheckResult]] = {
    1: check_davenport,
    2: check_short_zero_sums,
    3: check_rank3_bound,
    4: check_cor5,
    5: check_minimal_zero_sums,
    6: check_rank_argument,
    7: check_congruences,
    8: check_binomials,
    9: check_lifting_c33,
    10: check_lifting_deep,
    11: check_dp_oracle,
    12: check_long_tier,
}

# trial-count scale per tier; criterion 12 runs only in the full tier
TIERS = {"fast": 1.0, "full": 1.0}


def run(tier: str = "fast", report: Callable[[str], None] | None = print) -> list[CheckResult]:
    scale = TIERS[tier]
    numbers = [n for n in CHECKS if tier == "full" or n != 12]
    results = []
    for n in numbers:
        res = CHECKS[n](scale)
        results.append(res)
        if report:
            report(res.line())
    return results

