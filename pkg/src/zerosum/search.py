"""Exhaustive search for long sequences avoiding prescribed zero-sum lengths.

The search walks nondecreasing index sequences (so every multiset is met
once) and keeps, per depth, the reachability sets R_c = {sums of size-c
subsequences}.  A branch dies as soon as some c in L has 0 in R_c.  When L is
"every positive length" a single set of all subsequence sums is enough.

Symmetry: every symmetry of G preserves zero-sums, so it suffices to visit
sequences that are least in their orbit (compared as sorted index lists).
Every sorted prefix of a least sequence is itself least, which gives three
sound filters used together:

* canonical prefixes: up to ``split_depth`` each prefix is tested exactly
  (GL_r(F_p) for elementary groups, the weak group otherwise);
* the echelon rule for elementary groups, applied at every depth: with
  span(prefix) equal to the first p^j indices, the next element is either
  inside the span or is exactly index p^j;
* for other groups, every element must lie in an orbit whose least index is
  at least the first element, and the first element larger than it must be
  least in its orbit under the stabilizer of the first element.

Below ``split_depth`` the compiled kernel runs each frontier prefix as an
independent work unit.  Units are what workers share out and what the
checkpoint file records.
"""

from __future__ import annotations

import os
import re
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernel
from .errors import DomainError, InvariantViolation, ParseError, ZeroSumError
from .groups import GroupSpec
from .sequences import Sequence
from .symmetry import _weak_index_maps, is_canonical, weak_orbit_minima

EXHAUSTIVE = "Exhaustive"
LOWER_BOUND_ONLY = "LowerBoundOnly"

CHECKPOINT_HEADER = "# zerosum-checkpoint v1"

_SLICE_NODES = 1 << 21


# -- length sets --------------------------------------------------------------


@dataclass(frozen=True)
class LengthSet:
    """A set of positive lengths; ``values is None`` means every length >= 1."""

    values: frozenset[int] | None

    @classmethod
    def all_positive(cls) -> "LengthSet":
        return cls(None)

    @classmethod
    def of(cls, values) -> "LengthSet":
        vals = frozenset(int(v) for v in values)
        if not vals:
            raise DomainError("the length set is empty")
        if min(vals) < 1:
            raise DomainError("lengths must be positive")
        return cls(vals)

    @classmethod
    def range(cls, a: int, b: int) -> "LengthSet":
        return cls.of(range(a, b + 1))

    @classmethod
    def parse(cls, text: str) -> "LengthSet":
        """Parse "1..5", "{9}", "9", "1..4,9", "{5,6}" or "all"."""
        s = text.strip().replace(" ", "")
        if s in ("all", "1..", "*"):
            return cls.all_positive()
        if s.startswith("{") and s.endswith("}"):
            s = s[1:-1]
        vals: set[int] = set()
        for part in s.split(","):
            m = re.fullmatch(r"(\d+)\.\.(\d+)", part)
            if m:
                a, b = int(m.group(1)), int(m.group(2))
                if a > b:
                    raise ParseError(f"empty range {part!r} in length set {text!r}")
                vals.update(range(a, b + 1))
            elif re.fullmatch(r"\d+", part):
                vals.add(int(part))
            else:
                raise ParseError(f"malformed length set {text!r}; use a..b, k, {{k}} or comma unions")
        return cls.of(vals)

    def is_all(self) -> bool:
        return self.values is None

    def __contains__(self, k: int) -> bool:
        return k >= 1 if self.values is None else k in self.values

    def max(self) -> int | None:
        return None if self.values is None else max(self.values)

    def upto(self, n: int) -> list[int]:
        return [k for k in range(1, n + 1) if k in self]

    def __str__(self) -> str:
        if self.values is None:
            return "all"
        vals = sorted(self.values)
        parts = []
        start = prev = vals[0]
        for v in vals[1:] + [None]:
            if v is not None and v == prev + 1:
                prev = v
                continue
            parts.append(str(start) if start == prev else f"{start}..{prev}")
            if v is not None:
                start = prev = v
        return ",".join(parts)


# -- certificates --------------------------------------------------------------


@dataclass
class ExtremalCertificate:
    group: GroupSpec
    avoided_lengths: LengthSet
    witness: Sequence
    witness_length: int
    status: str
    nodes_explored: int
    elapsed: float
    info: dict = field(default_factory=dict)

    def s_value(self) -> int | None:
        return self.witness_length + 1 if self.status == EXHAUSTIVE else None

    def to_json(self) -> dict:
        return {
            "group": self.group.spec_string(),
            "avoid": str(self.avoided_lengths),
            "witness_length": self.witness_length,
            "witness": self.witness.serialize(),
            "status": self.status,
            "nodes_explored": self.nodes_explored,
            "elapsed_seconds": round(self.elapsed, 3),
            **self.info,
        }


@dataclass(frozen=True)
class SLValue:
    """s_L(G) when the search was exhaustive, else only a lower bound."""

    lower_bound: int
    exact: bool
    certificate: ExtremalCertificate

    @property
    def value(self) -> int | None:
        return self.lower_bound if self.exact else None

    def to_json(self) -> dict:
        if self.exact:
            return {"value": self.lower_bound, "exact": True}
        return {"lower_bound": self.lower_bound, "exact": False}


@dataclass
class Budget:
    nodes: int | None = None
    seconds: float | None = None


def avoids(S: Sequence, L: LengthSet) -> bool:
    """True when S has no zero-sum subsequence with length in L."""
    from .dp import zero_sum_length_spectrum

    spec = zero_sum_length_spectrum(S)
    return not any(k in L for k in spec)


# -- search configuration ------------------------------------------------------


def check_domain(G: GroupSpec, L: LengthSet) -> None:
    """s_L(G) is finite iff L contains a multiple of exp(G)."""
    if L.is_all():
        return
    e = G.exponent()
    if not any(k % e == 0 for k in L.values):
        raise DomainError(
            f"no length in {L} is a multiple of exp(G) = {e}, so g^[m] for g of order {e} "
            "avoids L for every m and s_L(G) is infinite"
        )


def depth_cap(G: GroupSpec, L: LengthSet) -> int:
    """No avoiding sequence is longer than this.

    Davenport case: a zero-sum free sequence is shorter than |G|.  Otherwise,
    with k*exp(G) in L, any sequence of length |G|(k exp - 1) + 1 repeats some
    element k*exp(G) times.
    """
    N = G.order()
    if L.is_all():
        return N - 1
    e = G.exponent()
    m = min(k for k in L.values if k % e == 0)
    return N * (m - 1)


@lru_cache(maxsize=None)
def _kernel_tables(G: GroupSpec):
    N = G.order()
    small = N <= _kernel.SMALL_ORDER
    W = 2 if small else (N + 63) // 64
    r = G.rank()
    nops = np.zeros(N, np.int64)
    lo = np.zeros((N, r, W), np.uint64)
    hi = np.zeros((N, r, W), np.uint64)
    ql = np.zeros((N, r), np.int64)
    bl = np.zeros((N, r), np.int64)
    qr = np.zeros((N, r), np.int64)
    br = np.zeros((N, r), np.int64)
    rot = G._rotation_masks
    for i in range(N):
        t = 0
        for j, a in enumerate(G.element(i)):
            if a:
                l_mask, h_mask, sl, sr = rot[j, a]
                lo[i, t] = _words(l_mask, W)
                hi[i, t] = _words(h_mask, W)
                ql[i, t], bl[i, t] = divmod(sl, 64)
                qr[i, t], br[i, t] = divmod(sr, 64)
                t += 1
        nops[i] = t
    neg = np.asarray(G.neg_index, dtype=np.int64)
    return small, W, (nops, lo, hi, ql, bl, qr, br), neg


def _words(mask: int, W: int) -> np.ndarray:
    return np.array([(mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(W)], dtype=np.uint64)


def _neg_mask(G: GroupSpec, mask: int) -> int:
    neg = G.neg_index
    out = 0
    m = mask
    while m:
        low = m & -m
        out |= 1 << int(neg[low.bit_length() - 1])
        m ^= low
    return out


class _Plan:
    """Everything the search needs that depends only on (G, L, options)."""

    def __init__(self, G: GroupSpec, L: LengthSet, symmetry: bool, split_depth: int, cap: int):
        self.G = G
        self.L = L
        self.N = G.order()
        self.symmetry = symmetry
        self.elementary = symmetry and G.is_elementary()
        self.weak = symmetry and not G.is_elementary()
        self.split_depth = split_depth
        self.cap = cap
        self.davenport = L.is_all()
        self.M = 0 if self.davenport else L.max()
        self.lset = np.array([0] if self.davenport else sorted(L.values), dtype=np.int64)
        self.p = G.prime or 0
        # weak group data: least index of each orbit
        if self.weak:
            maps = _weak_index_maps(G)
            self.orbit_min = [min(m[i] for m in maps) for i in range(self.N)]
        else:
            self.orbit_min = None

    # python-side node operations on int bitsets (negated layers)

    def root(self):
        return (1,) if self.davenport else tuple([1] + [0] * self.M)

    def blocked(self, layers) -> int:
        if self.davenport:
            return layers[0]
        out = 0
        for k in self.lset:
            out |= layers[k - 1]
        return out

    def child(self, layers, g: int):
        G = self.G
        ng = G.element(int(G.neg_index[g]))
        if self.davenport:
            return (layers[0] | G.translate_mask(layers[0], ng),)
        new = [layers[0]]
        for k in range(1, self.M + 1):
            new.append(layers[k] | G.translate_mask(layers[k - 1], ng))
        return tuple(new)

    def candidates(self, path, layers, wsz) -> list[int]:
        lo_i = path[-1] if path else 0
        hi_i = self.N - 1
        if self.elementary and wsz < self.N:
            hi_i = wsz
        blocked = self.blocked(layers)
        out = []
        for i in range(lo_i, hi_i + 1):
            if blocked >> i & 1:
                continue
            if self.weak and path:
                x1 = path[0]
                if self.orbit_min[i] < x1:
                    continue
                if path[-1] == x1 and i != x1 and i not in self.allowed2(x1):
                    continue
            out.append(i)
        return out

    @lru_cache(maxsize=None)
    def allowed2(self, x1: int) -> frozenset[int]:
        pool = [i for i in range(self.N) if self.orbit_min[i] >= x1 and i > x1]
        return frozenset(weak_orbit_minima(self.G, within=pool, stabilizing=x1))

    def allow_masks(self, x1: int):
        _, W, _, _ = _kernel_tables(self.G)
        if not self.weak:
            z = np.zeros(W, np.uint64)
            return z, z
        a = 0
        for i in range(self.N):
            if self.orbit_min[i] >= x1:
                a |= 1 << i
        a2 = 0
        for i in self.allowed2(x1):
            a2 |= 1 << i
        return _words(a, W), _words(a2, W)


def _next_wsz(plan: _Plan, wsz: int, g: int) -> int:
    return wsz * plan.p if plan.elementary and g == wsz else wsz


def _frontier(plan: _Plan):
    """Depth-first enumeration down to split_depth.

    Returns (units, nodes, best_path) where units are (path, layers, wsz)
    at depth split_depth in DFS order, nodes counts every non-root sequence
    visited, and best_path is the first deepest sequence seen.
    """
    units = []
    nodes = 0
    best: list[int] = []

    def visit(path, layers, wsz):
        nonlocal nodes, best
        if len(path) > len(best):
            best = list(path)
        if len(path) >= plan.cap:
            return
        if len(path) == plan.split_depth:
            units.append((path, layers, wsz))
            return
        for g in plan.candidates(path, layers, wsz):
            new_path = path + (g,)
            if plan.symmetry and not is_canonical(plan.G, list(new_path)):
                continue
            nodes += 1
            visit(new_path, plan.child(layers, g), _next_wsz(plan, wsz, g))

    visit((), plan.root(), 1)
    return units, nodes, best


@dataclass
class UnitResult:
    path: tuple[int, ...]
    done: bool
    best: list[int]
    nodes: int


def _run_unit(plan_args, unit, floor: int, node_limit: int | None, deadline: float | None, stop_at: int) -> UnitResult:
    """Run the kernel below one frontier prefix."""
    G, L, symmetry, split_depth, cap = plan_args
    plan = _get_plan(G, L, symmetry, split_depth, cap)
    path, layers, wsz = unit
    small, W, tables, neg = _kernel_tables(G)
    base = len(path)
    NR = np.zeros((cap + 1, plan.M + 1, W), dtype=np.uint64)
    for k, m in enumerate(layers):
        NR[base, k] = _words(m, W)
    pos = np.zeros(cap + 1, np.int64)
    wszs = np.ones(cap + 1, np.int64)
    kpath = np.zeros(cap + 1, np.int64)
    kpath[:base] = path
    pos[base] = path[-1] if path else 0
    wszs[base] = wsz
    state = np.array([base, 0], np.int64)
    best = np.array([max(floor, base)], np.int64)
    best_path = np.zeros(cap + 1, np.int64)
    x1 = path[0] if (plan.weak and path) else -1
    allow, allow2 = plan.allow_masks(x1) if x1 >= 0 else plan.allow_masks(0)
    fn = _kernel.dfs_small if small else _kernel.dfs_wide
    mode = _kernel.DAVENPORT if plan.davenport else _kernel.LAYERED
    done = False
    while True:
        step = _SLICE_NODES
        if node_limit is not None:
            step = min(step, node_limit - int(state[1]))
            if step <= 0:
                break
        status = fn(
            NR, pos, wszs, kpath, state, best, best_path,
            mode, plan.N, plan.lset, *tables, neg,
            max(plan.p, 1), plan.elementary, allow, allow2, x1, base, cap, step,
        )
        if status == _kernel.DONE:
            done = True
            break
        if best[0] >= stop_at:
            break
        if deadline is not None and time.monotonic() > deadline:
            break
    found = [int(x) for x in best_path[: best[0]]] if best[0] > max(floor, base) else list(path)
    return UnitResult(tuple(path), done, found, int(state[1]))


@lru_cache(maxsize=16)
def _get_plan(G, L, symmetry, split_depth, cap) -> _Plan:
    return _Plan(G, L, symmetry, split_depth, cap)


# -- checkpoints --------------------------------------------------------------


def _fmt_path(path) -> str:
    return ",".join(str(i) for i in path) if path else "-"


def _parse_path(text: str) -> tuple[int, ...]:
    return () if text == "-" else tuple(int(x) for x in text.split(","))


def write_checkpoint(path: str, header: dict, results: dict, pending: list) -> None:
    lines = [CHECKPOINT_HEADER]
    for k, v in header.items():
        lines.append(f"{k} {v}")
    for unit_path, res in results.items():
        lines.append(f"prefix {_fmt_path(unit_path)} done {len(res.best)} {res.nodes} {_fmt_path(res.best)}")
    for unit_path in pending:
        lines.append(f"prefix {_fmt_path(unit_path)} pending")
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ckpt")
    with os.fdopen(fd, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_checkpoint(path: str) -> tuple[dict, dict]:
    with open(path) as fh:
        text = fh.read()
    lines = text.splitlines()
    if not lines or lines[0].strip() != CHECKPOINT_HEADER:
        raise ParseError(f"{path} is not a zerosum checkpoint (missing {CHECKPOINT_HEADER!r})", 1)
    header: dict[str, str] = {}
    results: dict[tuple[int, ...], UnitResult] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] != "prefix":
            if len(parts) != 2:
                raise ParseError(f"malformed header line {line!r}", lineno)
            header[parts[0]] = parts[1]
            continue
        try:
            unit_path = _parse_path(parts[1])
            if parts[2] == "done":
                best = list(_parse_path(parts[5]))
                if len(best) != int(parts[3]):
                    raise ParseError("best length does not match witness", lineno)
                results[unit_path] = UnitResult(unit_path, True, best, int(parts[4]))
            elif parts[2] != "pending":
                raise ParseError(f"unknown status {parts[2]!r}", lineno)
        except (IndexError, ValueError) as exc:
            raise ParseError(f"malformed prefix line {line!r}", lineno) from exc
    return header, results


# -- public operations -------------------------------------------------------


def davenport_seed(G: GroupSpec) -> Sequence:
    """e_1^[n_1-1] ... e_r^[n_r-1], zero-sum free of length D*(G) - 1."""
    counts = {}
    for j, n in enumerate(G.invariant_factors):
        e = [0] * G.rank()
        e[j] = 1
        counts[tuple(e)] = n - 1
    return Sequence(G, counts)


def default_split_depth(G: GroupSpec) -> int:
    return 4 if G.is_elementary() else 2


def max_avoiding(
    G: GroupSpec,
    L: LengthSet,
    budget: Budget | None = None,
    *,
    symmetry: bool = True,
    workers: int = 1,
    checkpoint: str | None = None,
    split_depth: int | None = None,
    seed_lower_bound: bool = True,
    _target: int | None = None,
) -> ExtremalCertificate:
    """Longest sequence over G with no zero-sum subsequence of length in L.

    In the Davenport case (L = all lengths) the search starts from the
    known zero-sum free sequence of length D*(G) - 1 and only needs to
    refute anything longer; ``seed_lower_bound=False`` disables that.
    """
    t0 = time.monotonic()
    budget = budget or Budget()
    check_domain(G, L)
    if G.order() > 4096:
        raise DomainError(f"|G| = {G.order()} is too large for exhaustive search")
    cap = depth_cap(G, L)
    if _target is not None:
        cap = min(cap, _target)
    split = default_split_depth(G) if split_depth is None else split_depth
    split = max(0, min(split, cap))
    plan = _get_plan(G, L, symmetry, split, cap)
    plan_args = (G, L, symmetry, split, cap)
    stop_at = _target if _target is not None else cap + 1

    seed_path: list[int] = []
    if plan.davenport and seed_lower_bound:
        seed_path = davenport_seed(G).indices()
        if _target is not None and len(seed_path) >= _target:
            seed_path = seed_path[: _target - 1]
    floor = len(seed_path)
    if _target is not None:
        # only sequences of length _target matter
        floor = max(floor, _target - 1)

    units, nodes, best = _frontier(plan)
    best_path = list(seed_path) if len(seed_path) >= len(best) else best
    header = {"group": G.spec_string(), "avoid": str(L), "symmetry": int(symmetry), "split": split, "cap": cap}
    if _target is not None:
        header["target"] = _target
    results: dict[tuple[int, ...], UnitResult] = {}
    if checkpoint and os.path.exists(checkpoint):
        old_header, old = read_checkpoint(checkpoint)
        expect = {k: str(v) for k, v in header.items()}
        if old_header != expect:
            raise ZeroSumError(f"checkpoint {checkpoint} was written for {old_header}, not {expect}")
        keys = {u[0] for u in units}
        results = {k: v for k, v in old.items() if k in keys}

    deadline = None if budget.seconds is None else t0 + budget.seconds
    todo = [u for u in units if u[0] not in results]
    spent = nodes + sum(r.nodes for r in results.values())
    exhausted = False
    partial: list[UnitResult] = []

    def over_budget():
        if budget.nodes is not None and spent >= budget.nodes:
            return True
        return deadline is not None and time.monotonic() > deadline

    def remaining_nodes():
        return None if budget.nodes is None else max(0, budget.nodes - spent)

    def reached_target():
        return _target is not None and any(len(r.best) >= _target for r in list(results.values()) + partial)

    if workers <= 1:
        for unit in todo:
            if over_budget() or reached_target():
                exhausted = exhausted or over_budget()
                break
            res = _run_unit(plan_args, unit, floor, remaining_nodes(), deadline, stop_at)
            spent += res.nodes
            if res.done:
                results[res.path] = res
                if checkpoint:
                    write_checkpoint(checkpoint, header, results, [u[0] for u in units if u[0] not in results])
            else:
                partial.append(res)
                exhausted = True
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_unit, plan_args, unit, floor, remaining_nodes(), deadline, stop_at) for unit in todo
            ]
            for fut in futures:
                res = fut.result()
                spent += res.nodes
                if res.done:
                    results[res.path] = res
                else:
                    partial.append(res)
                    exhausted = True
            if checkpoint:
                write_checkpoint(checkpoint, header, results, [u[0] for u in units if u[0] not in results])

    complete = all(u[0] in results for u in units) and not partial
    # deterministic merge: longest, ties broken by frontier order
    order = {u[0]: i for i, u in enumerate(units)}
    merged = sorted(list(results.values()) + partial, key=lambda r: order.get(r.path, len(order)))
    for r in merged:
        if len(r.best) > len(best_path):
            best_path = list(r.best)
    witness = Sequence.from_indices(G, best_path)
    if not avoids(witness, L):
        raise InvariantViolation(f"search produced {witness}, which has a zero-sum length in {L}")
    refuted = _target is not None and len(best_path) >= _target
    status = EXHAUSTIVE if (complete and not exhausted) or refuted else LOWER_BOUND_ONLY
    info = {
        "units_total": len(units),
        "units_done": len(results),
        "split_depth": split,
        "symmetry": symmetry,
        "seeded": bool(seed_path),
    }
    return ExtremalCertificate(G, L, witness, len(best_path), status, spent, time.monotonic() - t0, info)


def compute_s_L(G: GroupSpec, L: LengthSet, budget: Budget | None = None, **kw) -> SLValue:
    cert = max_avoiding(G, L, budget, **kw)
    return SLValue(cert.witness_length + 1, cert.status == EXHAUSTIVE, cert)


@dataclass(frozen=True)
class UpperBoundResult:
    """Outcome of refuting sequences of length ell that avoid L."""

    confirmed: bool | None  # None: inconclusive within budget
    ell: int
    certificate: ExtremalCertificate

    def to_json(self) -> dict:
        return {"confirmed": self.confirmed, "length": self.ell, **self.certificate.to_json()}


def verify_upper_bound(G: GroupSpec, L: LengthSet, ell: int, budget: Budget | None = None, **kw) -> UpperBoundResult:
    """Exhaustively check that every length-ell sequence has a zero-sum length in L."""
    if ell < 1:
        raise DomainError("ell must be at least 1")
    check_domain(G, L)
    if ell > depth_cap(G, L):
        cert = max_avoiding(G, L, budget, **kw)
        ok = None if cert.status != EXHAUSTIVE else cert.witness_length < ell
        return UpperBoundResult(ok, ell, cert)
    cert = max_avoiding(G, L, budget, _target=ell, **kw)
    if cert.witness_length >= ell:
        return UpperBoundResult(False, ell, cert)
    if cert.status == EXHAUSTIVE:
        return UpperBoundResult(True, ell, cert)
    return UpperBoundResult(None, ell, cert)


def davenport(G: GroupSpec, budget: Budget | None = None, **kw) -> SLValue:
    return compute_s_L(G, LengthSet.all_positive(), budget, **kw)

