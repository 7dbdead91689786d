"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys

from . import congruences as cg
from . import constructions as cs
from .dp import count_mod_p, count_table, find_zero_sum_length_in, find_zero_sum_of_length
from .errors import (
    BudgetExceeded,
    DomainError,
    GroupSpecError,
    InvariantViolation,
    ParseError,
    PreconditionError,
    ZeroSumError,
)
from .groups import GroupSpec
from .lifting import FINDERS
from .search import EXHAUSTIVE, Budget, LengthSet, compute_s_L
from .sequences import Sequence, random_sequence

SCHEMA = "zerosum/1"

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(ZeroSumError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2))
    else:
        print(text)


def _group(text: str) -> GroupSpec:
    return GroupSpec.parse(text)


def _read_sequence(path: str) -> Sequence:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return Sequence.parse(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _budget(args) -> Budget:
    return Budget(nodes=args.budget_nodes, seconds=args.budget_seconds)


def _fmt_set(values) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


# -- subcommands ---------------------------------------------------------------


def cmd_invariant(args) -> int:
    G = _group(args.group)
    L = LengthSet.parse(args.avoid)
    v = compute_s_L(G, L, _budget(args), workers=args.workers, checkpoint=args.checkpoint)
    cert = v.certificate
    _emit(
        args,
        {"group": G.spec_string(), "avoid": str(L), **v.to_json(), "certificate": cert.to_json()},
        str(v.value) if v.exact else f">= {v.lower_bound} (lower bound only: budget exhausted)",
    )
    return OK if v.exact else BUDGET


def cmd_count(args) -> int:
    S = _read_sequence(args.input)
    if args.mod:
        counts = count_mod_p(S, args.mod)
        spectrum = None
        payload = {"length": S.length(), "modulus": args.mod, "counts": {str(k): str(c) for k, c in counts.items()}}
    else:
        table = count_table(S)
        counts = table.as_dict()
        spectrum = sorted(table.spectrum())
        payload = {**table.to_json(), "spectrum": spectrum}
    lines = [f"N^{k} = {c}" for k, c in counts.items()]
    if spectrum is not None:
        lines.append(f"spectrum: {_fmt_set(spectrum)}")
    _emit(args, {"group": S.group.spec_string(), **payload}, "\n".join(lines))
    return OK


def cmd_find(args) -> int:
    S = _read_sequence(args.input)
    target = args.target
    kind = target[0]
    if kind in FINDERS and len(target) == 1:
        w = FINDERS[kind](S)
    elif kind == "length" and len(target) == 2 and target[1].isdigit():
        w = find_zero_sum_of_length(S, int(target[1]))
    elif kind == "in" and len(target) == 2:
        L = LengthSet.parse(target[1])
        w = find_zero_sum_length_in(S, L.upto(S.length()))
    else:
        raise UsageError(f"bad --target {' '.join(target)!r}; use 2x, 3x, 5x, 'length K' or 'in L'")
    label = " ".join(target)
    if w is None:
        _emit(args, {"target": label, "found": False}, f"# no zero-sum subsequence for target {label}")
        return FAILED
    w.check(S)
    verified = f"# verified: zero-sum of length {w.target_length}, contained in the input"
    _emit(
        args,
        {
            "target": label,
            "found": True,
            "length": w.target_length,
            "witness": w.sub.serialize(),
            "verified": True,
            "info": w.info,
        },
        w.sub.serialize() + verified,
    )
    return OK


def _construct(args) -> cs.Construction:
    which = args.which

    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError(f"--which {which} needs " + ", ".join("--" + m for m in missing))

    if which == "thm2":
        need("p", "r")
        return cs.thm2_lower(args.p, args.r)
    if which == "thm3":
        need("p", "r", "k")
        return cs.thm3_lower(args.p, args.n, args.r, args.k)
    if which == "thm6":
        need("p")
        return cs.thm6_lower(args.p, args.n)
    if which == "cor5":
        need("p")
        return cs.cor5_lower(args.p, args.n)
    need("group", "k")
    return cs.egz_lower(_group(args.group), args.k)


def cmd_construct(args) -> int:
    con = _construct(args)
    body = con.sequence.serialize()
    cert = f"# certified: {con.claim}\n# spectrum: {_fmt_set(con.spectrum)}"
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(body + cert + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror or exc}") from None
        text = cert
    else:
        text = body + cert
    _emit(args, {**con.to_json(), "sequence": body}, text)
    return OK


def _verify_random(args, make) -> tuple[int, list[dict]]:
    rng = random.Random(args.seed)
    failures = []
    for _ in range(args.trials):
        rep = make(rng)
        if not rep.holds:
            failures.append(rep.to_json())
    return args.trials, failures


def cmd_verify(args) -> int:
    st = args.statement
    if st in ("olson", "corollary", "window"):
        if args.group is None:
            raise UsageError(f"--statement {st} needs --group")
        G = _group(args.group)
        if G.prime is None and st != "window":
            raise UsageError(f"{G} is not a p-group")
        p, D = G.prime, G.davenport_star()
        if st == "olson":

            def make(rng):
                return cg.olson_alternating(random_sequence(G, rng.randint(D, D + args.extra), rng), p)

        elif st == "corollary":
            qs = [args.q] if args.q else [p**j for j in range(1, round(math.log(G.exponent(), p)) + 2)]

            def make(rng):
                q = rng.choice(qs)
                return cg.corollary_pn(random_sequence(G, rng.randint(D + q - 1, D + q - 1 + args.extra), rng), p, q)

        else:

            def make(rng):
                S = random_sequence(G, rng.randint(1, args.max_length), rng)
                m = rng.randint(0, S.length())
                return cg.window_identity_check(S, rng.randint(0, m), m)

        total, failures = _verify_random(args, make)
    elif st == "lucas":
        primes = [args.p] if args.p else [2, 3, 5, 7]
        total, failures = 0, []
        for p in primes:
            for a in range(args.max_a + 1):
                for b in range(a + 1):
                    total += 1
                    got = cg.lucas_binomial(a, b, p)
                    if got != math.comb(a, b) % p:
                        failures.append({"a": a, "b": b, "p": p, "lucas": got})
    elif st == "lemma6":
        total, failures = 0, []
        for k in range(1, args.max_k + 1):
            for a in range(1, args.max_a_det + 1):
                total += 1
                det, formula = cg.lemma6_matrix_det(a, k)
                if det != formula:
                    failures.append({"a": a, "k": k, "det": str(det), "formula": str(formula)})
    else:
        if args.p is None:
            raise UsageError("--statement thm3-rank needs --p")
        ks = [args.k] if args.k else list(range(2, args.p - args.r + 2))
        reports = [cg.theorem3_rank_argument(args.p, args.n, args.r, k) for k in ks]
        total = len(reports)
        failures = [r.to_json() for r in reports if not r.certified]
    text = f"{st}: {total - len(failures)}/{total} hold"
    if failures:
        text += "\n" + "\n".join(json.dumps(f) for f in failures[:20])
    _emit(args, {"statement": st, "checked": total, "failures": len(failures), "failing": failures[:20]}, text)
    return FAILED if failures else OK


def cmd_search(args) -> int:
    G = _group(args.group)
    L = LengthSet.parse(args.avoid)
    v = compute_s_L(
        G,
        L,
        _budget(args),
        workers=args.workers,
        checkpoint=args.checkpoint,
        symmetry=not args.no_symmetry,
        split_depth=args.split_depth,
    )
    cert = v.certificate
    lines = [
        f"group {G.spec_string()}  avoid {L}",
        f"status: {cert.status}",
        f"longest avoiding sequence: {cert.witness_length}",
        f"s_L {'=' if v.exact else '>='} {v.lower_bound}",
        f"nodes: {cert.nodes_explored}  elapsed: {cert.elapsed:.2f}s",
        "witness:",
        cert.witness.serialize().rstrip(),
    ]
    _emit(args, {**v.to_json(), "certificate": cert.to_json()}, "\n".join(lines))
    return OK if cert.status == EXHAUSTIVE else BUDGET


def cmd_selftest(args) -> int:
    from . import selftest

    results = selftest.run(args.tier, report=None if args.json else print)
    gating = [r for r in results if r.number != 12]
    failed = [r.number for r in gating if not r.ok]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "tier": args.tier, "results": [r.to_json() for r in results]}, indent=2))
    else:
        print(f"{len(gating) - len(failed)}/{len(gating)} gating criteria passed")
    return FAILED if failed else OK


# -- parser ------------------------------------------------------------------


def _add_budget(p) -> None:
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", default=None, metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="zerosum", description="Zero-sum invariants of finite abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", parents=[common], help="compute s_L(G); D(G) by default")
    p.add_argument("--group", required=True, help="e.g. 3^1^3 or 9,9,9")
    p.add_argument("--avoid", default="all", help='length set L: "1..5", "{9}", "1..4,9" or "all"')
    _add_budget(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("count", parents=[common], help="N^k(S) for every k")
    p.add_argument("--input", required=True, metavar="FILE", help="sequence file, or - for stdin")
    p.add_argument("--mod", type=int, default=None, metavar="P")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("find", parents=[common], help="extract a zero-sum subsequence")
    p.add_argument("--target", nargs="+", required=True, help="2x | 3x | 5x | length K | in L")
    p.add_argument("--input", required=True, metavar="FILE")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("construct", parents=[common], help="emit a certified extremal sequence")
    p.add_argument("--which", required=True, choices=sorted(cs.BUILDERS))
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--group", help="group for --which egz")
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-congruence", parents=[common], help="check counting congruences")
    p.add_argument(
        "--statement", required=True, choices=["olson", "corollary", "window", "lucas", "lemma6", "thm3-rank"]
    )
    p.add_argument("--group")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extra", type=int, default=8, help="random lengths run up to threshold + extra")
    p.add_argument("--q", type=int, help="power of p for the corollary (random if omitted)")
    p.add_argument("--max-length", type=int, default=10, help="window checks: largest |S|")
    p.add_argument("--max-a", type=int, default=200, help="lucas: largest a")
    p.add_argument("--max-k", type=int, default=8, help="lemma6: largest k")
    p.add_argument("--max-a-det", type=int, default=12, help="lemma6: largest a")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="exhaustive extremal search with certificate")
    p.add_argument("--group", required=True)
    p.add_argument("--avoid", default="all")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--split-depth", type=int, default=None)
    _add_budget(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--tier", choices=["fast", "full"], default="fast")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"zerosum: budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except InvariantViolation as exc:
        print(f"zerosum: verification failed: {exc}", file=sys.stderr)
        return FAILED
    except ParseError as exc:
        print(f"zerosum: parse error: {exc}", file=sys.stderr)
        return USAGE
    except GroupSpecError as exc:
        print(f"zerosum: {exc}", file=sys.stderr)
        return USAGE
    except PreconditionError as exc:
        print(f"zerosum: precondition not met: {exc}", file=sys.stderr)
        return USAGE
    except DomainError as exc:
        print(f"zerosum: outside the supported domain: {exc}", file=sys.stderr)
        return USAGE
    except ZeroSumError as exc:
        print(f"zerosum: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
