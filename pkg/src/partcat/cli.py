"""Command-line workbench wiring the library into reproducible runs.

Exit codes: 0 for pass, 1 for failure, 2 for inconclusive-at-bound.
Structured reports echo the run configuration (except the worker bound,
which never changes any output byte) and are byte-stable across runs.
"""

from __future__ import annotations

import argparse
import sys

from . import intertwiner as tw
from .closure import (
    closure,
    is_hyperoctahedral_at_bound,
    is_simplifiable_at_bound,
    single_leg_members,
)
from .correspondence import (
    bounded_oracle,
    category_of_subgroup,
    exponent_oracle,
    parity_oracle,
    quotient_enumerate,
    roundtrip_check,
    trivial_oracle,
)
from .correspondence import F_of_category
from .facts import run_facts
from .partition import (
    Partition,
    PartitionError,
    make_named,
    parse,
    render,
    simplify,
    simplify_word,
    to_one_row,
    word_of,
)
from .reports import emit
from .words import WordError, parse_z2, subgroup_closure, to_free

PASS, FAIL, INCONCLUSIVE = 0, 1, 2


def parse_partition_token(token: str) -> Partition:
    token = token.strip()
    if ":" in token:
        return parse(token)
    name = token.rstrip("0123456789")
    digits = token[len(name):]
    return make_named(name, int(digits) if digits else None)


def parse_generators(spec: str) -> list[Partition]:
    return [parse_partition_token(t) for t in spec.split(",") if t.strip()]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--point-bound", type=int, default=8)
    p.add_argument("--work-bound", type=int, default=10)
    p.add_argument("--length-bound", type=int, default=8)
    p.add_argument("--alphabet", type=int, default=4)
    p.add_argument("--cap", type=int, default=400_000)
    p.add_argument("--workers", type=int, default=1,
                   help="upper bound on parallelism; never affects output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)


def _finish(report: dict, args, code: int) -> int:
    text = emit(report, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    return code


def cmd_closure(args) -> int:
    gens = parse_generators(args.gen)
    targets = parse_generators(args.targets) if args.targets else None
    c = closure(gens, args.point_bound, args.work_bound, args.cap,
                stop_targets=targets)
    notable = {}
    for name in ("pair", "unit", "fourblock", "crossing", "halflib",
                 "fatcross", "primary", "doubleton"):
        notable[name] = c.contains(make_named(name))
    report = {
        "command": "closure",
        "generators": [render(g) for g in gens],
        "point_bound": args.point_bound,
        "work_bound": args.work_bound,
        "cap": args.cap,
        "member_count": c.member_count(),
        "work_set": c.stats["work_set"],
        "saturated": c.saturated,
        "hyperoctahedral_at_bound": is_hyperoctahedral_at_bound(c),
        "simplifiable_at_bound": is_simplifiable_at_bound(c),
        "single_leg_count": len(single_leg_members(c)),
        "notable": notable,
        "certificates": {
            render(t): c.certificate(t) for t in (targets or []) if t in c
        },
    }
    if targets:
        ok = all(t in c for t in targets)
        return _finish(report, args, PASS if ok else INCONCLUSIVE)
    return _finish(report, args, PASS if c.saturated else INCONCLUSIVE)


def cmd_member(args) -> int:
    gens = parse_generators(args.gen)
    target = parse_partition_token(args.target)
    c = closure(gens, max(args.point_bound, target.n_points), args.work_bound,
                args.cap, stop_targets=[target])
    verdict = c.contains(target)
    report = {
        "command": "member",
        "generators": [render(g) for g in gens],
        "target": render(target),
        "point_bound": args.point_bound,
        "work_bound": args.work_bound,
        "verdict": verdict,
        "certificate": c.certificate(target),
        "replayed": c.replay(target) if verdict == "yes" else None,
    }
    return _finish(report, args, PASS if verdict == "yes" else INCONCLUSIVE)


def cmd_simplify(args) -> int:
    text = args.partition.strip()
    if args.full:
        out = render(simplify(parse(text)))
    else:
        if ":" not in text:
            raise PartitionError("expected a partition literal")
        up, lo = text.split(":")
        if up:
            lo = render(to_one_row(parse(text))).split(":")[1]
        out = ":" + simplify_word(lo)
    sys.stdout.write(out + "\n")
    return PASS


def cmd_word(args) -> int:
    p = parse_partition_token(args.partition)
    w = word_of(p)
    if args.free:
        sys.stdout.write(str(to_free(w)) + "\n")
    else:
        sys.stdout.write(str(w) + "\n")
    return PASS


def cmd_subgroup(args) -> int:
    gens = [parse_z2(t) for t in args.words.split(",") if t.strip()]
    semigroup = None if args.semigroup == "none" else args.semigroup
    sub = subgroup_closure(gens, args.length_bound, semigroup,
                           alphabet_bound=args.alphabet, cap=args.cap)
    elements = sorted(sub.elements, key=lambda w: (len(w.letters), w.letters))
    report = {
        "command": "subgroup",
        "generators": [str(g) for g in gens],
        "semigroup": args.semigroup,
        "length_bound": args.length_bound,
        "alphabet_bound": args.alphabet,
        "element_count": len(elements),
        "saturated": sub.saturated,
        "even_only": sub.even_only,
        "elements": [str(w) for w in elements[:args.show]],
    }
    return _finish(report, args, PASS if sub.saturated else INCONCLUSIVE)


def _oracle_from_spec(spec: str):
    spec = spec.strip().lower()
    if spec == "trivial":
        return trivial_oracle()
    if spec == "parity":
        return parity_oracle()
    if spec.startswith("exp"):
        return exponent_oracle(int(spec[3:]))
    raise WordError(f"unknown oracle {spec!r} (use trivial, parity, or expN)")


def cmd_roundtrip(args) -> int:
    if args.oracle:
        seed = _oracle_from_spec(args.oracle)
    else:
        seed = parse_generators(args.gen)
    r = roundtrip_check(seed, args.point_bound, args.length_bound,
                        args.alphabet, args.work_bound, args.cap)
    r["command"] = "roundtrip"
    return _finish(r, args, PASS if r["ok"] else FAIL)


def cmd_quotient(args) -> int:
    relators = [parse_z2(t) for t in args.relator.split(",") if t.strip()]
    bound = max([args.length_bound] + [2 * len(r.letters) for r in relators])
    closed = subgroup_closure(relators, bound, "s0", alphabet_bound=args.n,
                              cap=args.cap)
    table = quotient_enumerate(args.n, closed, length_cap=args.length_cap,
                               size_cap=args.size_cap)
    report = {
        "command": "quotient",
        "n": args.n,
        "relators": [str(r) for r in relators],
        "relator_count": table.relator_count,
        "length_cap": args.length_cap,
        "complete": table.complete,
        "element_count": len(table.elements),
        "order": table.order(),
        "elements": [
            {"word": str(w), "length": table.lengths[w]}
            for w in table.elements[:args.show]
        ],
    }
    return _finish(report, args, PASS if table.complete else INCONCLUSIVE)


def _rep_from_spec(spec: str):
    spec = spec.strip()
    if spec == "counterexample":
        return tw.counterexample_rep()
    if spec.startswith("diag:"):
        return tw.diagonal_sign_rep(int(spec.split(":", 1)[1]))
    return tw.load_rep(spec)


def cmd_intertwiner(args) -> int:
    rep = _rep_from_spec(args.rep)
    flags = tw.check_flags(rep)
    report = {
        "command": "intertwiner",
        "rep": args.rep,
        "n": rep.n,
        "dim": rep.dim,
        "flags": {k: v for k, v in flags.items() if k != "witness"},
        "flag_witness": flags["witness"],
    }
    if not flags["ok"]:
        return _finish(report, args, FAIL)
    report["relations"] = {
        kind: tw.relation_check(rep, kind) for kind in ("i", "ii", "iii", "iv")
    }
    checks = {}
    for token in (args.partition.split(",") if args.partition else []):
        p = parse_partition_token(token)
        checks[render(p)] = tw.intertwines(rep, p)
    report["intertwines"] = checks
    if args.transpose:
        report["transpose_symmetry"] = tw.transpose_symmetry_check(rep)
    return _finish(report, args, PASS)


def cmd_facts(args) -> int:
    r = run_facts()
    r["command"] = "facts"
    if args.format == "text" and not args.out:
        for item in r["facts"]:
            status = "PASS" if item["ok"] else "FAIL"
            line = f"{status} {item['id']}: {item['description']}"
            if item["error"]:
                line += f" ({item['error']})"
            sys.stdout.write(line + "\n")
        sys.stdout.write(f"{r['passed']}/{r['total']} facts pass\n")
    else:
        emit(r, args.format, args.out)
    return PASS if r["ok"] else FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="partcat",
        description="workbench for diagram categories and invariant word subgroups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="bounded closure of a generator set")
    p.add_argument("--gen", required=True, help="comma-separated names or literals")
    p.add_argument("--targets", default=None, help="stop once these are found")
    _add_common(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("member", help="membership with certificate")
    p.add_argument("--gen", required=True)
    p.add_argument("--target", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("simplify", help="parity-reduce a partition word")
    p.add_argument("partition")
    p.add_argument("--full", action="store_true",
                   help="iterate to the single-leg form and canonicalize")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("word", help="clockwise word of a partition")
    p.add_argument("partition")
    p.add_argument("--free", action="store_true", help="emit the free-basis form")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("subgroup", help="bounded word-subgroup closure")
    p.add_argument("--words", required=True, help="comma-separated word literals")
    p.add_argument("--semigroup", choices=("s0", "s", "none"), default="s0")
    p.add_argument("--show", type=int, default=25)
    _add_common(p)
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("roundtrip", help="two-directional correspondence check")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--oracle", help="trivial, parity, or expN")
    g.add_argument("--gen", help="comma-separated generator diagrams")
    _add_common(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("quotient", help="normal forms modulo a relator set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--relator", required=True, help="comma-separated word literals")
    p.add_argument("--length-cap", type=int, default=8)
    p.add_argument("--size-cap", type=int, default=10_000)
    p.add_argument("--show", type=int, default=25)
    _add_common(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("intertwiner", help="relation and intertwiner checks")
    p.add_argument("--rep", required=True,
                   help="counterexample, diag:N, or a matrix file path")
    p.add_argument("--partition", default="fourblock,fatcross,primary")
    p.add_argument("--transpose", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_intertwiner)

    p = sub.add_parser("facts", help="replay the pinned regression corpus")
    _add_common(p)
    p.set_defaults(func=cmd_facts)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        sys.stderr.write("workers must be >= 1\n")
        return FAIL
    try:
        return args.func(args)
    except (PartitionError, WordError, tw.BudgetError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
