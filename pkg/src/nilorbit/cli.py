"""Command line front end: ``nilorbit <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import centralizer, elimination, oblak, rbgraph, verify
from .gfp import FieldError, PrimeModulus, jordan_type
from .partitions import PartitionError, dominance_compare, Dominance, parse_partition, partitions_of
from .sweep import CHECKS, DEFAULT_CHECKS, property_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _render(P) -> str:
    return P.render(exponent=False)


def _prime(text: str) -> int:
    try:
        return PrimeModulus(int(text)).p
    except (ValueError, FieldError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _default_seed() -> int:
    try:
        return int(os.environ.get("NOL_SEED", "0"))
    except ValueError:
        return 0


def cmd_q(args, out) -> int:
    B = parse_partition(args.partition)
    Q = oblak.q_of(B)
    if args.trace:
        for level in oblak.trace(B):
            print(json.dumps(level), file=out)
    if args.all_choices:
        results = sorted(oblak.q_all_choices(B), key=lambda P: P.parts, reverse=True)
        branches = oblak.count_branches(B)
        if args.json:
            print(json.dumps({"results": [list(r.parts) for r in results], "branches": branches}), file=out)
        else:
            for r in results:
                print(_render(r), file=out)
            print(f"branches: {branches}", file=out)
        return EXIT_OK
    if args.json:
        print(json.dumps({"partition": list(B.parts), "q": list(Q.parts)}), file=out)
    else:
        print(_render(Q), file=out)
    return EXIT_OK


def cmd_graph(args, out) -> int:
    B = parse_partition(args.partition)
    if not B:
        raise UsageError("graph needs a nonempty partition")
    G = rbgraph.build_graph(B)
    table = rbgraph.assign_rows(G)
    if args.dot:
        print(rbgraph.to_dot(G, table), file=out)
    elif args.json:
        circle = rbgraph.delta_circle(B)
        rows = [
            {"mu": v.mu, "j": v.j, "l": v.l, "row": r, "circle": v in circle}
            for v, r in sorted(table.row.items(), key=lambda kv: (kv[1], kv[0].mu))
        ]
        print(json.dumps({"partition": list(B.parts), "omega1": table.max_row + 1, "rows": rows}), file=out)
    else:
        print(rbgraph.render_table(B, table), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    B = parse_partition(args.partition)
    if args.dump_pattern:
        centralizer.dump_pattern(centralizer.sn_pattern(B), args.dump_pattern)
    if args.exhaustive:
        try:
            top = verify.exhaustive_max_type(B, args.prime)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        except AssertionError as exc:
            print(f"violation: {exc}", file=out)
            return EXIT_FAIL
        Q = oblak.q_of(B)
        if args.json:
            print(json.dumps({"partition": list(B.parts), "prime": args.prime, "q": list(Q.parts),
                              "max_observed": list(top.parts), "attained": top == Q}), file=out)
        else:
            print(_render(top), file=out)
        return EXIT_OK
    report = verify.sample_max_type(B, args.prime, args.samples, args.seed, args.kind)
    if args.json:
        print(json.dumps(report.to_json()), file=out)
    else:
        print(f"partition  {_render(B)}", file=out)
        print(f"Q(B)       {_render(report.q)}", file=out)
        top = _render(report.max_type) if report.max_type else "none (incomparable maxima)"
        print(f"max seen   {top}", file=out)
        print(f"attained   {str(report.attained).lower()}", file=out)
        for kind, detail in report.violations:
            print(f"violation  {kind}: {detail}", file=out)
    return EXIT_OK if not report.violations else EXIT_FAIL


def cmd_sweep(args, out) -> int:
    checks = args.checks.split(",") if args.checks else list(DEFAULT_CHECKS)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {','.join(CHECKS)}")
    result = property_sweep(args.n, checks)
    for c in checks:
        bad = result.failures[c]
        status = "pass" if not bad else f"FAIL ({len(bad)})"
        print(f"{c:12s} {status}", file=out)
    print(f"partitions checked: {result.checked}", file=out)
    return EXIT_OK if result.ok else EXIT_FAIL


def dominance_covers(n: int):
    parts = list(partitions_of(n))
    less = {
        (a, b)
        for a in parts
        for b in parts
        if a != b and dominance_compare(a, b) is Dominance.LESS
    }
    covers = [
        (a, b) for (a, b) in less if not any((a, c) in less and (c, b) in less for c in parts)
    ]
    return parts, sorted(covers, key=lambda e: (e[0].parts, e[1].parts))


def cmd_dominance(args, out) -> int:
    parts, covers = dominance_covers(args.n)
    if args.dot:
        print("digraph dominance {", file=out)
        for P in parts:
            print(f'  "{_render(P)}";', file=out)
        for a, b in covers:
            print(f'  "{_render(a)}" -> "{_render(b)}";', file=out)
        for P in parts:
            Q = oblak.q_of(P)
            if Q != P:
                print(f'  "{_render(P)}" -> "{_render(Q)}" [style=dashed color=blue];', file=out)
        print("}", file=out)
    else:
        print(f"partitions: {len(parts)}", file=out)
        for a, b in covers:
            print(f"{_render(a)} < {_render(b)}", file=out)
        for P in parts:
            print(f"Q({_render(P)}) = {_render(oblak.q_of(P))}", file=out)
    return EXIT_OK


def cmd_sigma(args, out) -> int:
    if args.pattern:
        P = centralizer.load_pattern(args.pattern)
        Y = centralizer.pattern_instantiate(P, args.prime, args.seed)
    elif args.example:
        Y, _ = elimination.generic_mask_instance(elimination.example_mask_13(), args.prime, args.seed)
    elif args.partition:
        P = centralizer.sn_pattern(parse_partition(args.partition))
        Y = centralizer.pattern_instantiate(P, args.prime, args.seed)
    else:
        raise UsageError("sigma needs a partition, --pattern FILE or --example")
    try:
        trace = elimination.sigma_reduce(Y)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    final_type = elimination.monotone_generic_type(trace.final_phi)
    actual = jordan_type(Y)
    if args.json:
        print(json.dumps({
            "n": Y.rows,
            "steps": [
                {"i1": s.rows[0], "p": s.p, "terminal": s.terminal, "eliminated": int(v)}
                for s, v in trace.steps
            ],
            "m": trace.m,
            "final_phi": list(trace.final_phi.values),
            "type": list(final_type.parts),
        }), file=out)
    else:
        print(f"phi_0  {' '.join(map(str, elimination.phi_of(Y).values))}", file=out)
        for k, (s, v) in enumerate(trace.steps, start=1):
            print(f"step {k}: i1={s.rows[0]} p={s.p} terminal={s.terminal} eliminated={v}", file=out)
        print(f"m      {trace.m}", file=out)
        print(f"phi_m  {' '.join(map(str, trace.final_phi.values))}", file=out)
        print(f"type   {_render(final_type)}", file=out)
    return EXIT_OK if final_type == actual else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilorbit",
        description="Maximum nilpotent Jordan type commuting with a nilpotent matrix of type B.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sampling: bool = False):
        p.add_argument("--json", action="store_true", help="machine readable output")
        if sampling:
            p.add_argument("--prime", type=_prime, default=65521)
            p.add_argument("--seed", type=int, default=_default_seed())

    p = sub.add_parser("q", help="compute Q(B)")
    p.add_argument("partition")
    p.add_argument("--trace", action="store_true", help="print the recursion as JSON lines")
    p.add_argument("--all-choices", action="store_true", help="explore every maximizing branch")
    common(p)
    p.set_defaults(func=cmd_q)

    p = sub.add_parser("graph", help="row table of the relation R_B")
    p.add_argument("partition")
    p.add_argument("--dot", action="store_true")
    common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", help="sample or enumerate the nilpotent centralizer pattern")
    p.add_argument("partition")
    p.add_argument("--samples", type=_positive, default=64)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--kind", choices=("sn", "se"), default="sn")
    p.add_argument("--dump-pattern", metavar="FILE")
    common(p, sampling=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="property sweep over all partitions of size <= n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--checks", help=f"comma separated subset of {','.join(CHECKS)}")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("dominance", help="dominance order covers with Q overlay")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_dominance)

    p = sub.add_parser("sigma", help="eliminate-and-permute reduction trace")
    p.add_argument("partition", nargs="?")
    p.add_argument("--pattern", metavar="FILE")
    p.add_argument("--example", action="store_true", help="use the built-in 13x13 profile")
    common(p, sampling=True)
    p.set_defaults(func=cmd_sigma)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (PartitionError, UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
