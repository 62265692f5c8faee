"""Command-line front end: classes, diagram, charpoly and verify."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from kacgen.campaigns import SUITES, run_suite
from kacgen.charpoly import canonical_m, formula_charpoly, matrix_oracle_charpoly
from kacgen.core_types import Partition, TypeTag, admissible_partitions, parse_family
from kacgen.errors import InadmissiblePartition, KacgenError, UnsupportedType
from kacgen.kac import kac_diagram, render
from kacgen.lifts import element_order, lift
from kacgen.weyl_oracle import is_regular_elliptic_partition

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_INADMISSIBLE = 4


class UsageError(Exception):
    pass


def _parse_partition(text: str) -> Partition:
    try:
        parts = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"partition must be comma-separated integers, got {text!r}") from None
    if not parts or any(x < 1 for x in parts):
        raise UsageError(f"partition parts must be positive, got {text!r}")
    ordered = sorted(parts, reverse=True)
    if ordered != parts:
        print(f"warning: partition re-sorted to {','.join(map(str, ordered))}", file=sys.stderr)
    return Partition(tuple(ordered))


def _tag(args: argparse.Namespace) -> TypeTag:
    return TypeTag(parse_family(args.type), args.rank)


def cmd_classes(args: argparse.Namespace) -> int:
    tag = _tag(args)
    print(f"# {tag}: partition m order order_mod_centre regular")
    for p in admissible_partitions(tag):
        e = lift(tag, p)
        regular = "yes" if is_regular_elliptic_partition(tag, p) else "no"
        print(
            f"{','.join(map(str, p.parts))} {canonical_m(tag, p)} {element_order(e)} "
            f"{element_order(e, modulo_centre=True)} {regular}"
        )
    return EXIT_OK


def cmd_diagram(args: argparse.Namespace) -> int:
    tag = _tag(args)
    tag.require_diagram()
    p = _parse_partition(args.partition)
    d = kac_diagram(tag, p, normalize=not args.raw)
    sys.stdout.write(render(d, args.format))
    return EXIT_OK


def cmd_charpoly(args: argparse.Namespace) -> int:
    tag = _tag(args)
    p = _parse_partition(args.partition)
    res = formula_charpoly(tag, p)
    out = {
        "family": tag.family.value,
        "rank": tag.rank,
        "partition": list(p.parts),
        "rep": res.rep,
        "m": res.m,
        "factored": str(res.factored),
        "expanded": list(res.expanded.coeffs),
    }
    status = EXIT_OK
    if args.oracle:
        oracle = matrix_oracle_charpoly(lift(tag, p))
        out["oracle_agrees"] = oracle.expanded == res.expanded
        if not out["oracle_agrees"]:
            print(f"oracle gives {oracle.expanded}, formula gives {res.expanded}", file=sys.stderr)
            status = EXIT_FAILED
    print(json.dumps(out))
    print(f"{tag} {p}: {res.factored} = {res.expanded}", file=sys.stderr)
    return status


def cmd_verify(args: argparse.Namespace) -> int:
    families = [parse_family(args.type)] if args.type else None
    cases = run_suite(args.suite, families, args.max_rank, args.jobs)
    for case in cases:
        print(case.line(), file=sys.stderr)
    failed = sum(not c.ok for c in cases)
    print(json.dumps({"suite": args.suite, "cases": len(cases), "passed": len(cases) - failed, "failed": failed}))
    return EXIT_OK if failed == 0 else EXIT_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kacgen", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def typed(p: argparse.ArgumentParser) -> None:
        p.add_argument("--type", required=True, help="A, B, C, D, 2A or 2D")
        p.add_argument("--rank", required=True, type=int)

    p = sub.add_parser("classes", help="list elliptic classes with m, lift order and regularity")
    typed(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("diagram", help="render the Kac diagram of one class")
    typed(p)
    p.add_argument("--partition", required=True, help="comma-separated parts, e.g. 5,4,4,1")
    p.add_argument("--format", choices=("ascii", "json"), default="ascii")
    p.add_argument("--raw", action="store_true", help="keep the common factor of the labels")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("charpoly", help="closed-form characteristic polynomial of one class")
    typed(p)
    p.add_argument("--partition", required=True)
    p.add_argument("--oracle", action="store_true", help="also compute it from the lift matrix")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--type", help="restrict to one family")
    p.add_argument("--max-rank", type=int, help="largest rank (default from KACGEN_MAX_RANK or per suite)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedType as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InadmissiblePartition as exc:
        print(f"inadmissible partition: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except KacgenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
