"""Command-line interface.

Exit codes: 0 success, 1 axiom failure / no isomorphism, 2 search budget
exceeded, 64 usage error, 65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as C
from .errors import (
    AxiomViolation,
    LabelNotFound,
    MultiquandleError,
    SearchLimitExceeded,
    SizeLimitExceeded,
)
from .groups import group_from_json, group_to_json, standard_group, subgroup_generated
from .knots import count_colorings, parse_pd, wirtinger_presentation
from .multirack import (
    load_multirack_dict,
    multirack_from_json,
    multirack_to_json,
    restrict_operations,
    verify,
)
from .search import DEFAULT_BUDGET, enumerate_multiquandles, find_isomorphism

EX_OK = 0
EX_FAIL = 1
EX_BUDGET = 2
EX_USAGE = 64
EX_DATAERR = 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def _load_group(path: str):
    try:
        return group_from_json(_read(path))
    except (json.JSONDecodeError, MultiquandleError) as exc:
        raise InputError(f"{path}: {exc}")


def _load_multirack(path: str):
    try:
        return multirack_from_json(_read(path))
    except (json.JSONDecodeError, MultiquandleError) as exc:
        raise InputError(f"{path}: {exc}")


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind == "trivial":
        M = C.trivial_quandle(args.order)
    elif kind == "alexander":
        M = C.automorphism_multiquandle(C.alexander_family(args.mod, _int_list(args.units)))
    elif kind == "conjrack":
        M = C.conjugation_multirack(_load_group(args.group))
    elif kind == "conjpower":
        G = _load_group(args.group)
        M = C.conjugation_power_multiquandle(G, None if args.powers is None else _int_list(args.powers))
    elif kind == "coset":
        G = _load_group(args.group)
        gens = _int_list(args.subgroup_gens)
        if any(not 0 <= g < G.order for g in gens):
            raise UsageError("subgroup generators must be element indices of the group")
        H = subgroup_generated(G, gens)
        M = C.coset_multiquandle(G, H, None if args.s is None else _int_list(args.s))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown construction {kind!r}")
    _emit(multirack_to_json(M), args.output)
    return EX_OK


def _cmd_group(args) -> int:
    _emit(group_to_json(standard_group(args.kind, args.n)), args.output)
    return EX_OK


def _cmd_verify(args) -> int:
    try:
        _, labels, tables = load_multirack_dict(json.loads(_read(args.file)))
    except (json.JSONDecodeError, MultiquandleError) as exc:
        raise InputError(f"{args.file}: {exc}")
    report = verify(tables, check_quandle=args.quandle, max_violations=args.max_violations, labels=labels)
    print(report.format())
    return EX_OK if report.passed else EX_FAIL


def _cmd_restrict(args) -> int:
    M = _load_multirack(args.file)
    keep = [s for s in args.labels.split(",") if s]
    missing = [s for s in keep if s not in M.tables]
    if missing:
        raise UsageError(f"unknown operation labels: {', '.join(missing)}")
    _emit(multirack_to_json(restrict_operations(M, keep)), args.output)
    return EX_OK


def _cmd_iso(args) -> int:
    M, N = _load_multirack(args.first), _load_multirack(args.second)
    try:
        w = find_isomorphism(M, N, budget=args.budget)
    except SearchLimitExceeded:
        print("budget-exceeded")
        return EX_BUDGET
    if w is None:
        print("none")
        return EX_FAIL
    print(json.dumps(w.to_dict()))
    return EX_OK


def _cmd_enumerate(args) -> int:
    try:
        found = enumerate_multiquandles(args.order, args.ops, require_quandle=not args.racks, budget=args.budget)
    except SizeLimitExceeded as exc:
        raise UsageError(str(exc))
    except SearchLimitExceeded:
        print("budget-exceeded", file=sys.stderr)
        return EX_BUDGET
    for M in found:
        print(multirack_to_json(M))
    return EX_OK


def _cmd_color(args) -> int:
    try:
        diagram = parse_pd(args.pd)
    except MultiquandleError as exc:
        raise InputError(f"bad PD code: {exc}")
    target = _load_multirack(args.target)
    try:
        n = count_colorings(wirtinger_presentation(diagram), target, args.op, budget=args.budget)
    except LabelNotFound as exc:
        raise UsageError(str(exc))
    except AxiomViolation as exc:
        raise InputError(f"{args.target}: operation {args.op!r} is not a quandle operation")
    except SearchLimitExceeded:
        print("budget-exceeded", file=sys.stderr)
        return EX_BUDGET
    print(n)
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multiquandle", description="Multi-racks and multi-quandles on finite carriers.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    con = sub.add_parser("construct", help="build a multi-rack file")
    kinds = con.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    k = kinds.add_parser("trivial")
    k.add_argument("--order", type=int, required=True)
    k = kinds.add_parser("alexander")
    k.add_argument("--mod", type=int, required=True)
    k.add_argument("--units", required=True)
    k = kinds.add_parser("conjrack")
    k.add_argument("--group", required=True)
    k = kinds.add_parser("conjpower")
    k.add_argument("--group", required=True)
    k.add_argument("--powers")
    k = kinds.add_parser("coset")
    k.add_argument("--group", required=True)
    k.add_argument("--subgroup-gens", required=True)
    k.add_argument("--s", help="comma-separated center elements (default: all of Z(H))")
    for k in kinds.choices.values():
        k.add_argument("-o", "--output")
    con.set_defaults(func=_cmd_construct)

    g = sub.add_parser("group", help="write a catalog group file")
    g.add_argument("--kind", required=True, choices=["cyclic", "dihedral", "symmetric", "quaternion8"])
    g.add_argument("--n", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=_cmd_group)

    v = sub.add_parser("verify", help="check the axioms of a multi-rack file")
    v.add_argument("file")
    v.add_argument("--quandle", action="store_true", help="also check u |>_s u = u")
    v.add_argument("--max-violations", type=int, default=10)
    v.set_defaults(func=_cmd_verify)

    r = sub.add_parser("restrict", help="keep a subset of the operations")
    r.add_argument("file")
    r.add_argument("--labels", required=True)
    r.add_argument("-o", "--output")
    r.set_defaults(func=_cmd_restrict)

    i = sub.add_parser("iso", help="search for an isomorphism between two files")
    i.add_argument("first")
    i.add_argument("second")
    i.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    i.set_defaults(func=_cmd_iso)

    e = sub.add_parser("enumerate", help="list structures up to isomorphism")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--ops", type=int, default=1)
    e.add_argument("--racks", action="store_true", help="drop the diagonal law")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.set_defaults(func=_cmd_enumerate)

    c = sub.add_parser("color", help="count colorings of a PD diagram")
    c.add_argument("--pd", required=True)
    c.add_argument("--target", required=True)
    c.add_argument("--op", required=True)
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=_cmd_color)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"multiquandle: usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except InputError as exc:
        print(f"multiquandle: malformed input: {exc}", file=sys.stderr)
        return EX_DATAERR
    except MultiquandleError as exc:
        print(f"multiquandle: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
