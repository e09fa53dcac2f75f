"""Command line: list rows, verify rows, run property suites, dump algebras.

Exit codes: 0 all expectations met, 1 verdict mismatch or failed suite,
2 admissibility or user error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .maxcheck import (SECTIONS, AdmissibilityError, WitnessError, get_row, markdown_summary, registry,
                       verify_row)

EXIT_OK, EXIT_MISMATCH, EXIT_USER, EXIT_INTERNAL = 0, 1, 2, 3


class UserError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- list ----------------------------------------------------------------------------


def list_text() -> str:
    rows = registry()
    lines = []
    for key, heading in SECTIONS:
        sec = sorted((r for r in rows if r.table == key), key=lambda r: r.id)
        if not sec:
            continue
        lines.append(f"## {heading}")
        lines += [r.line() for r in sec]
        lines.append("")
    return "\n".join(lines)


def cmd_list(args) -> int:
    if args.format == "json":
        data = [{"id": r.id, "table": r.table, "h": r.h_text, "g": r.g_text, "conditions": r.conditions,
                 "defaults": {p.name: str(p.default) for p in r.params}, "expected": r.expected}
                for r in sorted(registry(), key=lambda r: (r.table, r.id))]
        _emit(json.dumps(data, indent=1, ensure_ascii=False), args.out)
    else:
        _emit(list_text(), args.out)
    return EXIT_OK


# -- verify --------------------------------------------------------------------------


def _row_ids(spec: str) -> list:
    if spec == "all":
        return [r.id for r in registry()]
    tables = {k for k, _ in SECTIONS}
    out = []
    for part in (p.strip() for p in spec.split(";") if p.strip()):
        if part in tables:
            out += [r.id for r in registry() if r.table == part]
        else:
            get_row(part)
            out.append(part)
    return out


def _verify_one(task: tuple):
    row_id, params, mode, trials, seed = task
    try:
        return ("ok", verify_row(row_id, params, mode, trials, seed))
    except AdmissibilityError as exc:
        return ("admissibility", f"{row_id}: AdmissibilityError: {exc.clause}")
    except WitnessError as exc:
        return ("internal", f"{row_id}: WitnessError: {exc}")
    except Exception as exc:  # reported through the exit code
        return ("internal", f"{row_id}: {type(exc).__name__}: {exc}")


def cmd_verify(args) -> int:
    if args.mode == "evidence" and args.trials < 1:
        raise UserError("--trials must be at least 1 in evidence mode")
    try:
        ids = _row_ids(args.row)
    except KeyError as exc:
        raise UserError(str(exc.args[0])) from None
    if args.params and len(ids) != 1:
        raise UserError("--params needs a single --row")
    tasks = [(i, args.params, args.mode, args.trials, args.seed) for i in ids]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_verify_one, tasks))
    else:
        results = [_verify_one(t) for t in tasks]

    reports = [r for kind, r in results if kind == "ok"]
    errors = [(kind, r) for kind, r in results if kind != "ok"]
    deterministic = not args.timings
    if args.format == "md":
        if deterministic:
            for r in reports:
                r.elapsed_ms = 0
        text = markdown_summary(reports)
        if errors:
            text += "\n" + "\n".join(f"- {msg}" for _, msg in errors) + "\n"
    else:
        objs = [r.to_json(deterministic) for r in reports]
        payload = objs[0] if len(objs) == 1 and not errors and len(ids) == 1 else \
            {"reports": objs, "errors": [msg for _, msg in errors]}
        text = json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False)
    _emit(text, args.out)
    for _, msg in errors:
        print(msg, file=sys.stderr)

    if any(k == "internal" for k, _ in errors):
        return EXIT_INTERNAL
    if errors:
        return EXIT_USER
    if any(r.matches_expected() is False for r in reports):
        for r in reports:
            if r.matches_expected() is False:
                print(f"{r.row}: {r.status}, expected {r.expected}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# -- suite ---------------------------------------------------------------------------


def cmd_suite(args) -> int:
    from .suites import SUITES, run_suite
    if args.name != "all" and args.name not in SUITES:
        raise UserError(f"unknown suite {args.name!r}; choose from {', '.join(SUITES)} or all")
    results = run_suite(args.name, seed=args.seed)
    if args.format == "md":
        text = "\n\n".join(r.markdown() for r in results)
    else:
        text = json.dumps([r.to_json() for r in results], indent=1)
    _emit(text, args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


# -- dump ----------------------------------------------------------------------------


def cmd_dump(args) -> int:
    from .algebras import by_name
    try:
        alg = by_name(args.algebra)
    except (KeyError, ValueError) as exc:
        raise UserError(str(exc)) from None
    if args.format == "md":
        e, o = alg.sdim
        lines = [f"### {alg.name}", "", f"- carrier: {alg.carrier}", f"- dimension: {e}|{o}",
                 f"- bracket closed: {alg.is_closed()}"]
        text = "\n".join(lines)
    else:
        text = json.dumps(alg.to_json(), indent=1, ensure_ascii=False)
    _emit(text, args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps an option given before the subcommand from being reset by it
    common.add_argument("--format", choices=("json", "md"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="rows verified concurrently")

    p = argparse.ArgumentParser(prog="supermax", parents=[common],
                                description="Maximal subalgebras of classical linear Lie superalgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("list", parents=[common], help="registry rows with conditions and defaults")
    s.set_defaults(func=cmd_list, default_format="md")

    s = sub.add_parser("verify", parents=[common], help="verify one row, a table, or all rows")
    s.add_argument("--row", required=True, help="row id, table key (T1, EXC, ...), 'all', or ids joined by ';'")
    s.add_argument("--params", default=None, help="k=v,... e.g. N1=2|1,N2=2|1")
    s.add_argument("--mode", choices=("certify", "evidence"), default="certify")
    s.add_argument("--trials", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--timings", action="store_true", help="include wall-clock times in the report")
    s.set_defaults(func=cmd_verify, default_format="json")

    s = sub.add_parser("suite", parents=[common], help="run a property suite")
    s.add_argument("--name", default="all", help="signs, lemma241, reps, quantize or all")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_suite, default_format="md")

    s = sub.add_parser("dump", parents=[common], help="print an algebra by name, e.g. 'pe(3)'")
    s.add_argument("--algebra", required=True)
    s.set_defaults(func=cmd_dump, default_format="json")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USER if exc.code else EXIT_OK
    args.format = getattr(args, "format", None) or args.default_format
    args.out = getattr(args, "out", None)
    args.jobs = getattr(args, "jobs", 1)
    if args.jobs < 1:
        print("--jobs must be at least 1", file=sys.stderr)
        return EXIT_USER
    try:
        return args.func(args)
    except UserError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except AdmissibilityError as exc:
        print(f"AdmissibilityError: {exc.clause}", file=sys.stderr)
        return EXIT_USER
    except WitnessError as exc:
        print(f"WitnessError: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
