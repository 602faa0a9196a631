"""Command line interface.

Subcommands: dir (letter lookup), coords (index to coordinates by any
method), locate (coordinates to index), render (PBM image of a stage),
verify (the bounded check suites), export / import (text formats of the
machines), bench (query timing at large indices).

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource/budget error.  The HILBERT_BUDGET environment variable
overrides the stage expansion budget.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .bitmap import render_generation, write_pbm
from .dfao import coords_by_letters, dfao_from_text, dfao_to_text, eval_dfao, hilbert_dfao
from .linrep import (
    eval_linrep,
    hilbert_linrep,
    hilbert_step_rep,
    linrep_from_text,
    linrep_to_text,
)
from .oracle import DEFAULT_MAX_GENERATION, GenerationBudgetError, hc_prefix, walk
from .sync import hilbert_sync, sync_coords, sync_from_text, sync_locate, sync_to_text
from .textfmt import ParseError
from .verify import format_report, verify_cross, verify_identities, verify_sync_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_EXPORTERS = {
    "dfao": lambda: dfao_to_text(hilbert_dfao()),
    "linrep": lambda: linrep_to_text(hilbert_linrep()),
    "steprep": lambda: linrep_to_text(hilbert_step_rep()),
    "sync": lambda: sync_to_text(hilbert_sync()),
}

_PARSERS = {
    "dfao": (dfao_from_text, dfao_to_text),
    "linrep": (linrep_from_text, linrep_to_text),
    "steprep": (linrep_from_text, linrep_to_text),
    "sync": (sync_from_text, sync_to_text),
}


def _budget() -> int:
    value = os.environ.get("HILBERT_BUDGET")
    return int(value) if value else DEFAULT_MAX_GENERATION


def _parse_index(args: argparse.Namespace) -> int:
    if getattr(args, "base4", False):
        text = str(args.n)
        if not text or set(text) - set("0123"):
            raise ValueError(f"{text!r} is not a base-4 digit string")
        return int(text, 4)
    return int(args.n)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertrep",
        description="Hilbert spacefilling curve lookups, rendering and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dir = sub.add_parser("dir", help="letter of the curve word at an index")
    p_dir.add_argument("n")
    p_dir.add_argument("--base4", action="store_true", help="read n as base-4 digits")

    p_coords = sub.add_parser("coords", help="coordinates of the n'th curve point")
    p_coords.add_argument("n")
    p_coords.add_argument("--base4", action="store_true", help="read n as base-4 digits")
    p_coords.add_argument("--method", choices=("oracle", "dfao", "linrep", "sync"),
                          default="sync")

    p_locate = sub.add_parser("locate", help="curve index visiting given coordinates")
    p_locate.add_argument("x", type=int)
    p_locate.add_argument("y", type=int)

    p_render = sub.add_parser("render", help="write a stage image as plain PBM")
    p_render.add_argument("g", type=int, help="stage index, at least 1")
    p_render.add_argument("-o", "--output", required=True)

    p_verify = sub.add_parser("verify", help="run the bounded check suites")
    p_verify.add_argument("--gen-bound", type=int, default=6)
    p_verify.add_argument("--digit-bound", type=int, default=6)
    p_verify.add_argument("--cross-bound", type=int, default=6)
    p_verify.add_argument("--sync-file", help="check this automaton file instead of the built-in")

    p_export = sub.add_parser("export", help="write a built-in machine in text form")
    p_export.add_argument("kind", choices=sorted(_EXPORTERS))
    p_export.add_argument("-o", "--output")

    p_import = sub.add_parser("import", help="load a machine file and print it canonically")
    p_import.add_argument("kind", choices=sorted(_PARSERS))
    p_import.add_argument("path")
    p_import.add_argument("-o", "--output")

    p_bench = sub.add_parser("bench", help="time coordinate queries at indices near 4**30")
    p_bench.add_argument("--queries", type=int, default=200)
    return parser


def _write_output(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_dir(args) -> int:
    n = _parse_index(args)
    letter = eval_dfao(hilbert_dfao(), n)
    print(f"{letter.name} {int(letter)}")
    return EXIT_OK


def _cmd_coords(args) -> int:
    n = _parse_index(args)
    if args.method == "oracle":
        x, y = walk(hc_prefix(n, max_generation=_budget()))[n]
    elif args.method == "dfao":
        x, y = coords_by_letters(hilbert_dfao(), n)
    elif args.method == "linrep":
        x, y = eval_linrep(hilbert_linrep(), n)
    else:
        x, y = sync_coords(hilbert_sync(), n)
    print(f"{x} {y}")
    return EXIT_OK


def _cmd_locate(args) -> int:
    print(sync_locate(hilbert_sync(), args.x, args.y))
    return EXIT_OK


def _cmd_render(args, parser: argparse.ArgumentParser) -> int:
    if args.g < 1:
        parser.error(f"stage index must be at least 1, got {args.g}")
    bitmap = render_generation(args.g, max_generation=_budget())
    with open(args.output, "wb") as handle:
        handle.write(write_pbm(bitmap))
    return EXIT_OK


def _cmd_verify(args) -> int:
    machine = None
    if args.sync_file:
        with open(args.sync_file, encoding="ascii") as handle:
            machine = sync_from_text(handle.read())
    reports = []
    reports.extend(verify_identities(args.gen_bound))
    reports.extend(verify_sync_suite(args.digit_bound, machine=machine))
    reports.extend(verify_cross(args.cross_bound))
    for report in sorted(reports, key=lambda r: r.name):
        print(format_report(report))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def _cmd_export(args) -> int:
    _write_output(_EXPORTERS[args.kind](), args.output)
    return EXIT_OK


def _cmd_import(args) -> int:
    load, store = _PARSERS[args.kind]
    with open(args.path, encoding="ascii") as handle:
        machine = load(handle.read())
    _write_output(store(machine), args.output)
    return EXIT_OK


def _cmd_bench(args) -> int:
    n0 = 4 ** 30
    rep = hilbert_linrep()
    machine = hilbert_sync()
    runs = {
        "linrep": lambda i: eval_linrep(rep, n0 + i),
        "sync": lambda i: sync_coords(machine, n0 + i),
    }
    for name, query in runs.items():
        query(0)  # warm up
        start = time.perf_counter()
        for i in range(args.queries):
            query(i)
        elapsed = time.perf_counter() - start
        per_query_us = elapsed / args.queries * 1e6
        print(f"method={name} n=4**30 queries={args.queries} per_query_us={per_query_us:.1f}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors and --help
        return int(exc.code or 0)
    try:
        if args.command == "dir":
            return _cmd_dir(args)
        if args.command == "coords":
            return _cmd_coords(args)
        if args.command == "locate":
            return _cmd_locate(args)
        if args.command == "render":
            return _cmd_render(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "export":
            return _cmd_export(args)
        if args.command == "import":
            return _cmd_import(args)
        return _cmd_bench(args)
    except GenerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
