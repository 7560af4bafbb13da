"""``earleylog`` command line: eval, compile, run, trace.

Exit codes: 0 ok, 1 usage or parse error, 2 validation error,
3 compilation failure, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .core.program import Database, Program, check_pairing, parse_database, parse_program
from .deduction import Mode, evaluate, trace
from .errors import CompilationFailed, DatalogError, ParseError, UnknownPredicate, ValidationError
from .oracle import answers_of, fixpoint
from .parteval import compile_program, dump_automaton, export_dot, format_automaton, load_automaton
from .runtime import run, run_stream

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_COMPILE, EXIT_MISMATCH = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None


class _Usage(Exception):
    pass


def _load(args) -> tuple[Program, Database]:
    program = _parse(args.program, parse_program)
    db = _parse(args.database, parse_database) if args.database else Database()
    check_pairing(program, db)
    return program, db


def _parse(path: str, parser):
    try:
        return parser(_read(path))
    except ParseError as e:
        raise ParseError(str(e).split(": ", 1)[1], e.line, e.column) from None


def _sorted(facts):
    return sorted(facts, key=lambda f: f.key())


def _print_answers(answers) -> None:
    for a in _sorted(answers):
        print(f"{a}.")


def cmd_eval(args) -> int:
    program, db = _load(args)
    answers = evaluate(program, db, Mode(args.mode))
    _print_answers(answers)
    if args.oracle:
        expected = answers_of(fixpoint(program, db))
        if expected != answers:
            for f in _sorted(expected - answers):
                print(f"missing: {f}.", file=sys.stderr)
            for f in _sorted(answers - expected):
                print(f"unexpected: {f}.", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_compile(args) -> int:
    program = _parse(args.program, parse_program)
    automaton = compile_program(program, Mode(args.mode), args.cap)
    if args.format == "dot":
        sys.stdout.write(export_dot(automaton))
    elif args.format == "text":
        sys.stdout.write(format_automaton(automaton))
    else:
        sys.stdout.write(dump_automaton(automaton))
    return EXIT_OK


def cmd_run(args) -> int:
    automaton = load_automaton(_read(args.automaton))
    db = _parse(args.database, parse_database)
    if args.stream:
        for a in run_stream(automaton, db, args.strict):
            print(f"{a}.", flush=True)
    else:
        _print_answers(run(automaton, db, args.strict).answers)
    return EXIT_OK


def cmd_trace(args) -> int:
    program, db = _load(args)
    sys.stdout.write(str(trace(program, db, Mode(args.mode))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="earleylog", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def mode_flag(p):
        p.add_argument("--mode", choices=[m.value for m in Mode], default="extended")

    p = sub.add_parser("eval", help="evaluate a query by Earley Deduction")
    p.add_argument("program")
    p.add_argument("database", nargs="?")
    mode_flag(p)
    p.add_argument("--oracle", action="store_true", help="cross-check against a naive fixpoint")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compile", help="compile a program into an automaton")
    p.add_argument("program")
    mode_flag(p)
    p.add_argument("--format", choices=["automaton", "text", "dot"], default="automaton")
    p.add_argument("--cap", type=int, default=10_000, help="maximum number of automaton states")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("run", help="run a compiled automaton on a database")
    p.add_argument("automaton")
    p.add_argument("database")
    p.add_argument("--stream", action="store_true", help="print answers as they are found")
    p.add_argument("--strict", action="store_true", help="fail on predicates missing from the data")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("trace", help="print the explored state sequence")
    p.add_argument("program")
    p.add_argument("database", nargs="?")
    mode_flag(p)
    p.set_defaults(func=cmd_trace)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(format="earleylog: %(levelname)s: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    if getattr(args, "cap", 1) <= 0:
        print("earleylog: --cap must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (_Usage, ParseError) as e:
        print(f"earleylog: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, UnknownPredicate) as e:
        print(f"earleylog: {e}", file=sys.stderr)
        return EXIT_INVALID
    except CompilationFailed as e:
        print(f"earleylog: compilation failed: {e}", file=sys.stderr)
        return EXIT_COMPILE
    except DatalogError as e:
        print(f"earleylog: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
