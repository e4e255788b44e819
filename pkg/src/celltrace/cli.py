"""Command line: ``celltrace run|check|loggers|grammar``.

Exit status: 0 success, 1 the script failed (syntax or runtime), 2 usage or
I/O problem before the script could start.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime
from pathlib import Path
from typing import Sequence

from .dsl.grammar import GRAMMAR
from .dsl.parser import parse_script
from .errors import DslSyntaxError
from .loggers import describe_kinds
from .runner import run_file

EXIT_OK, EXIT_SCRIPT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _fixed_time(text: str) -> datetime:
    try:
        stamp = datetime.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO 8601 timestamp: {text!r}") from None
    return stamp if stamp.tzinfo is not None else stamp.astimezone()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="celltrace", description="Trace how data changes while a pipeline script runs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run a script with its loggers")
    run.add_argument("script", type=Path)
    run.add_argument("--log-dir", type=Path, help="where logs go (default: the script's directory)")
    run.add_argument("--quiet", action="store_true", help="print errors only")
    run.add_argument("--fixed-time", type=_fixed_time, metavar="ISO8601",
                     help="stamp every log record with this time")

    check = sub.add_parser("check", help="parse a script without running it")
    check.add_argument("script", type=Path)

    sub.add_parser("loggers", help="list logger kinds and their arguments")
    sub.add_parser("grammar", help="print the script grammar (EBNF)")
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError:
        raise UsageError(f"{path} is not valid UTF-8") from None


def _run(args: argparse.Namespace) -> int:
    _read(args.script)
    if args.log_dir is not None and not args.log_dir.is_dir():
        raise UsageError(f"log directory does not exist: {args.log_dir}")
    kwargs = {}
    if args.fixed_time is not None:
        stamp = args.fixed_time
        kwargs["clock"] = lambda: stamp
    echo = None if args.quiet else print
    try:
        report = run_file(args.script, log_dir=args.log_dir, echo=echo, **kwargs)
    except DslSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SCRIPT
    if report.error is not None:
        print(f"error: {report.error}", file=sys.stderr)
        return EXIT_SCRIPT
    return EXIT_OK


def _check(args: argparse.Namespace) -> int:
    source = _read(args.script)
    try:
        script = parse_script(source, args.script.name)
    except DslSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SCRIPT
    n = len(script)
    print(f"{args.script}: {n} statement{'s' if n != 1 else ''}")
    return EXIT_OK


def _loggers(args: argparse.Namespace) -> int:
    for kind, signature, summary in describe_kinds():
        print(f"{kind}{signature}")
        if summary:
            print(f"    {summary}")
    return EXIT_OK


def _grammar(args: argparse.Namespace) -> int:
    sys.stdout.write(GRAMMAR)
    return EXIT_OK


COMMANDS = {"run": _run, "check": _check, "loggers": _loggers, "grammar": _grammar}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
