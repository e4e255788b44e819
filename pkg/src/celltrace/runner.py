"""Run a script statement by statement while feeding attached loggers.

For each statement the runner snapshots every tracked frame, executes the
statement, and hands (before, after) to each logger. ``start_log`` logs the
initial state as step 1; ``stop_log`` and ``dump_log`` are handled here and
never reach the interpreter. Loggers still attached when the script ends, or
when it fails, are dumped to their default destinations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Callable, Mapping

from .dsl.ast import DumpLog, Script, StartLog, Statement, StopLog
from .dsl.interp import exec_statement
from .dsl.parser import parse_script
from .errors import LoggerError, ScriptError, TraceError
from .frame import Frame, Value
from .loggers import Logger, LoggerRegistry, dump_with_args, make_logger

log = logging.getLogger(__name__)

Clock = Callable[[], datetime]


def system_clock() -> datetime:
    return datetime.now().astimezone()


def default_dump_target(variable: str | None, kind: str, log_dir: str | Path = ".") -> Path:
    """``<log_dir>/<variable>_<kind>.csv``, or ``<kind>.csv`` when the variable is unnamed.

    Filedump loggers get a directory instead of a file.
    """
    stem = f"{variable}_{kind}" if variable else kind
    if kind == "filedump":
        return Path(log_dir) / stem
    return Path(log_dir) / f"{stem}.csv"


@dataclass
class Dump:
    variable: str
    kind: str
    destination: str | None


@dataclass
class RunError:
    message: str
    srcref: object = None

    def __str__(self) -> str:
        return f"{self.srcref}: {self.message}" if self.srcref is not None else self.message


@dataclass
class RunReport:
    statements_executed: int = 0
    dumps: list[Dump] = field(default_factory=list)
    error: RunError | None = None
    env: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.error is None


class Runner:
    """State of one script execution; use :func:`run_file` or :func:`run_script`."""

    def __init__(
        self,
        script: Script,
        *,
        base_dir: Path,
        log_dir: Path,
        clock: Clock = system_clock,
        kinds: Mapping[str, type[Logger]] | None = None,
        echo: Callable[[str], None] | None = print,
        dump_on_error: bool = True,
    ):
        self.script = script
        self.base_dir = base_dir
        self.log_dir = log_dir
        self.clock = clock
        self.kinds = kinds
        self.echo = echo
        self.dump_on_error = dump_on_error
        self.env: dict[str, Frame | Value] = {}
        self.registry = LoggerRegistry()
        self.report = RunReport()

    def run(self) -> RunReport:
        for stmt in self.script.statements:
            try:
                self.step(stmt)
            except TraceError as exc:
                message = exc.message if isinstance(exc, ScriptError) else str(exc)
                srcref = getattr(exc, "srcref", None) or stmt.srcref
                self.report.error = RunError(message, srcref)
                log.debug("statement failed: %s", self.report.error)
                if self.dump_on_error:
                    self.dump_all()
                break
            self.report.statements_executed += 1
        else:
            self.dump_all()
        self.report.env = self.env
        return self.report

    def step(self, stmt: Statement) -> None:
        body = stmt.body
        snapshots = {v: self.env.get(v) for v in self.registry.variables()}
        if isinstance(body, StartLog):
            self.start_log(stmt, body)
        elif isinstance(body, (StopLog, DumpLog)):
            self.close_loggers(stmt, body)
        else:
            self.env = exec_statement(stmt, self.env, self.base_dir)
            stamp = self.clock()
            for variable, logger in self.registry.items():
                after = self.env.get(variable)
                if not isinstance(after, Frame):
                    raise ScriptError(f"tracked variable {variable!r} is no longer a frame", stmt.srcref)
                self.feed(logger, stmt, snapshots[variable], after, stamp)

    def start_log(self, stmt: Statement, body: StartLog) -> None:
        frame = self.env.get(body.variable)
        if not isinstance(frame, Frame):
            raise ScriptError(f"start_log: {body.variable!r} is not a frame", stmt.srcref)
        logger = make_logger(body.logger_kind, dict(body.logger_args), self.kinds)
        logger.bind(body.variable,
                    default_dump_target(body.variable, logger.kind, self.log_dir),
                    self.log_dir)
        self.registry.attach(body.variable, logger)
        self.feed(logger, stmt, frame, frame, self.clock())

    def feed(self, logger: Logger, stmt: Statement, before: Frame, after: Frame, stamp: datetime) -> None:
        meta = logger.next_meta(stmt.text, stmt.srcref, stamp)
        try:
            logger.add(meta, before, after)
        except LoggerError as exc:
            raise ScriptError(f"{logger.kind} logger: {exc}", stmt.srcref) from exc

    def close_loggers(self, stmt: Statement, body: StopLog | DumpLog) -> None:
        args = dict(body.dump_args)
        is_stop = isinstance(body, StopLog)
        flag = "dump" if is_stop else "stop"
        value = args.pop(flag, is_stop)
        if not isinstance(value, bool):
            raise ScriptError(f"{flag} must be TRUE or FALSE", stmt.srcref)
        dump, stop = (value, True) if is_stop else (True, value)
        loggers = self.registry.select(body.variable, body.logger_kind)
        if args and len(loggers) > 1:
            raise ScriptError(
                f"dump arguments are ambiguous: {body.variable!r} has {len(loggers)} loggers; "
                'select one with logger = "<kind>"',
                stmt.srcref,
            )
        for logger in loggers:
            self.finish(body.variable, logger, args, dump=dump, stop=stop)

    def finish(self, variable: str, logger: Logger, args: dict, *, dump: bool = True, stop: bool = True) -> None:
        if dump:
            where = dump_with_args(logger, args)
            self.report.dumps.append(Dump(variable, logger.kind, where))
            if where is not None and self.echo is not None:
                self.echo(f"Dumped a log at {where}")
        if stop:
            logger.stop()
            self.registry.detach(variable, logger.kind)

    def dump_all(self) -> None:
        for variable, logger in self.registry.items():
            try:
                self.finish(variable, logger, {})
            except TraceError as exc:
                log.warning("could not dump %s logger for %s: %s", logger.kind, variable, exc)
                if self.report.error is None:
                    self.report.error = RunError(f"dump failed: {exc}")


def run_script(
    script: Script,
    *,
    base_dir: str | Path = ".",
    log_dir: str | Path | None = None,
    clock: Clock = system_clock,
    kinds: Mapping[str, type[Logger]] | None = None,
    echo: Callable[[str], None] | None = print,
    dump_on_error: bool = True,
) -> RunReport:
    base = Path(base_dir)
    return Runner(
        script,
        base_dir=base,
        log_dir=Path(log_dir) if log_dir is not None else base,
        clock=clock,
        kinds=kinds,
        echo=echo,
        dump_on_error=dump_on_error,
    ).run()


def run_file(
    path: str | Path,
    *,
    log_dir: str | Path | None = None,
    clock: Clock = system_clock,
    kinds: Mapping[str, type[Logger]] | None = None,
    echo: Callable[[str], None] | None = print,
    dump_on_error: bool = True,
) -> RunReport:
    """Parse and run a script file in a fresh environment.

    Data paths in the script and the default log directory are relative to
    the script's own directory. Raises ``DslSyntaxError`` (nothing runs) if
    the file does not parse; runtime failures are reported in the result.
    """
    path = Path(path)
    source = path.read_text(encoding="utf-8")
    script = parse_script(source, path.name)
    return run_script(script, base_dir=path.parent, log_dir=log_dir, clock=clock,
                      kinds=kinds, echo=echo, dump_on_error=dump_on_error)
