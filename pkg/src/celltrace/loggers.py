"""Loggers observe a tracked frame step by step.

Every logger follows the same lifecycle:

``add(meta, input, output)``
    called once per observed step with the frame before and after it;
``dump(**args)``
    exports what was collected and returns the destination (or ``None``
    when nothing was written to disk);
``stop()``
    marks the logger finished; subclasses may override ``on_stop`` to
    release resources. It runs at most once, after the final dump.

Custom loggers subclass :class:`Logger` and implement ``record`` and
``dump``.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import ClassVar, Iterator, Mapping

from .csvio import write_csv
from .diff import KeySpec, cell_diff
from .dsl.ast import SrcRef
from .dsl.evaluator import eval_expr
from .dsl.parser import parse_expr
from .errors import DslSyntaxError, LoggerError, TraceError
from .frame import Column, Frame, Value, frames_identical

META_COLUMNS = ("step", "time", "srcref", "expression")


def format_timestamp(ts: datetime) -> str:
    if ts.tzinfo is None:
        ts = ts.astimezone()
    return f"{ts:%Y-%m-%d %H:%M:%S} {ts.tzname()}"


@dataclass(frozen=True)
class LogMeta:
    expr_source: str
    srcref: SrcRef | None
    step: int
    timestamp: datetime

    def __post_init__(self) -> None:
        if self.step < 1:
            raise ValueError("step numbers start at 1")

    def columns(self) -> tuple[Value, ...]:
        srcref = str(self.srcref) if self.srcref is not None else None
        return (float(self.step), format_timestamp(self.timestamp), srcref, self.expr_source)


class Logger:
    kind: ClassVar[str] = "logger"

    def __init__(self) -> None:
        self.step_counter = 0
        self.stopped = False
        self.label: str | None = None
        self.target: Path | None = None
        self.base_dir: Path = Path()

    def bind(self, label: str | None, target: Path, base_dir: Path | None = None) -> None:
        """Tell the logger what it tracks and where it dumps by default."""
        self.label = label
        self.target = target
        if base_dir is not None:
            self.base_dir = base_dir

    def resolve(self, path: str | Path) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.base_dir / path

    def next_meta(self, expr_source: str, srcref: SrcRef | None, timestamp: datetime) -> LogMeta:
        return LogMeta(expr_source, srcref, self.step_counter + 1, timestamp)

    def add(self, meta: LogMeta, input: Frame, output: Frame) -> None:
        if self.stopped:
            raise LoggerError(f"{self.kind} logger already stopped")
        self.step_counter += 1
        self.record(meta, input, output)

    def record(self, meta: LogMeta, input: Frame, output: Frame) -> None:
        raise NotImplementedError

    def dump(self, **args) -> str | None:
        raise NotImplementedError

    def stop(self) -> None:
        if self.stopped:
            return
        self.stopped = True
        self.on_stop()

    def on_stop(self) -> None:
        """Cleanup hook, called once when the logger stops."""

    def close(self, **dump_args) -> str | None:
        """Dump, then stop."""
        where = self.dump(**dump_args)
        self.stop()
        return where


class TableLogger(Logger):
    """Collects rows and dumps them as a CSV file."""

    def __init__(self) -> None:
        super().__init__()
        self.records: list[tuple[Value, ...]] = []

    @property
    def column_names(self) -> tuple[str, ...]:
        raise NotImplementedError

    def to_frame(self) -> Frame:
        names = self.column_names
        return Frame(tuple(
            Column(name, tuple(r[j] for r in self.records)) for j, name in enumerate(names)
        ))

    def dump(self, file: str | Path | None = None) -> str:
        if file is not None:
            path = self.resolve(file)
        elif self.target is not None:
            path = self.target
        else:
            path = self.resolve(f"{self.kind}.csv")
        write_csv(self.to_frame(), path)
        return str(path)


class SimpleLogger(TableLogger):
    """Records, per step, whether the frame changed at all."""

    kind = "simple"

    @property
    def column_names(self) -> tuple[str, ...]:
        return META_COLUMNS + ("changed",)

    def record(self, meta: LogMeta, input: Frame, output: Frame) -> None:
        self.records.append(meta.columns() + (not frames_identical(input, output),))


class CellwiseLogger(TableLogger):
    """Records every changed cell as (key, variable, old, new)."""

    kind = "cellwise"

    def __init__(self, key: str) -> None:
        super().__init__()
        if not isinstance(key, str) or not key:
            raise LoggerError("cellwise logger needs key = \"<column name>\"")
        self.key = KeySpec(key)

    @property
    def column_names(self) -> tuple[str, ...]:
        return META_COLUMNS + ("key", "variable", "old", "new")

    def record(self, meta: LogMeta, input: Frame, output: Frame) -> None:
        head = meta.columns()
        for ch in cell_diff(input, output, self.key):
            self.records.append(head + (ch.key, ch.variable, ch.old, ch.new))


class ExpressionLogger(TableLogger):
    """Evaluates named summary expressions against the frame after each step.

    Expressions are given as source text, e.g.
    ``ExpressionLogger(mean_staff="mean(staff, na_rm = TRUE)")``.
    """

    kind = "expression"

    def __init__(self, **expressions: str) -> None:
        super().__init__()
        if not expressions:
            raise LoggerError("expression logger needs at least one name = \"expression\"")
        self.sources: dict[str, str] = {}
        self.exprs = {}
        for name, source in expressions.items():
            if name in META_COLUMNS:
                raise LoggerError(f"expression name {name!r} clashes with a log column")
            if not isinstance(source, str):
                raise LoggerError(f"expression {name!r} must be given as a string")
            try:
                self.exprs[name] = parse_expr(source)
            except DslSyntaxError as exc:
                raise LoggerError(f"expression {name} = {source!r}: {exc.message}") from exc
            self.sources[name] = source

    @property
    def column_names(self) -> tuple[str, ...]:
        return META_COLUMNS + tuple(self.exprs)

    def record(self, meta: LogMeta, input: Frame, output: Frame) -> None:
        values = []
        for name, expr in self.exprs.items():
            try:
                value = eval_expr(expr, {}, output)
            except TraceError as exc:
                raise LoggerError(f"expression {name} = {self.sources[name]!r}: {exc}") from exc
            if isinstance(value, tuple):
                raise LoggerError(
                    f"expression {name} = {self.sources[name]!r} must give one value, got {len(value)}"
                )
            values.append(value)
        self.records.append(meta.columns() + tuple(values))


class FileDumpLogger(Logger):
    """Writes the frame to a numbered CSV file after every step."""

    kind = "filedump"

    def __init__(self, dir: str | None = None) -> None:
        super().__init__()
        self.dir = dir
        self.files: list[Path] = []

    @property
    def directory(self) -> Path:
        if self.dir is not None:
            return self.resolve(self.dir)
        if self.target is not None:
            return self.target
        return self.resolve(self.kind)

    def record(self, meta: LogMeta, input: Frame, output: Frame) -> None:
        directory = self.directory
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{self.label or 'step'}_{meta.step:03d}.csv"
        write_csv(output, path)
        self.files.append(path)

    def dump(self) -> str:
        directory = self.directory
        directory.mkdir(parents=True, exist_ok=True)
        return str(directory)


class TrivialLogger(Logger):
    """Remembers only whether the data changed at any point."""

    kind = "trivial"

    def __init__(self) -> None:
        super().__init__()
        self.changed = False

    def record(self, meta: LogMeta, input: Frame, output: Frame) -> None:
        self.changed = self.changed or not frames_identical(input, output)

    def dump(self) -> None:
        print(f"The data has {'' if self.changed else 'not '}changed")
        return None


BUILTIN_KINDS: dict[str, type[Logger]] = {
    cls.kind: cls
    for cls in (SimpleLogger, CellwiseLogger, ExpressionLogger, FileDumpLogger, TrivialLogger)
}


def make_logger(kind: str, args: Mapping[str, Value] | None = None,
                kinds: Mapping[str, type[Logger]] | None = None) -> Logger:
    table = {**BUILTIN_KINDS, **(kinds or {})}
    if kind not in table:
        raise LoggerError(f"unknown logger kind {kind!r}; available: {', '.join(sorted(table))}")
    cls = table[kind]
    try:
        inspect.signature(cls).bind(**dict(args or {}))
    except TypeError as exc:
        raise LoggerError(f"{kind}{signature_text(cls)}: {exc}") from exc
    logger = cls(**dict(args or {}))
    if logger.kind != kind:
        logger.kind = kind
    return logger


def signature_text(cls: type[Logger]) -> str:
    parts = []
    for p in inspect.signature(cls).parameters.values():
        text = p.name
        if p.kind is p.VAR_KEYWORD:
            text = "**" + text
        if p.annotation is not p.empty:
            text += f": {p.annotation if isinstance(p.annotation, str) else p.annotation.__name__}"
        if p.default is not p.empty:
            text += f" = {p.default!r}"
        parts.append(text)
    return f"({', '.join(parts)})"


def describe_kinds(kinds: Mapping[str, type[Logger]] | None = None) -> list[tuple[str, str, str]]:
    """(kind, constructor signature, one-line summary) for every known kind."""
    table = {**BUILTIN_KINDS, **(kinds or {})}
    out = []
    for name, cls in table.items():
        doc = (inspect.getdoc(cls) or "").splitlines()
        out.append((name, signature_text(cls), doc[0] if doc else ""))
    return out


def dump_with_args(logger: Logger, args: Mapping[str, Value]) -> str | None:
    """Call ``logger.dump`` and turn argument mismatches into LoggerError."""
    try:
        inspect.signature(logger.dump).bind(**dict(args))
    except TypeError as exc:
        raise LoggerError(f"{logger.kind} logger dump: {exc}") from exc
    return logger.dump(**dict(args))


class LoggerRegistry:
    """At most one logger per (variable, kind), kept in attachment order."""

    def __init__(self) -> None:
        self._entries: dict[tuple[str, str], Logger] = {}

    def attach(self, variable: str, logger: Logger) -> None:
        slot = (variable, logger.kind)
        if slot in self._entries:
            raise LoggerError(
                f"variable {variable!r} is already tracked by a {logger.kind!r} logger"
            )
        self._entries[slot] = logger

    def detach(self, variable: str, kind: str) -> Logger:
        try:
            return self._entries.pop((variable, kind))
        except KeyError:
            raise LoggerError(f"no {kind!r} logger attached to {variable!r}") from None

    def select(self, variable: str, kind: str | None = None) -> list[Logger]:
        found = [lg for (v, k), lg in self._entries.items() if v == variable and kind in (None, k)]
        if not found:
            what = f"{kind!r} logger" if kind else "loggers"
            raise LoggerError(f"no {what} attached to {variable!r}")
        return found

    def variables(self) -> list[str]:
        return list(dict.fromkeys(v for v, _ in self._entries))

    def items(self) -> list[tuple[str, Logger]]:
        return [(v, lg) for (v, _), lg in self._entries.items()]

    def __contains__(self, slot: object) -> bool:
        return slot in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(list(self._entries))
