"""Syntax tree for pipeline scripts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..frame import Value


@dataclass(frozen=True)
class SrcRef:
    file: str
    first_line: int
    last_line: int

    def __post_init__(self) -> None:
        if not 1 <= self.first_line <= self.last_line:
            raise ValueError(f"bad line span {self.first_line}-{self.last_line}")

    def __str__(self) -> str:
        return f"{self.file}#{self.first_line}-{self.last_line}"


# -- expressions -------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    value: Value


@dataclass(frozen=True)
class Name:
    """A column of the frame in scope, or a scalar binding."""

    name: str


@dataclass(frozen=True)
class ColumnRef:
    """``frame$column``: a column of a named frame."""

    frame: str
    column: str


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or "!"
    operand: Expr


@dataclass(frozen=True)
class Binary:
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple[Expr, ...] = ()
    kwargs: tuple[tuple[str, Expr], ...] = ()


@dataclass(frozen=True)
class IfElse:
    cond: Expr
    yes: Expr
    no: Expr


Expr = Union[Literal, Name, ColumnRef, Unary, Binary, Call, IfElse]

BINARY_OPS = ("|", "&", "==", "!=", "<", "<=", ">", ">=", "+", "-", "*", "/")
UNARY_OPS = ("-", "!")


# -- statements --------------------------------------------------------------

@dataclass(frozen=True)
class ReadCsv:
    target: str
    path: str


@dataclass(frozen=True)
class WriteCsv:
    source: str
    path: str


@dataclass(frozen=True)
class Transform:
    target: str
    source: str
    assignments: tuple[tuple[str, Expr], ...]


@dataclass(frozen=True)
class LetScalar:
    target: str
    expr: Expr


@dataclass(frozen=True)
class StartLog:
    variable: str
    logger_kind: str
    logger_args: tuple[tuple[str, Value], ...] = ()


@dataclass(frozen=True)
class StopLog:
    variable: str
    logger_kind: str | None = None
    dump_args: tuple[tuple[str, Value], ...] = ()


@dataclass(frozen=True)
class DumpLog:
    variable: str
    logger_kind: str | None = None
    dump_args: tuple[tuple[str, Value], ...] = ()


StatementBody = Union[ReadCsv, WriteCsv, Transform, LetScalar, StartLog, StopLog, DumpLog]
DIRECTIVES = (StartLog, StopLog, DumpLog)


@dataclass(frozen=True)
class Statement:
    body: StatementBody
    srcref: SrcRef
    text: str  # the statement as written, whitespace collapsed, comments dropped

    @property
    def is_directive(self) -> bool:
        return isinstance(self.body, DIRECTIVES)


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]
    source_file: str

    def __len__(self) -> int:
        return len(self.statements)
