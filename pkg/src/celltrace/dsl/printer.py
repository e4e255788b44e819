"""Render syntax trees back to source, parenthesizing only where needed."""

from __future__ import annotations

import re

from ..csvio import format_number
from ..frame import Value
from .ast import (
    Binary, Call, ColumnRef, DumpLog, Expr, IfElse, LetScalar, Literal, Name,
    ReadCsv, Script, Statement, StartLog, StopLog, Transform, Unary, WriteCsv,
)

_PLAIN_NAME = re.compile(r"(?:[A-Za-z_]|\.(?![0-9]))[A-Za-z0-9_.]*")
_RESERVED = {"TRUE", "FALSE", "NA"}

PRECEDENCE = {
    "|": 1, "&": 2, "!": 3,
    "==": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5, "*": 6, "/": 6,
}
NEG = 7
ATOM = 8


def format_name(name: str) -> str:
    if _PLAIN_NAME.fullmatch(name) and name not in _RESERVED:
        return name
    return f"`{name}`"


def format_string(text: str) -> str:
    escaped = (text.replace("\\", "\\\\").replace('"', '\\"')
               .replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r"))
    return f'"{escaped}"'


def format_literal(value: Value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, float):
        return format_number(value)
    return format_string(value)


def _prec(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return PRECEDENCE[expr.op]
    if isinstance(expr, Unary):
        return PRECEDENCE["!"] if expr.op == "!" else NEG
    if isinstance(expr, Literal) and isinstance(expr.value, float) and expr.value < 0:
        return NEG
    return ATOM


def _wrap(expr: Expr, needs_parens: bool) -> str:
    text = format_expr(expr)
    return f"({text})" if needs_parens else text


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Literal):
        return format_literal(expr.value)
    if isinstance(expr, Name):
        return format_name(expr.name)
    if isinstance(expr, ColumnRef):
        return f"{format_name(expr.frame)}${format_name(expr.column)}"
    if isinstance(expr, Unary):
        mine = _prec(expr)
        return expr.op + _wrap(expr.operand, _prec(expr.operand) < mine)
    if isinstance(expr, Binary):
        mine = PRECEDENCE[expr.op]
        # comparisons do not chain, so an equal-precedence left child needs parens too
        left_strict = mine == 4
        left = _wrap(expr.left, _prec(expr.left) < mine or (left_strict and _prec(expr.left) == mine))
        right = _wrap(expr.right, _prec(expr.right) <= mine)
        return f"{left} {expr.op} {right}"
    if isinstance(expr, IfElse):
        return f"ifelse({format_expr(expr.cond)}, {format_expr(expr.yes)}, {format_expr(expr.no)})"
    if isinstance(expr, Call):
        parts = [format_expr(a) for a in expr.args]
        parts += [f"{format_name(k)} = {format_expr(v)}" for k, v in expr.kwargs]
        return f"{expr.func}({', '.join(parts)})"
    raise TypeError(f"not an expression: {expr!r}")


def _literal_args(args) -> list[str]:
    return [f"{format_name(k)} = {format_literal(v)}" for k, v in args]


def format_statement(stmt: Statement | object) -> str:
    body = stmt.body if isinstance(stmt, Statement) else stmt
    if isinstance(body, ReadCsv):
        return f"{format_name(body.target)} <- read_csv({format_string(body.path)})"
    if isinstance(body, WriteCsv):
        return f"write_csv({format_name(body.source)}, {format_string(body.path)})"
    if isinstance(body, Transform):
        assigns = ", ".join(f"{format_name(c)} = {format_expr(e)}" for c, e in body.assignments)
        return f"{format_name(body.target)} <- transform({format_name(body.source)}, {assigns})"
    if isinstance(body, LetScalar):
        return f"{format_name(body.target)} <- {format_expr(body.expr)}"
    if isinstance(body, StartLog):
        args = ", ".join(_literal_args(body.logger_args))
        return f"start_log({format_name(body.variable)}, {format_name(body.logger_kind)}({args}))"
    if isinstance(body, (StopLog, DumpLog)):
        func = "stop_log" if isinstance(body, StopLog) else "dump_log"
        parts = [format_name(body.variable)]
        if body.logger_kind is not None:
            parts.append(f"logger = {format_string(body.logger_kind)}")
        parts += _literal_args(body.dump_args)
        return f"{func}({', '.join(parts)})"
    raise TypeError(f"not a statement: {body!r}")


def format_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)
