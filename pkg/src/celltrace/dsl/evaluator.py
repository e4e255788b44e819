"""Vectorized expression evaluation with missing-value propagation.

A result is either a scalar cell value or a ``tuple`` of cells (a column).
Scalars broadcast against columns; two columns must have equal length.
Any operation touching a missing value yields missing, except ``is_na`` and
the branch selection of ``ifelse``. Division by zero yields missing.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping, Union

from ..errors import EvalError
from ..frame import Frame, Value, normalize, type_name
from .ast import Binary, Call, ColumnRef, Expr, IfElse, Literal, Name, Unary

Vector = tuple
Result = Union[Value, Vector]
Env = dict  # name -> Frame | Value


def _broadcast(fn: Callable[..., Value], *args: Result) -> Result:
    n = None
    for a in args:
        if isinstance(a, tuple):
            if n is None:
                n = len(a)
            elif len(a) != n:
                raise EvalError(f"length mismatch: {n} vs {len(a)}")
    if n is None:
        return fn(*args)
    return tuple(fn(*(a[i] if isinstance(a, tuple) else a for a in args)) for i in range(n))


def _is_number(v: Value) -> bool:
    return isinstance(v, float)


def _need(v: Value, check: Callable[[Value], bool], wanted: str, where: str) -> None:
    if not check(v):
        raise EvalError(f"{where} needs {wanted}, got {type_name(v)} {v!r}")


def _arith(op: str) -> Callable[[Value, Value], Value]:
    def apply(a: Value, b: Value) -> Value:
        if a is None or b is None:
            for v in (a, b):
                if v is not None:
                    _need(v, _is_number, "numbers", f"'{op}'")
            return None
        _need(a, _is_number, "numbers", f"'{op}'")
        _need(b, _is_number, "numbers", f"'{op}'")
        if op == "+":
            return normalize(a + b)
        if op == "-":
            return normalize(a - b)
        if op == "*":
            return normalize(a * b)
        if b == 0:
            return None
        return normalize(a / b)
    return apply


def _compare(op: str) -> Callable[[Value, Value], Value]:
    def apply(a: Value, b: Value) -> Value:
        if a is None or b is None:
            return None
        if type(a) is not type(b):
            raise EvalError(f"cannot compare {type_name(a)} with {type_name(b)} using '{op}'")
        if op == "==":
            return a == b
        if op == "!=":
            return a != b
        if isinstance(a, bool):
            raise EvalError(f"'{op}' is not defined for booleans")
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        return a >= b
    return apply


def _logical(op: str) -> Callable[[Value, Value], Value]:
    def apply(a: Value, b: Value) -> Value:
        for v in (a, b):
            if v is not None:
                _need(v, lambda x: isinstance(x, bool), "booleans", f"'{op}'")
        if a is None or b is None:
            return None
        return (a and b) if op == "&" else (a or b)
    return apply


BINARY = {op: _arith(op) for op in "+-*/"}
BINARY.update({op: _compare(op) for op in ("==", "!=", "<", "<=", ">", ">=")})
BINARY.update({op: _logical(op) for op in "&|"})


def _negate(v: Value) -> Value:
    if v is None:
        return None
    _need(v, _is_number, "a number", "unary '-'")
    return normalize(-v)


def _not(v: Value) -> Value:
    if v is None:
        return None
    _need(v, lambda x: isinstance(x, bool), "a boolean", "'!'")
    return not v


def _numeric_map(name: str, fn: Callable[[float], float]) -> Callable[[Value], Value]:
    def apply(v: Value) -> Value:
        if v is None:
            return None
        _need(v, _is_number, "numbers", f"{name}()")
        try:
            return normalize(fn(v))
        except ValueError:
            return None
    return apply


ELEMENTWISE = {
    "abs": _numeric_map("abs", abs),
    "sqrt": _numeric_map("sqrt", math.sqrt),
    "is_na": lambda v: v is None,
}


def _aggregate(name: str, values: list[float]) -> Value:
    if name == "sum":
        return normalize(math.fsum(values))
    if not values:
        return None
    if name == "mean":
        return normalize(math.fsum(values) / len(values))
    if name == "min":
        return min(values)
    return max(values)


AGGREGATES = ("mean", "sum", "min", "max")


def _as_flag(value: Result, what: str) -> bool:
    if not isinstance(value, bool):
        raise EvalError(f"{what} must be TRUE or FALSE, got {value!r}")
    return value


def _call(expr: Call, env: Mapping, scope: Frame | None) -> Result:
    name = expr.func
    if name in ELEMENTWISE:
        if len(expr.args) != 1 or expr.kwargs:
            raise EvalError(f"{name}() takes exactly one argument")
        return _broadcast(ELEMENTWISE[name], eval_expr(expr.args[0], env, scope))
    if name in AGGREGATES:
        if len(expr.args) != 1:
            raise EvalError(f"{name}() takes exactly one positional argument")
        na_rm = False
        for key, arg in expr.kwargs:
            if key != "na_rm":
                raise EvalError(f"{name}() got an unexpected argument {key!r}")
            na_rm = _as_flag(eval_expr(arg, env, scope), "na_rm")
        x = eval_expr(expr.args[0], env, scope)
        cells = x if isinstance(x, tuple) else (x,)
        values = []
        for v in cells:
            if v is None:
                if not na_rm:
                    return None
                continue
            _need(v, _is_number, "numbers", f"{name}()")
            values.append(v)
        return _aggregate(name, values)
    raise EvalError(f"unknown function {name!r}")


def _ifelse(cond: Value, yes: Value, no: Value) -> Value:
    if cond is None:
        return None
    _need(cond, lambda x: isinstance(x, bool), "a boolean condition", "ifelse()")
    return yes if cond else no


def eval_expr(expr: Expr, env: Mapping, frame_scope: Frame | None = None) -> Result:
    """Evaluate ``expr``; bare names look in ``frame_scope`` first, then ``env``."""
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, Name):
        if frame_scope is not None and expr.name in frame_scope:
            return frame_scope[expr.name]
        if expr.name in env:
            value = env[expr.name]
            if isinstance(value, Frame):
                raise EvalError(f"{expr.name!r} is a frame; refer to its columns as {expr.name}$column")
            return value
        raise EvalError(f"unknown name {expr.name!r}")
    if isinstance(expr, ColumnRef):
        frame = env.get(expr.frame)
        if not isinstance(frame, Frame):
            raise EvalError(f"{expr.frame!r} is not a frame")
        if expr.column not in frame:
            raise EvalError(f"frame {expr.frame!r} has no column {expr.column!r}")
        return frame[expr.column]
    if isinstance(expr, Unary):
        fn = _negate if expr.op == "-" else _not
        return _broadcast(fn, eval_expr(expr.operand, env, frame_scope))
    if isinstance(expr, Binary):
        left = eval_expr(expr.left, env, frame_scope)
        right = eval_expr(expr.right, env, frame_scope)
        return _broadcast(BINARY[expr.op], left, right)
    if isinstance(expr, IfElse):
        return _broadcast(
            _ifelse,
            eval_expr(expr.cond, env, frame_scope),
            eval_expr(expr.yes, env, frame_scope),
            eval_expr(expr.no, env, frame_scope),
        )
    if isinstance(expr, Call):
        return _call(expr, env, frame_scope)
    raise EvalError(f"cannot evaluate {expr!r}")
