from __future__ import annotations

from pathlib import Path

from ..csvio import read_csv, write_csv
from ..errors import ScriptError, TraceError
from ..frame import Frame
from .ast import DIRECTIVES, LetScalar, ReadCsv, Statement, Transform, WriteCsv
from .evaluator import Env, eval_expr


def _frame(env: Env, name: str) -> Frame:
    value = env.get(name)
    if value is None and name not in env:
        raise ScriptError(f"unknown frame {name!r}")
    if not isinstance(value, Frame):
        raise ScriptError(f"{name!r} is not a frame")
    return value


def apply_transform(frame: Frame, assignments, env: Env) -> Frame:
    """Evaluate column assignments in order; each sees the ones before it."""
    for column, expr in assignments:
        result = eval_expr(expr, env, frame)
        if isinstance(result, tuple):
            if len(result) != frame.nrow:
                raise ScriptError(
                    f"column {column!r}: expression gives {len(result)} values for {frame.nrow} rows"
                )
            cells = result
        else:
            cells = (result,) * frame.nrow
        frame = frame.with_column(column, cells)
    return frame


def exec_statement(stmt: Statement, env: Env, base_dir: str | Path | None = None) -> Env:
    """Run one statement and return the updated bindings.

    Logging directives do nothing here; the runner intercepts them.
    Relative file paths resolve against ``base_dir`` (default: cwd).
    """
    body = stmt.body
    base = Path(base_dir) if base_dir is not None else Path()
    try:
        if isinstance(body, DIRECTIVES):
            return env
        out = dict(env)
        if isinstance(body, ReadCsv):
            out[body.target] = read_csv(base / body.path)
        elif isinstance(body, WriteCsv):
            write_csv(_frame(env, body.source), base / body.path)
        elif isinstance(body, Transform):
            out[body.target] = apply_transform(_frame(env, body.source), body.assignments, env)
        elif isinstance(body, LetScalar):
            result = eval_expr(body.expr, env)
            if isinstance(result, tuple):
                raise ScriptError(
                    f"{body.target!r} must be a single value, got a column of {len(result)} values"
                )
            out[body.target] = result
        else:
            raise ScriptError(f"unsupported statement {type(body).__name__}")
        return out
    except ScriptError as exc:
        if exc.srcref is None:
            raise ScriptError(exc.message, stmt.srcref) from exc
        raise
    except TraceError as exc:
        raise ScriptError(str(exc), stmt.srcref) from exc
