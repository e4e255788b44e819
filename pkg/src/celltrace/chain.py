"""Fluent tracking: loggers ride along with a frame through a chain of steps.

    out = (track(spm, CellwiseLogger(key="id"))
           .then("transform(other.rev = ifelse(is_na(other.rev), 0, other.rev))")
           .then("transform(ratio = turnover / total.rev)")
           .stop())

Steps are either source text (``transform(...)``, ``head(n)``,
``identity()``) or a plain ``Frame -> Frame`` function with an optional
label. Unlike the script runner there is no initial self-record: the first
step is step 1.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Mapping, Union

from .dsl.ast import Call, Literal
from .dsl.interp import apply_transform
from .dsl.parser import parse_expr
from .errors import EvalError, LoggerError
from .frame import Frame, Value
from .loggers import Logger, dump_with_args
from .runner import Clock, default_dump_target, system_clock

Step = Union[str, Callable[[Frame], object]]

ANONYMOUS = "<anonymous step>"


def compile_step(source: str) -> Callable[[Frame], Frame]:
    """Turn ``transform(a = ...)``, ``head(n)`` or ``identity()`` into a function."""
    expr = parse_expr(source)
    if not isinstance(expr, Call):
        raise EvalError(f"not a pipeline step: {source!r}")
    if expr.func == "transform":
        if expr.args or not expr.kwargs:
            raise EvalError("transform step takes only column = expression arguments")
        return lambda frame: apply_transform(frame, expr.kwargs, {})
    if expr.func == "head":
        if len(expr.args) != 1 or expr.kwargs or not isinstance(expr.args[0], Literal) \
                or not isinstance(expr.args[0].value, float):
            raise EvalError("head step takes one number, e.g. head(10)")
        n = int(expr.args[0].value)
        return lambda frame: frame.head(n)
    if expr.func == "identity":
        if expr.args or expr.kwargs:
            raise EvalError("identity() takes no arguments")
        return lambda frame: frame
    raise EvalError(f"unknown pipeline step {expr.func!r}")


def _collapse(text: str) -> str:
    return " ".join(text.split())


class TrackedFrame:
    """A frame plus the loggers that travel with it (one per kind)."""

    def __init__(self, frame: Frame, loggers: Mapping[str, Logger] | None = None, *,
                 log_dir: str | Path = ".", clock: Clock = system_clock):
        if not isinstance(frame, Frame):
            raise TypeError(f"expected a Frame, got {type(frame).__name__}")
        self.frame = frame
        self.loggers: dict[str, Logger] = dict(loggers or {})
        self.log_dir = Path(log_dir)
        self.clock = clock

    def track(self, logger: Logger) -> TrackedFrame:
        if logger.kind in self.loggers:
            raise LoggerError(f"this frame is already tracked by a {logger.kind!r} logger")
        logger.bind(None, default_dump_target(None, logger.kind, self.log_dir), self.log_dir)
        return TrackedFrame(self.frame, {**self.loggers, logger.kind: logger},
                            log_dir=self.log_dir, clock=self.clock)

    def then(self, step: Step, label: str | None = None) -> TrackedFrame:
        if isinstance(step, str):
            fn = compile_step(step)
            text = label or _collapse(step)
        else:
            fn = step
            text = label or ANONYMOUS
        result = fn(self.frame)
        # a step handing back a tracked frame drops whatever loggers it carried;
        # ours are put back below
        if isinstance(result, TrackedFrame):
            result = result.frame
        if not isinstance(result, Frame):
            raise TypeError(f"step {text!r} returned {type(result).__name__}, not a Frame")
        stamp = self.clock()
        for logger in self.loggers.values():
            logger.add(logger.next_meta(text, None, stamp), self.frame, result)
        return TrackedFrame(result, self.loggers, log_dir=self.log_dir, clock=self.clock)

    def stop(self, echo: Callable[[str], None] | None = print, **dump_args: Value) -> Frame:
        """Dump and stop every logger; return the plain frame."""
        if not self.loggers:
            raise LoggerError("no loggers attached")
        if dump_args and len(self.loggers) > 1:
            raise LoggerError("dump arguments are ambiguous with several loggers attached")
        for logger in self.loggers.values():
            where = dump_with_args(logger, dump_args)
            if where is not None and echo is not None:
                echo(f"Dumped a log at {where}")
            logger.stop()
        return self.frame

    def __repr__(self) -> str:
        return f"TrackedFrame({self.frame!r}, loggers={list(self.loggers)})"


def track(frame: Frame | TrackedFrame, logger: Logger, *, log_dir: str | Path = ".",
          clock: Clock = system_clock) -> TrackedFrame:
    """Attach ``logger`` to ``frame``; nothing is logged until the first step."""
    if isinstance(frame, TrackedFrame):
        return frame.track(logger)
    return TrackedFrame(frame, log_dir=log_dir, clock=clock).track(logger)
