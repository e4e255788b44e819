"""Trace how tabular data changes while a pipeline script runs."""

from .chain import TrackedFrame, track
from .csvio import format_csv, parse_csv, read_csv, write_csv
from .diff import CellChange, KeySpec, apply_changes, cell_diff
from .dsl import eval_expr, exec_statement, parse_expr, parse_script, tokenize
from .errors import (
    CsvFormatError, DslSyntaxError, EvalError, FrameError, KeyViolation,
    LoggerError, ReplayError, ScriptError, TraceError,
)
from .frame import Column, Frame, Value, frames_identical, values_identical
from .loggers import (
    CellwiseLogger, ExpressionLogger, FileDumpLogger, LoggerRegistry, LogMeta,
    Logger, SimpleLogger, TrivialLogger, make_logger,
)
from .runner import RunReport, default_dump_target, run_file, run_script

__version__ = "0.1.0"

__all__ = [
    "CellChange", "CellwiseLogger", "Column", "CsvFormatError", "DslSyntaxError",
    "EvalError", "ExpressionLogger", "FileDumpLogger", "Frame", "FrameError",
    "KeySpec", "KeyViolation", "LogMeta", "Logger", "LoggerError", "LoggerRegistry",
    "ReplayError", "RunReport", "ScriptError", "SimpleLogger", "TraceError",
    "TrackedFrame", "TrivialLogger", "Value", "apply_changes", "cell_diff",
    "default_dump_target", "eval_expr", "exec_statement", "format_csv",
    "frames_identical", "make_logger", "parse_csv", "parse_expr", "parse_script",
    "read_csv", "run_file", "run_script", "tokenize", "track", "values_identical",
    "write_csv",
]
