"""Exception hierarchy shared by every layer of celltrace."""

from __future__ import annotations


class TraceError(Exception):
    """Base class for all errors raised by celltrace."""


class FrameError(TraceError):
    """Malformed frame: bad column names, ragged columns, bad cell types."""


class CsvFormatError(FrameError):
    """A CSV file could not be turned into a frame."""


class KeyViolation(TraceError):
    """The key column is missing, has duplicates, or holds missing values."""


class ReplayError(TraceError):
    """A change list could not be applied to a base frame."""


class DslSyntaxError(TraceError):
    """Lexing or parsing failed."""

    def __init__(self, message: str, line: int, column: int | None = None, file: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.file = file
        where = f"{file}:" if file else "line "
        where += f"{line}" if column is None else f"{line}:{column}"
        super().__init__(f"{where}: {message}")


class EvalError(TraceError):
    """An expression could not be evaluated."""


class ScriptError(TraceError):
    """A statement failed at runtime; carries the statement's source reference."""

    def __init__(self, message: str, srcref=None):
        self.message = message
        self.srcref = srcref
        prefix = f"{srcref}: " if srcref is not None else ""
        super().__init__(prefix + message)


class LoggerError(TraceError):
    """Logger misuse: duplicate attachment, add after stop, bad dump arguments."""
