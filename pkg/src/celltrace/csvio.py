"""CSV reading and writing for frames.

Type inference is per column and only looks at *unquoted* fields: a column
whose unquoted fields all parse as numbers becomes numeric, all ``TRUE`` /
``FALSE`` becomes logical, anything else is text. ``NA`` and empty unquoted
fields are missing. A quoted field is always text, which lets the writer
protect text such as ``"12"`` or ``"NA"`` from being re-read as something
else. The stdlib ``csv`` module does not report quoting, hence the small
field splitter below.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterator, Sequence

from .errors import CsvFormatError
from .frame import Column, Frame, Value

NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
LOGICALS = {"TRUE": True, "FALSE": False}
NA_TEXT = "NA"

Field = tuple[str, bool]  # (text, was_quoted)


def format_number(x: float) -> str:
    """Shortest decimal text that parses back to exactly ``x``."""
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_value(v: Value) -> str:
    """Unquoted rendering of a single cell, as used in logs and messages."""
    if v is None:
        return NA_TEXT
    if isinstance(v, bool):
        return "TRUE" if v else "FALSE"
    if isinstance(v, float):
        return format_number(v)
    return v


# -- reading -----------------------------------------------------------------

def _split_records(text: str) -> Iterator[tuple[int, list[Field]]]:
    """Yield (line_number, fields) per record, honoring RFC 4180 quoting."""
    i, n, line = 0, len(text), 1
    while i < n:
        start_line = line
        fields: list[Field] = []
        while True:
            if i < n and text[i] == '"':
                i += 1
                buf = []
                while True:
                    if i >= n:
                        raise CsvFormatError(f"line {start_line}: unterminated quoted field")
                    ch = text[i]
                    if ch == '"':
                        if i + 1 < n and text[i + 1] == '"':
                            buf.append('"')
                            i += 2
                            continue
                        i += 1
                        break
                    if ch == "\n":
                        line += 1
                    buf.append(ch)
                    i += 1
                fields.append(("".join(buf), True))
                if i < n and text[i] not in ",\r\n":
                    raise CsvFormatError(f"line {line}: unexpected text after closing quote")
            else:
                j = i
                while j < n and text[j] not in ",\r\n":
                    if text[j] == '"':
                        raise CsvFormatError(f"line {line}: stray quote in unquoted field")
                    j += 1
                fields.append((text[i:j], False))
                i = j
            if i < n and text[i] == ",":
                i += 1
                continue
            break
        if i < n and text[i] == "\r":
            i += 1
        if i < n and text[i] == "\n":
            i += 1
            line += 1
        yield start_line, fields


def _infer(tokens: Sequence[str]) -> str | None:
    if not tokens:
        return None
    if all(NUMBER_RE.fullmatch(t) for t in tokens):
        return "number"
    if all(t in LOGICALS for t in tokens):
        return "logical"
    return "text"


def _convert_column(fields: Sequence[Field]) -> tuple[Value, ...]:
    bare = [t for t, quoted in fields if not quoted and t not in ("", NA_TEXT)]
    kind = _infer(bare)
    out: list[Value] = []
    for text, quoted in fields:
        if quoted:
            out.append(text)
        elif text in ("", NA_TEXT):
            out.append(None)
        elif kind == "number":
            out.append(float(text))
        elif kind == "logical":
            out.append(LOGICALS[text])
        else:
            out.append(text)
    return tuple(out)


def parse_csv(text: str) -> Frame:
    if text.startswith("\ufeff"):
        text = text[1:]
    records = list(_split_records(text))
    if not records:
        raise CsvFormatError("empty input: a header line is required")
    _, header = records[0]
    names = [t for t, _ in header]
    seen: set[str] = set()
    for name in names:
        if not name:
            raise CsvFormatError("empty column name in header")
        if name in seen:
            raise CsvFormatError(f"duplicate column name {name!r} in header")
        seen.add(name)
    # blank lines carry no cells; missing values are always written as NA
    body = [(line, f) for line, f in records[1:] if f != [("", False)]]
    for line, fields in body:
        if len(fields) != len(names):
            raise CsvFormatError(f"line {line}: expected {len(names)} fields, found {len(fields)}")
    columns = tuple(
        Column(name, _convert_column([fields[j] for _, fields in body]))
        for j, name in enumerate(names)
    )
    return Frame(columns)


def read_csv(path: str | Path) -> Frame:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise CsvFormatError(f"{path} is not valid UTF-8") from exc
    try:
        return parse_csv(text)
    except CsvFormatError as exc:
        raise CsvFormatError(f"{path}: {exc}") from exc


# -- writing -----------------------------------------------------------------

def _needs_rfc_quoting(text: str) -> bool:
    return any(ch in text for ch in ',"\r\n')


def _quote(text: str) -> str:
    return '"' + text.replace('"', '""') + '"'


def _looks_typed(text: str) -> bool:
    return bool(NUMBER_RE.fullmatch(text)) or text in LOGICALS


def _render_column(col: Column) -> list[str]:
    # which type would a reader infer from the fields we are free to leave bare?
    tokens = []
    for v in col.cells:
        if v is None:
            continue
        if isinstance(v, str):
            if v in ("", NA_TEXT) or _needs_rfc_quoting(v):
                continue
            tokens.append(v)
        else:
            tokens.append(format_value(v))
    protect_typed_text = _infer(tokens) != "text"

    out = []
    for v in col.cells:
        if isinstance(v, str):
            if (
                v in ("", NA_TEXT)
                or _needs_rfc_quoting(v)
                or (protect_typed_text and _looks_typed(v))
            ):
                out.append(_quote(v))
            else:
                out.append(v)
        else:
            out.append(format_value(v))
    return out


def _header_field(name: str) -> str:
    return _quote(name) if _needs_rfc_quoting(name) else name


def format_csv(frame: Frame) -> str:
    lines = [",".join(_header_field(n) for n in frame.names)]
    rendered = [_render_column(c) for c in frame.columns]
    for i in range(frame.nrow):
        lines.append(",".join(col[i] for col in rendered))
    return "\n".join(lines) + "\n"


def write_csv(frame: Frame, path: str | Path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(frame))
    except OSError as exc:
        raise CsvFormatError(f"cannot write {path}: {exc.strerror or exc}") from exc
