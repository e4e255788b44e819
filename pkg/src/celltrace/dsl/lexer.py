from __future__ import annotations

from dataclasses import dataclass

from ..errors import DslSyntaxError

NAME, NUMBER, STRING, OP, NEWLINE, EOF = "name", "number", "string", "op", "newline", "eof"

# longest first so that "<=" wins over "<"
OPERATORS = ("<-", "<=", ">=", "==", "!=", "<", ">", "+", "-", "*", "/", "&", "|", "!",
             "(", ")", ",", "=", "$", ";")

ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", '"': '"', "'": "'"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    start: int
    end: int
    value: object = None
    quoted: bool = False  # name written in backticks

    def is_op(self, *ops: str) -> bool:
        return self.kind == OP and self.text in ops

    def is_name(self, *names: str) -> bool:
        return self.kind == NAME and not self.quoted and (not names or self.text in names)


def _is_name_start(source: str, i: int) -> bool:
    ch = source[i]
    if ch.isalpha() or ch == "_":
        return True
    return ch == "." and not (i + 1 < len(source) and source[i + 1].isdigit())


def _is_name_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_."


class Lexer:
    """Turns source text into tokens.

    Newlines separate statements only outside parentheses; inside a call
    they are plain whitespace, so long statements may span several lines.
    """

    def __init__(self, source: str, file: str | None = None):
        self.source = source
        self.file = file
        self.pos = 0
        self.line = 1
        self.line_start = 0
        self.depth = 0

    def error(self, message: str, line: int | None = None, col: int | None = None) -> DslSyntaxError:
        return DslSyntaxError(message, line or self.line, col or self.pos - self.line_start + 1, self.file)

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        while True:
            tok = self._next()
            if tok.kind == NEWLINE and (not out or out[-1].kind == NEWLINE):
                continue
            out.append(tok)
            if tok.kind == EOF:
                return out

    def _make(self, kind: str, start: int, line: int, col: int, value: object = None, quoted: bool = False) -> Token:
        return Token(kind, self.source[start:self.pos], line, col, start, self.pos, value, quoted)

    def _next(self) -> Token:
        src = self.source
        while True:
            if self.pos >= len(src):
                return Token(EOF, "", self.line, self.pos - self.line_start + 1, self.pos, self.pos)
            ch = src[self.pos]
            if ch == "#":
                while self.pos < len(src) and src[self.pos] != "\n":
                    self.pos += 1
            elif ch == "\n":
                start, line, col = self.pos, self.line, self.pos - self.line_start + 1
                self.pos += 1
                self.line += 1
                self.line_start = self.pos
                if self.depth == 0:
                    return self._make(NEWLINE, start, line, col)
            elif ch.isspace():
                self.pos += 1
            else:
                break

        start, line, col = self.pos, self.line, self.pos - self.line_start + 1
        if ch.isdigit() or (ch == "." and self.pos + 1 < len(src) and src[self.pos + 1].isdigit()):
            return self._number(start, line, col)
        if _is_name_start(src, self.pos):
            while self.pos < len(src) and _is_name_char(src[self.pos]):
                self.pos += 1
            tok = self._make(NAME, start, line, col)
            return Token(NAME, tok.text, line, col, start, self.pos, tok.text)
        if ch in "\"'":
            return self._string(start, line, col, ch)
        if ch == "`":
            end = src.find("`", self.pos + 1)
            nl = src.find("\n", self.pos + 1)
            if end < 0 or (0 <= nl < end) or end == self.pos + 1:
                raise self.error("unterminated or empty backtick name", line, col)
            self.pos = end + 1
            return self._make(NAME, start, line, col, src[start + 1:end], quoted=True)
        for op in OPERATORS:
            if src.startswith(op, self.pos):
                self.pos += len(op)
                if op == "(":
                    self.depth += 1
                elif op == ")":
                    self.depth = max(0, self.depth - 1)
                return self._make(OP, start, line, col, op)
        raise self.error(f"illegal character {ch!r}", line, col)

    def _number(self, start: int, line: int, col: int) -> Token:
        src = self.source
        while self.pos < len(src) and src[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(src) and src[self.pos] == ".":
            self.pos += 1
            while self.pos < len(src) and src[self.pos].isdigit():
                self.pos += 1
        if self.pos < len(src) and src[self.pos] in "eE":
            mark = self.pos
            self.pos += 1
            if self.pos < len(src) and src[self.pos] in "+-":
                self.pos += 1
            if self.pos < len(src) and src[self.pos].isdigit():
                while self.pos < len(src) and src[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark
        if self.pos < len(src) and _is_name_char(src[self.pos]):
            raise self.error(f"malformed number {src[start:self.pos + 1]!r}", line, col)
        text = src[start:self.pos]
        return self._make(NUMBER, start, line, col, float(text))

    def _string(self, start: int, line: int, col: int, quote: str) -> Token:
        src = self.source
        self.pos += 1
        buf = []
        while True:
            if self.pos >= len(src) or src[self.pos] == "\n":
                raise self.error("unterminated string", line, col)
            ch = src[self.pos]
            if ch == quote:
                self.pos += 1
                break
            if ch == "\\":
                nxt = src[self.pos + 1:self.pos + 2]
                if nxt not in ESCAPES:
                    raise self.error(f"unknown escape \\{nxt}")
                buf.append(ESCAPES[nxt])
                self.pos += 2
                continue
            buf.append(ch)
            self.pos += 1
        return self._make(STRING, start, line, col, "".join(buf))


def tokenize(source: str, file: str | None = None) -> list[Token]:
    return Lexer(source, file).tokens()
