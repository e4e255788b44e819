"""Recursive-descent parser for pipeline scripts.

Operator precedence, loosest first::

    |          logical or
    &          logical and
    !          logical not (prefix)
    == != < <= > >=   comparison, non-associative
    + -        additive
    * /        multiplicative
    -          negation (prefix)
    $          column access
"""

from __future__ import annotations

from ..errors import DslSyntaxError
from ..frame import Value
from .ast import (
    Binary, Call, ColumnRef, DumpLog, Expr, IfElse, LetScalar, Literal, Name,
    ReadCsv, Script, SrcRef, Statement, StartLog, StopLog, Transform, Unary,
    WriteCsv,
)
from .lexer import EOF, NAME, NEWLINE, NUMBER, STRING, Token, tokenize

CONSTANTS: dict[str, Value] = {"TRUE": True, "FALSE": False, "NA": None}
COMPARISONS = ("==", "!=", "<", "<=", ">", ">=")


class Parser:
    def __init__(self, source: str, file: str = "<script>"):
        self.source = source
        self.file = file
        self.tokens = tokenize(source, file)
        self.i = 0

    # -- helpers -------------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != EOF:
            self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> DslSyntaxError:
        tok = tok or self.tok
        return DslSyntaxError(message, tok.line, tok.col, self.file)

    def describe(self, tok: Token) -> str:
        if tok.kind == EOF:
            return "end of input"
        if tok.kind == NEWLINE:
            return "end of line"
        return repr(tok.text)

    def expect_op(self, op: str) -> Token:
        if not self.tok.is_op(op):
            raise self.error(f"expected {op!r}, found {self.describe(self.tok)}")
        return self.advance()

    def expect_name(self, what: str = "a name") -> str:
        if self.tok.kind != NAME or (not self.tok.quoted and self.tok.text in CONSTANTS):
            raise self.error(f"expected {what}, found {self.describe(self.tok)}")
        return self.advance().value

    def expect_string(self, what: str = "a string") -> str:
        if self.tok.kind != STRING:
            raise self.error(f"expected {what}, found {self.describe(self.tok)}")
        return self.advance().value

    # -- script level --------------------------------------------------------

    def parse_script(self) -> Script:
        statements = []
        while self.tok.kind != EOF:
            if self.tok.kind == NEWLINE or self.tok.is_op(";"):
                self.advance()
                continue
            a = self.i
            body = self.statement()
            b = self.i - 1
            if not (self.tok.kind in (NEWLINE, EOF) or self.tok.is_op(";")):
                raise self.error(f"unexpected {self.describe(self.tok)} after statement")
            span = SrcRef(self.file, self.tokens[a].line, self.tokens[b].line)
            statements.append(Statement(body, span, self.text_between(a, b)))
        return Script(tuple(statements), self.file)

    def text_between(self, a: int, b: int) -> str:
        """Source of tokens a..b with inter-token gaps collapsed to one space."""
        parts = [self.tokens[a].text]
        for prev, cur in zip(self.tokens[a:b], self.tokens[a + 1:b + 1]):
            if cur.start > prev.end:
                parts.append(" ")
            parts.append(cur.text)
        return "".join(parts)

    def statement(self):
        tok = self.tok
        if tok.kind == NAME and self.peek().is_op("<-"):
            target = self.expect_name("an assignment target")
            self.advance()
            if self.tok.is_name("read_csv") and self.peek().is_op("("):
                self.advance()
                self.expect_op("(")
                path = self.expect_string("a file path string")
                self.expect_op(")")
                return ReadCsv(target, path)
            if self.tok.is_name("transform") and self.peek().is_op("("):
                self.advance()
                self.expect_op("(")
                source = self.expect_name("the frame to transform")
                assignments = []
                while self.tok.is_op(","):
                    self.advance()
                    assignments.append(self.assignment())
                self.expect_op(")")
                if not assignments:
                    raise self.error("transform needs at least one column assignment", tok)
                return Transform(target, source, tuple(assignments))
            return LetScalar(target, self.expression())
        if tok.is_name("write_csv") and self.peek().is_op("("):
            self.advance()
            self.expect_op("(")
            source = self.expect_name("the frame to write")
            self.expect_op(",")
            path = self.expect_string("a file path string")
            self.expect_op(")")
            return WriteCsv(source, path)
        if tok.is_name("start_log") and self.peek().is_op("("):
            return self.start_log()
        if tok.is_name("stop_log", "dump_log") and self.peek().is_op("("):
            self.advance()
            self.expect_op("(")
            variable = self.expect_name("the tracked variable")
            kind, args = None, []
            while self.tok.is_op(","):
                self.advance()
                name, value = self.literal_arg()
                if name == "logger":
                    if not isinstance(value, str):
                        raise self.error("logger= takes a logger kind as a string")
                    kind = value
                else:
                    args.append((name, value))
            self.expect_op(")")
            cls = StopLog if tok.text == "stop_log" else DumpLog
            return cls(variable, kind, tuple(args))
        raise self.error(f"unknown statement form starting with {self.describe(tok)}", tok)

    def start_log(self) -> StartLog:
        self.advance()
        self.expect_op("(")
        variable = self.expect_name("the variable to track")
        self.expect_op(",")
        if self.tok.is_name("logger") and self.peek().is_op("="):
            self.advance()
            self.advance()
        kind = self.expect_name("a logger kind")
        self.expect_op("(")
        args = []
        if not self.tok.is_op(")"):
            args.append(self.literal_arg())
            while self.tok.is_op(","):
                self.advance()
                args.append(self.literal_arg())
        self.expect_op(")")
        self.expect_op(")")
        names = [n for n, _ in args]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise self.error(f"repeated logger argument {sorted(dupes)[0]!r}")
        return StartLog(variable, kind, tuple(args))

    def literal_arg(self) -> tuple[str, Value]:
        name = self.expect_name("an argument name")
        self.expect_op("=")
        return name, self.literal()

    def literal(self) -> Value:
        tok = self.tok
        if tok.kind == STRING:
            return self.advance().value
        if tok.kind == NUMBER:
            return self.advance().value
        if tok.is_op("-") and self.peek().kind == NUMBER:
            self.advance()
            return -self.advance().value
        if tok.is_name(*CONSTANTS):
            return CONSTANTS[self.advance().text]
        raise self.error(f"expected a literal value, found {self.describe(tok)}")

    def assignment(self) -> tuple[str, Expr]:
        name = self.expect_name("a column name")
        self.expect_op("=")
        return name, self.expression()

    # -- expressions ---------------------------------------------------------

    def expression(self) -> Expr:
        return self.or_expr()

    def or_expr(self) -> Expr:
        left = self.and_expr()
        while self.tok.is_op("|"):
            self.advance()
            left = Binary("|", left, self.and_expr())
        return left

    def and_expr(self) -> Expr:
        left = self.not_expr()
        while self.tok.is_op("&"):
            self.advance()
            left = Binary("&", left, self.not_expr())
        return left

    def not_expr(self) -> Expr:
        if self.tok.is_op("!"):
            self.advance()
            return Unary("!", self.not_expr())
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.additive()
        if self.tok.is_op(*COMPARISONS):
            op = self.advance().text
            left = Binary(op, left, self.additive())
            if self.tok.is_op(*COMPARISONS):
                raise self.error("comparisons cannot be chained; use parentheses")
        return left

    def additive(self) -> Expr:
        left = self.multiplicative()
        while self.tok.is_op("+", "-"):
            op = self.advance().text
            left = Binary(op, left, self.multiplicative())
        return left

    def multiplicative(self) -> Expr:
        left = self.unary()
        while self.tok.is_op("*", "/"):
            op = self.advance().text
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.tok.is_op("-"):
            self.advance()
            return Unary("-", self.unary())
        if self.tok.is_op("+"):
            self.advance()
            return self.unary()
        return self.postfix()

    def postfix(self) -> Expr:
        expr = self.primary()
        if self.tok.is_op("$"):
            if not isinstance(expr, Name):
                raise self.error("'$' must follow a frame name")
            self.advance()
            expr = ColumnRef(expr.name, self.expect_name("a column name"))
        return expr

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == NUMBER or tok.kind == STRING:
            return Literal(self.advance().value)
        if tok.kind == NAME:
            if not tok.quoted and tok.text in CONSTANTS:
                self.advance()
                return Literal(CONSTANTS[tok.text])
            self.advance()
            if not tok.quoted and self.tok.is_op("("):
                return self.call(tok)
            return Name(tok.value)
        if tok.is_op("("):
            self.advance()
            expr = self.expression()
            self.expect_op(")")
            return expr
        raise self.error(f"expected an expression, found {self.describe(tok)}")

    def call(self, name_tok: Token) -> Expr:
        self.expect_op("(")
        args: list[Expr] = []
        kwargs: list[tuple[str, Expr]] = []
        if not self.tok.is_op(")"):
            while True:
                if self.tok.kind == NAME and self.peek().is_op("="):
                    key = self.advance().value
                    self.advance()
                    if any(k == key for k, _ in kwargs):
                        raise self.error(f"repeated argument {key!r}")
                    kwargs.append((key, self.expression()))
                else:
                    if kwargs:
                        raise self.error("positional argument after named argument")
                    args.append(self.expression())
                if not self.tok.is_op(","):
                    break
                self.advance()
        self.expect_op(")")
        if name_tok.text == "ifelse":
            if len(args) != 3 or kwargs:
                raise self.error("ifelse takes exactly three positional arguments", name_tok)
            return IfElse(*args)
        return Call(name_tok.text, tuple(args), tuple(kwargs))

    def finish(self) -> None:
        while self.tok.kind == NEWLINE:
            self.advance()
        if self.tok.kind != EOF:
            raise self.error(f"unexpected {self.describe(self.tok)}")


def parse_script(source: str, file_name: str = "<script>") -> Script:
    return Parser(source, file_name).parse_script()


def parse_expr(source: str) -> Expr:
    """Parse a single expression, e.g. for the expression logger."""
    parser = Parser(source, "<expr>")
    expr = parser.expression()
    parser.finish()
    return expr
