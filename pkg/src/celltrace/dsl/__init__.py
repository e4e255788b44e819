"""The pipeline scripting language: lexer, parser, evaluator, interpreter."""

from .ast import (
    Binary, Call, ColumnRef, DumpLog, Expr, IfElse, LetScalar, Literal, Name,
    ReadCsv, Script, SrcRef, Statement, StartLog, StopLog, Transform, Unary,
    WriteCsv,
)
from .evaluator import Env, eval_expr
from .grammar import GRAMMAR
from .interp import apply_transform, exec_statement
from .lexer import Token, tokenize
from .parser import parse_expr, parse_script
from .printer import format_expr, format_script, format_statement

__all__ = [
    "Binary", "Call", "ColumnRef", "DumpLog", "Env", "Expr", "GRAMMAR", "IfElse",
    "LetScalar", "Literal", "Name", "ReadCsv", "Script", "SrcRef", "Statement",
    "StartLog", "StopLog", "Token", "Transform", "Unary", "WriteCsv",
    "apply_transform", "eval_expr", "exec_statement", "format_expr",
    "format_script", "format_statement", "parse_expr", "parse_script", "tokenize",
]
