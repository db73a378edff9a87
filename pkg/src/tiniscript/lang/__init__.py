"""TiniScript language front end: tokens, AST, parser, printer, static checks."""

from .analysis import validate
from .ast import (
    Binary,
    BinaryOp,
    BoolLit,
    Expr,
    Frame,
    If,
    Loop,
    Move,
    MoveDir,
    Number,
    Program,
    Round,
    SensorName,
    SensorRead,
    SensorRef,
    SetupMode,
    StartMarker,
    Statement,
    Stop,
    Unary,
    UnaryOp,
    Wait,
)
from .diagnostics import (
    NO_SPAN,
    Diagnostic,
    ParseError,
    Severity,
    SourceSpan,
    wire_position,
)
from .parser import parse_expr, parse_frame, parse_instructions
from .printer import format_expr, format_frame, format_program, format_statement
from .tokens import Token, TokenType, tokenize

__all__ = [
    "Binary",
    "BinaryOp",
    "BoolLit",
    "Diagnostic",
    "Expr",
    "Frame",
    "If",
    "Loop",
    "Move",
    "MoveDir",
    "NO_SPAN",
    "Number",
    "ParseError",
    "Program",
    "Round",
    "SensorName",
    "SensorRead",
    "SensorRef",
    "SetupMode",
    "Severity",
    "SourceSpan",
    "StartMarker",
    "Statement",
    "Stop",
    "Token",
    "TokenType",
    "Unary",
    "UnaryOp",
    "Wait",
    "format_expr",
    "format_frame",
    "format_program",
    "format_statement",
    "parse_expr",
    "parse_frame",
    "parse_instructions",
    "tokenize",
    "validate",
    "wire_position",
]
