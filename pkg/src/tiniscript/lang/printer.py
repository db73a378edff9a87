"""Canonical single-line formatting for frames, statements, and expressions.

The canonical form is what ``tini fmt`` emits: one line, ``; `` nowhere
(separators are bare ``;``), ``, `` after commas, minimal parentheses, and
numbers printed without a trailing ``.0`` when they are whole.
"""

from __future__ import annotations

from .ast import (
    Binary,
    BoolLit,
    COMPARATORS,
    Expr,
    Frame,
    If,
    Loop,
    Move,
    Number,
    PRECEDENCE,
    Program,
    Round,
    SensorRead,
    SensorRef,
    SetupMode,
    StartMarker,
    Statement,
    Stop,
    UNARY_PRECEDENCE,
    Unary,
    UnaryOp,
    Wait,
)

_SETUP_TEXT = {
    SetupMode.PING: "PING",
    SetupMode.IMMEDIATE: "SI",
    SetupMode.BUTTON_START: "SB",
}


def format_frame(frame: Frame) -> str:
    if frame.setup is SetupMode.PING:
        return "PING|check_connection"
    return f"{_SETUP_TEXT[frame.setup]}|{format_program(frame.program)}"


def format_program(program: Program) -> str:
    return ";".join(format_statement(s) for s in program.statements)


def format_statement(stmt: Statement) -> str:
    if isinstance(stmt, Move):
        return f"{stmt.direction.value}({format_expr(stmt.time)}, {format_expr(stmt.power)})"
    if isinstance(stmt, Stop):
        return "S"
    if isinstance(stmt, Wait):
        return f"W({format_expr(stmt.seconds)})"
    if isinstance(stmt, SensorRead):
        return stmt.sensor.value
    if isinstance(stmt, If):
        body = ";".join(format_statement(s) for s in stmt.body)
        inner = f";{body};" if body else ";"
        return f"IF({format_expr(stmt.condition)}){inner}ENDIF"
    if isinstance(stmt, Loop):
        head = "FOREVER" if stmt.count is None else format_expr(stmt.count)
        body = ";".join(format_statement(s) for s in stmt.body)
        return f"LOOP({head});{body};END_LOOP"
    if isinstance(stmt, StartMarker):
        return "START"
    raise TypeError(f"unknown statement {type(stmt).__name__}")


def format_expr(expr: Expr) -> str:
    text, _ = _render(expr)
    return text


def format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


# _render returns (text, precedence). Atoms get a precedence above every
# operator so they never self-parenthesize.
_ATOM = 10


def _render(expr: Expr) -> tuple[str, int]:
    if isinstance(expr, Number):
        return format_number(expr.value), _ATOM
    if isinstance(expr, BoolLit):
        return ("TRUE" if expr.value else "FALSE"), _ATOM
    if isinstance(expr, SensorRef):
        return expr.sensor.value, _ATOM
    if isinstance(expr, Round):
        return f"ROUND({format_expr(expr.value)}, {format_expr(expr.decimals)})", _ATOM
    if isinstance(expr, Unary):
        inner, prec = _render(expr.operand)
        if prec < UNARY_PRECEDENCE:
            inner = f"({inner})"
        if expr.op is UnaryOp.NOT:
            return f"NOT {inner}", UNARY_PRECEDENCE
        return f"-{inner}", UNARY_PRECEDENCE
    if isinstance(expr, Binary):
        prec = PRECEDENCE[expr.op]
        left, lprec = _render(expr.lhs)
        right, rprec = _render(expr.rhs)
        # Left-associative: the left child keeps equal precedence bare, the
        # right child needs parens at equal precedence. Comparators don't
        # chain at all, so both sides get parens at equal precedence.
        left_needs = lprec <= prec if expr.op in COMPARATORS else lprec < prec
        if left_needs:
            left = f"({left})"
        if rprec <= prec:
            right = f"({right})"
        return f"{left} {expr.op.value} {right}", prec
    raise TypeError(f"unknown expression {type(expr).__name__}")
