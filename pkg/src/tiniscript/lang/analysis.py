"""Static checks that run after parsing, before a frame is executed.

These catch the mistakes beginners actually make. Warnings describe
programs that run but probably not as intended (clamped arguments,
degenerate spins); errors mark statements that fault the moment they run.
"""

from __future__ import annotations

from .ast import (
    Expr,
    Frame,
    If,
    Loop,
    Move,
    Number,
    SetupMode,
    StartMarker,
    Statement,
    Stop,
    Unary,
    UnaryOp,
    Wait,
)
from .diagnostics import NO_SPAN, Diagnostic, Severity, SourceSpan


def validate(frame: Frame) -> list[Diagnostic]:
    """Collect warnings and errors for a parsed frame."""
    checker = _Checker()
    checker.walk_block(frame.program.statements, top_level=True)
    if frame.setup is not SetupMode.PING and not frame.program.statements:
        checker.warn(
            "EmptyProgram", "the instruction list is empty; the run ends immediately", NO_SPAN
        )
    return checker.found


class _Checker:
    def __init__(self) -> None:
        self.found: list[Diagnostic] = []

    def warn(self, code: str, message: str, span: SourceSpan) -> None:
        self.found.append(Diagnostic(Severity.WARNING, code, message, span))

    def error(self, code: str, message: str, span: SourceSpan) -> None:
        self.found.append(Diagnostic(Severity.ERROR, code, message, span))

    def walk_block(self, statements: tuple[Statement, ...], top_level: bool = False) -> None:
        for index, stmt in enumerate(statements):
            self.walk_statement(stmt)
            if isinstance(stmt, StartMarker) and not top_level:
                self.warn(
                    "NestedStart",
                    "START inside a block does nothing; it only marks the program head",
                    stmt.span,
                )
            if isinstance(stmt, Loop) and stmt.count is None and index + 1 < len(statements):
                self.warn(
                    "UnreachableAfterForever",
                    "statements after LOOP(FOREVER) never run",
                    statements[index + 1].span,
                )

    def walk_statement(self, stmt: Statement) -> None:
        if isinstance(stmt, Move):
            self.check_negative_literal(stmt.time, "time")
            self.check_power_literal(stmt.power)
        elif isinstance(stmt, Wait):
            self.check_negative_literal(stmt.seconds, "wait time")
        elif isinstance(stmt, If):
            self.walk_block(stmt.body)
        elif isinstance(stmt, Loop):
            self.check_loop(stmt)
            self.walk_block(stmt.body)

    def check_loop(self, loop: Loop) -> None:
        if loop.count is None:
            if not _takes_time(loop.body):
                self.warn(
                    "DegenerateForever",
                    "LOOP(FOREVER) with no F/B/L/R, W, or S inside spins without doing anything",
                    loop.span,
                )
            return
        value = _literal_value(loop.count)
        if value is None:
            return
        if value < 0:
            self.error(
                "NegativeLoopCount",
                f"loop count {_printable(value)} is negative; LOOP faults when it runs",
                loop.count.span,
            )
        elif value != int(value):
            self.error(
                "FractionalLoopCount",
                f"loop count {_printable(value)} is not a whole number",
                loop.count.span,
            )

    def check_power_literal(self, expr: Expr) -> None:
        value = _literal_value(expr)
        if value is None:
            return
        if value < 0:
            self.warn(
                "ClampedPower",
                f"power {_printable(value)} is below 0 and will be clamped to 0",
                expr.span,
            )
        elif value > 100:
            self.warn(
                "ClampedPower",
                f"power {_printable(value)} is above 100 and will be clamped to 100",
                expr.span,
            )

    def check_negative_literal(self, expr: Expr, what: str) -> None:
        value = _literal_value(expr)
        if value is not None and value < 0:
            self.warn(
                "NegativeDuration",
                f"{what} {_printable(value)} is negative and will be treated as 0",
                expr.span,
            )


def _takes_time(statements: tuple[Statement, ...]) -> bool:
    """True when any Move, Wait, or Stop appears, at any nesting depth."""
    for stmt in statements:
        if isinstance(stmt, (Move, Wait, Stop)):
            return True
        if isinstance(stmt, If) and _takes_time(stmt.body):
            return True
        if isinstance(stmt, Loop) and _takes_time(stmt.body):
            return True
    return False


def _literal_value(expr: Expr) -> float | None:
    """Constant-fold literals and unary minus only; anything else is dynamic."""
    if isinstance(expr, Number):
        return expr.value
    if isinstance(expr, Unary) and expr.op is UnaryOp.NEG:
        inner = _literal_value(expr.operand)
        return None if inner is None else -inner
    return None


def _printable(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return repr(value)
