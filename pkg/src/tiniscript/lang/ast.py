"""Typed AST for TiniScript frames.

Nodes are immutable. Source spans are carried for diagnostics but excluded
from equality, so two parses of differently-spaced text compare equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .diagnostics import NO_SPAN, SourceSpan


class SetupMode(enum.Enum):
    PING = "PING"
    IMMEDIATE = "SI"
    BUTTON_START = "SB"


class SensorName(enum.Enum):
    LIGHT_R = "LIGHT_R"
    LIGHT_L = "LIGHT_L"
    DISTANCE = "DISTANCE"


class MoveDir(enum.Enum):
    FORWARD = "F"
    BACKWARD = "B"
    LEFT = "L"
    RIGHT = "R"


class UnaryOp(enum.Enum):
    NEG = "-"
    NOT = "NOT"


class BinaryOp(enum.Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    MOD = "%"
    EQ = "="
    LT = "<"
    GT = ">"
    LE = "<="
    GE = ">="
    NE = "<>"
    AND = "AND"
    OR = "OR"


# Binding strength, tightest first: unary; * / %; + -; comparators; AND; OR.
# Comparators are non-associative (chaining is a parse error).
PRECEDENCE: dict[BinaryOp, int] = {
    BinaryOp.MUL: 5, BinaryOp.DIV: 5, BinaryOp.MOD: 5,
    BinaryOp.ADD: 4, BinaryOp.SUB: 4,
    BinaryOp.EQ: 3, BinaryOp.LT: 3, BinaryOp.GT: 3,
    BinaryOp.LE: 3, BinaryOp.GE: 3, BinaryOp.NE: 3,
    BinaryOp.AND: 2,
    BinaryOp.OR: 1,
}

UNARY_PRECEDENCE = 6

COMPARATORS = frozenset(
    {BinaryOp.EQ, BinaryOp.LT, BinaryOp.GT, BinaryOp.LE, BinaryOp.GE, BinaryOp.NE}
)


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Number(Expr):
    value: float
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class BoolLit(Expr):
    value: bool
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SensorRef(Expr):
    sensor: SensorName
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class Unary(Expr):
    op: UnaryOp
    operand: Expr
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class Binary(Expr):
    op: BinaryOp
    lhs: Expr
    rhs: Expr
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class Round(Expr):
    value: Expr
    decimals: Expr
    span: SourceSpan = field(default=NO_SPAN, compare=False)


class Statement:
    """Base class for statement nodes."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Move(Statement):
    direction: MoveDir
    time: Expr
    power: Expr
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class Stop(Statement):
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class Wait(Statement):
    seconds: Expr
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class SensorRead(Statement):
    sensor: SensorName
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class If(Statement):
    condition: Expr
    body: tuple[Statement, ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class Loop(Statement):
    count: Expr | None  # None means FOREVER
    body: tuple[Statement, ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class StartMarker(Statement):
    """The bare START statement; has no runtime effect."""

    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, slots=True)
class Program:
    statements: tuple[Statement, ...] = ()

    def __len__(self) -> int:
        return len(self.statements)


@dataclass(frozen=True, slots=True)
class Frame:
    """One wire message: a setup mode plus the instruction list."""

    setup: SetupMode
    program: Program = field(default_factory=Program)
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        if self.setup is SetupMode.PING and self.program.statements:
            raise ValueError("PING frames carry no executable program")
