"""Expression evaluation over float and bool values.

Evaluation is strict: both operands of AND/OR are evaluated before the
operator applies, so a sensor read or a division fault on the right side
always happens. Sensor references call back into the robot for a fresh
reading every time they are evaluated.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from ..lang import (
    Binary,
    BinaryOp,
    BoolLit,
    Expr,
    Number,
    Round,
    SensorName,
    SensorRef,
    Unary,
    UnaryOp,
)
from .faults import RuntimeFault

Value = float | bool

SensorReader = Callable[[SensorName], float]


def eval_expr(expr: Expr, read_sensor: SensorReader) -> Value:
    if isinstance(expr, Number):
        return expr.value
    if isinstance(expr, BoolLit):
        return expr.value
    if isinstance(expr, SensorRef):
        return float(read_sensor(expr.sensor))
    if isinstance(expr, Unary):
        operand = eval_expr(expr.operand, read_sensor)
        if expr.op is UnaryOp.NEG:
            return -_number(operand, "-")
        return not _boolean(operand, "NOT")
    if isinstance(expr, Round):
        value = _number(eval_expr(expr.value, read_sensor), "ROUND")
        decimals = _number(eval_expr(expr.decimals, read_sensor), "ROUND")
        return round_half_away(value, decimals)
    if isinstance(expr, Binary):
        left = eval_expr(expr.lhs, read_sensor)
        right = eval_expr(expr.rhs, read_sensor)
        return _apply_binary(expr.op, left, right)
    raise TypeError(f"unknown expression {type(expr).__name__}")


def _apply_binary(op: BinaryOp, left: Value, right: Value) -> Value:
    name = op.value
    if op is BinaryOp.AND:
        return _boolean(left, name) and _boolean(right, name)
    if op is BinaryOp.OR:
        return _boolean(left, name) or _boolean(right, name)
    if op in (BinaryOp.EQ, BinaryOp.NE):
        if isinstance(left, bool) != isinstance(right, bool):
            raise RuntimeFault(
                "TypeMismatch", f"'{name}' needs two numbers or two booleans"
            )
        result = left == right
        return result if op is BinaryOp.EQ else not result
    lhs = _number(left, name)
    rhs = _number(right, name)
    if op is BinaryOp.ADD:
        return lhs + rhs
    if op is BinaryOp.SUB:
        return lhs - rhs
    if op is BinaryOp.MUL:
        return lhs * rhs
    if op is BinaryOp.DIV:
        if rhs == 0.0:
            raise RuntimeFault("DivisionByZero", "division by zero")
        return lhs / rhs
    if op is BinaryOp.MOD:
        if rhs == 0.0:
            raise RuntimeFault("ModuloByZero", "modulo by zero")
        if math.isinf(lhs) or math.isnan(lhs) or math.isnan(rhs):
            return math.nan
        return math.fmod(lhs, rhs)
    if op is BinaryOp.LT:
        return lhs < rhs
    if op is BinaryOp.GT:
        return lhs > rhs
    if op is BinaryOp.LE:
        return lhs <= rhs
    if op is BinaryOp.GE:
        return lhs >= rhs
    raise TypeError(f"unknown operator {op!r}")


def round_half_away(value: float, decimals: float) -> float:
    """Round to ``decimals`` places, ties away from zero.

    The decimals argument truncates toward zero; a negative count faults.
    Exact rational arithmetic keeps ties unambiguous: no float product can
    land on the wrong side of a .5 boundary.
    """
    if not math.isfinite(value) or not math.isfinite(decimals):
        raise RuntimeFault("TypeMismatch", "ROUND needs finite numbers")
    places = int(decimals)
    if places < 0:
        raise RuntimeFault("NegativeDecimals", "ROUND needs a non-negative decimals count")
    if places > 1000:
        # Granularity below any float's spacing; rounding is the identity.
        return value
    scale = 10**places
    scaled = Fraction(value) * scale
    if scaled >= 0:
        units = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    else:
        units = -((-2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator))
    return float(Fraction(units, scale))


def _number(value: Value, op_name: str) -> float:
    if isinstance(value, bool):
        raise RuntimeFault("TypeMismatch", f"'{op_name}' needs a number, got a boolean")
    return value


def _boolean(value: Value, op_name: str) -> bool:
    if not isinstance(value, bool):
        raise RuntimeFault("TypeMismatch", f"'{op_name}' needs a boolean, got a number")
    return value
