"""Reference expression evaluator used to check the interpreter's one.

Arithmetic here is computed on exact rationals and converted to float once
per node, and rounding goes through the decimal module. The production
evaluator works directly in floats. For finite values both paths must give
bit-identical results, because one exact-rational op rounded to nearest is
exactly what one IEEE float op does.

The generated corpora keep every intermediate finite (leaf magnitudes and
tree depth are bounded), so this oracle does not model infinities.
"""

from __future__ import annotations

import decimal
from decimal import Decimal
from fractions import Fraction
from typing import Callable

from tiniscript.lang import (
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


class OracleFault(Exception):
    def __init__(self, code: str):
        super().__init__(code)
        self.code = code


def oracle_eval(expr: Expr, read_sensor: Callable[[SensorName], float]):
    if isinstance(expr, Number):
        return expr.value
    if isinstance(expr, BoolLit):
        return expr.value
    if isinstance(expr, SensorRef):
        return float(read_sensor(expr.sensor))
    if isinstance(expr, Unary):
        operand = oracle_eval(expr.operand, read_sensor)
        if expr.op is UnaryOp.NEG:
            if isinstance(operand, bool):
                raise OracleFault("TypeMismatch")
            return float(-Fraction(operand))
        if not isinstance(operand, bool):
            raise OracleFault("TypeMismatch")
        return not operand
    if isinstance(expr, Round):
        value = oracle_eval(expr.value, read_sensor)
        decimals = oracle_eval(expr.decimals, read_sensor)
        if isinstance(value, bool) or isinstance(decimals, bool):
            raise OracleFault("TypeMismatch")
        return _oracle_round(value, decimals)
    if isinstance(expr, Binary):
        left = oracle_eval(expr.lhs, read_sensor)
        right = oracle_eval(expr.rhs, read_sensor)
        return _binary(expr.op, left, right)
    raise TypeError(f"unknown expression {type(expr).__name__}")


def _binary(op: BinaryOp, left, right):
    if op is BinaryOp.AND or op is BinaryOp.OR:
        if not isinstance(left, bool) or not isinstance(right, bool):
            raise OracleFault("TypeMismatch")
        return (left and right) if op is BinaryOp.AND else (left or right)
    if op is BinaryOp.EQ or op is BinaryOp.NE:
        if isinstance(left, bool) != isinstance(right, bool):
            raise OracleFault("TypeMismatch")
        equal = left == right
        return equal if op is BinaryOp.EQ else not equal
    if isinstance(left, bool) or isinstance(right, bool):
        raise OracleFault("TypeMismatch")
    a, b = Fraction(left), Fraction(right)
    if op is BinaryOp.ADD:
        return float(a + b)
    if op is BinaryOp.SUB:
        return float(a - b)
    if op is BinaryOp.MUL:
        return float(a * b)
    if op is BinaryOp.DIV:
        if b == 0:
            raise OracleFault("DivisionByZero")
        return float(a / b)
    if op is BinaryOp.MOD:
        if b == 0:
            raise OracleFault("ModuloByZero")
        quotient = int(a / b)  # truncates toward zero
        return float(a - quotient * b)
    if op is BinaryOp.LT:
        return a < b
    if op is BinaryOp.GT:
        return a > b
    if op is BinaryOp.LE:
        return a <= b
    if op is BinaryOp.GE:
        return a >= b
    raise TypeError(f"unknown operator {op!r}")


def _oracle_round(value: float, decimals: float) -> float:
    places = int(decimals)
    if places < 0:
        raise OracleFault("NegativeDecimals")
    if places > 1000:
        return value
    # Any finite double has at most 309 integer digits; 1000 decimal places
    # on top of that stays inside this precision, keeping quantize exact.
    with decimal.localcontext() as ctx:
        ctx.prec = 1500
        quantum = Decimal(1).scaleb(-places)
        rounded = Decimal(value).quantize(quantum, rounding=decimal.ROUND_HALF_UP)
    return float(rounded)
