"""Expression evaluation: pinned examples plus oracle agreement."""

import random

import pytest
from hypothesis import given, settings

from tiniscript.interp import RuntimeFault, eval_expr
from tiniscript.lang import SensorName, parse_expr

from genutil import exprs, gen_expr
from oracle_eval import OracleFault, oracle_eval

FIXED_SENSORS = {
    SensorName.LIGHT_R: 150.0,
    SensorName.LIGHT_L: 40.0,
    SensorName.DISTANCE: 12.5,
}


def fixed_reader(sensor):
    return FIXED_SENSORS[sensor]


def evaluate(text):
    return eval_expr(parse_expr(text), fixed_reader)


def fault_code(text):
    with pytest.raises(RuntimeFault) as err:
        evaluate(text)
    return err.value.code


# -- pinned examples ----------------------------------------------------------


def test_arithmetic_basics():
    assert evaluate("1 + 2 * 3") == 7.0
    assert evaluate("10 - 4 - 3") == 3.0
    assert evaluate("7 / 2") == 3.5


def test_modulo_is_truncated_remainder():
    assert evaluate("7 % 3") == 1.0
    assert evaluate("-7 % 3") == -1.0
    assert evaluate("7 % -3") == 1.0


def test_round_half_away_from_zero():
    assert evaluate("ROUND(2.456, 1)") == 2.5
    assert evaluate("ROUND(2.5, 0)") == 3.0
    assert evaluate("ROUND(-2.5, 0)") == -3.0
    assert evaluate("ROUND(2.4, 0)") == 2.0
    assert evaluate("ROUND(3.14159, 2)") == 3.14


def test_round_truncates_fractional_decimals():
    assert evaluate("ROUND(2.456, 1.9)") == 2.5


def test_booleans():
    assert evaluate("NOT (TRUE AND FALSE)") is True
    assert evaluate("TRUE OR FALSE") is True
    assert evaluate("FALSE OR FALSE") is False
    assert evaluate("TRUE = TRUE") is True
    assert evaluate("TRUE <> FALSE") is True


def test_comparisons_yield_bools():
    assert evaluate("1 < 2") is True
    assert evaluate("2 <= 2") is True
    assert evaluate("3 > 4") is False
    assert evaluate("1 = 1") is True
    assert evaluate("1 <> 1") is False


def test_sensor_reference_reads_fresh():
    assert evaluate("LIGHT_R > 100") is True
    assert evaluate("LIGHT_L > 100") is False
    assert evaluate("DISTANCE < 10") is False


def test_each_reference_triggers_its_own_read():
    calls = []

    def counting_reader(sensor):
        calls.append(sensor)
        return 5.0

    expr = parse_expr("DISTANCE + DISTANCE")
    assert eval_expr(expr, counting_reader) == 10.0
    assert calls == [SensorName.DISTANCE, SensorName.DISTANCE]


def test_fault_codes():
    assert fault_code("1 / 0") == "DivisionByZero"
    assert fault_code("1 % 0") == "ModuloByZero"
    assert fault_code("TRUE + 1") == "TypeMismatch"
    assert fault_code("1 AND TRUE") == "TypeMismatch"
    assert fault_code("NOT 3") == "TypeMismatch"
    assert fault_code("-TRUE") == "TypeMismatch"
    assert fault_code("TRUE = 1") == "TypeMismatch"
    assert fault_code("TRUE < FALSE") == "TypeMismatch"
    assert fault_code("ROUND(1, -1)") == "NegativeDecimals"


def test_boolean_operators_do_not_short_circuit():
    assert fault_code("TRUE OR (1 / 0 > 0)") == "DivisionByZero"
    assert fault_code("FALSE AND (1 % 0 > 0)") == "ModuloByZero"


def test_division_result_is_float_division():
    assert evaluate("1 / 3") == 1.0 / 3.0


# -- oracle agreement ---------------------------------------------------------


def outcomes_match(expr):
    """Run both evaluators; values must be identical or faults share a code."""
    try:
        expected = oracle_eval(expr, fixed_reader)
        expected_fault = None
    except OracleFault as fault:
        expected, expected_fault = None, fault.code

    try:
        actual = eval_expr(expr, fixed_reader)
        actual_fault = None
    except RuntimeFault as fault:
        actual, actual_fault = None, fault.code

    assert actual_fault == expected_fault, f"{expr} faults diverge"
    if expected_fault is None:
        assert type(actual) is type(expected), f"{expr} kinds diverge"
        assert actual == expected or (actual != actual and expected != expected), (
            f"{expr}: {actual!r} != {expected!r}"
        )


def test_oracle_agreement_seeded_corpus():
    rng = random.Random(20817)
    for _ in range(500):
        outcomes_match(gen_expr(rng, depth=4))


@settings(max_examples=200, deadline=None)
@given(exprs())
def test_oracle_agreement_hypothesis(expr):
    outcomes_match(expr)
