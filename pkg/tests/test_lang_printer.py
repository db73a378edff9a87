"""Canonical printing and the parse/print round-trip property."""

from hypothesis import given, settings

from tiniscript.lang import (
    Binary,
    BinaryOp,
    Number,
    format_expr,
    format_frame,
    parse_expr,
    parse_frame,
)

from genutil import frames


def canon(source):
    return format_frame(parse_frame(source))


def test_move_canonical_form():
    assert canon("SI|F(5, 80)") == "SI|F(5, 80)"
    assert canon("SI| F ( 5,80 ) ") == "SI|F(5, 80)"


def test_ping_canonical_form():
    assert canon("PING|whatever") == "PING|check_connection"


def test_stop_canonicalizes_to_s():
    assert canon("SI|STOP") == "SI|S"


def test_loop_canonical_form():
    assert canon("SI|LOOP(3);F(2, 50);END_LOOP") == "SI|LOOP(3);F(2, 50);END_LOOP"
    assert canon("SI|LOOP(FOREVER);W(1);END_LOOP") == "SI|LOOP(FOREVER);W(1);END_LOOP"


def test_if_canonical_form():
    assert canon("SI|IF(LIGHT_R>100);F(4,70);ENDIF") == "SI|IF(LIGHT_R > 100);F(4, 70);ENDIF"


def test_whole_numbers_print_without_decimal_point():
    assert format_expr(Number(5.0)) == "5"
    assert format_expr(Number(2.5)) == "2.5"


def test_minimal_parens_kept_where_needed():
    assert format_expr(parse_expr("(1 + 2) * 3")) == "(1 + 2) * 3"
    assert format_expr(parse_expr("1 + 2 * 3")) == "1 + 2 * 3"
    assert format_expr(parse_expr("10 - (4 - 3)")) == "10 - (4 - 3)"
    assert format_expr(parse_expr("10 - 4 - 3")) == "10 - 4 - 3"


def test_right_child_of_equal_precedence_parenthesized():
    expr = Binary(BinaryOp.SUB, Number(10.0), Binary(BinaryOp.SUB, Number(4.0), Number(3.0)))
    assert format_expr(expr) == "10 - (4 - 3)"


def test_not_and_negation_forms():
    assert format_expr(parse_expr("NOT (1 < 2)")) == "NOT (1 < 2)"
    assert format_expr(parse_expr("-5")) == "-5"
    assert format_expr(parse_expr("-(1 + 2)")) == "-(1 + 2)"


def test_fixed_point_after_one_canonicalization():
    wild = "SI| START ;LOOP( 2 ); F(1,50);IF(DISTANCE<10);STOP;ENDIF;END_LOOP;"
    once = canon(wild)
    assert canon(once) == once


@settings(max_examples=300, deadline=None)
@given(frames())
def test_roundtrip(frame):
    printed = format_frame(frame)
    assert parse_frame(printed) == frame
