"""Tick-stepped execution of parsed frames against a robot interface."""

from . import events
from .evaluator import SensorReader, Value, eval_expr, round_half_away
from .events import TraceEvent, to_jsonl
from .faults import RejectPing, RuntimeFault
from .session import (
    EPS,
    Phase,
    RobotInterface,
    STATEMENT_BUDGET,
    Session,
    new_session,
    preempt,
)

__all__ = [
    "EPS",
    "Phase",
    "RejectPing",
    "RobotInterface",
    "RuntimeFault",
    "STATEMENT_BUDGET",
    "SensorReader",
    "Session",
    "TraceEvent",
    "Value",
    "eval_expr",
    "events",
    "new_session",
    "preempt",
    "round_half_away",
    "to_jsonl",
]
