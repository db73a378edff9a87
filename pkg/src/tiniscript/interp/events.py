"""Trace events and their JSONL serialization.

One event per line, fields ``{t, kind, ...payload}`` in a fixed key order,
so traces diff cleanly and golden files are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class TraceEvent:
    t: float
    kind: str
    payload: Mapping[str, object] = field(default_factory=dict)

    def to_json(self) -> str:
        record: dict[str, object] = {"t": self.t, "kind": self.kind}
        record.update(self.payload)
        return json.dumps(record, separators=(", ", ": "))


def to_jsonl(events: Iterable[TraceEvent]) -> str:
    """Serialize events one per line, with a trailing newline when non-empty."""
    lines = [event.to_json() for event in events]
    return "\n".join(lines) + "\n" if lines else ""


# Constructors pin each kind's payload keys and their order.


def ack(t: float, setup: str) -> TraceEvent:
    return TraceEvent(t, "ack", {"setup": setup})


def motor_set(t: float, left: float, right: float) -> TraceEvent:
    return TraceEvent(t, "motor_set", {"left": left, "right": right})


def sensor_sample(t: float, sensor: str, value: float) -> TraceEvent:
    return TraceEvent(t, "sensor_sample", {"sensor": sensor, "value": value})


def beep(t: float) -> TraceEvent:
    return TraceEvent(t, "beep")


def loop_iter(t: float, iteration: int) -> TraceEvent:
    return TraceEvent(t, "loop_iter", {"iteration": iteration})


def preempted(t: float) -> TraceEvent:
    return TraceEvent(t, "preempted")


def error(t: float, code: str, message: str) -> TraceEvent:
    return TraceEvent(t, "error", {"code": code, "message": message})


def done(t: float) -> TraceEvent:
    return TraceEvent(t, "done")


def warning(t: float, code: str, message: str) -> TraceEvent:
    return TraceEvent(t, "warning", {"code": code, "message": message})


def collision(t: float, x: float, y: float) -> TraceEvent:
    return TraceEvent(t, "collision", {"x": x, "y": y})
