"""Line protocol for the serial channel: request decoding, response frames.

Pure functions only; transport and session wiring live in server.py. The
same vocabulary backs the interactive REPL so a terminal session reads
exactly like a wire exchange.
"""

from __future__ import annotations

import json

from ..interp import Phase, TraceEvent
from ..lang import Frame, ParseError, parse_frame

MAX_REQUEST_BYTES = 64 * 1024

PONG = "PONG"
ACK = "ACK"
DONE = "DONE"
PREEMPTED = "PREEMPTED"
EVT_BEEP = "EVT BEEP"
EVT_BUTTON_WAIT = "EVT BUTTON_WAIT"
BTN = "BTN"


def err_line(position: int, code: str) -> str:
    return f"ERR {position} {code}"


def decode_request(line: str) -> Frame | str:
    """Turn one newline-stripped request line into a Frame or an ERR line."""
    if len(line.encode("utf-8")) > MAX_REQUEST_BYTES:
        return err_line(0, "line_too_long")
    try:
        return parse_frame(line)
    except ParseError as exc:
        return exc.primary.render_wire()


def event_to_wire(event: TraceEvent) -> str | None:
    """Map an asynchronous trace event to its response frame, if any."""
    if event.kind == "beep":
        return EVT_BEEP
    if event.kind == "done":
        return DONE
    if event.kind == "preempted":
        return PREEMPTED
    if event.kind == "error":
        return err_line(0, event.payload["code"])
    return None


def telemetry_record(
    t: float,
    x: float,
    y: float,
    theta: float,
    ml: float,
    mr: float,
    light_l: float,
    light_r: float,
    distance: float,
    phase: Phase | None,
) -> str:
    """One telemetry message with stable key order, JSON-encoded."""
    record = {
        "t": t,
        "x": x,
        "y": y,
        "theta": theta,
        "ml": ml,
        "mr": mr,
        "light_l": light_l,
        "light_r": light_r,
        "distance": distance,
        "phase": phase.name.lower() if phase is not None else "idle",
    }
    return json.dumps(record, separators=(", ", ": "))
