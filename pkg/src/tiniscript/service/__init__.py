"""Serial-line service: wire protocol and the TCP/telemetry server."""

from .protocol import (
    ACK,
    BTN,
    DONE,
    EVT_BEEP,
    EVT_BUTTON_WAIT,
    MAX_REQUEST_BYTES,
    PONG,
    PREEMPTED,
    decode_request,
    err_line,
    event_to_wire,
    telemetry_record,
)

__all__ = [
    "ACK",
    "BTN",
    "DONE",
    "EVT_BEEP",
    "EVT_BUTTON_WAIT",
    "MAX_REQUEST_BYTES",
    "PONG",
    "PREEMPTED",
    "decode_request",
    "err_line",
    "event_to_wire",
    "telemetry_record",
]
