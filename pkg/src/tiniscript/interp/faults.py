"""Errors raised while running a frame."""

from __future__ import annotations


class RuntimeFault(Exception):
    """A fault that stops the session: motors zero, phase becomes Faulted.

    ``code`` is a stable machine-readable name (DivisionByZero, ModuloByZero,
    TypeMismatch, NegativeLoopCount, NegativeDecimals,
    StatementBudgetExceeded); ``message`` explains it to the author.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class RejectPing(ValueError):
    """Raised when a PING frame reaches the interpreter.

    PING is answered by the transport layer; it has no program to run.
    """
