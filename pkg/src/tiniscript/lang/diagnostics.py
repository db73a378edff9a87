"""Source spans, diagnostics, and the parse error carrier."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """Half-open byte range [start, end) into the original source text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"span start {self.start} > end {self.end}")


NO_SPAN = SourceSpan(0, 0)


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One problem found in a program. Errors prevent execution, warnings don't.

    ``code`` is a short stable identifier (e.g. ``UnclosedParen``) used on the
    wire; ``message`` is the human-readable explanation shown by the CLI.
    """

    severity: Severity
    code: str
    message: str
    span: SourceSpan = field(default=NO_SPAN)

    def render(self) -> str:
        return f"ERR {wire_position(self.span)}: {self.message}"

    def render_wire(self) -> str:
        return f"ERR {wire_position(self.span)} {self.code}"

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR


def wire_position(span: SourceSpan | None) -> int:
    """1-based source position for ERR lines; 0 means "no position"."""
    if span is None or span is NO_SPAN:
        return 0
    return span.start + 1


class ParseError(Exception):
    """Raised when source text cannot be turned into a frame/program/expr."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.render() for d in diagnostics))

    @classmethod
    def single(cls, code: str, message: str, span: SourceSpan) -> "ParseError":
        return cls([Diagnostic(Severity.ERROR, code, message, span)])

    @property
    def primary(self) -> Diagnostic:
        return self.diagnostics[0]
