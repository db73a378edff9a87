"""Tokenizer for TiniScript frames.

Whitespace (spaces, tabs, newlines) separates tokens and is otherwise
ignored, so a multi-line listing and its single-line wire form produce the
same token stream. Keywords and sensor names are uppercase-only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .diagnostics import ParseError, SourceSpan


class TokenType(enum.Enum):
    NUMBER = "number"
    WORD = "word"  # keywords and sensor names
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    PERCENT = "%"
    EQ = "="
    LT = "<"
    GT = ">"
    LE = "<="
    GE = ">="
    NE = "<>"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    SEMI = ";"
    PIPE = "|"
    EOF = "eof"


@dataclass(frozen=True, slots=True)
class Token:
    type: TokenType
    text: str
    span: SourceSpan
    value: float = 0.0  # numeric payload for NUMBER tokens

    def __repr__(self) -> str:
        if self.type is TokenType.NUMBER:
            return f"Token(NUM {self.text})"
        return f"Token({self.type.name} {self.text!r})"


KEYWORDS = frozenset(
    {
        "F", "B", "L", "R", "S", "STOP", "W",
        "IF", "ENDIF", "LOOP", "END_LOOP", "FOREVER",
        "ROUND", "TRUE", "FALSE", "AND", "OR", "NOT",
        "START", "SI", "SB", "PING",
    }
)

SENSOR_NAMES = frozenset({"LIGHT_R", "LIGHT_L", "DISTANCE"})

_WORDS = KEYWORDS | SENSOR_NAMES

_SINGLE = {
    "+": TokenType.PLUS,
    "-": TokenType.MINUS,
    "*": TokenType.STAR,
    "/": TokenType.SLASH,
    "%": TokenType.PERCENT,
    "=": TokenType.EQ,
    "(": TokenType.LPAREN,
    ")": TokenType.RPAREN,
    ",": TokenType.COMMA,
    ";": TokenType.SEMI,
    "|": TokenType.PIPE,
}

_WS = " \t\r\n"


def _is_word_char(ch: str) -> bool:
    return ch.isalpha() or ch.isdigit() or ch == "_"


def tokenize(source: str, base: int = 0) -> list[Token]:
    """Lex ``source`` into tokens (EOF token included).

    ``base`` offsets every span, so a slice of a larger frame reports
    positions in the original text. Raises :class:`ParseError` on unknown
    characters, malformed numbers, or unknown words.
    """
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch in _WS:
            i += 1
            continue
        start = i
        if ch.isdigit():
            while i < n and source[i].isdigit():
                i += 1
            if i < n and source[i] == ".":
                i += 1
                if i >= n or not source[i].isdigit():
                    raise ParseError.single(
                        "MalformedNumber",
                        f"number {source[start:i]!r} has no digits after the decimal point",
                        SourceSpan(base + start, base + i),
                    )
                while i < n and source[i].isdigit():
                    i += 1
            text = source[start:i]
            tokens.append(
                Token(TokenType.NUMBER, text, SourceSpan(base + start, base + i), float(text))
            )
            continue
        if ch.isalpha() or ch == "_":
            while i < n and _is_word_char(source[i]):
                i += 1
            word = source[start:i]
            if word not in _WORDS:
                span = SourceSpan(base + start, base + i)
                upper = word.upper()
                if upper in _WORDS:
                    raise ParseError.single(
                        "UnknownWord",
                        f"unknown word {word!r} (did you mean {upper!r}? keywords are uppercase)",
                        span,
                    )
                raise ParseError.single("UnknownWord", f"unknown word {word!r}", span)
            tokens.append(Token(TokenType.WORD, word, SourceSpan(base + start, base + i)))
            continue
        if ch == "<":
            if i + 1 < n and source[i + 1] == "=":
                tokens.append(Token(TokenType.LE, "<=", SourceSpan(base + i, base + i + 2)))
                i += 2
                continue
            if i + 1 < n and source[i + 1] == ">":
                tokens.append(Token(TokenType.NE, "<>", SourceSpan(base + i, base + i + 2)))
                i += 2
                continue
            tokens.append(Token(TokenType.LT, "<", SourceSpan(base + i, base + i + 1)))
            i += 1
            continue
        if ch == ">":
            if i + 1 < n and source[i + 1] == "=":
                tokens.append(Token(TokenType.GE, ">=", SourceSpan(base + i, base + i + 2)))
                i += 2
                continue
            tokens.append(Token(TokenType.GT, ">", SourceSpan(base + i, base + i + 1)))
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, SourceSpan(base + i, base + i + 1)))
            i += 1
            continue
        raise ParseError.single(
            "UnknownCharacter",
            f"unexpected character {ch!r}",
            SourceSpan(base + i, base + i + 1),
        )
    tokens.append(Token(TokenType.EOF, "", SourceSpan(base + n, base + n)))
    return tokens
