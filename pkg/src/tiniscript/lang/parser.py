"""Recursive-descent parser for TiniScript frames, instruction lists, and expressions.

A frame is ``SETUP|INSTRUCTIONS``. The text before the first ``|`` selects
the setup mode; a ``PING`` payload is accepted verbatim and ignored. The
instruction list is ``;``-separated, with IF/ENDIF and LOOP/END_LOOP blocks
nesting. The parser is total: every input yields a Frame or a ParseError.
"""

from __future__ import annotations

from .ast import (
    Binary,
    BinaryOp,
    BoolLit,
    COMPARATORS,
    Expr,
    Frame,
    If,
    Loop,
    Move,
    MoveDir,
    Number,
    Program,
    Round,
    SensorName,
    SensorRead,
    SensorRef,
    SetupMode,
    StartMarker,
    Statement,
    Stop,
    Unary,
    UnaryOp,
    Wait,
)
from .diagnostics import ParseError, SourceSpan
from .tokens import SENSOR_NAMES, Token, TokenType, tokenize

_SETUP_WORDS = {
    "PING": SetupMode.PING,
    "SI": SetupMode.IMMEDIATE,
    "SB": SetupMode.BUTTON_START,
}

_MOVE_WORDS = {"F": MoveDir.FORWARD, "B": MoveDir.BACKWARD, "L": MoveDir.LEFT, "R": MoveDir.RIGHT}

_BLOCK_ENDS = {"ENDIF", "END_LOOP"}

_CMP_TOKENS = {
    TokenType.EQ: BinaryOp.EQ,
    TokenType.LT: BinaryOp.LT,
    TokenType.GT: BinaryOp.GT,
    TokenType.LE: BinaryOp.LE,
    TokenType.GE: BinaryOp.GE,
    TokenType.NE: BinaryOp.NE,
}

_ADD_TOKENS = {TokenType.PLUS: BinaryOp.ADD, TokenType.MINUS: BinaryOp.SUB}
_MUL_TOKENS = {TokenType.STAR: BinaryOp.MUL, TokenType.SLASH: BinaryOp.DIV, TokenType.PERCENT: BinaryOp.MOD}


def parse_frame(source: str) -> Frame:
    """Parse one complete ``SETUP|INSTRUCTIONS`` frame."""
    sep = source.find("|")
    if sep < 0:
        raise ParseError.single(
            "MissingSeparator",
            "frame needs a '|' between the setup mode and the instructions",
            SourceSpan(len(source), len(source)),
        )
    head = source[:sep]
    word = head.strip()
    if word not in _SETUP_WORDS:
        start = len(head) - len(head.lstrip())
        hint = ""
        if word.upper() in _SETUP_WORDS:
            hint = f" (did you mean {word.upper()!r}?)"
        raise ParseError.single(
            "UnknownSetup",
            f"unknown setup mode {word!r}, expected PING, SI, or SB{hint}",
            SourceSpan(start, start + max(len(word), 1)),
        )
    setup = _SETUP_WORDS[word]
    span = SourceSpan(0, len(source))
    if setup is SetupMode.PING:
        # Anything after PING| is a connection-check payload and is ignored.
        return Frame(SetupMode.PING, Program(), span)
    statements = parse_instructions(source[sep + 1 :], base=sep + 1)
    return Frame(setup, Program(tuple(statements)), span)


def parse_instructions(text: str, base: int = 0) -> list[Statement]:
    """Parse a ``;``-separated instruction list (no setup prefix)."""
    tokens = tokenize(text, base)
    parser = _Parser(tokens)
    statements = parser.statement_list(terminators=frozenset())
    parser.expect_eof()
    return statements


def parse_expr(text: str, base: int = 0) -> Expr:
    """Parse a single expression; trailing tokens are an error."""
    tokens = tokenize(text, base)
    parser = _Parser(tokens)
    expr = parser.expression()
    tok = parser.peek()
    if tok.type is not TokenType.EOF:
        raise ParseError.single(
            "TrailingGarbage", f"unexpected {tok.text!r} after expression", tok.span
        )
    return expr


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        # Nesting depth of '(' groups, for UnclosedParen at EOF.
        self.paren_depth = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type is not TokenType.EOF:
            self.pos += 1
        return tok

    def at_word(self, *words: str) -> bool:
        tok = self.peek()
        return tok.type is TokenType.WORD and tok.text in words

    def error(self, code: str, message: str, span: SourceSpan) -> ParseError:
        return ParseError.single(code, message, span)

    def fail_here(self, expected: str) -> ParseError:
        tok = self.peek()
        if tok.type is TokenType.EOF and self.paren_depth > 0:
            return self.error("UnclosedParen", "missing ')' before end of input", tok.span)
        found = repr(tok.text) if tok.type is not TokenType.EOF else "end of input"
        return self.error("UnexpectedToken", f"expected {expected}, found {found}", tok.span)

    def expect(self, ttype: TokenType, expected: str) -> Token:
        if self.peek().type is ttype:
            return self.advance()
        raise self.fail_here(expected)

    def expect_eof(self) -> None:
        tok = self.peek()
        if tok.type is not TokenType.EOF:
            raise self.error(
                "TrailingGarbage", f"unexpected {tok.text!r} after the last statement", tok.span
            )

    # -- statements -------------------------------------------------------

    def statement_list(self, terminators: frozenset[str]) -> list[Statement]:
        """Parse statements until EOF or one of the terminator keywords.

        Leading, doubled, and trailing ';' are skipped. The terminator token
        itself is not consumed.
        """
        statements: list[Statement] = []
        while True:
            while self.peek().type is TokenType.SEMI:
                self.advance()
            tok = self.peek()
            if tok.type is TokenType.EOF:
                return statements
            if tok.type is TokenType.WORD and tok.text in terminators:
                return statements
            if tok.type is TokenType.WORD and tok.text in _BLOCK_ENDS:
                raise self.error(
                    "UnbalancedBlock", f"{tok.text} without a matching opening block", tok.span
                )
            statements.append(self.statement())
            after = self.peek()
            if after.type in (TokenType.SEMI, TokenType.EOF):
                continue
            if after.type is TokenType.WORD and (
                after.text in terminators or after.text in _BLOCK_ENDS
            ):
                continue
            raise self.error(
                "TrailingGarbage", f"expected ';' before {after.text!r}", after.span
            )

    def statement(self) -> Statement:
        tok = self.peek()
        if tok.type is not TokenType.WORD:
            raise self.fail_here("a statement")
        word = tok.text
        if word in _MOVE_WORDS:
            return self.move_statement(_MOVE_WORDS[word])
        if word in ("S", "STOP"):
            self.advance()
            return Stop(span=tok.span)
        if word == "W":
            self.advance()
            self.open_paren()
            seconds = self.expression()
            close = self.close_paren()
            return Wait(seconds, span=SourceSpan(tok.span.start, close.span.end))
        if word in SENSOR_NAMES:
            self.advance()
            return SensorRead(SensorName(word), span=tok.span)
        if word == "IF":
            return self.if_statement()
        if word == "LOOP":
            return self.loop_statement()
        if word == "START":
            self.advance()
            return StartMarker(span=tok.span)
        raise self.fail_here("a statement")

    def move_statement(self, direction: MoveDir) -> Move:
        start = self.advance()
        self.open_paren()
        time = self.expression()
        self.expect(TokenType.COMMA, "',' between time and power")
        power = self.expression()
        close = self.close_paren()
        return Move(direction, time, power, span=SourceSpan(start.span.start, close.span.end))

    def if_statement(self) -> If:
        start = self.advance()
        self.open_paren()
        condition = self.expression()
        self.close_paren()
        self.block_separator("ENDIF")
        body = self.statement_list(terminators=frozenset({"ENDIF"}))
        end = self.block_close("ENDIF", "IF", start.span)
        return If(condition, tuple(body), span=SourceSpan(start.span.start, end.span.end))

    def loop_statement(self) -> Loop:
        start = self.advance()
        self.open_paren()
        if self.at_word("FOREVER"):
            self.advance()
            count: Expr | None = None
        else:
            count = self.expression()
        self.close_paren()
        self.block_separator("END_LOOP")
        body = self.statement_list(terminators=frozenset({"END_LOOP"}))
        end = self.block_close("END_LOOP", "LOOP", start.span)
        if not body:
            raise self.error(
                "EmptyLoopBody",
                "LOOP body is empty; put at least one statement before END_LOOP",
                SourceSpan(start.span.start, end.span.end),
            )
        return Loop(count, tuple(body), span=SourceSpan(start.span.start, end.span.end))

    def block_separator(self, terminator: str) -> None:
        tok = self.peek()
        if tok.type is TokenType.SEMI:
            return
        if tok.type is TokenType.WORD and tok.text == terminator:
            return
        raise self.fail_here(f"';' or {terminator}")

    def block_close(self, terminator: str, opener: str, open_span: SourceSpan) -> Token:
        tok = self.peek()
        if tok.type is TokenType.WORD and tok.text == terminator:
            return self.advance()
        raise self.error(
            "UnbalancedBlock", f"{opener} is missing its {terminator}", open_span
        )

    def open_paren(self) -> Token:
        tok = self.expect(TokenType.LPAREN, "'('")
        self.paren_depth += 1
        return tok

    def close_paren(self) -> Token:
        if self.peek().type is TokenType.RPAREN:
            self.paren_depth -= 1
            return self.advance()
        tok = self.peek()
        if tok.type is TokenType.EOF:
            raise self.error("UnclosedParen", "missing ')' before end of input", tok.span)
        raise self.fail_here("')'")

    # -- expressions ------------------------------------------------------
    # Precedence, loosest first: OR; AND; comparators (non-chaining);
    # + -; * / %; unary - and NOT; primaries.

    def expression(self) -> Expr:
        return self.or_expr()

    def or_expr(self) -> Expr:
        left = self.and_expr()
        while self.at_word("OR"):
            op_tok = self.advance()
            right = self.and_expr()
            left = Binary(BinaryOp.OR, left, right, span=_join(left, right, op_tok))
        return left

    def and_expr(self) -> Expr:
        left = self.comparison()
        while self.at_word("AND"):
            op_tok = self.advance()
            right = self.comparison()
            left = Binary(BinaryOp.AND, left, right, span=_join(left, right, op_tok))
        return left

    def comparison(self) -> Expr:
        left = self.additive()
        if self.peek().type not in _CMP_TOKENS:
            return left
        op_tok = self.advance()
        right = self.additive()
        chained = self.peek()
        if chained.type in _CMP_TOKENS:
            raise self.error(
                "ChainedComparator",
                f"comparators don't chain; parenthesize one side of {chained.text!r}",
                chained.span,
            )
        return Binary(_CMP_TOKENS[op_tok.type], left, right, span=_join(left, right, op_tok))

    def additive(self) -> Expr:
        left = self.multiplicative()
        while self.peek().type in _ADD_TOKENS:
            op_tok = self.advance()
            right = self.multiplicative()
            left = Binary(_ADD_TOKENS[op_tok.type], left, right, span=_join(left, right, op_tok))
        return left

    def multiplicative(self) -> Expr:
        left = self.unary()
        while self.peek().type in _MUL_TOKENS:
            op_tok = self.advance()
            right = self.unary()
            left = Binary(_MUL_TOKENS[op_tok.type], left, right, span=_join(left, right, op_tok))
        return left

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.type is TokenType.MINUS:
            self.advance()
            operand = self.unary()
            return Unary(UnaryOp.NEG, operand, span=SourceSpan(tok.span.start, _end(operand, tok)))
        if self.at_word("NOT"):
            self.advance()
            operand = self.unary()
            return Unary(UnaryOp.NOT, operand, span=SourceSpan(tok.span.start, _end(operand, tok)))
        return self.primary()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.type is TokenType.NUMBER:
            self.advance()
            return Number(tok.value, span=tok.span)
        if tok.type is TokenType.LPAREN:
            self.open_paren()
            inner = self.expression()
            self.close_paren()
            return inner
        if tok.type is TokenType.WORD:
            if tok.text == "TRUE":
                self.advance()
                return BoolLit(True, span=tok.span)
            if tok.text == "FALSE":
                self.advance()
                return BoolLit(False, span=tok.span)
            if tok.text in SENSOR_NAMES:
                self.advance()
                return SensorRef(SensorName(tok.text), span=tok.span)
            if tok.text == "ROUND":
                self.advance()
                self.open_paren()
                value = self.expression()
                self.expect(TokenType.COMMA, "',' between value and decimals")
                decimals = self.expression()
                close = self.close_paren()
                return Round(value, decimals, span=SourceSpan(tok.span.start, close.span.end))
        raise self.fail_here("an expression")


def _end(expr: Expr, fallback: Token) -> int:
    span = getattr(expr, "span", None)
    return span.end if span is not None else fallback.span.end


def _join(left: Expr, right: Expr, op_tok: Token) -> SourceSpan:
    lspan = getattr(left, "span", op_tok.span)
    rspan = getattr(right, "span", op_tok.span)
    return SourceSpan(lspan.start, rspan.end)
