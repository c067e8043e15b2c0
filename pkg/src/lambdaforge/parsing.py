"""Polynomial expression grammar: parser and canonical printer.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-'* power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Identifiers name declared generators; over KOEven coefficients the two
symbols ``xi`` and ``bR`` denote the coefficient generators.  Parsing a
printed series reproduces it exactly, and printing is a fixed point of
parse-then-print.
"""

from __future__ import annotations

from typing import List, Tuple

from .coefficients import KO_BR, KO_XI, KOElement, KOEven
from .errors import ParseError
from .series import RingPresentation, TruncatedSeries

_KO_SYMBOLS = ("xi", "bR")


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind, value, line, column):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            startcol = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(_Token("INT", int(text[start:i]), line, startcol))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            startcol = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(_Token("IDENT", text[start:i], line, startcol))
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("END", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], presentation: RingPresentation):
        self.tokens = tokens
        self.pos = 0
        self.presentation = presentation
        self.ko = isinstance(presentation.coefficients, KOEven)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.kind}", tok.line, tok.column)
        return self.advance()

    def parse(self) -> TruncatedSeries:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(f"unexpected {tok.kind}", tok.line, tok.column)
        return value

    def expr(self) -> TruncatedSeries:
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self) -> TruncatedSeries:
        value = self.factor()
        while self.peek().kind == "*":
            self.advance()
            value = value * self.factor()
        return value

    def factor(self) -> TruncatedSeries:
        negate = False
        while self.peek().kind == "-":
            self.advance()
            negate = not negate
        value = self.power()
        return -value if negate else value

    def power(self) -> TruncatedSeries:
        value = self.atom()
        if self.peek().kind == "^":
            caret = self.advance()
            tok = self.peek()
            if tok.kind != "INT":
                raise ParseError("exponent must be a nonnegative integer", tok.line, tok.column)
            self.advance()
            try:
                value = value ** tok.value
            except ValueError as exc:
                raise ParseError(str(exc), caret.line, caret.column) from exc
        return value

    def atom(self) -> TruncatedSeries:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return self.presentation.from_int(tok.value)
        if tok.kind == "IDENT":
            self.advance()
            name = tok.value
            if name in _KO_SYMBOLS:
                if not self.ko:
                    raise ParseError(
                        f"symbol {name!r} requires KOEven coefficients", tok.line, tok.column
                    )
                coeff = KO_XI if name == "xi" else KO_BR
                return self.presentation.constant(coeff)
            try:
                return self.presentation.generator(name)
            except KeyError:
                raise ParseError(f"unknown generator {name!r}", tok.line, tok.column) from None
        if tok.kind == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {tok.kind}", tok.line, tok.column)


def parse_series(text: str, presentation: RingPresentation) -> TruncatedSeries:
    """Parse polynomial text into a normal-form series over the presentation."""
    return _Parser(_tokenize(text), presentation).parse()


# -- canonical printing -----------------------------------------------------


def _format_signed_int(c: int) -> Tuple[bool, int]:
    return c < 0, abs(c)


def format_ko_element(value: KOElement) -> str:
    if not value.terms:
        return "0"
    parts = []
    for (a, b), c in value.terms:
        neg, mag = _format_signed_int(c)
        factors = []
        if a:
            factors.append("xi")
        if b:
            factors.append("bR" if b == 1 else f"bR^{b}")
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def _monomial_factors(presentation: RingPresentation, exps) -> List[str]:
    factors = []
    for g, e in zip(presentation.generators, exps):
        if e == 1:
            factors.append(g.name)
        elif e > 1:
            factors.append(f"{g.name}^{e}")
    return factors


def _render_int_term(presentation, exps, coeff) -> Tuple[bool, str]:
    neg, mag = _format_signed_int(coeff)
    factors = _monomial_factors(presentation, exps)
    if mag != 1 or not factors:
        factors.insert(0, str(mag))
    return neg, "*".join(factors)


def _render_ko_term(presentation, exps, coeff: KOElement) -> Tuple[bool, str]:
    factors = _monomial_factors(presentation, exps)
    if len(coeff.terms) > 1:
        inner = format_ko_element(coeff)
        if factors:
            return False, "*".join([f"({inner})"] + factors)
        return False, f"({inner})"
    (a, b), c = coeff.terms[0]
    neg, mag = _format_signed_int(c)
    ko_factors = []
    if a:
        ko_factors.append("xi")
    if b:
        ko_factors.append("bR" if b == 1 else f"bR^{b}")
    factors = ko_factors + factors
    if mag != 1 or not factors:
        factors.insert(0, str(mag))
    return neg, "*".join(factors)


def format_series(series: TruncatedSeries) -> str:
    """Canonical text: terms by increasing filtration, then exponent order."""
    pres = series.presentation
    if not series.terms:
        return "0"
    ko = isinstance(pres.coefficients, KOEven)
    ordered = sorted(
        series.terms.items(), key=lambda item: (pres.weight_of_monomial(item[0]), item[0])
    )
    parts = []
    for exps, coeff in ordered:
        if ko:
            neg, body = _render_ko_term(pres, exps, coeff)
        else:
            neg, body = _render_int_term(pres, exps, coeff)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
