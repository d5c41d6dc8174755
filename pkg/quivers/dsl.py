"""
Line-oriented text format for quivers with potential.

    # comment
    vertex v1, v2
    arrow a1, a2: v1 -> v2
    param q
    potential W = a1*b1*a2*b2 - q*a1*b2*a2*b1
    cut { a1 }
    family conifold

A potential may continue on following lines that start with `+` or `-`.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.printing.str import sstr

from quivers.errors import (
    DSLSyntaxError,
    DuplicateName,
    InvalidCut,
    ModelError,
    UndeclaredParameter,
    UnknownArrow,
    UnknownVertex,
)
from quivers.model import Arrow, PathTerm, QuiverModel, combine_terms

logger = logging.getLogger(__name__)

_IDENT = r"[A-Za-z_]\w*"
_IDENT_RE = re.compile(rf"^{_IDENT}$")
_VERTEX_RE = re.compile(r"^vertex\s+(?P<names>.+)$")
_ARROW_RE = re.compile(r"^arrow\s+(?P<names>[^:]+):\s*(?P<source>\S+)\s*->\s*(?P<target>\S+)\s*$")
_PARAM_RE = re.compile(r"^param\s+(?P<names>.+)$")
_POTENTIAL_RE = re.compile(rf"^potential\s+(?P<name>{_IDENT})\s*=\s*(?P<body>.*)$")
_CUT_RE = re.compile(r"^cut\s*\{(?P<names>[^}]*)\}\s*$")
_FAMILY_RE = re.compile(r"^family\s+(?P<family>\S+)\s*$")
_TOKEN_RE = re.compile(rf"\s*(?:(?P<int>\d+)|(?P<name>{_IDENT})|(?P<op>[-+*/^()]))")


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _split_names(text: str, line: int, column: int) -> List[Tuple[str, int]]:
    """Comma separated identifiers with their columns."""
    names = []
    offset = 0
    for piece in text.split(","):
        name = piece.strip()
        name_column = column + offset + (len(piece) - len(piece.lstrip()))
        if not _IDENT_RE.match(name):
            raise DSLSyntaxError(f"Expected an identifier, found {name!r}", line, name_column)
        names.append((name, name_column))
        offset += len(piece) + 1
    return names


def _tokenize(text: str, line: int, column: int) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        match = _TOKEN_RE.match(text, pos)
        if not match:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise DSLSyntaxError(f"Unexpected character {text[bad]!r}", line, column + bad)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), line, column + match.start(kind)))
        pos = match.end()
    return tokens


class _PotentialParser:
    """Recursive descent over the tokens of one potential (possibly spanning lines)."""

    def __init__(self, tokens: List[_Token], arrows: Dict[str, Arrow], params: Sequence[str], end: Tuple[int, int]):
        self.tokens = tokens + [_Token("end", "", *end)]
        self.index = 0
        self.arrows = arrows
        self.params = set(params)

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def take(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, message: str, token: _Token, error=DSLSyntaxError) -> ModelError:
        return error(message, token.line, token.column)

    def expect(self, value: str) -> _Token:
        token = self.take()
        if token.text != value:
            raise self.fail(f"Expected {value!r}, found {token.text or 'end of line'!r}", token)
        return token

    def parse(self) -> List[Tuple[PathTerm, _Token]]:
        terms = []
        sign = 1
        if self.peek().text in ("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        terms.append(self.term(sign))
        while self.peek().text in ("+", "-"):
            sign = -1 if self.take().text == "-" else 1
            terms.append(self.term(sign))
        token = self.peek()
        if token.kind != "end":
            raise self.fail(f"Unexpected {token.text!r}", token)
        return terms

    def term(self, sign: int) -> Tuple[PathTerm, _Token]:
        start = self.peek()
        coefficient = sympy.Integer(sign)
        word: List[str] = []
        op = "*"
        while True:
            token = self.peek()
            if token.kind == "name" and token.text in self.arrows:
                if op == "/":
                    raise self.fail("Cannot divide by an arrow", token)
                self.take()
                word.extend([token.text] * self.arrow_power())
            else:
                factor = self.coefficient_factor(top_level=True)
                if op == "/" and factor == 0:
                    raise self.fail("Division by zero", token)
                coefficient = coefficient * factor if op == "*" else coefficient / factor
            if self.peek().text not in ("*", "/"):
                break
            op = self.take().text
        if not word:
            raise self.fail("Potential term has no arrows", start)
        return PathTerm(coefficient, tuple(word)), start

    def arrow_power(self) -> int:
        if self.peek().text != "^":
            return 1
        self.take()
        token = self.take()
        if token.kind != "int" or int(token.text) < 1:
            raise self.fail("Arrow powers must be positive integers", token)
        return int(token.text)

    def coefficient_factor(self, top_level: bool = False) -> sympy.Expr:
        token = self.take()
        if token.kind == "int":
            base = sympy.Integer(int(token.text))
        elif token.kind == "name":
            if token.text in self.arrows:
                raise self.fail(f"Arrow {token.text!r} inside a coefficient", token)
            if token.text not in self.params:
                if top_level:
                    raise self.fail(
                        f"Unknown identifier {token.text!r}: not a declared arrow or parameter", token, UnknownArrow
                    )
                raise self.fail(f"Undeclared parameter {token.text!r}", token, UndeclaredParameter)
            base = sympy.Symbol(token.text)
        elif token.text == "(":
            base = self.coefficient_expression()
            self.expect(")")
        else:
            raise self.fail(f"Unexpected {token.text or 'end of line'!r}", token)
        if self.peek().text == "^":
            self.take()
            sign = 1
            if self.peek().text == "-":
                self.take()
                sign = -1
            exponent = self.take()
            if exponent.kind != "int":
                raise self.fail("Expected an integer exponent", exponent)
            if sign < 0 and base == 0:
                raise self.fail("Negative power of zero", exponent)
            base = base ** (sign * int(exponent.text))
        return base

    def coefficient_expression(self) -> sympy.Expr:
        value = self.coefficient_term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.coefficient_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def coefficient_term(self) -> sympy.Expr:
        value = self.coefficient_unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            rhs = self.coefficient_unary()
            if op.text == "*":
                value = value * rhs
            elif rhs == 0:
                raise self.fail("Division by zero", op)
            else:
                value = value / rhs
        return value

    def coefficient_unary(self) -> sympy.Expr:
        if self.peek().text == "-":
            self.take()
            return -self.coefficient_unary()
        return self.coefficient_factor()


class _ModelBuilder:
    def __init__(self):
        self.vertices: List[str] = []
        self.arrows: Dict[str, Arrow] = {}
        self.params: List[str] = []
        self.potential_name: Optional[str] = None
        self.potential_tokens: List[_Token] = []
        self.potential_line = 0
        self.potential_end = (0, 0)
        self.cut: Optional[Tuple[str, ...]] = None
        self.cut_line = 0
        self.family: Optional[str] = None

    def declare(self, name: str, line: int, column: int) -> None:
        if name in self.vertices or name in self.arrows or name in self.params:
            raise DuplicateName(f"Name {name!r} is already declared", line, column)

    def line(self, text: str, number: int) -> None:
        indent = len(text) - len(text.lstrip())
        body = text.strip()
        column = indent + 1
        if self.potential_line and body[0] in "+-":
            self.potential_tokens.extend(_tokenize(body, number, column))
            self.potential_end = (number, column + len(body))
            return
        self.potential_line = 0
        if match := _VERTEX_RE.match(body):
            for name, at in _split_names(match.group("names"), number, column + match.start("names")):
                self.declare(name, number, at)
                self.vertices.append(name)
        elif match := _ARROW_RE.match(body):
            source, target = match.group("source"), match.group("target")
            for end, group in ((source, "source"), (target, "target")):
                if end not in self.vertices:
                    raise UnknownVertex(f"Unknown vertex {end!r}", number, column + match.start(group))
            for name, at in _split_names(match.group("names"), number, column + match.start("names")):
                self.declare(name, number, at)
                self.arrows[name] = Arrow(name, source, target)
        elif match := _PARAM_RE.match(body):
            for name, at in _split_names(match.group("names"), number, column + match.start("names")):
                self.declare(name, number, at)
                self.params.append(name)
        elif match := _POTENTIAL_RE.match(body):
            if self.potential_name is not None:
                raise DSLSyntaxError("Only one potential may be declared", number, column)
            self.potential_name = match.group("name")
            self.potential_tokens = _tokenize(match.group("body"), number, column + match.start("body"))
            self.potential_line = number
            self.potential_end = (number, column + len(body))
        elif match := _CUT_RE.match(body):
            if self.cut is not None:
                raise DSLSyntaxError("Only one cut may be declared", number, column)
            names = []
            for name, at in _split_names(match.group("names"), number, column + match.start("names")):
                if name not in self.arrows:
                    raise UnknownArrow(f"Cut names unknown arrow {name!r}", number, at)
                names.append(name)
            self.cut = tuple(names)
            self.cut_line = number
        elif match := _FAMILY_RE.match(body):
            self.family = match.group("family")
        else:
            keyword = body.split()[0]
            raise DSLSyntaxError(f"Unknown directive {keyword!r}", number, column)

    def build(self) -> QuiverModel:
        if not self.vertices:
            raise DSLSyntaxError("The model declares no vertices", 1, 1)
        terms: Tuple[PathTerm, ...] = ()
        if self.potential_name is not None:
            if not self.potential_tokens:
                raise DSLSyntaxError("Empty potential", *self.potential_end)
            parser = _PotentialParser(self.potential_tokens, self.arrows, self.params, self.potential_end)
            parsed = parser.parse()
            bare = QuiverModel(tuple(self.vertices), tuple(self.arrows.values()), tuple(self.params))
            for term, start in parsed:
                try:
                    bare.check_word(term.word, cyclic=True)
                except ModelError as error:
                    raise error.at(start.line, start.column) from None
            terms = combine_terms(term for term, _ in parsed)
        try:
            return QuiverModel(
                vertices=tuple(self.vertices),
                arrows=tuple(self.arrows.values()),
                params=tuple(self.params),
                potential=terms,
                potential_name=self.potential_name or "W",
                cut=self.cut,
                family=self.family,
            )
        except InvalidCut as error:
            raise error.at(self.cut_line) from None


def parse_model(text: str) -> QuiverModel:
    """Parse the quiver DSL into a validated QuiverModel; errors carry line and column."""
    builder = _ModelBuilder()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        builder.line(line, number)
    model = builder.build()
    logger.debug(
        f"Parsed model: {len(model.vertices)} vertices, {len(model.arrows)} arrows, "
        f"{len(model.potential)} potential terms"
    )
    return model


def render_coefficient(coefficient: sympy.Expr) -> Tuple[bool, str]:
    """(negative, text) with text the `c*` prefix for a term, empty for a unit coefficient."""
    negative = bool(coefficient.could_extract_minus_sign())
    if negative:
        coefficient = -coefficient
    if coefficient == 1:
        return negative, ""
    if coefficient.is_Integer or coefficient.is_Symbol:
        return negative, f"{coefficient}*"
    return negative, "(" + sstr(coefficient).replace("**", "^") + ")*"


def render_polynomial(terms: Sequence[PathTerm]) -> str:
    if not terms:
        return "0"
    pieces = []
    for index, term in enumerate(terms):
        negative, prefix = render_coefficient(term.coefficient)
        if term.word:
            body = prefix + "*".join(term.word)
        else:
            body = prefix[:-1] if prefix else "1"
        if index == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def render_model(model: QuiverModel) -> str:
    """Canonical DSL text; parse_model(render_model(m)) == m."""
    lines = [f"vertex {', '.join(model.vertices)}"]
    for arrow in model.arrows:
        lines.append(f"arrow {arrow.name}: {arrow.source} -> {arrow.target}")
    if model.params:
        lines.append(f"param {', '.join(model.params)}")
    if model.potential:
        lines.append(f"potential {model.potential_name} = {render_polynomial(model.potential)}")
    if model.cut is not None:
        lines.append(f"cut {{ {', '.join(model.cut)} }}")
    if model.family is not None:
        lines.append(f"family {model.family}")
    return "\n".join(lines) + "\n"
