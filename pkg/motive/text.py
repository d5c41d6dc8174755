"""
Parser for the textual form of motivic scalars.

Accepts what MotivicScalar.render() produces: integers, `L`, `L^k`, `L^(k/2)`, the four
arithmetic operators, unary minus, integer powers and parentheses. The text is read by
sympy's expression parser with `^` as exponentiation, then mapped into the motive field.
"""

from __future__ import annotations

import re
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import CoercionFailed

from motive.errors import MotiveParseError
from motive.scalar import FIELD, MotivicScalar

_ALLOWED_RE = re.compile(r"[^\sA-Za-z_0-9+\-*/^().]")
_NAME_RE = re.compile(r"[A-Za-z_]\w*")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)

_LEFSCHETZ = sympy.Symbol("L")
_ROOT = sympy.Symbol("v", positive=True)
_GENERATOR = sympy.Symbol("v")

# what the standard transformations emit
_NAMESPACE = {"Integer": sympy.Integer, "Float": sympy.Float, "Rational": sympy.Rational, "Symbol": sympy.Symbol}


def _column_of(text: str, needle: str) -> int:
    return text.find(needle) + 1 if needle in text else 1


def parse_scalar(text: str) -> MotivicScalar:
    """Parse `(2*L - 1)/(L - 1)` style text into a MotivicScalar."""
    bad = _ALLOWED_RE.search(text)
    if bad:
        raise MotiveParseError(f"Unexpected character {bad.group()!r}", bad.start() + 1)
    for name in _NAME_RE.finditer(text):
        if name.group() != "L":
            raise MotiveParseError(f"Unknown symbol {name.group()!r}; only L is allowed", name.start() + 1)
    if not text.strip():
        raise MotiveParseError("Empty expression", 1)

    try:
        expr = parse_expr(text, local_dict={"L": _LEFSCHETZ}, global_dict=dict(_NAMESPACE),
                          transformations=_TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError) as e:
        offset = getattr(e, "offset", None) or 1
        raise MotiveParseError(f"Malformed expression: {text.strip()!r}", offset) from None
    if not isinstance(expr, sympy.Expr):
        raise MotiveParseError(f"Malformed expression: {text.strip()!r}", 1)

    if expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise MotiveParseError("Division by zero", _column_of(text, "/"))
    if expr.has(sympy.Float):
        raise MotiveParseError("Coefficients must be exact", _column_of(text, "."))

    # L = v^2 with v > 0, so L^(k/2) becomes v^k
    in_root = expr.subs(_LEFSCHETZ, _ROOT ** 2).xreplace({_ROOT: _GENERATOR})
    try:
        return MotivicScalar(FIELD.from_expr(in_root))
    except (ValueError, CoercionFailed, ZeroDivisionError):
        raise MotiveParseError("Only L may carry a half-integer exponent", _column_of(text, "^")) from None


def render_scalar(value: MotivicScalar) -> str:
    return value.render()
