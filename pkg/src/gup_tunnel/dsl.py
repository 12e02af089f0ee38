"""Small expression language for user-supplied potentials V(x).

An expression is lexed into tokens, parsed by recursive descent into an
immutable tree, and evaluated against a parameter table plus one free
variable whose name is declared per run (r, a, x, ...).  Supported pieces:
decimal numbers with optional exponent, the operators + - * / ^ with the
usual precedence (^ binds tightest and associates to the right, then unary
minus, then * and /, then + and -), parentheses, and the functions
sqrt, ln, exp, sin, cos, arctan, abs.

There is no implicit multiplication: "2x" is a lexical error, write "2*x".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

FUNCTIONS = ("sqrt", "ln", "exp", "sin", "cos", "arctan", "abs")

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

_UFUNCS = {
    "sqrt": np.sqrt,
    "ln": np.log,
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "arctan": np.arctan,
    "abs": np.abs,
}


class LexError(ValueError):
    """An input character no token can start with (or glued to a number)."""

    def __init__(self, position: int, character: str, reason: str = "unexpected character"):
        self.position = position
        self.character = character
        super().__init__(f"{reason} {character!r} at offset {position}")


class ParseError(ValueError):
    """The token stream deviates from the grammar."""

    def __init__(self, position: int, expected: frozenset[str], found: str):
        self.position = position
        self.expected = frozenset(expected)
        super().__init__(
            f"expected {' or '.join(sorted(self.expected))} at offset {position}, "
            f"found {found}"
        )


class UnboundParameter(ValueError):
    """The expression references a parameter missing from the table."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"parameter {name!r} is not bound; pass it via --param")


class NonFinite(ValueError):
    """Evaluation produced NaN or infinity (a pole, ln of a negative, ...)."""

    def __init__(self, x: float, value: float):
        self.x = x
        self.value = value
        super().__init__(f"expression evaluated to {value} at {x!r}")


@dataclass(frozen=True)
class Token:
    """One lexeme: kind is number, identifier, operator, paren, or comma."""

    kind: str
    lexeme: str
    position: int


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Parameter:
    name: str


@dataclass(frozen=True)
class Negation:
    operand: "PotentialExpr"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "PotentialExpr"
    right: "PotentialExpr"


@dataclass(frozen=True)
class FunctionCall:
    name: str
    argument: "PotentialExpr"


PotentialExpr = Union[Constant, Variable, Parameter, Negation, BinaryOp, FunctionCall]


def tokenize(source: str) -> list[Token]:
    """Split an expression string into tokens, flagging the first bad character."""
    tokens: list[Token] = []
    pos = 0
    length = len(source)
    while pos < length:
        ch = source[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit() or ch == ".":
            match = _NUMBER.match(source, pos)
            if match is None:  # a lone '.' has no digits around it
                raise LexError(pos, ch)
            end = match.end()
            if end < length and (source[end].isalpha() or source[end] == "_"):
                raise LexError(
                    end, source[end], "implicit multiplication is not supported:"
                )
            tokens.append(Token("number", match.group(), pos))
            pos = end
            continue
        if ch.isalpha() or ch == "_":
            match = _IDENT.match(source, pos)
            tokens.append(Token("identifier", match.group(), pos))
            pos = match.end()
            continue
        if ch in "+-*/^":
            tokens.append(Token("operator", ch, pos))
            pos += 1
            continue
        if ch in "()":
            tokens.append(Token("paren", ch, pos))
            pos += 1
            continue
        if ch == ",":
            tokens.append(Token("comma", ch, pos))
            pos += 1
            continue
        raise LexError(pos, ch)
    return tokens


class _Parser:
    """Recursive descent over a token list; grammar in the module docstring."""

    def __init__(self, tokens: list[Token], variable: str):
        self.tokens = tokens
        self.variable = variable
        self.index = 0

    def _position(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index].position
        if self.tokens:
            last = self.tokens[-1]
            return last.position + len(last.lexeme)
        return 0

    def _found(self) -> str:
        if self.index < len(self.tokens):
            return repr(self.tokens[self.index].lexeme)
        return "end of input"

    def _fail(self, *expected: str) -> ParseError:
        return ParseError(self._position(), frozenset(expected), self._found())

    def _peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _take_operator(self, symbols: str) -> str | None:
        tok = self._peek()
        if tok is not None and tok.kind == "operator" and tok.lexeme in symbols:
            self.index += 1
            return tok.lexeme
        return None

    def _expect_paren(self, which: str):
        tok = self._peek()
        if tok is None or tok.kind != "paren" or tok.lexeme != which:
            raise self._fail(f"'{which}'")
        self.index += 1

    def expression(self) -> PotentialExpr:
        node = self.term()
        while (op := self._take_operator("+-")) is not None:
            node = BinaryOp(op, node, self.term())
        return node

    def term(self) -> PotentialExpr:
        node = self.unary()
        while (op := self._take_operator("*/")) is not None:
            node = BinaryOp(op, node, self.unary())
        return node

    def unary(self) -> PotentialExpr:
        if self._take_operator("-") is not None:
            return Negation(self.unary())
        return self.power()

    def power(self) -> PotentialExpr:
        node = self.atom()
        if self._take_operator("^") is not None:
            # right-associative, and the exponent may carry its own sign
            return BinaryOp("^", node, self.unary())
        return node

    def atom(self) -> PotentialExpr:
        tok = self._peek()
        if tok is None:
            raise self._fail("number", "identifier", "'('")
        if tok.kind == "number":
            self.index += 1
            return Constant(float(tok.lexeme))
        if tok.kind == "identifier":
            self.index += 1
            if tok.lexeme in FUNCTIONS:
                self._expect_paren("(")
                argument = self.expression()
                self._expect_paren(")")
                return FunctionCall(tok.lexeme, argument)
            if tok.lexeme == self.variable:
                return Variable(tok.lexeme)
            return Parameter(tok.lexeme)
        if tok.kind == "paren" and tok.lexeme == "(":
            self.index += 1
            node = self.expression()
            self._expect_paren(")")
            return node
        raise self._fail("number", "identifier", "'('")


def parse(tokens: list[Token], variable: str = "x") -> PotentialExpr:
    """Build the syntax tree, resolving one identifier as the free variable."""
    if variable in FUNCTIONS:
        raise ValueError(f"variable name {variable!r} shadows a function")
    parser = _Parser(tokens, variable)
    node = parser.expression()
    if parser.index < len(parser.tokens):
        raise parser._fail("operator", "end of input")
    return node


def parse_source(source: str, variable: str = "x") -> PotentialExpr:
    """Convenience wrapper: tokenize and parse in one call."""
    return parse(tokenize(source), variable)


def _eval(node: PotentialExpr, x, params: Mapping[str, float]):
    if isinstance(node, Constant):
        return np.float64(node.value)
    if isinstance(node, Variable):
        return x
    if isinstance(node, Parameter):
        try:
            return np.float64(params[node.name])
        except KeyError:
            raise UnboundParameter(node.name) from None
    if isinstance(node, Negation):
        return -_eval(node.operand, x, params)
    if isinstance(node, BinaryOp):
        left = _eval(node.left, x, params)
        right = _eval(node.right, x, params)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return left / right
        return left**right
    return _UFUNCS[node.name](_eval(node.argument, x, params))


def evaluate(expr: PotentialExpr, x: float, params: Mapping[str, float] | None = None) -> float:
    """Evaluate at one point; NaN or infinity raises :class:`NonFinite`."""
    x = float(x)
    with np.errstate(all="ignore"):
        value = float(_eval(expr, np.float64(x), params or {}))
    if not math.isfinite(value):
        raise NonFinite(x, value)
    return value


def as_potential(expr: PotentialExpr, params: Mapping[str, float] | None = None):
    """Bind the parameters and return a vectorized callable V(x).

    Unlike :func:`evaluate` the result is not screened for NaN/infinity;
    downstream quadrature flags non-finite samples with their locations.
    """
    table = dict(params or {})
    _check_bound(expr, table)

    def potential(x):
        with np.errstate(all="ignore"):
            out = _eval(expr, np.asarray(x, dtype=np.float64), table)
        return np.broadcast_to(out, np.shape(x)) if np.ndim(out) == 0 else out

    return potential


def _check_bound(node: PotentialExpr, params: Mapping[str, float]):
    """Raise UnboundParameter up front rather than mid-quadrature."""
    if isinstance(node, Parameter):
        if node.name not in params:
            raise UnboundParameter(node.name)
    elif isinstance(node, Negation):
        _check_bound(node.operand, params)
    elif isinstance(node, BinaryOp):
        _check_bound(node.left, params)
        _check_bound(node.right, params)
    elif isinstance(node, FunctionCall):
        _check_bound(node.argument, params)


def to_source(expr: PotentialExpr) -> str:
    """Print the tree as a fully parenthesized string that reparses to it."""
    if isinstance(expr, Constant):
        return repr(expr.value)
    if isinstance(expr, (Variable, Parameter)):
        return expr.name
    if isinstance(expr, Negation):
        return f"(-{to_source(expr.operand)})"
    if isinstance(expr, BinaryOp):
        return f"({to_source(expr.left)} {expr.op} {to_source(expr.right)})"
    return f"{expr.name}({to_source(expr.argument)})"
