"""Expression parser for algebra elements and localized expressions.

Grammar (precedence: ^ above juxtaposition/'*' above unary minus above
binary +/-):

    expr    := term (('+' | '-') term)*
    term    := ('-')* factor (('*')? factor)*
    factor  := atom ('^' nat)?
    atom    := generator | 'i' | rational | 'hbar' | '(' expr ')'
             | 'inv(' expr ')' | 'adj(' expr ')'

Rationals are single tokens (``3``, ``3/2``); implicit multiplication is
allowed between factors ("2 X Y").  ``inv`` of a scalar multiple of the
unit collapses to the exact reciprocal, so canonical scalar denominators
round-trip to plain elements; ``inv`` of anything else yields a localized
expression and requires the element to be registered invertible (or a
justification to be supplied by the caller).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, Presentation
from .localization import (
    DEFAULT_REGISTRY,
    InvertibleRegistry,
    RInv,
    RLeaf,
    RProd,
    RSum,
    RationalExpr,
    as_rexpr,
    exact_leaf,
    make_inverse,
    simplify,
)
from .scalars import Scalar


class ParseError(ValueError):
    """Syntax error with a position attached."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rational>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[()^*+\-]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad = pos + (len(text) - pos - len(stripped))
            raise ParseError(f"unexpected character {stripped[0]!r}", bad)
        if m.lastgroup == "rational":
            tokens.append(_Token("rational", m.group("rational"), m.start("rational")))
        elif m.lastgroup == "name":
            tokens.append(_Token("name", m.group("name"), m.start("name")))
        else:
            op = m.group("op")
            tokens.append(_Token("op", "^" if op == "**" else op, m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], presentation: Presentation,
                 registry: InvertibleRegistry, source_len: int):
        self.tokens = tokens
        self.k = 0
        self.pres = presentation
        self.registry = registry
        self.source_len = source_len

    def peek(self) -> _Token | None:
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.source_len)
        self.k += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.next()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}, found {tok.text!r}", tok.position)

    # expr := term (('+'|'-') term)*
    def parse_expr(self) -> RationalExpr:
        total = self.parse_term()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in "+-":
                return total
            self.next()
            rhs = self.parse_term()
            total = total + rhs if tok.text == "+" else total - rhs

    # term := ('-')* factor (('*')? factor)*
    def parse_term(self) -> RationalExpr:
        negate = False
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text == "-":
            self.next()
            negate = not negate
        product = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.kind == "op" and tok.text == "*":
                self.next()
                product = product * self.parse_factor()
                continue
            if tok.kind in ("rational", "name") or (
                tok.kind == "op" and tok.text == "("
            ):
                product = product * self.parse_factor()
                continue
            break
        return -product if negate else product

    # factor := atom ('^' nat)?
    def parse_factor(self) -> RationalExpr:
        atom = self.parse_atom()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self.next()
            exp_tok = self.next()
            if exp_tok.kind != "rational" or "/" in exp_tok.text:
                raise ParseError("exponent must be a natural number", exp_tok.position)
            power = int(exp_tok.text)
            result = RLeaf(self.pres.one())
            for _ in range(power):
                result = result * atom
            return simplify(result)
        return atom

    def parse_atom(self) -> RationalExpr:
        tok = self.next()
        if tok.kind == "rational":
            return RLeaf(self.pres.scalar(Fraction(tok.text)))
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if tok.kind == "name":
            name = tok.text
            if name == "i":
                return RLeaf(self.pres.scalar(Scalar.from_rational(0, 1)))
            if name == "hbar":
                return RLeaf(self.pres.scalar(Scalar.hbar()))
            if name in ("inv", "adj"):
                self.expect_op("(")
                inner = self.parse_expr()
                self.expect_op(")")
                if name == "adj":
                    from .localization import adjoint_expr

                    return simplify(adjoint_expr(inner))
                leaf = exact_leaf(inner)
                if leaf is None:
                    raise ParseError(
                        "inv(...) argument must simplify to a plain element",
                        tok.position,
                    )
                return make_inverse(leaf, registry=self.registry)
            if name in self.pres.generators:
                return RLeaf(self.pres.gen(name))
            raise ParseError(f"unknown generator or keyword {name!r}", tok.position)
        raise ParseError(f"unexpected token {tok.text!r}", tok.position)


def parse_expression(
    text: str,
    presentation: Presentation,
    registry: InvertibleRegistry = DEFAULT_REGISTRY,
) -> AlgebraElement | RationalExpr:
    """Parse text to an element, or a localized expression if inv() remains."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    parser = _Parser(tokens, presentation, registry, len(text))
    result = simplify(parser.parse_expr())
    trailing = parser.peek()
    if trailing is not None:
        raise ParseError(f"trailing input {trailing.text!r}", trailing.position)
    leaf = exact_leaf(result)
    return leaf if leaf is not None else result


def print_expression(x: AlgebraElement | RationalExpr) -> str:
    """Canonical text; inverse of :func:`parse_expression` on normal forms."""
    if isinstance(x, AlgebraElement):
        return x.canonical_text()
    x = simplify(x)
    if isinstance(x, RLeaf):
        return x.element.canonical_text()
    return _expr_text(x, top=True)


def _expr_text(x: RationalExpr, top: bool = False) -> str:
    if isinstance(x, RLeaf):
        text = x.element.canonical_text()
        if len(x.element.terms) > 1:
            return f"({text})"
        return text
    if isinstance(x, RInv):
        return f"inv({x.element.canonical_text()})"
    if isinstance(x, RProd):
        return "*".join(_expr_text(f) for f in x.factors)
    if isinstance(x, RSum):
        inner = " + ".join(_expr_text(t) for t in x.terms)
        return inner if top else f"({inner})"
    raise TypeError(f"cannot print {x!r}")
