"""
Text parsing and canonical rendering of Weyl algebra elements.

Grammar (whitespace insignificant):
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'X' | 'Y' | '(' expr ')'

'^' binds tightest, then '*' and '/', then '+' and binary '-'. Products are
evaluated left to right in A1 and normal-ordered, so "Y*X" parses to XY + 1.
Division is only allowed by nonzero constants, which gives rationals p/q.
Lowercase x and y are read as X and Y, so rendered CommPoly and UniPoly
values parse back.
"""

import re
from fractions import Fraction
from typing import List, Mapping, NamedTuple, Sequence, Tuple

from shared.utils.errors import ParseError

TOKEN_SPEC = [
    ("INT", r"\d+"),
    ("SYMBOL", r"[XYxy]"),
    ("OP", r"[-+*/^()]"),
    ("SKIP", r"\s+"),
    ("MISMATCH", r"."),
]
TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))


class Token(NamedTuple):
    type: str
    value: str
    where: Tuple[int, int]


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    for match in TOKEN_REGEX.finditer(source):
        kind = match.lastgroup
        span = (match.start(), match.end())
        if kind == "SKIP":
            continue
        if kind == "MISMATCH":
            raise ParseError(f"Unexpected character {match.group()!r}", span)
        tokens.append(Token(kind, match.group(), span))
    tokens.append(Token("END", "", (len(source), len(source) + 1)))
    return tokens


class _Parser:
    """Recursive-descent evaluator producing WeylElement values."""

    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def expect(self, value: str) -> Token:
        token = self.current
        if token.value != value:
            found = token.value or "end of input"
            raise ParseError(f"Expected {value!r}, found {found!r}", token.where)
        return self.advance()

    def parse(self):
        if self.current.type == "END":
            raise ParseError("Empty expression", self.current.where)
        value = self.expr()
        if self.current.type != "END":
            raise ParseError(f"Unexpected token {self.current.value!r}", self.current.where)
        return value

    def expr(self):
        value = self.term()
        while self.current.value in ("+", "-"):
            op = self.advance().value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.current.value in ("*", "/"):
            op_token = self.advance()
            rhs = self.unary()
            if op_token.value == "*":
                value = value * rhs
            else:
                if not rhs or rhs.total_degree() > 0:
                    raise ParseError("Division is only defined by a nonzero constant", op_token.where)
                value = value.scale(1 / rhs.coefficient(0, 0))
        return value

    def unary(self):
        if self.current.value == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.current.value == "^":
            caret = self.advance()
            if self.current.value == "-":
                raise ParseError("Negative exponents are not allowed", self.current.where)
            if self.current.type != "INT":
                raise ParseError("Exponent must be a nonnegative integer", caret.where)
            base = base ** int(self.advance().value)
        return base

    def atom(self):
        from algebra.weyl_core import X, Y, WeylElement

        token = self.current
        if token.type == "INT":
            self.advance()
            return WeylElement.constant(int(token.value))
        if token.type == "SYMBOL":
            self.advance()
            return X if token.value in "Xx" else Y
        if token.value == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        found = token.value or "end of input"
        raise ParseError(f"Unexpected {found!r}", token.where)


def parse_element(source: str):
    """Parse an element source into a normal-form WeylElement."""
    return _Parser(source).parse()


def render_scalar(value: Fraction) -> str:
    """Exact rendering: 'p' or 'p/q'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_monomial(exponents: Sequence[int], symbols: Sequence[str]) -> str:
    parts = []
    for symbol, exponent in zip(symbols, exponents):
        if exponent == 1:
            parts.append(symbol)
        elif exponent > 1:
            parts.append(f"{symbol}^{exponent}")
    return "*".join(parts)


def _join_terms(rendered: List[Tuple[Fraction, str]]) -> str:
    if not rendered:
        return "0"
    out = []
    for index, (coeff, monomial) in enumerate(rendered):
        magnitude = abs(coeff)
        if not monomial:
            body = render_scalar(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{render_scalar(magnitude)}*{monomial}"
        if index == 0:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(out)


def render_terms(terms: Mapping[Tuple[int, int], Fraction], symbols: Sequence[str] = ("X", "Y")) -> str:
    """Render a bivariate term map in canonical order, e.g. 'X + 2*X^2*Y^3'."""
    return _join_terms([(coeff, _render_monomial(mono, symbols)) for mono, coeff in terms.items()])


def render_element(P) -> str:
    return render_terms(P.terms, ("X", "Y"))


def render_comm_poly(p) -> str:
    return render_terms(p.terms, ("x", "y"))


def render_unipoly(f, variable: str = "x") -> str:
    """Render a univariate polynomial by ascending exponent."""
    return _join_terms([(coeff, _render_monomial((exp,), (variable,))) for exp, coeff in f.items()])


def parse_unipoly(source: str):
    """
    Parse a polynomial in a single variable (x or y, either case).

    The source is evaluated as an element; its support must lie on one axis.
    """
    from algebra.unipoly import UniPoly

    element = parse_element(source)
    if all(i == 0 for i, _ in element.support):
        return UniPoly({j: coeff for (_, j), coeff in element.items()})
    if all(j == 0 for _, j in element.support):
        return UniPoly({i: coeff for (i, _), coeff in element.items()})
    raise ParseError("A univariate polynomial may not mix x and y", (0, len(source)))
