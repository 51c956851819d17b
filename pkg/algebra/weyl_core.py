"""
Exact normal-form arithmetic in the first Weyl algebra A1.

A1 is generated by X, Y with [Y, X] = YX - XY = 1. Every element is stored in
the normal-ordered basis X^i Y^j as a finite map (i, j) -> Fraction.

Provides:
- WeylElement / CommPoly: immutable sparse bivariate polynomials
- normal_mul, bracket, power: noncommutative arithmetic
- psi, psi_inv: the coefficient-preserving basis exchange A1 <-> K[x, y]
- apply_tau, apply_phi: the automorphisms used to untwist upper edges
- matrix_rep: operator matrices on K[t]_{<=N}, used as an independent oracle
"""

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

import numpy as np

from shared.utils.errors import PreconditionError

Scalar = Fraction
Monomial = Tuple[int, int]
ScalarLike = Union[int, Fraction, str]


_SCALAR_TEXT = re.compile(r"\s*[+-]?\d+(?:/\d+)?\s*")


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to an exact Fraction; decimal text is refused."""
    if isinstance(value, float):
        raise PreconditionError(f"Floating point scalars are not accepted: {value!r}")
    if isinstance(value, str) and not _SCALAR_TEXT.fullmatch(value):
        raise PreconditionError(f"Scalars are written as integers or p/q, got {value!r}")
    try:
        return Fraction(value)
    except ZeroDivisionError:
        raise PreconditionError(f"Zero denominator in scalar {value!r}")


def _canonical_key(monomial: Monomial) -> Tuple[int, int]:
    i, j = monomial
    return (i + j, i)


class BivariatePolynomial:
    """
    Sparse polynomial in two variables with exact rational coefficients.

    Terms are kept in canonical order (lexicographic by (i+j, i)); zero
    coefficients are never stored. Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, ScalarLike]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for (i, j), coeff in (terms or {}).items():
            if i < 0 or j < 0:
                raise PreconditionError(f"Negative exponent in monomial ({i}, {j})")
            value = to_scalar(coeff)
            if value:
                cleaned[(int(i), int(j))] = value
        ordered = dict(sorted(cleaned.items(), key=lambda item: _canonical_key(item[0])))
        self._terms = MappingProxyType(ordered)
        self._hash = None

    # ---------- constructors ----------

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Monomial, ScalarLike]]):
        """Build from (monomial, coefficient) pairs, summing repeated monomials."""
        acc: Dict[Monomial, Fraction] = {}
        for monomial, coeff in pairs:
            acc[monomial] = acc.get(monomial, Fraction(0)) + to_scalar(coeff)
        return cls(acc)

    @classmethod
    def monomial(cls, i: int, j: int, coeff: ScalarLike = 1):
        return cls({(i, j): coeff})

    @classmethod
    def constant(cls, coeff: ScalarLike):
        return cls({(0, 0): coeff})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls.constant(1)

    # ---------- inspection ----------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    @property
    def support(self) -> Tuple[Monomial, ...]:
        return tuple(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=0)

    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=0)

    def total_degree(self) -> int:
        return max((i + j for i, j in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ---------- linear structure ----------

    def _same_kind(self, other: Any) -> "BivariatePolynomial":
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).constant(other)
        raise TypeError(f"Cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        other = self._same_kind(other)
        acc = dict(self._terms)
        for monomial, coeff in other.items():
            acc[monomial] = acc.get(monomial, Fraction(0)) + coeff
        return type(self)(acc)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._same_kind(other))

    def __rsub__(self, other):
        return self._same_kind(other) - self

    def scale(self, factor: ScalarLike):
        factor = to_scalar(factor)
        return type(self)({m: c * factor for m, c in self._terms.items()})

    def restrict(self, monomials: Iterable[Monomial]):
        """Sub-sum of the terms whose monomial lies in the given set."""
        wanted = set(monomials)
        return type(self)({m: c for m, c in self._terms.items() if m in wanted})

    # ---------- equality ----------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == type(self).constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from shared.utils.text_io import render_terms

        symbols = ("X", "Y") if isinstance(self, WeylElement) else ("x", "y")
        return f"{type(self).__name__}({render_terms(self._terms, symbols)!r})"


class CommPoly(BivariatePolynomial):
    """Element of L = K[x, y] (commutative multiplication); image of psi."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CommPoly):
            return NotImplemented
        acc: Dict[Monomial, Fraction] = {}
        for (a, b), c1 in self._terms.items():
            for (c, d), c2 in other._terms.items():
                key = (a + c, b + d)
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return CommPoly(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "CommPoly":
        if k < 0:
            raise PreconditionError(f"Negative power {k}")
        result = CommPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


class WeylElement(BivariatePolynomial):
    """Element of A1 in normal form: sum of a_ij X^i Y^j."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return normal_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "WeylElement":
        return power(self, k)


X = WeylElement.monomial(1, 0)
Y = WeylElement.monomial(0, 1)


def _monomial_product(a: int, b: int, c: int, d: int) -> Iterator[Tuple[Monomial, int]]:
    """
    X^a Y^b * X^c Y^d = sum_k k! C(b,k) C(c,k) X^{a+c-k} Y^{b+d-k}.

    The integer weights are produced by the recurrence
    w_{k+1} = w_k (b-k)(c-k) / (k+1), which divides exactly.
    """
    weight = 1
    for k in range(min(b, c) + 1):
        yield (a + c - k, b + d - k), weight
        weight = weight * (b - k) * (c - k) // (k + 1)


def normal_mul(P: WeylElement, Q: WeylElement) -> WeylElement:
    """Normal-form product P*Q in A1."""
    acc: Dict[Monomial, Fraction] = {}
    for (a, b), c1 in P.items():
        for (c, d), c2 in Q.items():
            base = c1 * c2
            for monomial, weight in _monomial_product(a, b, c, d):
                acc[monomial] = acc.get(monomial, Fraction(0)) + base * weight
    return WeylElement(acc)


def bracket(P: WeylElement, Q: WeylElement) -> WeylElement:
    """Commutator [P, Q] = PQ - QP."""
    return normal_mul(P, Q) - normal_mul(Q, P)


def power(P: WeylElement, k: int) -> WeylElement:
    """k-fold product; power(P, 0) = 1."""
    if k < 0:
        raise PreconditionError(f"Negative power {k}")
    result = WeylElement.one()
    base = P
    while k:
        if k & 1:
            result = normal_mul(result, base)
        base = normal_mul(base, base)
        k >>= 1
    return result


def psi(P: WeylElement) -> CommPoly:
    """Basis exchange X^iY^j -> x^iy^j."""
    return CommPoly(P.terms)


def psi_inv(p: CommPoly) -> WeylElement:
    """Basis exchange x^iy^j -> X^iY^j."""
    return WeylElement(p.terms)


def _substitute(P: WeylElement, image_x: WeylElement, image_y: WeylElement) -> WeylElement:
    """Image of P under the algebra map X -> image_x, Y -> image_y (normal-ordered)."""
    x_powers = {0: WeylElement.one()}
    y_powers = {0: WeylElement.one()}
    for i, j in P.support:
        for cache, image, exponent in ((x_powers, image_x, i), (y_powers, image_y, j)):
            top = max(cache)
            while top < exponent:
                cache[top + 1] = normal_mul(cache[top], image)
                top += 1
    result = WeylElement.zero()
    for (i, j), coeff in P.items():
        result = result + normal_mul(x_powers[i], y_powers[j]).scale(coeff)
    return result


def apply_tau(P: WeylElement) -> WeylElement:
    """Automorphism tau: X -> Y, Y -> -X."""
    return _substitute(P, Y, -X)


def apply_phi(P: WeylElement, mu: ScalarLike, sigma: int) -> WeylElement:
    """Automorphism phi: X -> X, Y -> Y + mu X^sigma (sigma >= 1)."""
    if sigma < 1:
        raise PreconditionError(f"apply_phi requires sigma >= 1, got {sigma}")
    shifted = Y + WeylElement.monomial(sigma, 0, to_scalar(mu))
    return _substitute(P, X, shifted)


def matrix_rep(P: WeylElement, N: int) -> np.ndarray:
    """
    Operator of P on polynomials in t of degree <= N.

    X acts as multiplication by t (t^N is sent to 0), Y as d/dt. Entry [r, c]
    is the coefficient of t^r in P(t^c). The matrix is an object array of
    Fractions so products stay exact.
    """
    if N < 1:
        raise PreconditionError(f"matrix_rep requires N >= 1, got {N}")
    size = N + 1
    matrix = np.full((size, size), Fraction(0), dtype=object)
    for (i, j), coeff in P.items():
        for c in range(j, size):
            row = c - j + i
            if row > N:
                continue
            falling = 1
            for step in range(j):
                falling *= c - step
            matrix[row, c] += coeff * falling
    return matrix
