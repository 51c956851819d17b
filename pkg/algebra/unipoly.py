"""
Univariate polynomial analytics over the rationals.

Provides:
- UniPoly: immutable sparse univariate polynomial
- t_count, reverse, strip_and_compress: support bookkeeping
- equiv_to_special: exact test for f ~ 1 + x - x^2/2 under the generated equivalence
- kth_root_series, poly_kth_root: binomial-series k-th roots
- poly_gcd, distinct_factor_count: squarefree analysis by exact Euclid
- power_support_check: support size of f^k and its boundary case
"""

import logging
from fractions import Fraction
from math import gcd
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Optional, Tuple

from algebra.weyl_core import ScalarLike, to_scalar
from shared.utils.errors import InvariantBreach, PreconditionError

logger = logging.getLogger(__name__)


class UniPoly:
    """Sparse univariate polynomial: exponent -> nonzero Fraction."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, ScalarLike]] = None):
        cleaned: Dict[int, Fraction] = {}
        for exp, coeff in (coeffs or {}).items():
            if exp < 0:
                raise PreconditionError(f"Negative exponent {exp}")
            value = to_scalar(coeff)
            if value:
                cleaned[int(exp)] = value
        self._coeffs = MappingProxyType(dict(sorted(cleaned.items())))

    @classmethod
    def from_list(cls, dense) -> "UniPoly":
        """Build from a dense coefficient list [a0, a1, ...]."""
        return cls({exp: coeff for exp, coeff in enumerate(dense)})

    @classmethod
    def monomial(cls, exp: int, coeff: ScalarLike = 1) -> "UniPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, coeff: ScalarLike) -> "UniPoly":
        return cls({0: coeff})

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return self._coeffs

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self._coeffs.items())

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(self._coeffs)

    def coefficient(self, exp: int) -> Fraction:
        return self._coeffs.get(exp, Fraction(0))

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._coeffs, default=-1)

    def low_degree(self) -> int:
        return min(self._coeffs, default=-1)

    def leading_coefficient(self) -> Fraction:
        return self._coeffs[self.degree()] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        from shared.utils.text_io import render_unipoly

        return f"UniPoly({render_unipoly(self)!r})"

    # ---------- arithmetic ----------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        acc = dict(self._coeffs)
        for exp, coeff in other.items():
            acc[exp] = acc.get(exp, Fraction(0)) + coeff
        return UniPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "UniPoly":
        factor = to_scalar(factor)
        return UniPoly({e: c * factor for e, c in self._coeffs.items()})

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        acc: Dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other.items():
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + c1 * c2
        return UniPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise PreconditionError(f"Negative power {k}")
        result, base = UniPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, prec: int) -> "UniPoly":
        """Drop every term of exponent > prec."""
        return UniPoly({e: c for e, c in self._coeffs.items() if e <= prec})

    def mul_truncated(self, other: "UniPoly", prec: int) -> "UniPoly":
        acc: Dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            if e1 > prec:
                break
            for e2, c2 in other.items():
                if e1 + e2 > prec:
                    break
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + c1 * c2
        return UniPoly(acc)

    def derivative(self) -> "UniPoly":
        return UniPoly({e - 1: c * e for e, c in self._coeffs.items() if e > 0})

    def shift(self, v: int) -> "UniPoly":
        """Multiply by x^v (v may be negative when every exponent allows it)."""
        return UniPoly({e + v: c for e, c in self._coeffs.items()})

    def compose_power(self, k: int) -> "UniPoly":
        """f(x) -> f(x^k)."""
        return UniPoly({e * k: c for e, c in self._coeffs.items()})

    def rescale_variable(self, lam: ScalarLike) -> "UniPoly":
        """f(x) -> f(lam x)."""
        lam = to_scalar(lam)
        return UniPoly({e: c * lam ** e for e, c in self._coeffs.items()})

    def __call__(self, value: ScalarLike) -> Fraction:
        value = to_scalar(value)
        return sum((c * value ** e for e, c in self._coeffs.items()), Fraction(0))

    def divmod(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """Euclidean division over the rationals."""
        if divisor.is_zero():
            raise PreconditionError("Division by the zero polynomial")
        quotient: Dict[int, Fraction] = {}
        remainder = self
        d_deg, d_lead = divisor.degree(), divisor.leading_coefficient()
        while not remainder.is_zero() and remainder.degree() >= d_deg:
            shift = remainder.degree() - d_deg
            factor = remainder.leading_coefficient() / d_lead
            quotient[shift] = factor
            remainder = remainder - divisor.shift(shift).scale(factor)
        return UniPoly(quotient), remainder

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coefficient())


def _require_nonzero(f: UniPoly, operation: str) -> None:
    if f.is_zero():
        raise PreconditionError(f"{operation} is undefined on the zero polynomial")


def t_count(f: UniPoly) -> int:
    """Number of nonzero terms t(f)."""
    return len(f)


def reverse(f: UniPoly) -> UniPoly:
    """x^n f(1/x) with n = deg f."""
    _require_nonzero(f, "reverse")
    n = f.degree()
    return UniPoly({n - e: c for e, c in f.items()})


def strip_and_compress(f: UniPoly) -> Tuple[int, int, UniPoly]:
    """
    Write f = x^v * core(x^g) with core(0) != 0 and gcd(Supp(core)) = 1.

    Returns:
        (v, g, core); g = 1 when core is constant
    """
    _require_nonzero(f, "strip_and_compress")
    v = f.low_degree()
    shifted = f.shift(-v)
    g = 0
    for exp in shifted.support:
        g = gcd(g, exp)
    g = g or 1
    core = UniPoly({e // g: c for e, c in shifted.items()})
    return v, g, core


def equiv_to_special(f: UniPoly) -> bool:
    """
    True iff f ~ 1 + x - x^2/2 over the algebraic closure.

    After strip_and_compress the core must be a0 + a1 x + a2 x^2 with
    a1^2 = -2 a0 a2; the condition is symmetric in a0, a2 and homogeneous of
    degree two, so it is stable under every generator of the relation.
    """
    _require_nonzero(f, "equiv_to_special")
    _, _, core = strip_and_compress(f)
    if core.support != (0, 1, 2):
        return False
    a0, a1, a2 = core.coefficient(0), core.coefficient(1), core.coefficient(2)
    return a1 * a1 == -2 * a0 * a2


def binomial_fraction(alpha: Fraction, i: int) -> Fraction:
    """C(alpha, i) by the falling-factorial recurrence."""
    value = Fraction(1)
    for step in range(i):
        value = value * (alpha - step) / (step + 1)
    return value


def kth_root_series(f: UniPoly, k: int, prec: int) -> UniPoly:
    """
    Truncated series u with u(0) = 1 and u^k = f mod x^(prec+1).

    u = sum_i C(1/k, i) (f - 1)^i; since f - 1 has no constant term only the
    first prec+1 summands contribute.
    """
    if k < 1:
        raise PreconditionError(f"kth_root_series requires k >= 1, got {k}")
    if f.coefficient(0) != 1:
        raise PreconditionError("kth_root_series requires constant term exactly 1")
    if prec < 0:
        raise PreconditionError(f"Precision must be nonnegative, got {prec}")
    tail = (f - UniPoly.constant(1)).truncate(prec)
    alpha = Fraction(1, k)
    result = UniPoly.constant(1)
    term_power = UniPoly.constant(1)
    coeff = Fraction(1)
    for i in range(1, prec + 1):
        term_power = term_power.mul_truncated(tail, prec)
        if term_power.is_zero():
            break
        coeff = coeff * (alpha - (i - 1)) / i
        result = result + term_power.scale(coeff)
    return result


def poly_kth_root(f: UniPoly, k: int) -> Optional[Tuple[Fraction, UniPoly]]:
    """
    Find (mu, r) with f = mu * r^k exactly, or None.

    The x-power prefactor x^v must satisfy k | v and is folded into r as
    x^(v/k); the remaining factor of r is normalized to constant term 1.
    """
    if k < 2:
        raise PreconditionError(f"poly_kth_root requires k >= 2, got {k}")
    _require_nonzero(f, "poly_kth_root")
    v = f.low_degree()
    if v % k:
        return None
    stripped = f.shift(-v)
    if stripped.degree() % k:
        return None
    mu = stripped.coefficient(0)
    normalized = stripped.scale(1 / mu)
    root = kth_root_series(normalized, k, stripped.degree() // k)
    if root ** k != normalized:
        return None
    return mu, root.shift(v // k)


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by the monic-remainder Euclidean scheme; gcd(0, 0) = 0."""
    a, b = f.monic(), g.monic()
    while not b.is_zero():
        _, remainder = a.divmod(b)
        a, b = b, remainder.monic()
    return a.monic()


def distinct_factor_count(f: UniPoly) -> int:
    """Number of distinct roots of f in the algebraic closure: deg f - deg gcd(f, f')."""
    _require_nonzero(f, "distinct_factor_count")
    if f.degree() == 0:
        return 0
    return f.degree() - poly_gcd(f, f.derivative()).degree()


def power_support_check(f: UniPoly, k: int) -> Tuple[int, bool]:
    """
    Support size of f^k for t(f) >= 3, and whether it hits the boundary value 4.

    A boundary hit must come with k = 2 and f ~ 1 + x - x^2/2.
    """
    if t_count(f) < 3:
        raise PreconditionError(f"power_support_check requires t(f) >= 3, got {t_count(f)}")
    if k < 2:
        raise PreconditionError(f"power_support_check requires k >= 2, got {k}")
    t = t_count(f ** k)
    boundary = t == 4
    if t < 4:
        raise InvariantBreach(f"t(f^{k}) = {t} < 4 for f = {f!r}")
    if boundary and not (k == 2 and equiv_to_special(f)):
        raise InvariantBreach(f"t(f^{k}) = 4 outside the special class for f = {f!r}")
    if boundary:
        logger.debug(f"Boundary case t(f^2) = 4 for f = {f!r}")
    return t, boundary
