"""
Support geometry of Weyl algebra elements.

Provides:
- Direction, LatticePoint, NewtonPolygon: the lattice data
- valuation, leading, mass, graded_components: (rho, sigma)-graded structure
- newton_polygon, dir_set, succ_pred, st_en: edges of the Newton polygon
- extract_fP: the univariate polynomial along an edge (rho > 0)
- is_subrectangular, bracket_rs, necessary_conditions
"""

import functools
import logging
import numbers
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from algebra.unipoly import UniPoly
from algebra.weyl_core import BivariatePolynomial, CommPoly, WeylElement, bracket, psi
from shared.utils.errors import InvariantBreach, PreconditionError

logger = logging.getLogger(__name__)

Element = Union[WeylElement, CommPoly]


@functools.total_ordering
class _NegInfinity:
    """Valuation of the zero element; compares below every real number, supports no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INFINITY"

    def __lt__(self, other) -> bool:
        if other is self:
            return False
        if isinstance(other, numbers.Real):
            return True
        return NotImplemented

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("NEG_INFINITY")

    def _refuse(self, other):
        raise TypeError("NEG_INFINITY takes part in no arithmetic except max()")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = __neg__ = _refuse


NEG_INFINITY = _NegInfinity()


class LatticePoint(NamedTuple):
    i: int
    j: int

    def __add__(self, other) -> "LatticePoint":
        return LatticePoint(self.i + other[0], self.j + other[1])

    def scaled(self, n: int) -> "LatticePoint":
        return LatticePoint(self.i * n, self.j * n)


def cross(a, b) -> int:
    """(a, b) x (c, d) = ad - bc."""
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class Direction:
    """Coprime integer pair (rho, sigma)."""

    rho: int
    sigma: int

    def __post_init__(self):
        if gcd(self.rho, self.sigma) != 1:
            raise PreconditionError(
                f"Direction ({self.rho}, {self.sigma}) is not coprime", code="DIRECTION_NOT_COPRIME"
            )

    def __iter__(self):
        yield self.rho
        yield self.sigma

    def __getitem__(self, index: int) -> int:
        return (self.rho, self.sigma)[index]

    def __neg__(self) -> "Direction":
        return Direction(-self.rho, -self.sigma)

    def __repr__(self) -> str:
        return f"({self.rho},{self.sigma})"

    @property
    def weight(self) -> int:
        """rho + sigma."""
        return self.rho + self.sigma

    def is_positive(self) -> bool:
        """Membership in V_{>0}."""
        return self.rho + self.sigma > 0

    def value(self, point) -> int:
        return self.rho * point[0] + self.sigma * point[1]

    def travel(self) -> Tuple[int, int]:
        """Counterclockwise travel vector (-sigma, rho) along an edge with this outer normal."""
        return (-self.sigma, self.rho)

    @classmethod
    def parse(cls, text: str) -> "Direction":
        """Parse 'R,S' (the --dir flag format)."""
        try:
            rho, sigma = (int(part) for part in text.split(","))
        except ValueError:
            raise PreconditionError(f"Direction must look like 'R,S', got {text!r}", code="BAD_DIRECTION")
        return cls(rho, sigma)


@dataclass(frozen=True)
class NewtonPolygon:
    """Counterclockwise extreme points of the support's convex hull."""

    vertices: Tuple[LatticePoint, ...]

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    def edges(self) -> List[Tuple[LatticePoint, LatticePoint]]:
        """Directed edges in counterclockwise order (a segment has two)."""
        count = len(self.vertices)
        if count < 2:
            return []
        return [(self.vertices[k], self.vertices[(k + 1) % count]) for k in range(count)]


# ---------- direction order ----------

def compare_directions(a: Direction, b: Direction) -> int:
    """
    Interval order: a < b iff a x b > 0.

    Returns -1, 0 or 1. Opposite directions do not lie in a common interval
    and are refused.
    """
    if a == b:
        return 0
    if a == -b:
        raise PreconditionError(f"Directions {a} and {b} are opposite; no interval contains both")
    return -1 if cross(a, b) > 0 else 1


def nonneg_order_key(d: Direction):
    """
    Sort key on the closed interval V_{>=0}: (1,-1) < V_{>0} < (-1,1).
    """
    if d.weight < 0:
        raise PreconditionError(f"Direction {d} lies outside V_{{>=0}}")
    if d == Direction(1, -1):
        return (0, 0)
    if d == Direction(-1, 1):
        return (2, 0)
    # Angle within the open half plane rho + sigma > 0, measured from (1,-1):
    # the ratio below is strictly increasing counterclockwise.
    return (1, Fraction(d.sigma - d.rho, d.rho + d.sigma))


def _angle_half(d) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _angle_half(a), _angle_half(b)
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = functools.cmp_to_key(_angle_cmp)


def _ccw_offset_group(start: Direction, d: Direction) -> int:
    """Bucket of the counterclockwise angle from start to d: (0,pi), pi, (pi,2pi), 2pi."""
    c = cross(start, d)
    if c > 0:
        return 0
    if c < 0:
        return 2
    return 3 if d == start else 1


def _ccw_offset_cmp(start: Direction):
    def compare(a: Direction, b: Direction) -> int:
        ga, gb = _ccw_offset_group(start, a), _ccw_offset_group(start, b)
        if ga != gb:
            return ga - gb
        c = cross(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return functools.cmp_to_key(compare)


# ---------- valuations and leading terms ----------

def _as_comm(P: Element) -> CommPoly:
    return psi(P) if isinstance(P, WeylElement) else P


def _require_nonzero(P: BivariatePolynomial, operation: str) -> None:
    if P.is_zero():
        raise PreconditionError(f"{operation} is undefined on the zero element", code="ZERO_ELEMENT")


def valuation(P: Element, d: Direction):
    """max of rho*i + sigma*j over Supp(P); NEG_INFINITY for P = 0."""
    if P.is_zero():
        return NEG_INFINITY
    return max(d.value(point) for point in P.support)


def leading(P: Element, d: Direction) -> CommPoly:
    """l_{rho,sigma}(P) as an element of K[x, y]."""
    _require_nonzero(P, "leading")
    top = valuation(P, d)
    comm = _as_comm(P)
    return comm.restrict(point for point in comm.support if d.value(point) == top)


def is_homogeneous(P: Element, d: Direction) -> bool:
    return len({d.value(point) for point in P.support}) <= 1


def mass(P: Element) -> int:
    """Number of nonzero homogeneous components: distinct values of i - j."""
    return len({i - j for i, j in P.support})


def graded_components(P: WeylElement) -> List[Tuple[int, WeylElement]]:
    """Split P by level i - j, highest level first."""
    buckets: Dict[int, Dict] = {}
    for (i, j), coeff in P.items():
        buckets.setdefault(i - j, {})[(i, j)] = coeff
    return [(level, WeylElement(buckets[level])) for level in sorted(buckets, reverse=True)]


# ---------- Newton polygon ----------

def convex_hull(points) -> List[LatticePoint]:
    """Monotone chain; counterclockwise, collinear points dropped, starts at the lowest-left point."""
    pts = sorted(set(LatticePoint(*p) for p in points))
    if len(pts) <= 2:
        return pts

    def half(sequence):
        chain: List[LatticePoint] = []
        for p in sequence:
            while len(chain) >= 2 and cross(
                (chain[-1].i - chain[-2].i, chain[-1].j - chain[-2].j),
                (p.i - chain[-2].i, p.j - chain[-2].j),
            ) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower, upper = half(pts), half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull


def newton_polygon(P: Element) -> NewtonPolygon:
    _require_nonzero(P, "newton_polygon")
    return NewtonPolygon(tuple(convex_hull(P.support)))


def _edge_normal(p: LatticePoint, q: LatticePoint) -> Direction:
    dx, dy = q.i - p.i, q.j - p.j
    g = gcd(dx, dy)
    return Direction(dy // g, -dx // g)


def dir_set(P: Element) -> List[Direction]:
    """Primitive outer normals of the polygon's edges, counterclockwise from (1,0)."""
    _require_nonzero(P, "dir_set")
    polygon = newton_polygon(P)
    return sorted((_edge_normal(p, q) for p, q in polygon.edges()), key=angle_key)


def succ_pred(P: Element, d: Direction) -> Tuple[Direction, Direction]:
    """
    (Succ_P(d), Pred_P(d)): the first edge direction met running counterclockwise
    (resp. clockwise) strictly after d.
    """
    _require_nonzero(P, "succ_pred")
    if P.is_monomial():
        raise PreconditionError("succ_pred is undefined on a monomial", code="MONOMIAL")
    directions = [e for e in dir_set(P) if e != d]
    ordered = sorted(directions, key=_ccw_offset_cmp(d))
    return ordered[0], ordered[-1]


def boundary_st_en(P: Element, d: Direction) -> Tuple[LatticePoint, LatticePoint]:
    """st/en by walking the polygon boundary counterclockwise."""
    polygon = newton_polygon(P)
    for p, q in polygon.edges():
        if _edge_normal(p, q) == d:
            return p, q
    top = max(polygon.vertices, key=d.value)
    return top, top


def st_en(P: Element, d: Direction) -> Tuple[LatticePoint, LatticePoint]:
    """
    First and last point of H(l_{rho,sigma}(P)) on the counterclockwise boundary.

    For rho + sigma > 0 they are the supports of l_{1,-1} and l_{-1,1} of the
    leading term; otherwise the boundary walk is used.
    """
    _require_nonzero(P, "st_en")
    if not d.is_positive():
        return boundary_st_en(P, d)
    lead = leading(P, d)
    (st,) = leading(lead, Direction(1, -1)).support
    (en,) = leading(lead, Direction(-1, 1)).support
    return LatticePoint(*st), LatticePoint(*en)


def extract_fP(P: Element, d: Direction) -> Tuple[int, int, UniPoly]:
    """
    (i, j, f) with l_{rho,sigma}(P) = x^i y^j sum_l a_l x^{-sigma l} y^{rho l}
    and f(y) = sum_l a_l y^{rho l}. Requires rho > 0.
    """
    if d.rho <= 0:
        raise PreconditionError(f"extract_fP requires rho > 0, got direction {d}", code="RHO_NOT_POSITIVE")
    _require_nonzero(P, "extract_fP")
    lead = leading(P, d)
    travel = d.travel()
    i, j = min(lead.support, key=lambda point: travel[0] * point[0] + travel[1] * point[1])
    coeffs = {}
    for (u, v), coeff in lead.items():
        l, rest = divmod(v - j, d.rho)
        if rest or u != i - d.sigma * l:
            raise InvariantBreach(f"Leading term of direction {d} is not aligned at ({u}, {v})")
        coeffs[d.rho * l] = coeff
    return i, j, UniPoly(coeffs)


def is_subrectangular(P: Element) -> Optional[LatticePoint]:
    """The vertex (a, b) when (a, b) in Supp(P) within [0,a] x [0,b] and a, b >= 1."""
    _require_nonzero(P, "is_subrectangular")
    a, b = P.degree_x(), P.degree_y()
    if a >= 1 and b >= 1 and (a, b) in P.terms:
        return LatticePoint(a, b)
    return None


def bracket_rs(P: WeylElement, Q: WeylElement, d: Direction) -> CommPoly:
    """
    [P, Q]_{rho,sigma}: l([P,Q]) when v([P,Q]) = v(P) + v(Q) - (rho+sigma), else 0.
    """
    _require_nonzero(P, "bracket_rs")
    _require_nonzero(Q, "bracket_rs")
    if not d.is_positive():
        raise PreconditionError(f"bracket_rs requires rho + sigma > 0, got {d}")
    commutator = bracket(P, Q)
    if commutator.is_zero():
        return CommPoly.zero()
    bound = valuation(P, d) + valuation(Q, d) - d.weight
    level = valuation(commutator, d)
    if level > bound:
        raise InvariantBreach(f"v([P,Q]) = {level} exceeds v(P) + v(Q) - (rho+sigma) = {bound} at {d}")
    if level < bound:
        return CommPoly.zero()
    return leading(commutator, d)


def necessary_conditions(P: Element) -> List[str]:
    """
    Valuation signs every counterexample P must satisfy; returns the violated ones.

    v_{1,-1}(P) > 0 and v_{-1,1}(P) > 0, and v_{rho,sigma}(P) > 0 on (1,1) and on
    every edge direction of V_{>0}.
    """
    _require_nonzero(P, "necessary_conditions")
    violations = []
    for d in (Direction(1, -1), Direction(-1, 1)):
        v = valuation(P, d)
        if v <= 0:
            violations.append(f"v_{{{d.rho},{d.sigma}}}(P) = {v} <= 0")
    candidates = [Direction(1, 1)] + [d for d in dir_set(P) if d.is_positive()]
    for d in candidates:
        v = valuation(P, d)
        if v <= 0:
            violations.append(f"v_{{{d.rho},{d.sigma}}}(P) = {v} <= 0")
    return violations


def is_aligned(A, B) -> bool:
    """A ~ B: A = lambda B with lambda nonzero."""
    return cross(A, B) == 0 and tuple(A) != (0, 0) and tuple(B) != (0, 0)


def not_aligned(A, B) -> bool:
    """A !~ B: A x B != 0."""
    return cross(A, B) != 0
