"""
Case analysis of leading terms and the mass bound table.

Provides:
- classify_case / reduce_by_tau / covering_rows: the case table of l_{1,1}(P)
- mass_bound_report: first matching row of the seven-row bound table
- decompose_leading_power / find_F / solve_leading_power: l(P) = mu psi(R)^k and
  the search for F with [R, F]_{rho,sigma} = psi(R)
- reduce_upper_edge: the phi-untwisting chain on the upper edge
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

import sympy

from algebra.support_geometry import (
    Direction,
    LatticePoint,
    bracket_rs,
    cross,
    extract_fP,
    is_aligned,
    is_homogeneous,
    is_subrectangular,
    leading,
    st_en,
    succ_pred,
    valuation,
)
from algebra.unipoly import UniPoly, distinct_factor_count, poly_kth_root
from algebra.weyl_core import CommPoly, Monomial, WeylElement, apply_phi, apply_tau, bracket, psi
from shared.models.schemas import BoundReport, CaseLabel, CaseResult, Witness
from shared.utils.errors import InvariantBreach, PreconditionError
from shared.utils.payloads import to_payload

logger = logging.getLogger(__name__)

DIAGONAL = Direction(1, 1)
HORIZONTAL = Direction(1, 0)
VERTICAL = Direction(0, 1)
X_AXIS_POINT = (2, 0)
Y_AXIS_POINT = (0, 2)

COVERING_ROWS: Dict[CaseLabel, List[int]] = {
    CaseLabel.CASE_1A: [1],
    CaseLabel.CASE_1B: [2, 3],
    CaseLabel.CASE_1C: [2, 3],
    CaseLabel.CASE_2A: [4],
    CaseLabel.CASE_2B: [5, 6],
    CaseLabel.CASE_2C: [5, 6],
    CaseLabel.CASE_3: [7],
}

TAU_REDUCIBLE = {CaseLabel.CASE_1C: CaseLabel.CASE_1B, CaseLabel.CASE_2B: CaseLabel.CASE_2C}


def _witness(name: str, value) -> Witness:
    return Witness(name=name, value=to_payload(value))


# ---------- case table ----------

def classify_case(P: WeylElement) -> CaseResult:
    """
    Label l_{1,1}(P) by the number of distinct linear factors of f_P and
    the alignment of st_{1,1}(P) with (2,0) and en_{1,1}(P) with (0,2).
    """
    if P.is_zero():
        raise PreconditionError("classify_case is undefined on the zero element", code="ZERO_ELEMENT")

    v11 = valuation(P, DIAGONAL)
    witnesses = [_witness("v_{1,1}(P)", v11)]
    if v11 <= 0:
        return CaseResult(label=CaseLabel.EXCLUDED, reason="v_{1,1}(P) <= 0", witnesses=witnesses)

    _, _, f_P = extract_fP(P, DIAGONAL)
    n_factors = distinct_factor_count(f_P)
    st, en = st_en(P, DIAGONAL)
    st_aligned = is_aligned(st, X_AXIS_POINT)
    en_aligned = is_aligned(en, Y_AXIS_POINT)
    witnesses += [
        _witness("f_P", f_P),
        _witness("#factors(f_P)", n_factors),
        _witness("st_{1,1}(P)", st),
        _witness("en_{1,1}(P)", en),
        _witness("st_{1,1}(P) ~ (2,0)", st_aligned),
        _witness("en_{1,1}(P) ~ (0,2)", en_aligned),
    ]

    label: Optional[CaseLabel] = None
    reason: Optional[str] = None
    if n_factors == 0:
        i, j = st
        if i > 0 and j > 0:
            label = CaseLabel.CASE_1A
        elif i == 0:
            label = CaseLabel.CASE_1B
        else:
            label = CaseLabel.CASE_1C
    elif n_factors == 1:
        if st_aligned and en_aligned:
            label = CaseLabel.CASE_2A
        elif st_aligned:
            label = CaseLabel.CASE_2B
        elif en_aligned:
            label = CaseLabel.CASE_2C
        else:
            reason = "st_{1,1}(P) !~ (2,0) and en_{1,1}(P) !~ (0,2)"
    elif n_factors == 2:
        if st_aligned and en_aligned:
            label = CaseLabel.CASE_3
        else:
            reason = "#factors(f_P) = 2 without st_{1,1}(P) ~ (2,0) and en_{1,1}(P) ~ (0,2)"
    else:
        reason = "#factors(f_P) > 2"

    if label is None:
        label = CaseLabel.EXCLUDED
    logger.debug(f"classify_case: {label.value} ({reason or 'ok'})")
    return CaseResult(label=label, reason=reason, witnesses=witnesses)


def reduce_by_tau(P: WeylElement, result: CaseResult) -> Optional[CaseResult]:
    """Case of tau(P) for the labels handled through tau (1c -> 1b, 2b -> 2c)."""
    if result.label not in TAU_REDUCIBLE:
        return None
    image = classify_case(apply_tau(P))
    if image.label != TAU_REDUCIBLE[result.label]:
        raise InvariantBreach(
            f"tau maps case {result.label.value} to {image.label.value}, "
            f"expected {TAU_REDUCIBLE[result.label].value}"
        )
    return image


def covering_rows(label: CaseLabel) -> List[int]:
    """Rows of the bound table covering a case label (empty for EXCLUDED)."""
    return list(COVERING_ROWS.get(label, []))


# ---------- bound table ----------

def mass_bound_report(P: WeylElement, max_k: Optional[int] = None) -> BoundReport:
    """
    Evaluate the seven rows on P and report the bound of the first match.

    Rows 4 to 7 additionally require l_{1,1}(P) = mu psi(R)^k with k >= 2.
    The bound 17 stands for m(P) > 16.
    """
    if P.is_zero():
        raise PreconditionError("mass_bound_report is undefined on the zero element", code="ZERO_ELEMENT")

    _, en10 = st_en(P, HORIZONTAL)
    v_en10 = en10.i - en10.j
    vertex = is_subrectangular(P)
    lead11 = leading(P, DIAGONAL)
    y_power = lead11.is_monomial() and lead11.support[0][0] == 0

    predicates: Dict[str, object] = {
        "subrectangular": to_payload(vertex),
        "en_{1,0}(P)": to_payload(en10),
        "v_{1,-1}(en_{1,0}(P))": v_en10,
        "l_{1,1}(P) = lambda*y^n": y_power,
    }

    rows: List[Tuple[int, int, bool]] = [
        (1, 5, vertex is not None and v_en10 < 0),
        (2, 5, y_power and v_en10 < 0),
        (3, 10, y_power and v_en10 > 0),
    ]

    if valuation(P, DIAGONAL) > 0:
        _, _, f_P = extract_fP(P, DIAGONAL)
        n_factors = distinct_factor_count(f_P)
        st11, en11 = st_en(P, DIAGONAL)
        st_aligned = is_aligned(st11, X_AXIS_POINT)
        en_aligned = is_aligned(en11, Y_AXIS_POINT)
        powered = bool(decompose_leading_power(P, DIAGONAL, max_k=max_k))
        shared_corner = en10 == st11
        predicates.update({
            "#factors(f_P)": n_factors,
            "st_{1,1}(P) ~ (2,0)": st_aligned,
            "en_{1,1}(P) ~ (0,2)": en_aligned,
            "en_{1,0}(P) = st_{1,1}(P)": shared_corner,
            "l_{1,1}(P) is a proper power": powered,
        })
        corner_row = powered and n_factors == 1 and shared_corner and not st_aligned and en_aligned
        rows += [
            (4, 17, powered and n_factors == 1 and st_aligned and en_aligned),
            (5, 5, corner_row and v_en10 < 0),
            (6, 10, corner_row and v_en10 > 0),
            (7, 5, powered and n_factors == 2 and st_aligned and en_aligned),
        ]

    for row, bound, holds in rows:
        if holds:
            rationale = f"row {row} applies: m(P) {'> 16' if bound == 17 else f'>= {bound}'}"
            return BoundReport(implied_bound=bound, row=row, rationale=rationale, predicates=predicates)
    return BoundReport(implied_bound=None, row=None, rationale="no row of the bound table applies", predicates=predicates)


# ---------- power decompositions ----------

class Decomposition(NamedTuple):
    k: int
    R: WeylElement
    mu: Fraction


def decompose_leading_power(P: WeylElement, d: Direction, max_k: Optional[int] = None) -> List[Decomposition]:
    """
    All (k, R, mu) with k >= 2, R (rho,sigma)-homogeneous and l(P) = mu psi(R)^k.

    R is normalized so that the coefficient at st(R) is 1.
    """
    if not d.is_positive():
        raise PreconditionError(f"decompose_leading_power requires rho + sigma > 0, got {d}")
    i, j, f = extract_fP(P, d)
    lead = leading(P, d)
    # f carries exponents rho*l; work with the compressed g(l) = a_l
    g = UniPoly({exp // d.rho: coeff for exp, coeff in f.items()})
    cap = max(i, j, g.degree())
    if max_k is not None:
        cap = min(cap, max_k)

    found: List[Decomposition] = []
    for k in range(2, cap + 1):
        if i % k or j % k:
            continue
        rooted = poly_kth_root(g, k)
        if rooted is None:
            continue
        mu, h = rooted
        a, b = i // k, j // k
        terms: Dict[Monomial, Fraction] = {}
        for e, coeff in h.items():
            u, v = a - d.sigma * e, b + d.rho * e
            if u < 0 or v < 0:
                terms = {}
                break
            terms[(u, v)] = coeff
        if not terms:
            continue
        R = WeylElement(terms)
        if psi(R) ** k * mu != lead:
            continue
        found.append(Decomposition(k, R, mu))
    logger.debug(f"decompose_leading_power at {d}: {len(found)} decomposition(s)")
    return found


@dataclass
class FSearchResult:
    """Affine solution set of [R, F]_{rho,sigma} = psi(R) inside the window 0 <= u, v <= bound."""

    R: WeylElement
    direction: Direction
    bound: int
    candidates: List[Monomial] = field(default_factory=list)
    particular: Optional[WeylElement] = None
    kernel: List[WeylElement] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.particular is not None

    def contains(self, F: WeylElement) -> bool:
        """Membership in the solution set."""
        if F.is_zero() or not set(F.support) <= set(self.candidates):
            return False
        return bracket_rs(self.R, F, self.direction) == psi(self.R)

    def describe(self) -> str:
        if not self.found:
            return f"none within bound {self.bound}"
        from shared.utils.text_io import render_element

        text = render_element(self.particular)
        if self.kernel:
            text += " + span{" + ", ".join(render_element(K) for K in self.kernel) + "}"
        return text


def _to_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def find_F(R: WeylElement, d: Direction, bound: int) -> FSearchResult:
    """
    Solve [R, F]_{rho,sigma} = psi(R) with v_{rho,sigma}(F) = rho + sigma.

    F ranges over combinations of X^u Y^v with rho*u + sigma*v = rho + sigma and
    0 <= u, v <= bound. An empty result means none within the bound, not
    nonexistence.
    """
    if R.is_zero():
        raise PreconditionError("find_F is undefined on the zero element", code="ZERO_ELEMENT")
    if not d.is_positive():
        raise PreconditionError(f"find_F requires rho + sigma > 0, got {d}")
    if not is_homogeneous(R, d):
        raise PreconditionError(f"R is not ({d.rho},{d.sigma})-homogeneous", code="NOT_HOMOGENEOUS")
    if bound < 1:
        raise PreconditionError(f"find_F requires a positive bound, got {bound}")

    level = valuation(R, d)
    candidates = [
        (u, v) for u in range(bound + 1) for v in range(bound + 1) if d.value((u, v)) == d.weight
    ]
    result = FSearchResult(R=R, direction=d, bound=bound, candidates=candidates)
    if not candidates:
        return result

    target = psi(R)
    columns: List[CommPoly] = []
    for u, v in candidates:
        commutator = bracket(R, WeylElement.monomial(u, v))
        columns.append(psi(commutator).restrict(m for m in commutator.support if d.value(m) == level))

    rows = sorted(set(target.support).union(*(set(c.support) for c in columns)))
    A = sympy.Matrix(len(rows), len(candidates), lambda r, c: _to_rational(columns[c].coefficient(*rows[r])))
    b = sympy.Matrix(len(rows), 1, lambda r, _: _to_rational(target.coefficient(*rows[r])))
    try:
        solution, params = A.gauss_jordan_solve(b)
    except ValueError:
        logger.debug(f"find_F at {d}: no solution within bound {bound}")
        return result

    solution = solution.subs({p: 0 for p in params})
    result.particular = WeylElement(
        {m: _to_fraction(solution[idx]) for idx, m in enumerate(candidates)}
    )
    result.kernel = [
        WeylElement({m: _to_fraction(vector[idx]) for idx, m in enumerate(candidates)})
        for vector in A.nullspace()
    ]
    logger.debug(f"find_F at {d}: particular solution with {len(result.kernel)}-dimensional kernel")
    return result


def solve_leading_power(
    P: WeylElement, d: Direction, bound: int, max_k: Optional[int] = None
) -> List[Tuple[Decomposition, FSearchResult]]:
    """Chain decompose_leading_power with find_F for each R."""
    return [(dec, find_F(dec.R, d, bound)) for dec in decompose_leading_power(P, d, max_k=max_k)]


# ---------- upper edge untwisting ----------

def _binomial_power_shift(P: WeylElement, d: Direction) -> Optional[Fraction]:
    """
    mu when l_{1,sigma}(P) = lambda x^m (y - mu x^sigma)^k, else None.

    Along the edge this reads f = lambda (y - mu)^k with st on the x-axis.
    """
    i, j, f = extract_fP(P, d)
    if j != 0 or f.degree() < 1:
        return None
    k = f.degree()
    if k == 1:
        root = f
    else:
        rooted = poly_kth_root(f, k)
        if rooted is None:
            return None
        _, root = rooted
    if root.support != (0, 1):
        return None
    return -root.coefficient(0) / root.coefficient(1)


def reduce_upper_edge(P: WeylElement, max_iters: int) -> Tuple[WeylElement, List[Tuple[int, Fraction]]]:
    """
    Apply Y -> Y + mu X^sigma while Pred_P(0,1) = (1, sigma) lies strictly
    between (1,1) and (0,1) and the leading term there is a binomial power.

    Returns the final element and the trace of (sigma, mu).
    """
    if P.is_zero():
        raise PreconditionError("reduce_upper_edge is undefined on the zero element", code="ZERO_ELEMENT")
    if max_iters < 1:
        raise PreconditionError(f"max_iters must be positive, got {max_iters}")

    current = P
    trace: List[Tuple[int, Fraction]] = []
    for _ in range(max_iters):
        if current.is_monomial():
            break
        _, pred = succ_pred(current, VERTICAL)
        if not (cross(DIAGONAL, pred) > 0 and cross(pred, VERTICAL) > 0) or pred.rho != 1:
            break
        mu = _binomial_power_shift(current, pred)
        if mu is None:
            break
        if trace and pred.sigma >= trace[-1][0]:
            raise InvariantBreach(
                f"reduce_upper_edge: sigma did not decrease ({trace[-1][0]} -> {pred.sigma})"
            )
        current = apply_phi(current, mu, pred.sigma)
        trace.append((pred.sigma, mu))
        logger.debug(f"reduce_upper_edge: applied Y -> Y + {mu}*X^{pred.sigma}")
    return current, trace


__all__ = [
    "COVERING_ROWS",
    "Decomposition",
    "FSearchResult",
    "LatticePoint",
    "classify_case",
    "covering_rows",
    "decompose_leading_power",
    "find_F",
    "mass_bound_report",
    "reduce_by_tau",
    "reduce_upper_edge",
    "solve_leading_power",
]
