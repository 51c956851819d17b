"""
Randomized property suites with independent oracles.

Suites:
- multiplication: closed-form normal_mul against letter-by-letter rewriting YX -> XY + 1
- matrix: matrix_rep is multiplicative on the untruncated subspace
- duality: dir_set against a brute-force scan of primitive directions
- power_support: t(f^k) >= 4 and its boundary case
- bracket_powers: l([R^k, Q]) = k l(R)^(k-1) l([R, Q]) and the graded-bracket implication
- automorphisms: tau and phi preserve brackets, tau preserves mass
- st_en: boundary walk against the closed formula, m(P) >= t(f)
- screening: check_pair sanity on pairs that generate
- untwist: reduce_upper_edge guard and bracket preservation

Every suite draws from its own random.Random seeded per shard, so a fixed
seed gives an identical summary.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd
from random import Random
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from algebra.support_geometry import (
    Direction,
    boundary_st_en,
    bracket_rs,
    dir_set,
    extract_fP,
    leading,
    mass,
    st_en,
)
from algebra.unipoly import UniPoly, equiv_to_special, power_support_check, t_count
from algebra.weyl_core import (
    X,
    Y,
    Monomial,
    WeylElement,
    apply_phi,
    apply_tau,
    bracket,
    matrix_rep,
    normal_mul,
    power,
    psi_inv,
)
from screening.analysis import reduce_upper_edge
from screening.screen_agent import check_pair
from shared.models.schemas import OracleFailure, OracleSummary, SuiteResult, Verdict
from shared.utils.text_io import render_element, render_unipoly

logger = logging.getLogger(__name__)

SMALL_COEFFS = (Fraction(2), Fraction(-2), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2))
SHARD_STRIDE = 1_000_003

# 2 * SMALL_COEFFS; f(0) is taken positive since f and -f share t(f^k)
DOUBLED_COEFFS = (4, -4, 2, -2, 1, -1)
DOUBLED_LEADS = (4, 2, 1)

Case = Tuple[str, Callable[[], Optional[str]]]
# (exponent, 2 * coefficient) pairs, exponents increasing from 0
PowerCandidate = Tuple[Tuple[int, int], ...]


# ---------- random inputs ----------

def random_element(rng: Random, max_degree: int = 8, max_terms: int = 5) -> WeylElement:
    """Nonzero element with total degree <= max_degree and small coefficients."""
    while True:
        pairs = []
        for _ in range(rng.randint(1, max_terms)):
            i = rng.randint(0, max_degree)
            j = rng.randint(0, max_degree - i)
            pairs.append(((i, j), rng.choice(SMALL_COEFFS)))
        element = WeylElement.from_pairs(pairs)
        if not element.is_zero():
            return element


def random_direction(rng: Random, limit: int = 5) -> Direction:
    """Direction in V_{>0} with 0 <= rho <= limit and |sigma| <= limit."""
    while True:
        rho, sigma = rng.randint(0, limit), rng.randint(-limit, limit)
        if rho + sigma > 0 and gcd(rho, sigma) == 1:
            return Direction(rho, sigma)


def random_power_candidate(rng: Random, max_degree: int = 12) -> UniPoly:
    """f with f(0) != 0, t(f) in {3, 4}, deg f <= max_degree."""
    t = rng.choice((3, 4))
    exponents = [0] + rng.sample(range(1, max_degree + 1), t - 1)
    return UniPoly({e: rng.choice(SMALL_COEFFS) for e in exponents})


def enumerate_power_candidates(max_degree: int = 12) -> Iterator[PowerCandidate]:
    """
    Every f with f(0) != 0, t(f) in {3, 4}, deg f <= max_degree and all
    coefficients in SMALL_COEFFS, up to the sign of f.

    Coefficients come doubled so the powers stay in integers; neither the
    doubling, the sign nor an x-power prefactor changes t(f^k).
    """
    for t in (3, 4):
        for rest in combinations(range(1, max_degree + 1), t - 1):
            exponents = (0,) + rest
            for lead in DOUBLED_LEADS:
                for coeffs in product(DOUBLED_COEFFS, repeat=t - 1):
                    yield tuple(zip(exponents, (lead,) + coeffs))


def power_candidate_count(max_degree: int = 12) -> int:
    return sum(
        comb(max_degree, t - 1) * len(DOUBLED_LEADS) * len(DOUBLED_COEFFS) ** (t - 1) for t in (3, 4)
    )


def candidate_to_unipoly(terms: PowerCandidate) -> UniPoly:
    return UniPoly({exp: Fraction(coeff, 2) for exp, coeff in terms})


def power_term_counts(terms: PowerCandidate, top: int = 4) -> Dict[int, int]:
    """t(f^k) for k = 2..top by sparse integer convolution."""
    counts: Dict[int, int] = {}
    current = dict(terms)
    for k in range(2, top + 1):
        step: Dict[int, int] = {}
        for e1, c1 in current.items():
            for e2, c2 in terms:
                step[e1 + e2] = step.get(e1 + e2, 0) + c1 * c2
        current = {exp: coeff for exp, coeff in step.items() if coeff}
        counts[k] = len(current)
    return counts


# ---------- rewriting oracle ----------

def _append_letter(terms: Dict[Monomial, Fraction], letter: str) -> Dict[Monomial, Fraction]:
    out: Dict[Monomial, Fraction] = {}

    def add(key, value):
        out[key] = out.get(key, Fraction(0)) + value

    for (i, j), coeff in terms.items():
        if letter == "Y":
            add((i, j + 1), coeff)
            continue
        # X^i Y^before X Y^after: rewrite the YX next to the moving X
        pending = [(j, 0, coeff)]
        while pending:
            before, after, c = pending.pop()
            if before == 0:
                add((i + 1, after), c)
                continue
            pending.append((before - 1, after + 1, c))
            add((i, before - 1 + after), c)
    return {key: value for key, value in out.items() if value}


def rewrite_product(P: WeylElement, Q: WeylElement) -> WeylElement:
    """P*Q by appending the letters of each word of Q and rewriting YX -> XY + 1."""
    acc: Dict[Monomial, Fraction] = {}
    for (a, b), c1 in P.items():
        for (c, d), c2 in Q.items():
            terms = {(a, b): c1 * c2}
            for letter in "X" * c + "Y" * d:
                terms = _append_letter(terms, letter)
            for key, value in terms.items():
                acc[key] = acc.get(key, Fraction(0)) + value
    return WeylElement(acc)


# ---------- checks (None = pass, text = problem) ----------

def check_multiplication(P: WeylElement, Q: WeylElement) -> Optional[str]:
    closed, rewritten = normal_mul(P, Q), rewrite_product(P, Q)
    if closed != rewritten:
        return f"normal_mul gives {render_element(closed)}, rewriting gives {render_element(rewritten)}"
    return None


def check_matrix(P: WeylElement, Q: WeylElement, depth: int = 4) -> Optional[str]:
    dp, dq = P.degree_x(), Q.degree_x()
    N = dp + dq + max(depth, P.degree_y(), Q.degree_y(), 1)
    valid = N - dp - dq + 1
    lhs = matrix_rep(normal_mul(P, Q), N)[:, :valid]
    rhs = matrix_rep(P, N).dot(matrix_rep(Q, N))[:, :valid]
    if not (lhs == rhs).all():
        return f"matrix_rep(PQ) != matrix_rep(P) matrix_rep(Q) on degrees < {valid} (N = {N})"
    identity = matrix_rep(bracket(Y, X), N)
    if not (identity == np.eye(N + 1, dtype=int)).all():
        return "matrix_rep([Y, X]) is not the identity"
    return None


def check_duality(P: WeylElement) -> Optional[str]:
    window = max(P.total_degree(), 1)
    scanned = set()
    for rho in range(-window, window + 1):
        for sigma in range(-window, window + 1):
            if gcd(rho, sigma) == 1:
                d = Direction(rho, sigma)
                if len(leading(P, d)) > 1:
                    scanned.add(d)
    edges = set(dir_set(P))
    if scanned != edges:
        return f"dir_set {sorted(edges, key=tuple)} != scanned {sorted(scanned, key=tuple)}"
    return None


def check_power_support(f: UniPoly, k: int) -> Optional[str]:
    t, boundary = power_support_check(f, k)
    if t < 4:
        return f"t(f^{k}) = {t}"
    if boundary and not (k == 2 and equiv_to_special(f)):
        return f"t(f^{k}) = 4 outside the special class"
    return None


def check_bracket_powers(R: WeylElement, Q: WeylElement, k: int, d: Direction) -> Optional[str]:
    inner = bracket(R, Q)
    if inner.is_zero():
        return None
    outer = bracket(power(R, k), Q)
    expected = leading(R, d) ** (k - 1) * leading(inner, d) * k
    if leading(outer, d) != expected:
        return f"l([R^{k}, Q]) != {k} l(R)^{k - 1} l([R, Q]) at {d}"
    if not bracket_rs(power(R, k), Q, d).is_zero() and bracket_rs(R, Q, d).is_zero():
        return f"[R^{k}, Q]_d != 0 but [R, Q]_d = 0 at {d}"
    return None


def check_automorphisms(P: WeylElement, Q: WeylElement, mu: Fraction, sigma: int) -> Optional[str]:
    commutator = bracket(P, Q)
    if bracket(apply_tau(P), apply_tau(Q)) != apply_tau(commutator):
        return "tau does not preserve the bracket"
    if bracket(apply_phi(P, mu, sigma), apply_phi(Q, mu, sigma)) != apply_phi(commutator, mu, sigma):
        return f"phi(mu={mu}, sigma={sigma}) does not preserve the bracket"
    if mass(apply_tau(P)) != mass(P):
        return "m(tau(P)) != m(P)"
    return None


def check_st_en(P: WeylElement) -> Optional[str]:
    for d in dir_set(P):
        if not d.is_positive() or d.rho <= 0:
            continue
        i, j, f = extract_fP(P, d)
        n = f.degree() // d.rho
        expected = ((i, j), (i - d.sigma * n, j + d.rho * n))
        if tuple(boundary_st_en(P, d)) != expected:
            return f"boundary walk {boundary_st_en(P, d)} != formula {expected} at {d}"
        if tuple(st_en(P, d)) != expected:
            return f"st_en {st_en(P, d)} != formula {expected} at {d}"
        if mass(P) < t_count(f):
            return f"m(P) = {mass(P)} < t(f) = {t_count(f)} at {d}"
    return None


def check_screening(f: UniPoly) -> Optional[str]:
    Q = X + WeylElement({(0, e): c for e, c in f.items()})
    report = check_pair(Y, Q)
    if report.verdict != Verdict.GENERATES_BY_COROLLARY:
        return f"check_pair(Y, X + f(Y)) gave {report.verdict.value}"
    if check_pair(X, Y).verdict != Verdict.BRACKET_NOT_ONE:
        return "check_pair(X, Y) did not report bracket != 1"
    return None


def _apply_chain(P: WeylElement, trace) -> WeylElement:
    for sigma, mu in trace:
        P = apply_phi(P, mu, sigma)
    return P


def check_untwist(P: WeylElement, Q: WeylElement, max_iters: int = 16) -> Optional[str]:
    final, trace = reduce_upper_edge(P, max_iters)
    sigmas = [sigma for sigma, _ in trace]
    if any(a <= b for a, b in zip(sigmas, sigmas[1:])):
        return f"sigma sequence {sigmas} does not strictly decrease"
    if _apply_chain(P, trace) != final:
        return "final element differs from the recorded chain"
    if bracket(final, _apply_chain(Q, trace)) != _apply_chain(bracket(P, Q), trace):
        return "the phi chain does not preserve the bracket"
    return None


# ---------- case generators ----------

def _multiplication_case(rng: Random) -> Case:
    P, Q = random_element(rng), random_element(rng)
    return f"P = {render_element(P)}; Q = {render_element(Q)}", lambda: check_multiplication(P, Q)


def _matrix_case(rng: Random) -> Case:
    P, Q = random_element(rng, max_degree=4), random_element(rng, max_degree=4)
    return f"P = {render_element(P)}; Q = {render_element(Q)}", lambda: check_matrix(P, Q)


def _duality_case(rng: Random) -> Case:
    P = random_element(rng, max_degree=6, max_terms=6)
    return f"P = {render_element(P)}", lambda: check_duality(P)


def _power_support_case(rng: Random) -> Case:
    f, k = random_power_candidate(rng), rng.choice((2, 3, 4))
    return f"f = {render_unipoly(f)}; k = {k}", lambda: check_power_support(f, k)


def _bracket_powers_case(rng: Random) -> Case:
    d = random_direction(rng)
    R = random_element(rng, max_degree=3, max_terms=3)
    if rng.random() < 0.5:
        R = psi_inv(leading(R, d))
    Q = random_element(rng, max_degree=3, max_terms=3)
    k = rng.choice((2, 3, 4))
    inputs = f"R = {render_element(R)}; Q = {render_element(Q)}; k = {k}; d = {d}"
    return inputs, lambda: check_bracket_powers(R, Q, k, d)


def _automorphism_case(rng: Random) -> Case:
    P, Q = random_element(rng, max_degree=3, max_terms=3), random_element(rng, max_degree=3, max_terms=3)
    mu, sigma = rng.choice(SMALL_COEFFS), rng.randint(1, 4)
    inputs = f"P = {render_element(P)}; Q = {render_element(Q)}; mu = {mu}; sigma = {sigma}"
    return inputs, lambda: check_automorphisms(P, Q, mu, sigma)


def _st_en_case(rng: Random) -> Case:
    P = random_element(rng, max_degree=6, max_terms=6)
    return f"P = {render_element(P)}", lambda: check_st_en(P)


def _screening_case(rng: Random) -> Case:
    f = UniPoly({e: rng.choice(SMALL_COEFFS) for e in rng.sample(range(0, 6), rng.randint(1, 3))})
    return f"f = {render_unipoly(f, 'Y')}", lambda: check_screening(f)


def _untwist_case(rng: Random) -> Case:
    base = random_element(rng, max_degree=3, max_terms=3)
    if rng.random() < 0.5:
        # hide an untwistable edge behind Y -> Y - mu X^sigma
        base = apply_phi(base, -rng.choice(SMALL_COEFFS), rng.randint(2, 3))
    Q = random_element(rng, max_degree=2, max_terms=2)
    return f"P = {render_element(base)}; Q = {render_element(Q)}", lambda: check_untwist(base, Q)


SUITES: List[Tuple[str, Callable[[Random], Case]]] = [
    ("multiplication", _multiplication_case),
    ("matrix", _matrix_case),
    ("duality", _duality_case),
    ("power_support", _power_support_case),
    ("bracket_powers", _bracket_powers_case),
    ("automorphisms", _automorphism_case),
    ("st_en", _st_en_case),
    ("screening", _screening_case),
    ("untwist", _untwist_case),
]


# ---------- runner ----------

def _run_case(name: str, index: int, case: Case) -> Optional[OracleFailure]:
    inputs, check = case
    try:
        problem = check()
    except Exception as e:  # any exception is a counterexample
        problem = f"{type(e).__name__}: {e}"
    if problem is None:
        return None
    logger.warning(f"[{name}] case {index} failed: {inputs}: {problem}")
    return OracleFailure(suite=name, case=index, detail=f"{inputs}: {problem}")


def run_shard(seed: int, shard: int, workers: int, cases: int, exhaustive: bool = False) -> List[SuiteResult]:
    """Run this shard's share of the cases of every suite."""
    shard_seed = seed * SHARD_STRIDE + shard
    indices = range(shard, cases, workers)
    results = []
    for offset, (name, generator) in enumerate(SUITES):
        rng = Random(shard_seed * len(SUITES) + offset)
        suite = SuiteResult(name=name)
        for index in indices:
            failure = _run_case(name, index, generator(rng))
            if failure is None:
                suite.passed += 1
            else:
                suite.failed += 1
                suite.failures.append(failure)
        results.append(suite)

    if exhaustive:
        results.append(run_power_enumeration(shard=shard, workers=workers))
    return results


def run_power_enumeration(max_degree: int = 12, shard: int = 0, workers: int = 1) -> SuiteResult:
    """
    Exhaustive t(f^k) enumeration for k in {2, 3, 4}.

    Shard s takes candidates s, s + workers, s + 2 * workers, ...
    """
    suite = SuiteResult(name="power_support_exhaustive")
    for index, terms in enumerate(enumerate_power_candidates(max_degree)):
        if index % workers != shard:
            continue
        for k, t in power_term_counts(terms).items():
            if t < 4:
                problem = f"t(f^{k}) = {t}"
            elif t == 4 and not (k == 2 and equiv_to_special(candidate_to_unipoly(terms))):
                problem = f"t(f^{k}) = 4 outside the special class"
            else:
                suite.passed += 1
                continue
            detail = f"f = {render_unipoly(candidate_to_unipoly(terms))}; k = {k}: {problem}"
            logger.warning(f"[{suite.name}] case {index} failed: {detail}")
            suite.failed += 1
            suite.failures.append(OracleFailure(suite=suite.name, case=index, detail=detail))
    return suite


def _merge(results: List[List[SuiteResult]]) -> List[SuiteResult]:
    merged: Dict[str, SuiteResult] = {}
    for shard_results in results:
        for suite in shard_results:
            total = merged.setdefault(suite.name, SuiteResult(name=suite.name))
            total.passed += suite.passed
            total.failed += suite.failed
            total.failures.extend(suite.failures)
    for suite in merged.values():
        suite.failures.sort(key=lambda failure: (failure.case, failure.detail))
    return list(merged.values())


def oracle_suite(seed: int, cases: int, workers: int = 1, exhaustive: bool = False) -> OracleSummary:
    """
    Run every suite with `cases` cases each, sharded over `workers` processes.

    Shard s uses seed * 1_000_003 + s; the summary does not depend on the
    order in which shards finish.
    """
    if not exhaustive:
        workers = min(workers, cases)
    workers = max(1, workers)
    if workers == 1:
        shard_results = [run_shard(seed, 0, 1, cases, exhaustive)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_shard, seed, s, workers, cases, exhaustive) for s in range(workers)]
            shard_results = [future.result() for future in futures]

    summary = OracleSummary(seed=seed, cases=cases, workers=workers, suites=_merge(shard_results))
    for suite in summary.suites:
        logger.info(f"[{suite.name}] passed {suite.passed}, failed {suite.failed}")
    return summary
