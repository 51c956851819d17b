"""
Command Service - one entry point for every tool command.

Each command maps onto a single module operation and returns a
ReportDocument {command, inputs, result, witnesses, meta}. The CLI and the
HTTP router both go through run_command.
"""

import logging
from typing import Any, Callable, Dict, List, NamedTuple, Optional

from algebra import support_geometry as geometry
from algebra import unipoly
from algebra.support_geometry import Direction
from algebra.weyl_core import WeylElement, bracket, normal_mul, power, psi
from screening.analysis import (
    classify_case,
    covering_rows,
    decompose_leading_power,
    find_F,
    mass_bound_report,
    reduce_by_tau,
    reduce_upper_edge,
    solve_leading_power,
)
from screening.screen_agent import check_pair
from shared.config.settings import Settings, get_settings
from shared.models.schemas import ReportDocument, ReportMeta, Witness
from shared.services.oracle_suite import oracle_suite
from shared.utils.errors import PreconditionError
from shared.utils.payloads import to_payload
from shared.utils.report_renderer import render_newton_ascii
from shared.utils.text_io import parse_element, parse_unipoly, render_element

logger = logging.getLogger(__name__)


class CommandResult(NamedTuple):
    result: Any
    witnesses: List[Witness]
    seed: Optional[int] = None


Handler = Callable[[List[str], Dict[str, Any], Settings], CommandResult]
COMMANDS: Dict[str, Handler] = {}


def command(name: str):
    """Register a handler under a command name."""
    def register(handler: Handler) -> Handler:
        COMMANDS[name] = handler
        return handler
    return register


def list_commands() -> List[str]:
    return list(COMMANDS)


# ---------- argument helpers ----------

def _expect_args(args: List[str], count: int, usage: str) -> None:
    if len(args) != count:
        raise PreconditionError(f"Usage: {usage}", code="USAGE")


def _element(source: str) -> WeylElement:
    return parse_element(source)


def _integer(text: Any, name: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError):
        raise PreconditionError(f"{name} must be an integer, got {text!r}", code="USAGE")


def _direction(flags: Dict[str, Any]) -> Direction:
    value = flags.get("dir")
    if value is None:
        raise PreconditionError("This command needs --dir R,S", code="USAGE")
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise PreconditionError(f"Direction must have two entries, got {value!r}", code="BAD_DIRECTION")
        return Direction(_integer(value[0], "rho"), _integer(value[1], "sigma"))
    return Direction.parse(str(value))


def _flag_int(flags: Dict[str, Any], name: str, default: Optional[int]) -> Optional[int]:
    value = flags.get(name)
    return default if value is None else _integer(value, name)


def _w(name: str, value: Any) -> Witness:
    return Witness(name=name, value=to_payload(value))


# ---------- weyl_core ----------

@command("normalize")
def _normalize(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "normalize ELEMENT")
    return CommandResult(render_element(_element(args[0])), [])


@command("mul")
def _mul(args, flags, settings) -> CommandResult:
    if len(args) < 2:
        raise PreconditionError("Usage: mul ELEMENT ELEMENT [ELEMENT ...]", code="USAGE")
    product = _element(args[0])
    for source in args[1:]:
        product = normal_mul(product, _element(source))
    return CommandResult(render_element(product), [])


@command("bracket")
def _bracket(args, flags, settings) -> CommandResult:
    _expect_args(args, 2, "bracket P Q")
    return CommandResult(render_element(bracket(_element(args[0]), _element(args[1]))), [])


@command("pow")
def _pow(args, flags, settings) -> CommandResult:
    _expect_args(args, 2, "pow ELEMENT K")
    k = _integer(args[1], "k")
    if k < 0:
        raise PreconditionError(f"pow requires k >= 0, got {k}")
    return CommandResult(render_element(power(_element(args[0]), k)), [])


# ---------- support_geometry ----------

@command("mass")
def _mass(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "mass ELEMENT [--square]")
    P = _element(args[0])
    if flags.get("square"):
        P = normal_mul(P, P)
    levels = [level for level, _ in geometry.graded_components(P)]
    return CommandResult(geometry.mass(P), [_w("levels", levels)])


@command("valuation")
def _valuation(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "valuation ELEMENT --dir R,S")
    return CommandResult(to_payload(geometry.valuation(_element(args[0]), _direction(flags))), [])


@command("leading")
def _leading(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "leading ELEMENT --dir R,S")
    P, d = _element(args[0]), _direction(flags)
    return CommandResult(to_payload(geometry.leading(P, d)), [_w("v", geometry.valuation(P, d))])


@command("st-en")
def _st_en(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "st-en ELEMENT --dir R,S")
    st, en = geometry.st_en(_element(args[0]), _direction(flags))
    return CommandResult({"st": to_payload(st), "en": to_payload(en)}, [])


@command("newton")
def _newton(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "newton ELEMENT [--ascii]")
    P = _element(args[0])
    payload = to_payload(geometry.newton_polygon(P))
    if flags.get("ascii"):
        payload["ascii"] = render_newton_ascii(P)
    return CommandResult(payload, [])


@command("dirs")
def _dirs(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "dirs ELEMENT [--dir R,S]")
    P = _element(args[0])
    witnesses = []
    if flags.get("dir") is not None and not P.is_monomial():
        succ, pred = geometry.succ_pred(P, _direction(flags))
        witnesses = [_w("succ", succ), _w("pred", pred)]
    return CommandResult(to_payload(geometry.dir_set(P)), witnesses)


@command("fpoly")
def _fpoly(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "fpoly ELEMENT --dir R,S")
    i, j, f = geometry.extract_fP(_element(args[0]), _direction(flags))
    return CommandResult({"st": [i, j], "f": to_payload(f)}, [_w("t(f)", unipoly.t_count(f))])


@command("subrect")
def _subrect(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "subrect ELEMENT")
    return CommandResult(to_payload(geometry.is_subrectangular(_element(args[0]))), [])


@command("bracket-rs")
def _bracket_rs(args, flags, settings) -> CommandResult:
    _expect_args(args, 2, "bracket-rs P Q --dir R,S")
    P, Q, d = _element(args[0]), _element(args[1]), _direction(flags)
    value = geometry.bracket_rs(P, Q, d)
    witnesses = [
        _w("bound", geometry.valuation(P, d) + geometry.valuation(Q, d) - d.weight),
        _w("equals psi(P)", value == psi(P)),
    ]
    return CommandResult(to_payload(value), witnesses)


# ---------- screening ----------

@command("classify")
def _classify(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "classify ELEMENT")
    P = _element(args[0])
    result = classify_case(P)
    witnesses = list(result.witnesses) + [_w("covering_rows", covering_rows(result.label))]
    tau_case = reduce_by_tau(P, result)
    if tau_case is not None:
        witnesses.append(_w("tau_case", tau_case.label.value))
    bound = mass_bound_report(P, max_k=settings.decompose_max_k)
    witnesses.append(_w("bound", bound))
    return CommandResult({"case": result.label.value, "reason": result.reason}, witnesses)


@command("screen")
def _screen(args, flags, settings) -> CommandResult:
    _expect_args(args, 2, "screen P Q")
    report = check_pair(_element(args[0]), _element(args[1]), max_k=settings.decompose_max_k)
    payload = report.model_dump(mode="json", exclude={"witnesses"})
    return CommandResult(payload, list(report.witnesses))


@command("decompose")
def _decompose(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "decompose ELEMENT --dir R,S [--max-k K] [--solve [--bound B]]")
    P, d = _element(args[0]), _direction(flags)
    max_k = _flag_int(flags, "max_k", settings.decompose_max_k)
    if flags.get("solve"):
        bound = _flag_int(flags, "bound", settings.find_f_bound)
        pairs = solve_leading_power(P, d, bound, max_k=max_k)
        payload = [
            {"k": dec.k, "R": render_element(dec.R), "mu": to_payload(dec.mu), "F": search.describe()}
            for dec, search in pairs
        ]
        return CommandResult(payload, [_w("bound", bound)])
    payload = [
        {"k": dec.k, "R": render_element(dec.R), "mu": to_payload(dec.mu)}
        for dec in decompose_leading_power(P, d, max_k=max_k)
    ]
    return CommandResult(payload, [])


@command("find-f")
def _find_f(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "find-f R --dir R,S [--bound B]")
    bound = _flag_int(flags, "bound", settings.find_f_bound)
    search = find_F(_element(args[0]), _direction(flags), bound)
    payload = {
        "found": search.found,
        "particular": to_payload(search.particular),
        "kernel": [render_element(K) for K in search.kernel],
        "bound": bound,
    }
    return CommandResult(payload, [_w("solution", search.describe()), _w("candidates", search.candidates)])


@command("untwist")
def _untwist(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "untwist ELEMENT [--max-iters N]")
    max_iters = _flag_int(flags, "max_iters", settings.untwist_max_iters)
    final, trace = reduce_upper_edge(_element(args[0]), max_iters)
    payload = {
        "result": render_element(final),
        "trace": [{"sigma": sigma, "mu": to_payload(mu)} for sigma, mu in trace],
    }
    return CommandResult(payload, [])


# ---------- unipoly ----------

@command("tcount")
def _tcount(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "tcount POLY")
    f = parse_unipoly(args[0])
    witnesses = []
    if not f.is_zero():
        v, g, core = unipoly.strip_and_compress(f)
        witnesses = [
            _w("strip_and_compress", {"v": v, "g": g, "core": core}),
            _w("equiv_to_special", unipoly.equiv_to_special(f)),
        ]
    return CommandResult(unipoly.t_count(f), witnesses)


@command("kth-root")
def _kth_root(args, flags, settings) -> CommandResult:
    _expect_args(args, 2, "kth-root POLY K [--prec P]")
    f, k = parse_unipoly(args[0]), _integer(args[1], "k")
    prec = _flag_int(flags, "prec", None)
    if prec is not None:
        return CommandResult(to_payload(unipoly.kth_root_series(f, k, prec)), [_w("prec", prec)])
    rooted = unipoly.poly_kth_root(f, k)
    if rooted is None:
        return CommandResult(None, [])
    mu, root = rooted
    return CommandResult({"mu": to_payload(mu), "root": to_payload(root)}, [])


@command("factors")
def _factors(args, flags, settings) -> CommandResult:
    _expect_args(args, 1, "factors POLY")
    return CommandResult(unipoly.distinct_factor_count(parse_unipoly(args[0])), [])


@command("power-check")
def _power_check(args, flags, settings) -> CommandResult:
    _expect_args(args, 2, "power-check POLY K")
    t, boundary = unipoly.power_support_check(parse_unipoly(args[0]), _integer(args[1], "k"))
    return CommandResult({"t": t, "boundary_case": boundary}, [])


# ---------- oracles ----------

@command("selftest")
def _selftest(args, flags, settings) -> CommandResult:
    _expect_args(args, 0, "selftest [--seed N] [--cases M] [--workers W] [--exhaustive]")
    seed = _flag_int(flags, "seed", settings.selftest_seed)
    cases = _flag_int(flags, "cases", settings.selftest_cases)
    workers = _flag_int(flags, "workers", settings.selftest_workers)
    summary = oracle_suite(seed, cases, workers=workers, exhaustive=bool(flags.get("exhaustive")))
    payload = {
        "ok": summary.ok,
        "suites": [
            {"name": s.name, "passed": s.passed, "failed": s.failed, "failures": [f.detail for f in s.failures]}
            for s in summary.suites
        ],
    }
    return CommandResult(payload, [], seed=seed)


def run_command(
    name: str,
    args: List[str],
    flags: Optional[Dict[str, Any]] = None,
    settings: Optional[Settings] = None,
) -> ReportDocument:
    """
    Run one command.

    Args:
        name: Command name (see list_commands)
        args: Positional arguments (element sources, integers)
        flags: Flags such as dir, square, bound, seed
        settings: Overrides the cached settings

    Returns:
        ReportDocument

    Raises:
        PreconditionError: unknown command, bad arguments or a violated precondition
        InvariantBreach: a computed result contradicts the theory
    """
    settings = settings or get_settings()
    flags = {key: value for key, value in (flags or {}).items() if value is not None and value is not False}
    handler = COMMANDS.get(name)
    if handler is None:
        raise PreconditionError(f"Unknown command {name!r}", code="UNKNOWN_COMMAND")

    logger.info(f"Running {name} with {len(args)} argument(s)")
    outcome = handler(list(args), flags, settings)
    return ReportDocument(
        command=name,
        inputs={"args": list(args), "flags": to_payload(flags)},
        result=outcome.result,
        witnesses=outcome.witnesses,
        meta=ReportMeta(version=settings.version, seed=outcome.seed),
    )
