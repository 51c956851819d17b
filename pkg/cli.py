"""
Command-line entry point.

    weylmass COMMAND [ARGS...] [--dir R,S] [--json] ...
    weylmass --golden FILE

Exit codes: 0 success, 1 precondition or parse error, 2 invariant breach.
Element arguments starting with '-' must follow a '--' separator.
"""

import argparse
import logging
import shlex
import sys
from typing import List, Optional, Tuple

from shared.config.settings import get_settings
from shared.services.command_service import list_commands, run_command
from shared.utils.errors import ParseError, WeylMassError
from shared.utils.report_renderer import render_json, render_text
from shared.utils.text_io import parse_element

logger = logging.getLogger(__name__)

GOLDEN_PREFIX = "=> "


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="weylmass",
        description="Exact Weyl algebra computations and mass screening",
        epilog="Arguments starting with '-' go after a '--' separator: weylmass normalize -- -X+Y",
    )
    parser.add_argument("-v", "--version", action="version", version=f"weylmass {get_settings().version}")
    parser.add_argument("--golden", metavar="FILE", help="run a file of command lines against recorded outputs")
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    parser.add_argument("command", nargs="?", help=", ".join(list_commands()))
    parser.add_argument("args", nargs="*", help="element sources, polynomials or integers")
    parser.add_argument("--dir", help="direction R,S (coprime); write --dir=-1,1 when R is negative")
    parser.add_argument("--square", action="store_true", help="mass: use P*P")
    parser.add_argument("--ascii", action="store_true", help="newton: draw the lattice")
    parser.add_argument("--bound", type=int, help="find-f / decompose --solve window")
    parser.add_argument("--max-k", dest="max_k", type=int, help="decompose: largest k")
    parser.add_argument("--solve", action="store_true", help="decompose: also search F")
    parser.add_argument("--max-iters", dest="max_iters", type=int, help="untwist: iteration cap")
    parser.add_argument("--prec", type=int, help="kth-root: series precision")
    parser.add_argument("--seed", type=int, help="selftest: RNG seed")
    parser.add_argument("--cases", type=int, help="selftest: cases per suite")
    parser.add_argument("--workers", type=int, help="selftest: worker processes")
    parser.add_argument("--exhaustive", action="store_true", help="selftest: full t(f^k) enumeration")
    return parser


FLAG_NAMES = (
    "dir", "square", "ascii", "bound", "max_k", "solve", "max_iters", "prec", "seed", "cases", "workers", "exhaustive"
)


def _failing_source(args: List[str], error: ParseError) -> str:
    """The argument that raised the parse error, for the caret display."""
    for arg in args:
        try:
            parse_element(arg)
        except ParseError as again:
            if again.position == error.position and again.message == error.message:
                return arg
    return ""


def execute(argv: List[str]) -> Tuple[int, str, str]:
    """
    Run one command line.

    Returns:
        (exit code, stdout text, stderr text)
    """
    # everything after '--' is positional, e.g. weylmass normalize -- -X+Y
    trailing: List[str] = []
    if "--" in argv:
        split = argv.index("--")
        argv, trailing = argv[:split], argv[split + 1:]
    try:
        options = build_parser().parse_intermixed_args(argv)
    except _ArgumentError as e:
        return 1, "", f"error: {e}"
    if trailing and not options.command:
        options.command, trailing = trailing[0], trailing[1:]
    options.args = list(options.args) + trailing

    if options.golden:
        return run_golden(options.golden)
    if not options.command:
        return 1, "", "error: a command is required (" + ", ".join(list_commands()) + ")"

    flags = {name: getattr(options, name) for name in FLAG_NAMES}
    try:
        document = run_command(options.command, options.args, flags)
    except ParseError as e:
        source = _failing_source(options.args, e)
        detail = f"\n{e.highlight(source)}" if source else ""
        return e.exit_code, "", f"error: {e.message}{detail}"
    except WeylMassError as e:
        return e.exit_code, "", f"error: {e.message}"

    settings = get_settings()
    output = render_json(document, settings.json_indent) if options.json else render_text(document)
    return 0, output, ""


def _read_golden(path: str) -> List[Tuple[int, str, str]]:
    """(line number, command line, expected output) triples."""
    entries: List[Tuple[int, str, List[str]]] = []
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if line.startswith(GOLDEN_PREFIX):
                if not entries:
                    raise WeylMassError(f"{path}:{number}: expected output before any command", code="GOLDEN")
                entries[-1][2].append(line[len(GOLDEN_PREFIX):])
            elif line.strip() and not line.lstrip().startswith("#"):
                entries.append((number, line, []))
    return [(number, command, "\n".join(expected)) for number, command, expected in entries]


def run_golden(path: str) -> Tuple[int, str, str]:
    """Replay every command of a golden file and compare byte-exactly."""
    try:
        entries = _read_golden(path)
    except (OSError, WeylMassError) as e:
        return 1, "", f"error: {e}"

    mismatches = []
    for number, command_line, expected in entries:
        code, out, err = execute(shlex.split(command_line))
        actual = out if code == 0 else err
        if actual != expected:
            mismatches.append(f"{path}:{number}: {command_line}\n  expected: {expected!r}\n  actual:   {actual!r}")
            logger.warning(f"Golden mismatch at {path}:{number}")

    summary = f"{len(entries) - len(mismatches)}/{len(entries)} golden commands match"
    if mismatches:
        return 1, summary, "\n".join(mismatches)
    return 0, summary, ""


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    code, out, err = execute(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
