"""``monoflow`` command line: analyse one SimpleHal file and print the result.

Exit status: 0 success, 1 bad arguments or unreadable/malformed input,
2 ill-formed call/return flows, 3 call-string bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import analyses
from .framework import DEFAULT_CONTEXT_DEPTH, ContextDepthExceeded, WellFormednessError
from .report import build_document, dumps, render_table
from .simplehal import ProgramError, SimpleHalSyntaxError, load
from .solver import solve

EXIT_OK, EXIT_INPUT, EXIT_WELLFORMED, EXIT_DEPTH = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    input_path: Path
    analysis: str
    context_depth: int = DEFAULT_CONTEXT_DEPTH
    format: str = "json"
    dump_flow: bool = False
    call_to_return_edge: bool = False

    def __post_init__(self):
        if self.analysis not in analyses.ANALYSES:
            raise ValueError(f"unknown analysis {self.analysis!r}")
        if self.context_depth < 1:
            raise ValueError("context depth must be at least 1")


def run(config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        source = config.input_path.read_text(encoding="utf-8")
    except OSError as e:
        print(f"monoflow: cannot read {config.input_path}: {e.strerror}", file=err)
        return EXIT_INPUT
    try:
        lp, flows = load(source, call_to_return=config.call_to_return_edge)
    except SimpleHalSyntaxError as e:
        print(f"{config.input_path}:{e.line}:{e.column}: syntax error: {e.message}", file=err)
        return EXIT_INPUT
    except ProgramError as e:
        print(f"{config.input_path}: error: {e}", file=err)
        return EXIT_INPUT
    try:
        fw = analyses.build(config.analysis, lp, flows, k=config.context_depth)
        result = solve(fw)
    except WellFormednessError as e:
        print(f"{config.input_path}: ill-formed flows:", file=err)
        for v in e.violations:
            print(f"  {v}", file=err)
        return EXIT_WELLFORMED
    except ContextDepthExceeded as e:
        print(f"{config.input_path}: call site {e.call_label} in context {e.context} "
              f"exceeds context depth {e.bound}", file=err)
        return EXIT_DEPTH
    doc = build_document(result, lp, analysis=config.analysis,
                         flows=flows if config.dump_flow else None)
    out.write(dumps(doc) if config.format == "json" else render_table(doc))
    return EXIT_OK


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


class _Parser(argparse.ArgumentParser):
    # status 2 is reserved for ill-formed flows
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monoflow",
                description="Interprocedural dataflow analysis of SimpleHal programs.")
    p.add_argument("--analysis", required=True, choices=sorted(analyses.ANALYSES))
    p.add_argument("--context-depth", type=_positive, default=DEFAULT_CONTEXT_DEPTH,
                   metavar="K", help="maximum call-string length (default %(default)s)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--dump-flow", action="store_true", help="include the tagged flows")
    p.add_argument("--call-to-return-edge", action="store_true",
                   help="add a normal flow from each call point to its return point")
    p.add_argument("file", type=Path)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parser().parse_args(argv)
    config = RunConfig(
        input_path=args.file, analysis=args.analysis, context_depth=args.context_depth,
        format=args.format, dump_flow=args.dump_flow,
        call_to_return_edge=args.call_to_return_edge,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
