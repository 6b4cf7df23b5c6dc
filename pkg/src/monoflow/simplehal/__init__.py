"""SimpleHal: the reference frontend (While-style language plus procedures)."""

from .flow import (
    FlowKind, LabeledProgram, ProgramError, TaggedFlow, build_tagged_flows,
    final, flow, flow_rev, init, label_program, proc_flow,
)
from .parser import SimpleHalSyntaxError, parse, parse_command
from .syntax import Label, LabelKind, fv

__all__ = [
    "FlowKind", "Label", "LabelKind", "LabeledProgram", "ProgramError",
    "SimpleHalSyntaxError", "TaggedFlow", "build_tagged_flows", "final", "flow",
    "flow_rev", "fv", "init", "label_program", "parse", "parse_command",
    "proc_flow", "load",
]


def load(source: str, *, call_to_return: bool = False):
    """Parse, label and split ``source``; returns ``(program, tagged_flows)``."""
    return build_tagged_flows(label_program(parse(source)), call_to_return=call_to_return)
