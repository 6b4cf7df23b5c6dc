"""Reaching definitions: which assignment may have produced each variable's value."""

from __future__ import annotations

from collections.abc import Mapping
from functools import partial

from ..lattice import powerset_lattice
from ..simplehal.flow import FlowKind, LabeledProgram
from ..simplehal.interp import UNINITIALISED
from ..simplehal.syntax import Assign, Call, Proc, Read
from .base import Setup


def _kill_gen(v: frozenset, var: str, definition) -> frozenset:
    return frozenset(d for d in v if d[0] != var) | {(var, definition)}


def rd_transfer(block, kind: FlowKind, v: frozenset,
                procs: Mapping[str, Proc] = {}) -> frozenset:
    if isinstance(block, (Assign, Read)):
        if kind is FlowKind.N:
            return _kill_gen(v, block.var, block.label)
        return v
    if isinstance(block, Call):
        if kind is FlowKind.C:
            callee = procs[block.proc]
            v = _kill_gen(v, callee.value_param, callee.entry.label)
            return _kill_gen(v, callee.result_param, UNINITIALISED)
        if kind is FlowKind.R:
            return _kill_gen(v, block.result, block.label)
    return v


def render_definitions(v: frozenset) -> str:
    def key(d):
        var, where = d
        return (var, -1 if where == UNINITIALISED else where.n)
    return "[" + ", ".join(f"({var},{where})" for var, where in sorted(v, key=key)) + "]"


def setup(lp: LabeledProgram) -> Setup:
    procs = {p.name: p for p in lp.program.procs}
    universe = {(x, UNINITIALISED) for x in lp.variables}
    for block in lp.blocks.values():
        if isinstance(block, (Assign, Read)):
            universe.add((block.var, block.label))
        elif isinstance(block, Call):
            universe.add((block.result, block.label))
    for p in procs.values():
        universe.add((p.value_param, p.entry.label))
    lattice = powerset_lattice(universe, name="reaching-definitions",
                               render=render_definitions, enumerate_elements=False)
    initial = frozenset((x, UNINITIALISED) for x in lp.variables)
    return Setup(lattice, initial, partial(rd_transfer, procs=procs), "forward")
