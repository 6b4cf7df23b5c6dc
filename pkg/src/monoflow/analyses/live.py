"""Live variables (backward)."""

from __future__ import annotations

from collections.abc import Mapping
from functools import partial

from ..lattice import powerset_lattice
from ..simplehal.flow import FlowKind, LabeledProgram
from ..simplehal.syntax import Assign, Call, Proc, Read, Test, fv
from .base import Setup


def lv_transfer(block, kind: FlowKind, v: frozenset,
                procs: Mapping[str, Proc] = {}) -> frozenset:
    """Live-before from live-after.

    On reversed flows a C edge runs from a return point into the callee's
    exit and an R edge from the callee's entry back to the call point.
    """
    if kind is FlowKind.N:
        if isinstance(block, Assign):
            return (v - {block.var}) | fv(block.expr)
        if isinstance(block, Read):
            return v - {block.var}
        if isinstance(block, Test):
            return v | fv(block.cond)
        return v
    if not isinstance(block, Call):
        return v
    callee = procs[block.proc]
    if kind is FlowKind.C:
        out = v - {block.result, callee.value_param}
        return out | {callee.result_param} if block.result in v else out
    out = v - {callee.value_param, callee.result_param}
    return out | fv(block.arg) if callee.value_param in v else out


def setup(lp: LabeledProgram) -> Setup:
    procs = {p.name: p for p in lp.program.procs}
    lattice = powerset_lattice(lp.variables, name="live-variables", enumerate_elements=False)
    return Setup(lattice, frozenset(), partial(lv_transfer, procs=procs), "backward")
