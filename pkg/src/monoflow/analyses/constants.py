"""Constant propagation over the flat integer lattice."""

from __future__ import annotations

from collections.abc import Mapping
from functools import partial

from ..lattice import FLAT_BOTTOM, FLAT_TOP, Const, FrozenMap, flat_lattice, map_lattice
from ..simplehal.flow import FlowKind, LabeledProgram
from ..simplehal.interp import int_div
from ..simplehal.syntax import Assign, BinOp, Call, Neg, Num, Proc, Read, Var
from .base import Setup


def abstract_eval(e, env: Mapping):
    """Evaluate ``e`` over flat values: strict in ⊥, absorbing ⊤."""
    if isinstance(e, Num):
        return Const(e.value)
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Neg):
        a = abstract_eval(e.operand, env)
        return Const(-a.value) if isinstance(a, Const) else a
    if isinstance(e, BinOp):
        a, b = abstract_eval(e.left, env), abstract_eval(e.right, env)
        if a is FLAT_BOTTOM or b is FLAT_BOTTOM:
            return FLAT_BOTTOM
        if a is FLAT_TOP or b is FLAT_TOP:
            return FLAT_TOP
        x, y = a.value, b.value
        if e.op == "+":
            return Const(x + y)
        if e.op == "-":
            return Const(x - y)
        if e.op == "*":
            return Const(x * y)
        if y == 0:
            return FLAT_TOP
        return Const(int_div(x, y))
    raise TypeError(f"not an arithmetic expression: {e!r}")


def cp_transfer(block, kind: FlowKind, v: FrozenMap,
                procs: Mapping[str, Proc] = {}) -> FrozenMap:
    if kind is FlowKind.N:
        if isinstance(block, Assign):
            return v.set(block.var, abstract_eval(block.expr, v))
        if isinstance(block, Read):
            return v.set(block.var, FLAT_TOP)
        return v
    if not isinstance(block, Call):
        return v
    callee = procs[block.proc]
    if kind is FlowKind.C:
        return v.update({callee.value_param: abstract_eval(block.arg, v),
                         callee.result_param: FLAT_TOP})
    return v.set(block.result, v[callee.result_param])


def setup(lp: LabeledProgram) -> Setup:
    procs = {p.name: p for p in lp.program.procs}
    lattice = map_lattice(lp.variables, flat_lattice(), name="constant-propagation")
    return Setup(lattice, lattice.top, partial(cp_transfer, procs=procs), "forward")
