"""Concrete interpreter used to spot-check analysis soundness.

Runs a split, labeled program and records, every time control reaches a
label, the call string, the variable values in scope and the label of the
definition that produced each value (``"?"`` when uninitialised).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .flow import LabeledProgram
from .syntax import (
    Assign, BinOp, BoolOp, Call, Compare, If, Label, Neg, Not, Num, Read, Seq,
    Var, While,
)

UNINITIALISED = "?"


class InterpreterError(RuntimeError):
    pass


@dataclass(frozen=True)
class Observation:
    label: Label
    context: tuple[Label, ...]
    values: dict[str, int]
    definitions: dict[str, object]


def int_div(a: int, b: int) -> int:
    """Integer division truncating toward zero."""
    if b == 0:
        raise InterpreterError("division by zero")
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def eval_aexp(e, lookup) -> int:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return lookup(e.name)
    if isinstance(e, Neg):
        return -eval_aexp(e.operand, lookup)
    if isinstance(e, BinOp):
        a, b = eval_aexp(e.left, lookup), eval_aexp(e.right, lookup)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        return int_div(a, b)
    raise TypeError(f"not an arithmetic expression: {e!r}")


def eval_bexp(e, lookup) -> bool:
    if isinstance(e, Not):
        return not eval_bexp(e.operand, lookup)
    if isinstance(e, BoolOp):
        if e.op == "and":
            return eval_bexp(e.left, lookup) and eval_bexp(e.right, lookup)
        return eval_bexp(e.left, lookup) or eval_bexp(e.right, lookup)
    if isinstance(e, Compare):
        a, b = eval_aexp(e.left, lookup), eval_aexp(e.right, lookup)
        return {"=": a == b, ">": a > b, ">=": a >= b}[e.op]
    raise TypeError(f"not a boolean expression: {e!r}")


class _Frame:
    def __init__(self, proc=None):
        self.proc = proc
        self.values: dict[str, int] = {}
        self.defs: dict[str, object] = {}


class _Machine:
    def __init__(self, lp: LabeledProgram, inputs: Iterator[int], fuel: int):
        self.lp = lp
        self.procs = {p.name: p for p in lp.program.procs}
        self.inputs = inputs
        self.fuel = fuel
        self.globals = _Frame()
        self.frames: list[_Frame] = []
        self.stack: list[Label] = []
        self.trace: list[Observation] = []

    def _frame_for(self, name: str) -> _Frame:
        if self.frames:
            top = self.frames[-1]
            if name in (top.proc.value_param, top.proc.result_param):
                return top
        return self.globals

    def lookup(self, name: str) -> int:
        return self._frame_for(name).values.get(name, 0)

    def store(self, name: str, value: int, definition) -> None:
        frame = self._frame_for(name)
        frame.values[name] = value
        frame.defs[name] = definition

    def observe(self, label: Label) -> None:
        self.fuel -= 1
        if self.fuel < 0:
            raise InterpreterError("step budget exhausted")
        # formals are qualified "proc.name"; globals never contain a dot
        names = sorted(n for n in self.lp.variables if "." not in n)
        if self.frames:
            proc = self.frames[-1].proc
            names += [proc.value_param, proc.result_param]
        self.trace.append(Observation(
            label, tuple(self.stack),
            {n: self.lookup(n) for n in names},
            {n: self._frame_for(n).defs.get(n, UNINITIALISED) for n in names},
        ))

    def run(self, c) -> None:
        if isinstance(c, Seq):
            self.run(c.first)
            self.run(c.second)
        elif isinstance(c, Assign):
            self.observe(c.label)
            self.store(c.var, eval_aexp(c.expr, self.lookup), c.label)
        elif isinstance(c, Read):
            self.observe(c.label)
            try:
                value = next(self.inputs)
            except StopIteration:
                raise InterpreterError("input exhausted") from None
            self.store(c.var, value, c.label)
        elif isinstance(c, If):
            self.observe(c.test.label)
            self.run(c.then if eval_bexp(c.test.cond, self.lookup) else c.orelse)
        elif isinstance(c, While):
            while True:
                self.observe(c.test.label)
                if not eval_bexp(c.test.cond, self.lookup):
                    break
                self.run(c.body)
        elif isinstance(c, Call):
            self.call(c)
        else:
            raise TypeError(f"not a command: {c!r}")

    def call(self, c: Call) -> None:
        proc = self.procs[c.proc]
        lc = c.label.call_point()
        self.observe(lc)
        arg = eval_aexp(c.arg, self.lookup)
        frame = _Frame(proc)
        frame.values[proc.value_param] = arg
        frame.defs[proc.value_param] = proc.entry.label
        self.stack.append(lc)
        self.frames.append(frame)
        self.observe(proc.entry.label)
        self.run(proc.body)
        self.observe(proc.exit.label)
        result = frame.values.get(proc.result_param, 0)
        self.frames.pop()
        self.stack.pop()
        self.store(c.result, result, c.label)
        self.observe(c.label.return_point())


def run(lp: LabeledProgram, inputs: Iterable[int] = (), *, fuel: int = 100_000) -> list[Observation]:
    """Execute ``lp`` (split labels) and return the observation trace."""
    m = _Machine(lp, iter(inputs), fuel)
    m.run(lp.program.main)
    return m.trace
