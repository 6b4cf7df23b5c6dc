"""Labeling, init/final/flow construction and call/return label splitting."""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, replace
from typing import Optional

from .syntax import (
    Assign, Block, BinOp, BoolOp, Call, Command, Compare, If, Label, LabelKind,
    Neg, Not, Num, Proc, ProcEntry, ProcExit, Program, Read, Seq, Test, Var,
    While, show_program, variables,
)


class ProgramError(ValueError):
    """A well-formedness problem beyond syntax (e.g. an undeclared procedure)."""


class FlowKind(str, enum.Enum):
    N = "N"
    C = "C"
    R = "R"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class TaggedFlow:
    source: Label
    target: Label
    kind: FlowKind = FlowKind.N

    @property
    def edge(self) -> tuple[Label, Label]:
        return (self.source, self.target)

    def reversed(self) -> "TaggedFlow":
        return TaggedFlow(self.target, self.source, self.kind)


@dataclass(frozen=True)
class LabeledProgram:
    program: Program
    blocks: Mapping[Label, Block]
    rho: Mapping[Label, Label]
    init: Label
    final: frozenset[Label]
    variables: frozenset[str] = frozenset()

    def block(self, label: Label) -> Block:
        return self.blocks[self.rho.get(label, label)]

    @property
    def labels(self) -> list[Label]:
        """Every label, with split call blocks showing both halves."""
        return sorted(self.rho)

    @property
    def call_sites(self) -> list[Call]:
        return [b for _, b in sorted(self.blocks.items()) if isinstance(b, Call)]

    def show(self) -> str:
        return show_program(self.program)


# -- labeling -----------------------------------------------------------------

def _qualify(name: str, scope: Optional[Proc]) -> str:
    if scope is not None and name in (scope.value_param, scope.result_param):
        return f"{scope.name}.{name}"
    return name


def _resolve_expr(e, scope: Optional[Proc]):
    if isinstance(e, Num):
        return e
    if isinstance(e, Var):
        return Var(_qualify(e.name, scope))
    if isinstance(e, (Neg, Not)):
        return type(e)(_resolve_expr(e.operand, scope))
    if isinstance(e, (BinOp, BoolOp, Compare)):
        return type(e)(e.op, _resolve_expr(e.left, scope), _resolve_expr(e.right, scope))
    raise TypeError(f"not an expression: {e!r}")


def label_program(program: Program) -> LabeledProgram:
    """Number every elementary block in source order, starting at 1.

    Procedure declarations come first; each gets an entry label on ``is`` and
    an exit label on ``end``.  Formal parameters are renamed ``proc.name`` so
    that they never clash with global variables.
    """
    counter = itertools.count(1)
    blocks: dict[Label, Block] = {}

    def fresh(kind: LabelKind = LabelKind.PLAIN) -> Label:
        return Label(next(counter), kind)

    def visit(c: Command, scope: Optional[Proc]) -> Command:
        if isinstance(c, Assign):
            b = Assign(_qualify(c.var, scope), _resolve_expr(c.expr, scope), fresh())
        elif isinstance(c, Read):
            b = Read(_qualify(c.var, scope), fresh())
        elif isinstance(c, Call):
            b = Call(c.proc, _resolve_expr(c.arg, scope), _qualify(c.result, scope), fresh())
        elif isinstance(c, Seq):
            first = visit(c.first, scope)
            return Seq(first, visit(c.second, scope))
        elif isinstance(c, If):
            test = Test(_resolve_expr(c.test.cond, scope), fresh())
            blocks[test.label] = test
            then = visit(c.then, scope)
            return If(test, then, visit(c.orelse, scope))
        elif isinstance(c, While):
            test = Test(_resolve_expr(c.test.cond, scope), fresh())
            blocks[test.label] = test
            return While(test, visit(c.body, scope))
        else:
            raise TypeError(f"not a command: {c!r}")
        blocks[b.label] = b
        return b

    seen: set[str] = set()
    procs = []
    for p in program.procs:
        if p.name in seen:
            raise ProgramError(f"procedure {p.name!r} declared more than once")
        if p.value_param == p.result_param:
            raise ProgramError(f"procedure {p.name!r} uses {p.value_param!r} for both parameters")
        seen.add(p.name)
        entry = ProcEntry(p.name, fresh(LabelKind.ENTRY))
        blocks[entry.label] = entry
        body = visit(p.body, p)
        exit_ = ProcExit(p.name, fresh(LabelKind.EXIT))
        blocks[exit_.label] = exit_
        procs.append(Proc(p.name, f"{p.name}.{p.value_param}", f"{p.name}.{p.result_param}",
                          body, entry, exit_))
    main = visit(program.main, None)
    labeled = Program(tuple(procs), main)
    return LabeledProgram(
        program=labeled,
        blocks=blocks,
        rho={label: label for label in blocks},
        init=init(main),
        final=final(main),
        variables=variables(labeled),
    )


# -- init / final / flow -----------------------------------------------------------

def init(c: Command) -> Label:
    if isinstance(c, (Assign, Read, Call)):
        return c.label
    if isinstance(c, Seq):
        return init(c.first)
    if isinstance(c, (If, While)):
        return c.test.label
    raise TypeError(f"not a command: {c!r}")


def final(c: Command) -> frozenset[Label]:
    if isinstance(c, (Assign, Read, Call)):
        return frozenset((c.label,))
    if isinstance(c, Seq):
        return final(c.second)
    if isinstance(c, If):
        return final(c.then) | final(c.orelse)
    if isinstance(c, While):
        return frozenset((c.test.label,))
    raise TypeError(f"not a command: {c!r}")


def flow(c: Command) -> frozenset[tuple[Label, Label]]:
    if isinstance(c, (Assign, Read, Call)):
        return frozenset()
    if isinstance(c, Seq):
        target = init(c.second)
        return flow(c.first) | flow(c.second) | {(l, target) for l in final(c.first)}
    if isinstance(c, If):
        ell = c.test.label
        return (flow(c.then) | flow(c.orelse)
                | {(ell, init(c.then)), (ell, init(c.orelse))})
    if isinstance(c, While):
        ell = c.test.label
        return flow(c.body) | {(ell, init(c.body))} | {(l, ell) for l in final(c.body)}
    raise TypeError(f"not a command: {c!r}")


def flow_rev(flows: Iterable[tuple[Label, Label]]) -> frozenset[tuple[Label, Label]]:
    return frozenset((b, a) for a, b in flows)


def proc_flow(p: Proc) -> frozenset[tuple[Label, Label]]:
    """Intraprocedural flow of a procedure, from its entry to its exit label."""
    entry, exit_ = p.entry.label, p.exit.label
    return (flow(p.body) | {(entry, init(p.body))}
            | {(l, exit_) for l in final(p.body)})


# -- interprocedural flows -----------------------------------------------------------

def build_tagged_flows(lp: LabeledProgram, *, call_to_return: bool = False
                       ) -> tuple[LabeledProgram, frozenset[TaggedFlow]]:
    """Split each call label into call/return points and tag every flow.

    Flows into a call block now enter its call point, flows out of it leave
    from its return point.  Each call site adds a C flow to the callee's entry
    and an R flow from the callee's exit; ``call_to_return`` also adds a normal
    flow from the call point straight to the return point.
    """
    program = lp.program
    procs = {p.name: p for p in program.procs}
    calls = {label: b for label, b in lp.blocks.items() if isinstance(b, Call)}
    for label, b in sorted(calls.items()):
        if b.proc not in procs:
            raise ProgramError(f"call to undeclared procedure {b.proc!r} at label {label}")

    def source(l: Label) -> Label:
        return l.return_point() if l in calls else l

    def target(l: Label) -> Label:
        return l.call_point() if l in calls else l

    plain = set(flow(program.main))
    for p in program.procs:
        plain |= proc_flow(p)

    tagged = {TaggedFlow(source(a), target(b), FlowKind.N) for a, b in plain}
    blocks = {l: b for l, b in lp.blocks.items() if l not in calls}
    rho = {l: l for l in blocks}
    for label, b in calls.items():
        callee = procs[b.proc]
        lc, lr = label.call_point(), label.return_point()
        blocks[label] = b
        rho[lc] = rho[lr] = label
        tagged.add(TaggedFlow(lc, callee.entry.label, FlowKind.C))
        tagged.add(TaggedFlow(callee.exit.label, lr, FlowKind.R))
        if call_to_return:
            tagged.add(TaggedFlow(lc, lr, FlowKind.N))

    split = replace(
        lp,
        blocks=blocks,
        rho=rho,
        init=target(lp.init),
        final=frozenset(source(l) for l in lp.final),
    )
    return split, frozenset(tagged)
