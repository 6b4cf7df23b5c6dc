"""Implicit and embellished monotone frameworks.

The user supplies an :class:`ImplicitFramework`: a value lattice, start
labels, tagged flows, an initial value and a single ``transfer(block, kind,
value)`` function.  :func:`embellish` infers the context-carrying framework:
values become partial maps from call strings to lattice values, and the
normal/call/return transfer functions are derived from ``transfer`` by
keeping, pushing or popping the call string.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

from .lattice import LatticeDescriptor
from .partial import PartialMap, leq_partial
from .simplehal.flow import FlowKind, LabeledProgram, TaggedFlow
from .simplehal.syntax import Label

log = logging.getLogger(__name__)

DEFAULT_CONTEXT_DEPTH = 16

Transfer = Callable[[Any, FlowKind, Any], Any]


class ContextDepthExceeded(RuntimeError):
    """Pushing a call label would make a call string longer than the bound."""

    def __init__(self, call_label: Label, context: "Context", bound: int):
        super().__init__(
            f"call at {call_label} in context {context} exceeds context depth {bound}")
        self.call_label = call_label
        self.context = context
        self.bound = bound


class WellFormednessError(ValueError):
    def __init__(self, violations: Sequence["Violation"]):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = list(violations)


@dataclass(frozen=True, order=True)
class Context:
    """A call string: pending call-point labels, most recent last."""

    calls: tuple[Label, ...] = ()

    def __len__(self) -> int:
        return len(self.calls)

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.calls) + "]"

    def push(self, call: Label) -> "Context":
        return Context(self.calls + (call,))

    @property
    def last(self) -> Optional[Label]:
        return self.calls[-1] if self.calls else None

    def pop(self) -> "Context":
        return Context(self.calls[:-1])


EMPTY_CONTEXT = Context()


def call_site(label: Label) -> Label:
    """The call point a call or return point belongs to."""
    return label if label.is_call else label.partner()


@dataclass(frozen=True)
class Violation:
    label: Label
    reason: str

    def __str__(self) -> str:
        return f"{self.label}: {self.reason}"


def check_wellformed(flows: Iterable[TaggedFlow]) -> list[Violation]:
    """Every call flow needs a return flow back into the same call site.

    Returns the violations; an empty list means the flows are well formed.
    Works for either orientation: a call flow may leave a call point (forward)
    or a return point (reversed flows).
    """
    flows = list(flows)
    returns_into = {f.target for f in flows if f.kind is FlowKind.R}
    violations = []
    for f in sorted(f for f in flows if f.kind is FlowKind.C):
        if not (f.source.is_call or f.source.is_return):
            violations.append(Violation(f.source, "call flow leaves a label that is not a call site"))
            continue
        expected = f.source.partner()
        if expected not in returns_into:
            violations.append(Violation(f.source, f"no return flow into {expected}"))
    for f in sorted(f for f in flows if f.kind is FlowKind.R):
        if not (f.target.is_call or f.target.is_return):
            violations.append(Violation(f.target, "return flow enters a label that is not a call site"))
    return violations


@dataclass(frozen=True)
class ImplicitFramework:
    """What the user writes down: ``(L, S, F̃, λ, transfer)`` plus the labeling."""

    lattice: LatticeDescriptor
    start_labels: frozenset[Label]
    flows: frozenset[TaggedFlow]
    initial: Any
    transfer: Transfer
    blocks: Mapping[Label, Any]
    direction: str = "forward"

    def __post_init__(self):
        if not self.start_labels:
            raise ValueError("a framework needs at least one start label")
        if self.direction not in ("forward", "backward"):
            raise ValueError(f"unknown direction {self.direction!r}")


def for_program(lp: LabeledProgram, flows: Iterable[TaggedFlow], *,
                lattice: LatticeDescriptor, initial, transfer: Transfer,
                direction: str = "forward") -> ImplicitFramework:
    """Orient a split program's flows for a forward or backward analysis.

    Backward analyses start at the final labels and follow reversed flows;
    entering a procedure then happens across a reversed return flow, so the
    C and R tags trade places.
    """
    flows = frozenset(flows)
    if direction == "backward":
        swap = {FlowKind.N: FlowKind.N, FlowKind.C: FlowKind.R, FlowKind.R: FlowKind.C}
        flows = frozenset(TaggedFlow(f.target, f.source, swap[f.kind]) for f in flows)
        start = lp.final
    else:
        start = frozenset((lp.init,))
    return ImplicitFramework(
        lattice=lattice, start_labels=frozenset(start), flows=flows,
        initial=initial, transfer=transfer,
        blocks={label: lp.block(label) for label in lp.labels},
        direction=direction,
    )


@dataclass(frozen=True, eq=False)
class EmbellishedFramework:
    """Context-carrying framework inferred from an :class:`ImplicitFramework`.

    Values are :class:`PartialMap` s from :class:`Context` to ``lattice``
    values.  With ``collapse_contexts`` every call string stays empty, which
    gives the context-insensitive analysis of the same flows.
    """

    lattice: LatticeDescriptor
    start_labels: frozenset[Label]
    flows: frozenset[TaggedFlow]
    tags: Mapping[tuple[Label, Label], FlowKind]
    initial: PartialMap
    transfer: Transfer
    blocks: Mapping[Label, Any]
    context_depth: int
    direction: str = "forward"
    collapse_contexts: bool = False
    successors: Mapping[Label, tuple[Label, ...]] = field(default_factory=dict)
    predecessors: Mapping[Label, tuple[Label, ...]] = field(default_factory=dict)

    @property
    def labels(self) -> list[Label]:
        """Labels "in F or S"."""
        found = set(self.start_labels)
        for f in self.flows:
            found.add(f.source)
            found.add(f.target)
        return sorted(found)

    def bottom(self) -> PartialMap:
        return PartialMap({}, self.lattice)

    def block(self, label: Label):
        try:
            return self.blocks[label]
        except KeyError:
            raise KeyError(f"label {label} is not in the labeling") from None

    def apply_normal(self, label: Label, value: PartialMap) -> PartialMap:
        block = self.block(label)
        t = self.transfer
        return value.with_entries(
            (ctx, t(block, FlowKind.N, v)) for ctx, v in value.entries.items())

    def apply_call(self, label: Label, value: PartialMap) -> PartialMap:
        block = self.block(label)
        site = call_site(label)
        t = self.transfer
        out = {}
        for ctx, v in value.entries.items():
            if self.collapse_contexts:
                out[ctx] = t(block, FlowKind.C, v)
                continue
            if len(ctx) >= self.context_depth:
                raise ContextDepthExceeded(site, ctx, self.context_depth)
            out[ctx.push(site)] = t(block, FlowKind.C, v)
        return value.with_entries(out)

    def apply_return(self, exit_label: Label, return_label: Label,
                     value: PartialMap) -> PartialMap:
        block = self.block(return_label)
        site = call_site(return_label)
        t = self.transfer
        out = {}
        for ctx, v in value.entries.items():
            if self.collapse_contexts:
                out[ctx] = t(block, FlowKind.R, v)
            elif ctx.last == site:
                out[ctx.pop()] = t(block, FlowKind.R, v)
        return value.with_entries(out)

    def apply(self, source: Label, target: Label, value: PartialMap) -> PartialMap:
        """``f_source^Γ(source,target)(value)``."""
        kind = self.tags[(source, target)]
        if kind is FlowKind.N:
            return self.apply_normal(source, value)
        if kind is FlowKind.C:
            return self.apply_call(source, value)
        return self.apply_return(source, target, value)


def embellish(impl: ImplicitFramework, k: int = DEFAULT_CONTEXT_DEPTH, *,
              collapse_contexts: bool = False) -> EmbellishedFramework:
    if k < 1:
        raise ValueError(f"context depth must be at least 1, got {k}")
    violations = check_wellformed(impl.flows)
    if violations:
        raise WellFormednessError(violations)
    tags = {}
    succ: dict[Label, list[Label]] = defaultdict(list)
    pred: dict[Label, list[Label]] = defaultdict(list)
    for f in sorted(impl.flows):
        if f.edge in tags and tags[f.edge] is not f.kind:
            raise WellFormednessError([Violation(f.source, f"flow to {f.target} tagged twice")])
        tags[f.edge] = f.kind
        succ[f.source].append(f.target)
        pred[f.target].append(f.source)
    return EmbellishedFramework(
        lattice=impl.lattice,
        start_labels=impl.start_labels,
        flows=impl.flows,
        tags=tags,
        initial=PartialMap({EMPTY_CONTEXT: impl.initial}, impl.lattice),
        transfer=impl.transfer,
        blocks=impl.blocks,
        context_depth=k,
        direction=impl.direction,
        collapse_contexts=collapse_contexts,
        successors={l: tuple(ls) for l, ls in succ.items()},
        predecessors={l: tuple(ls) for l, ls in pred.items()},
    )


def monotonicity_failures(transfer: Transfer, lattice: LatticeDescriptor,
                          blocks: Iterable, pairs: Iterable[tuple[Any, Any]],
                          kinds: Sequence[FlowKind] = tuple(FlowKind)) -> list[tuple]:
    """Sampled check that ``transfer`` is monotone in its value argument.

    ``pairs`` must be ⊑-ordered; returns ``(block, kind, a, b)`` for every
    pair whose images are not ordered.
    """
    pairs = list(pairs)
    failures = []
    for block in blocks:
        for kind in kinds:
            for a, b in pairs:
                if not lattice.leq(transfer(block, kind, a), transfer(block, kind, b)):
                    failures.append((block, kind, a, b))
    return failures


def lifted_monotone(fw: EmbellishedFramework, pairs: Iterable[tuple[PartialMap, PartialMap]]
                    ) -> list[tuple]:
    """Sampled check that every inferred flow function is monotone under ⊑."""
    failures = []
    pairs = list(pairs)
    for f in sorted(fw.flows):
        for a, b in pairs:
            try:
                fa, fb = fw.apply(f.source, f.target, a), fw.apply(f.source, f.target, b)
            except ContextDepthExceeded:
                continue
            if not leq_partial(fa, fb):
                failures.append((f, a, b))
    return failures
