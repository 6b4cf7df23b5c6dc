"""Worklist MFP solver for embellished frameworks, plus an independent oracle.

``solve`` is the three-step LIFO worklist algorithm: seed every flow and the
start values, propagate until nothing changes, then compute per-successor
exit values.  ``naive_fixpoint`` evaluates the same dataflow equations by
round-robin iteration and serves as the reference in tests.
"""

from __future__ import annotations

import warnings
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

from .framework import EmbellishedFramework
from .partial import PartialMap, join_partial, leq_partial
from .simplehal.flow import TaggedFlow
from .simplehal.syntax import Label


class _End:
    """Successor placeholder for labels with no outgoing flow."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "end"

    __str__ = __repr__

    def __reduce__(self):
        return (_End, ())


END = _End()

Successor = Union[Label, _End]


class NonMonotoneTransfer(RuntimeWarning):
    pass


@dataclass
class AnalysisResult:
    """Entry values per label and exit values per (label, successor)."""

    entry: dict[Label, PartialMap]
    exit: dict[Label, dict[Successor, PartialMap]]
    iteration_count: int
    framework: EmbellishedFramework = field(repr=False)
    increase_count: int = 0

    def same_tables(self, other: "AnalysisResult") -> bool:
        return self.entry == other.entry and self.exit == other.exit


def _exits(fw: EmbellishedFramework, analysis: Mapping[Label, PartialMap]
           ) -> dict[Label, dict[Successor, PartialMap]]:
    exits: dict[Label, dict[Successor, PartialMap]] = {}
    for label in fw.labels:
        succ = fw.successors.get(label, ())
        if not succ:
            exits[label] = {END: fw.apply_normal(label, analysis[label])}
        else:
            exits[label] = {s: fw.apply(label, s, analysis[label]) for s in succ}
    return exits


def _initial(fw: EmbellishedFramework) -> dict[Label, PartialMap]:
    bottom = fw.bottom()
    return {l: fw.initial if l in fw.start_labels else bottom for l in fw.labels}


def solve(fw: EmbellishedFramework, *, seed_order: Optional[Sequence[TaggedFlow]] = None,
          check_against: Optional[Mapping[Label, PartialMap]] = None) -> AnalysisResult:
    """Compute the MFP solution of ``fw``.

    ``seed_order`` fixes the order in which flows are consed onto the initial
    worklist (the last one is processed first).  ``check_against`` is a known
    fixpoint; when given, every iteration asserts that the running analysis
    stays below it.
    """
    flows = sorted(fw.flows) if seed_order is None else list(seed_order)
    worklist: list[tuple[Label, Label]] = [f.edge for f in flows]
    analysis = _initial(fw)
    if check_against is not None:
        _assert_below(analysis, check_against)

    last_seen: dict[tuple[Label, Label], tuple[PartialMap, PartialMap]] = {}
    iterations = increases = 0
    while worklist:
        source, target = worklist.pop()
        iterations += 1
        out = fw.apply(source, target, analysis[source])
        previous = last_seen.get((source, target))
        if previous is not None and leq_partial(previous[0], analysis[source]) \
                and not leq_partial(previous[1], out):
            warnings.warn(
                f"transfer along {source}->{target} decreased on a larger input",
                NonMonotoneTransfer, stacklevel=2)
        last_seen[(source, target)] = (analysis[source], out)
        if not leq_partial(out, analysis[target]):
            analysis[target] = join_partial(analysis[target], out)
            increases += 1
            for nxt in fw.successors.get(target, ()):
                worklist.append((target, nxt))
            if check_against is not None:
                _assert_below(analysis, check_against)

    return AnalysisResult(
        entry=dict(analysis),
        exit=_exits(fw, analysis),
        iteration_count=iterations,
        framework=fw,
        increase_count=increases,
    )


def _assert_below(analysis, bound) -> None:
    for label, value in analysis.items():
        if not leq_partial(value, bound[label]):
            raise AssertionError(f"analysis at {label} rose above the fixpoint: {value} vs {bound[label]}")


def naive_fixpoint(fw: EmbellishedFramework) -> AnalysisResult:
    """Round-robin evaluation of the entry/exit equations until stable."""
    labels = fw.labels
    entry = _initial(fw)
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for label in labels:
            value = fw.initial if label in fw.start_labels else fw.bottom()
            for pred in fw.predecessors.get(label, ()):
                value = join_partial(value, fw.apply(pred, label, entry[pred]))
            if value != entry[label]:
                entry[label] = value
                changed = True
    return AnalysisResult(entry=entry, exit=_exits(fw, entry),
                          iteration_count=rounds, framework=fw)


@dataclass(frozen=True)
class ResidualViolation:
    source: Optional[Label]
    target: Label
    reason: str

    def __str__(self) -> str:
        where = f"{self.source}->{self.target}" if self.source is not None else str(self.target)
        return f"{where}: {self.reason}"


def verify_df_residual(result: AnalysisResult) -> list[ResidualViolation]:
    """Check that ``result`` is a post-fixpoint of the dataflow equations.

    Empty list means ok.
    """
    fw = result.framework
    violations = []
    for label in sorted(fw.start_labels):
        if not leq_partial(fw.initial, result.entry.get(label, fw.bottom())):
            violations.append(ResidualViolation(None, label, "initial value not included"))
    for f in sorted(fw.flows):
        before = result.entry.get(f.source, fw.bottom())
        after = result.entry.get(f.target, fw.bottom())
        if not leq_partial(fw.apply(f.source, f.target, before), after):
            violations.append(ResidualViolation(f.source, f.target, "transfer not absorbed"))
    return violations


def iteration_bound(result: AnalysisResult) -> int:
    """Upper bound on worklist iterations for a finished run.

    Each strict increase at a label either defines a new context or raises
    the value of an existing one, at most ``height`` times per context.
    """
    fw = result.framework
    height = fw.lattice.height if fw.lattice.height is not None else 0
    increases = sum(len(v) * (height + 1) for v in result.entry.values())
    return len(fw.flows) * (1 + increases)
