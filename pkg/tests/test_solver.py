from __future__ import annotations

import warnings

import pytest

from corpus import corpus_cases, framework, load_program
from monoflow import analyses
from monoflow.framework import EMPTY_CONTEXT, ImplicitFramework, embellish
from monoflow.lattice import powerset_lattice
from monoflow.partial import PartialMap, join_partial
from monoflow.simplehal import FlowKind, Label, TaggedFlow
from monoflow.solver import (
    END, AnalysisResult, NonMonotoneTransfer, iteration_bound, naive_fixpoint, solve,
    verify_df_residual,
)

PS = powerset_lattice("ab")
L1, L2, L3 = Label(1), Label(2), Label(3)


def gen_b(block, kind, v):
    return v | {"b"}


def tiny(flows=(), transfer=gen_b, initial=frozenset("a")):
    impl = ImplicitFramework(PS, frozenset({L1}), frozenset(flows), initial, transfer,
                             {l: l for l in (L1, L2, L3)})
    return embellish(impl)


def at(value, context=EMPTY_CONTEXT):
    return value.entries[context]


class TestTrivial:
    def test_no_flows(self):
        fw = tiny()
        result = solve(fw)
        assert result.entry == {L1: fw.initial}
        assert result.exit == {L1: {END: PartialMap({EMPTY_CONTEXT: frozenset("ab")}, PS)}}
        assert result.same_tables(naive_fixpoint(fw))
        assert verify_df_residual(result) == []

    def test_end_renders(self):
        assert str(END) == "end"


class TestEquations:
    def test_reaching_definitions_on_loop(self):
        fw = framework("while_example.hal", "rd")
        result = solve(fw)
        assert result.same_tables(naive_fixpoint(fw))
        assert sorted(at(result.entry[L3])) == [("x", L1), ("x", Label(4)), ("y", Label(2)),
                                                ("y", Label(5))]

    def test_entry_is_join_of_predecessor_exits(self):
        fw = framework("branch_example.hal", "rd")
        result = solve(fw)
        assert result.entry[L3] == result.exit[L2][L3]
        merged = join_partial(result.exit[Label(4)][END], result.exit[Label(5)][END])
        assert at(merged) == {("x", L1), ("x", Label(4)), ("y", L2), ("y", Label(5))}

    @pytest.mark.parametrize("path, analysis", corpus_cases(),
                             ids=lambda x: getattr(x, "stem", x))
    def test_corpus_matches_oracle_and_stays_below_it(self, path, analysis):
        fw = framework(path, analysis)
        oracle = naive_fixpoint(fw)
        result = solve(fw, check_against=oracle.entry)
        assert result.same_tables(oracle)
        assert verify_df_residual(result) == []
        assert result.iteration_count <= iteration_bound(result)
        assert result.increase_count <= result.iteration_count

    def test_check_against_detects_overshoot(self):
        fw = tiny([TaggedFlow(L1, L2, FlowKind.N)])
        too_small = {L1: fw.initial, L2: PartialMap({}, PS)}
        with pytest.raises(AssertionError, match="above the fixpoint"):
            solve(fw, check_against=too_small)


class TestResidual:
    def test_bottom_under_nonempty_flow(self):
        fw = tiny([TaggedFlow(L1, L2, FlowKind.N)])
        good = solve(fw)
        broken = AnalysisResult(entry={L1: good.entry[L1], L2: fw.bottom()}, exit=good.exit,
                                iteration_count=0, framework=fw)
        (v,) = verify_df_residual(broken)
        assert (v.source, v.target) == (L1, L2)
        assert "1->2" in str(v)

    def test_missing_initial(self):
        fw = tiny()
        broken = AnalysisResult(entry={L1: fw.bottom()}, exit={}, iteration_count=0, framework=fw)
        (v,) = verify_df_residual(broken)
        assert v.source is None and v.target == L1


def test_non_monotone_transfer_warns():
    # decreases once its input grows, which a monotone transfer never does
    def flip(block, kind, v):
        return frozenset("ab") - v if block == L2 else v

    flows = [TaggedFlow(L1, L2, FlowKind.N), TaggedFlow(L2, L3, FlowKind.N),
             TaggedFlow(L3, L2, FlowKind.N)]
    fw = tiny(flows, transfer=flip, initial=frozenset())
    with pytest.warns(NonMonotoneTransfer):
        solve(fw)


def test_monotone_run_is_silent():
    fw = framework("nested_loop.hal", "cp")
    with warnings.catch_warnings():
        warnings.simplefilter("error", NonMonotoneTransfer)
        solve(fw)


def test_seed_order_changes_iteration_not_result():
    fw = framework("call_in_loop.hal", "rd")
    forward = solve(fw)
    backward = solve(fw, seed_order=sorted(fw.flows, reverse=True))
    assert forward.same_tables(backward)


def test_context_depth_one_is_enough_without_nesting():
    lp, flows = load_program("two_call_sites.hal")
    result = solve(analyses.build("cp", lp, flows, k=1))
    assert verify_df_residual(result) == []
