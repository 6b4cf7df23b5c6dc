from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from corpus import corpus_files, load_program
from monoflow.simplehal import (
    FlowKind, Label, LabelKind, ProgramError, SimpleHalSyntaxError, TaggedFlow,
    build_tagged_flows, final, flow, flow_rev, fv, init, label_program, load, parse,
    parse_command, proc_flow,
)
from monoflow.simplehal.syntax import (
    Assign, BinOp, BoolOp, Compare, If, Neg, Not, Num, Read, Var, While, flatten_seq,
)
from monoflow.simplehal.interp import UNINITIALISED, InterpreterError, run
from monoflow.simplehal.syntax import Test as Cond  # keep pytest from collecting it

BRANCH = "x := 3; read(y); if x > y then x := x - 1 else y := y - 1"
LOOP = "x := 3; y := 4; while x > 1 do (x := x - 1; y := x * y)"
TWO_SITES = "proc id(val a, res r) is r := a end\ncall id(1, z);\ncall id(2, z)"


def L(n, kind=LabelKind.PLAIN):
    return Label(n, kind)


def edges(*pairs):
    return frozenset((L(a), L(b)) for a, b in pairs)


ENTRY, EXIT = LabelKind.ENTRY, LabelKind.EXIT


def labeled(src):
    return label_program(parse(src))


class TestParse:
    def test_assignment(self):
        assert parse_command("x := 3") == Assign("x", Num(3))

    def test_conditional(self):
        c = parse_command("if x > y then x := x - 1 else y := y - 1")
        assert c == If(Cond(Compare(">", Var("x"), Var("y"))),
                       Assign("x", BinOp("-", Var("x"), Num(1))),
                       Assign("y", BinOp("-", Var("y"), Num(1))))

    def test_branch_program_has_five_blocks(self):
        assert len(labeled(BRANCH).blocks) == 5

    def test_precedence(self):
        assert parse_command("x := 1 + 2 * 3").expr == BinOp("+", Num(1), BinOp("*", Num(2), Num(3)))
        assert parse_command("x := -a - b").expr == BinOp("-", Neg(Var("a")), Var("b"))
        b = parse_command("while not x = 0 or y > 1 and true_ > 0 do x := 0").test.cond
        assert isinstance(b, BoolOp) and b.op == "or" and isinstance(b.left, Not)

    def test_parenthesised_boolean(self):
        c = parse_command("if (x > 1 or y > 1) and z = 0 then x := 1 else x := 2")
        assert c.test.cond.op == "and" and c.test.cond.left.op == "or"

    def test_unicode_aliases_and_comments(self):
        a = parse_command("# comment\nif ¬(x ≥ 1) ∧ y = 2 then x ≔ 2 × x else read(x)")
        b = parse_command("if not (x >= 1) and y = 2 then x := 2 * x else read(x)")
        assert a == b

    @pytest.mark.parametrize("src, line, column", [
        ("x := 3;\ny := (4 +", 2, 10),
        ("x := 3\ny = 4", 2, 1),
        ("x := ", 1, 6),
    ])
    def test_syntax_error_location(self, src, line, column):
        with pytest.raises(SimpleHalSyntaxError) as info:
            parse(src)
        assert (info.value.line, info.value.column) == (line, column)

    @given(st.integers(0, 10**6), st.sampled_from("xyz"))
    def test_literal_roundtrip(self, n, var):
        assert parse_command(f"{var} := {n}") == Assign(var, Num(n))


class TestLabeling:
    def test_branch_labels_in_source_order(self):
        lp = labeled(BRANCH)
        assert [str(l) for l in lp.labels] == ["1", "2", "3", "4", "5"]
        assert isinstance(lp.block(L(2)), Read)
        assert lp.block(L(4)) == Assign("x", BinOp("-", Var("x"), Num(1)), L(4))
        assert "[x := 3]_1" in lp.show()

    def test_single_command(self):
        assert labeled("x := 1").labels == [L(1)]

    def test_procedure_entry_exit_and_call(self):
        lp = labeled("proc p(val a, res r) is r := a end\ncall p(1, z)")
        assert lp.show().splitlines() == [
            "proc p(val a, res r) is_1", "  [r := a]_2", "end_3", "[call p(1, z)]_4"]
        assert lp.block(L(2)).var == "p.r"
        assert {"p.a", "p.r", "z"} <= set(lp.variables)

    @pytest.mark.parametrize("src, message", [
        ("call q(1, z)", "undeclared"),
        ("proc p(val a, res a) is a := 1 end\ncall p(1, z)", "both parameters"),
        ("proc p(val a, res r) is r := 1 end\nproc p(val a, res r) is r := 1 end\ncall p(1, z)",
         "more than once"),
    ])
    def test_program_errors(self, src, message):
        with pytest.raises(ProgramError, match=message):
            load(src)


class TestFlowFunctions:
    def test_branch(self):
        main = labeled(BRANCH).program.main
        assert init(main) == L(1)
        assert final(main) == frozenset({L(4), L(5)})
        assert flow(main) == edges((1, 2), (2, 3), (3, 4), (3, 5))
        assert flow_rev(flow(main)) == edges((2, 1), (3, 2), (4, 3), (5, 3))

    def test_loop(self):
        main = labeled(LOOP).program.main
        assert final(main) == frozenset({L(3)})
        assert flow(main) == edges((1, 2), (2, 3), (3, 4), (4, 5), (5, 3))

    def test_elementary(self):
        assert init(Assign("x", Num(1), L(7))) == L(7)
        assert final(Read("x", L(7))) == frozenset({L(7)})
        assert flow(Assign("x", Num(1), L(7))) == frozenset()
        loop = While(Cond(Compare(">", Var("x"), Num(0)), L(3)), Assign("x", Num(0), L(4)))
        assert init(loop) == L(3)

    def test_flow_rev_involution(self):
        f = edges((1, 2))
        assert flow_rev(f) == edges((2, 1)) and flow_rev(flow_rev(f)) == f

    def test_proc_flow(self):
        lp = labeled("proc p(val a, res r) is (r := a; r := r + 1) end\ncall p(1, z)")
        assert proc_flow(lp.program.proc("p")) == frozenset(
            {(L(1, ENTRY), L(2)), (L(2), L(3)), (L(3), L(4, EXIT))})

    def test_flatten(self):
        assert len(flatten_seq(labeled(BRANCH).program.main)) == 3


class TestTaggedFlows:
    def test_without_calls_everything_is_normal(self):
        lp, flows = load(BRANCH)
        assert {f.kind for f in flows} == {FlowKind.N}
        assert {f.edge for f in flows} == flow(lp.program.main)
        assert lp.rho == {l: l for l in lp.labels}

    def test_single_call_split(self):
        lp, flows = load("proc p(val a, res r) is r := a end\nx := 0; call p(x, z); y := z")
        c, r = L(5, LabelKind.CALL), L(5, LabelKind.RETURN)
        assert TaggedFlow(c, L(1, ENTRY), FlowKind.C) in flows
        assert TaggedFlow(L(3, EXIT), r, FlowKind.R) in flows
        assert TaggedFlow(L(4), c, FlowKind.N) in flows
        assert TaggedFlow(r, L(6), FlowKind.N) in flows
        assert lp.rho[c] == lp.rho[r] == L(5)
        assert lp.block(c) is lp.block(r)

    def test_two_sites_share_entry_and_exit(self):
        _, flows = load(TWO_SITES)
        calls = sorted(f for f in flows if f.kind is FlowKind.C)
        rets = sorted(f for f in flows if f.kind is FlowKind.R)
        assert [f.target for f in calls] == [L(1, ENTRY)] * 2
        assert [f.source for f in rets] == [L(3, EXIT)] * 2
        assert {f.target for f in rets} == {L(4, LabelKind.RETURN), L(5, LabelKind.RETURN)}

    def test_call_at_program_boundaries(self):
        lp, _ = load(TWO_SITES)
        assert lp.init == L(4, LabelKind.CALL)
        assert lp.final == frozenset({L(5, LabelKind.RETURN)})

    def test_call_to_return_edge(self):
        _, plain = load(TWO_SITES)
        _, extra = load(TWO_SITES, call_to_return=True)
        assert extra - plain == {
            TaggedFlow(L(4, LabelKind.CALL), L(4, LabelKind.RETURN), FlowKind.N),
            TaggedFlow(L(5, LabelKind.CALL), L(5, LabelKind.RETURN), FlowKind.N),
        }

    def test_reversed(self):
        f = TaggedFlow(L(1), L(2), FlowKind.C)
        assert f.reversed() == TaggedFlow(L(2), L(1), FlowKind.C)

    @pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.stem)
    def test_kinds_partition_and_rho_total(self, path):
        lp, flows = load_program(path)
        assert len({f.edge for f in flows}) == len(flows)
        for f in flows:
            assert f.source in lp.rho and f.target in lp.rho


def test_free_variables():
    assert fv(Num(3)) == frozenset()
    assert fv(BinOp("-", Var("x"), Num(1))) == {"x"}
    cond = BoolOp("and", Compare(">", Var("x"), Var("y")), Not(Compare("=", Var("z"), Num(0))))
    assert fv(cond) == {"x", "y", "z"}


def test_split_flows_rebuild_idempotent_on_plain_programs():
    lp = labeled(LOOP)
    split, flows = build_tagged_flows(lp)
    assert split.labels == lp.labels and len(flows) == 5


def test_interpreter_records_contexts_and_definitions():
    lp, _ = load(TWO_SITES)
    trace = run(lp)
    at_body = [o for o in trace if o.label == L(2)]
    assert [o.context for o in at_body] == [(L(4, LabelKind.CALL),), (L(5, LabelKind.CALL),)]
    assert [o.values["id.a"] for o in at_body] == [1, 2]
    assert at_body[0].definitions["id.r"] == UNINITIALISED
    last = trace[-1]
    assert last.label == L(5, LabelKind.RETURN) and last.values == {"z": 2}
    assert last.definitions == {"z": L(5)}


def test_interpreter_reads_inputs_and_guards():
    lp, _ = load("read(x); while x > 0 do x := x - 1")
    assert [o.values["x"] for o in run(lp, [2]) if o.label == L(2)] == [2, 1, 0]
    with pytest.raises(InterpreterError, match="input exhausted"):
        run(lp)
    lp, _ = load("x := 1; while x > 0 do x := x + 1")
    with pytest.raises(InterpreterError, match="budget"):
        run(lp, fuel=50)
