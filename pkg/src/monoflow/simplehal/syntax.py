"""Abstract syntax of SimpleHal with single value/result-parameter procedures."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union


class LabelKind(enum.IntEnum):
    PLAIN = 0
    ENTRY = 1
    EXIT = 2
    CALL = 3
    RETURN = 4


_SUFFIX = {LabelKind.CALL: "_c", LabelKind.RETURN: "_r"}


@dataclass(frozen=True, order=True)
class Label:
    n: int
    kind: LabelKind = LabelKind.PLAIN

    def __str__(self) -> str:
        return f"{self.n}{_SUFFIX.get(self.kind, '')}"

    def __repr__(self) -> str:
        return f"Label({self})"

    @property
    def is_call(self) -> bool:
        return self.kind is LabelKind.CALL

    @property
    def is_return(self) -> bool:
        return self.kind is LabelKind.RETURN

    def call_point(self) -> "Label":
        return Label(self.n, LabelKind.CALL)

    def return_point(self) -> "Label":
        return Label(self.n, LabelKind.RETURN)

    def partner(self) -> "Label":
        """The other half of a split call label."""
        if self.kind is LabelKind.CALL:
            return self.return_point()
        if self.kind is LabelKind.RETURN:
            return self.call_point()
        raise ValueError(f"label {self} is not a call or return point")


# -- expressions --------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "AExp"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "AExp"
    right: "AExp"


@dataclass(frozen=True)
class Not:
    operand: "BExp"


@dataclass(frozen=True)
class BoolOp:
    op: str  # "and" | "or"
    left: "BExp"
    right: "BExp"


@dataclass(frozen=True)
class Compare:
    op: str  # one of = > >=
    left: "AExp"
    right: "AExp"


AExp = Union[Num, Var, Neg, BinOp]
BExp = Union[Not, BoolOp, Compare]


# -- blocks and commands ----------------------------------------------------------

@dataclass(frozen=True)
class Assign:
    var: str
    expr: AExp
    label: Optional[Label] = None


@dataclass(frozen=True)
class Read:
    var: str
    label: Optional[Label] = None


@dataclass(frozen=True)
class Test:
    """The condition of an ``if`` or ``while``: a block of its own."""

    cond: BExp
    label: Optional[Label] = None


@dataclass(frozen=True)
class Call:
    proc: str
    arg: AExp
    result: str
    label: Optional[Label] = None


@dataclass(frozen=True)
class ProcEntry:
    proc: str
    label: Optional[Label] = None


@dataclass(frozen=True)
class ProcExit:
    proc: str
    label: Optional[Label] = None


@dataclass(frozen=True)
class Seq:
    first: "Command"
    second: "Command"


@dataclass(frozen=True)
class If:
    test: Test
    then: "Command"
    orelse: "Command"


@dataclass(frozen=True)
class While:
    test: Test
    body: "Command"


Command = Union[Assign, Read, Call, Seq, If, While]
Block = Union[Assign, Read, Test, Call, ProcEntry, ProcExit]


@dataclass(frozen=True)
class Proc:
    name: str
    value_param: str
    result_param: str
    body: Command
    entry: ProcEntry
    exit: ProcExit


@dataclass(frozen=True)
class Program:
    procs: tuple[Proc, ...]
    main: Command

    def proc(self, name: str) -> Proc:
        for p in self.procs:
            if p.name == name:
                return p
        raise KeyError(name)


def seq(*commands: Command) -> Command:
    """Left-nested sequence of one or more commands."""
    result = commands[0]
    for c in commands[1:]:
        result = Seq(result, c)
    return result


def flatten_seq(c: Command) -> list[Command]:
    if isinstance(c, Seq):
        return flatten_seq(c.first) + flatten_seq(c.second)
    return [c]


def fv(e) -> frozenset[str]:
    """Free variables of an arithmetic or boolean expression."""
    if isinstance(e, Num):
        return frozenset()
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, (Neg, Not)):
        return fv(e.operand)
    if isinstance(e, (BinOp, BoolOp, Compare)):
        return fv(e.left) | fv(e.right)
    raise TypeError(f"not an expression: {e!r}")


def variables(program: Program) -> frozenset[str]:
    """Every variable name the program mentions, formals included."""
    names: set[str] = set()

    def walk(c):
        if isinstance(c, Assign):
            names.add(c.var)
            names.update(fv(c.expr))
        elif isinstance(c, Read):
            names.add(c.var)
        elif isinstance(c, Call):
            names.add(c.result)
            names.update(fv(c.arg))
        elif isinstance(c, Seq):
            walk(c.first)
            walk(c.second)
        elif isinstance(c, If):
            names.update(fv(c.test.cond))
            walk(c.then)
            walk(c.orelse)
        elif isinstance(c, While):
            names.update(fv(c.test.cond))
            walk(c.body)

    for p in program.procs:
        names.update((p.value_param, p.result_param))
        walk(p.body)
    walk(program.main)
    return frozenset(names)


# -- printing -----------------------------------------------------------------------

_PREC = {"or": 1, "and": 2, "not": 3, "cmp": 4, "+": 5, "-": 5, "*": 6, "/": 6, "neg": 7}


def _name(name: str, scope: Optional[str]) -> str:
    if scope and name.startswith(scope + "."):
        return name[len(scope) + 1:]
    return name


def show_expr(e, scope: Optional[str] = None, parent: int = 0) -> str:
    if isinstance(e, Num):
        text, prec = str(e.value), 9
    elif isinstance(e, Var):
        text, prec = _name(e.name, scope), 9
    elif isinstance(e, Neg):
        text, prec = "-" + show_expr(e.operand, scope, _PREC["neg"]), _PREC["neg"]
    elif isinstance(e, Not):
        text, prec = "not " + show_expr(e.operand, scope, _PREC["not"]), _PREC["not"]
    elif isinstance(e, Compare):
        prec = _PREC["cmp"]
        text = f"{show_expr(e.left, scope, prec + 1)} {e.op} {show_expr(e.right, scope, prec + 1)}"
    elif isinstance(e, (BinOp, BoolOp)):
        prec = _PREC[e.op]
        text = f"{show_expr(e.left, scope, prec)} {e.op} {show_expr(e.right, scope, prec + 1)}"
    else:
        raise TypeError(f"not an expression: {e!r}")
    return f"({text})" if prec < parent else text


def _tag(text: str, label: Optional[Label]) -> str:
    return f"[{text}]" if label is None else f"[{text}]_{label}"


def show_command(c, scope: Optional[str] = None, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(c, Seq):
        parts = flatten_seq(c)
        return ";\n".join(show_command(p, scope, indent) for p in parts)
    if isinstance(c, Assign):
        return pad + _tag(f"{_name(c.var, scope)} := {show_expr(c.expr, scope)}", c.label)
    if isinstance(c, Read):
        return pad + _tag(f"read({_name(c.var, scope)})", c.label)
    if isinstance(c, Call):
        return pad + _tag(
            f"call {c.proc}({show_expr(c.arg, scope)}, {_name(c.result, scope)})", c.label)
    if isinstance(c, If):
        return (f"{pad}if {_tag(show_expr(c.test.cond, scope), c.test.label)} then\n"
                f"{_block(c.then, scope, indent + 1)}\n{pad}else\n"
                f"{_block(c.orelse, scope, indent + 1)}")
    if isinstance(c, While):
        return (f"{pad}while {_tag(show_expr(c.test.cond, scope), c.test.label)} do\n"
                f"{_block(c.body, scope, indent + 1)}")
    raise TypeError(f"not a command: {c!r}")


def _block(c, scope, indent) -> str:
    if isinstance(c, (Seq, If, While)):
        pad = "  " * (indent - 1)
        return f"{pad}(\n{show_command(c, scope, indent)}\n{pad})"
    return show_command(c, scope, indent)


def show_program(p: Program) -> str:
    chunks = []
    for proc in p.procs:
        is_ = "is" if proc.entry.label is None else f"is_{proc.entry.label}"
        end = "end" if proc.exit.label is None else f"end_{proc.exit.label}"
        chunks.append(
            f"proc {proc.name}(val {_name(proc.value_param, proc.name)}, "
            f"res {_name(proc.result_param, proc.name)}) {is_}\n"
            f"{show_command(proc.body, proc.name, 1)}\n{end}"
        )
    chunks.append(show_command(p.main))
    return "\n".join(chunks) + "\n"
