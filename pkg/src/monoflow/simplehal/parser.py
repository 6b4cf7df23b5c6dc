"""Recursive-descent parser for SimpleHal source text.

Concrete syntax::

    program  ::= proc* command
    proc     ::= "proc" ID "(" "val" ID "," "res" ID ")" "is" command "end"
    command  ::= stmt (";" stmt)*
    stmt     ::= ID ":=" aexp | "read" "(" ID ")" | "call" ID "(" aexp "," ID ")"
               | "if" bexp "then" stmt "else" stmt | "while" bexp "do" stmt
               | "(" command ")"

Bodies of ``if``/``while`` are single statements; a sequence has to be
parenthesised.  Operator precedence, loosest first: ``or``, ``and``, ``not``,
comparisons, ``+ -``, ``* /``, unary minus.  ``#`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Assign, BinOp, BoolOp, Call, Compare, Neg, Not, Num, Proc, ProcEntry,
    ProcExit, Program, Read, Seq, Test, Var, While, If,
)


class SimpleHalSyntaxError(SyntaxError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


KEYWORDS = {"proc", "val", "res", "is", "end", "read", "call", "if", "then",
            "else", "while", "do", "not", "and", "or"}

_ALIASES = {"¬": "not", "∧": "and", "∨": "or", "≥": ">=", "×": "*", "≔": ":="}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>:=|>=|[-+*/=>();,]|[¬∧∨≥×≔])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # num | id | kw | op | eof
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise SimpleHalSyntaxError(f"unexpected character {source[pos]!r}",
                                       line, pos - line_start + 1)
        kind, text = m.lastgroup, m.group()
        col = pos - line_start + 1
        pos = m.end()
        if kind == "nl":
            line, line_start = line + 1, pos
            continue
        if kind == "ws":
            continue
        text = _ALIASES.get(text, text)
        if kind == "id" and text in KEYWORDS:
            kind = "kw"
        elif kind == "op" and text in KEYWORDS:
            kind = "kw"
        tokens.append(Token(kind, text, line, col))
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return SimpleHalSyntaxError(message, tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("op", "kw")

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self) -> str:
        if self.tok.kind != "id":
            found = self.tok.text or "end of input"
            raise self.error(f"expected identifier, found {found!r}")
        name = self.tok.text
        self.pos += 1
        return name

    # program structure

    def program(self) -> Program:
        procs = []
        while self.at("proc"):
            procs.append(self.proc())
        if self.tok.kind == "eof":
            raise self.error("expected a main command")
        main = self.command()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return Program(tuple(procs), main)

    def proc(self) -> Proc:
        self.expect("proc")
        name = self.ident()
        self.expect("(")
        self.expect("val")
        value_param = self.ident()
        self.expect(",")
        self.expect("res")
        result_param = self.ident()
        self.expect(")")
        self.expect("is")
        body = self.command()
        self.expect("end")
        return Proc(name, value_param, result_param, body, ProcEntry(name), ProcExit(name))

    def command(self):
        result = self.statement()
        while self.accept(";"):
            result = Seq(result, self.statement())
        return result

    def statement(self):
        tok = self.tok
        if tok.kind == "id":
            var = self.ident()
            self.expect(":=")
            return Assign(var, self.aexp())
        if self.accept("read"):
            self.expect("(")
            var = self.ident()
            self.expect(")")
            return Read(var)
        if self.accept("call"):
            proc = self.ident()
            self.expect("(")
            arg = self.aexp()
            self.expect(",")
            result = self.ident()
            self.expect(")")
            return Call(proc, arg, result)
        if self.accept("if"):
            cond = self.bexp()
            self.expect("then")
            then = self.statement()
            self.expect("else")
            return If(Test(cond), then, self.statement())
        if self.accept("while"):
            cond = self.bexp()
            self.expect("do")
            return While(Test(cond), self.statement())
        if self.accept("("):
            c = self.command()
            self.expect(")")
            return c
        found = tok.text or "end of input"
        raise self.error(f"expected a command, found {found!r}")

    # boolean expressions

    def bexp(self):
        left = self.conjunction()
        while self.accept("or"):
            left = BoolOp("or", left, self.conjunction())
        return left

    def conjunction(self):
        left = self.negation()
        while self.accept("and"):
            left = BoolOp("and", left, self.negation())
        return left

    def negation(self):
        if self.accept("not"):
            return Not(self.negation())
        if self.at("("):
            # "(" opens either a nested boolean or an arithmetic operand
            saved = self.pos
            self.pos += 1
            try:
                inner = self.bexp()
                self.expect(")")
            except SimpleHalSyntaxError:
                self.pos = saved
            else:
                if self.tok.text not in ("=", ">", ">=", "+", "-", "*", "/"):
                    return inner
                self.pos = saved
        return self.comparison()

    def comparison(self):
        left = self.aexp()
        if self.tok.text in ("=", ">", ">="):
            op = self.tok.text
            self.pos += 1
            return Compare(op, left, self.aexp())
        raise self.error("expected a comparison (=, >, >=)")

    # arithmetic expressions

    def aexp(self):
        left = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.pos += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.tok.text
            self.pos += 1
            left = BinOp(op, left, self.unary())
        return left

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        tok = self.tok
        if tok.kind == "num":
            self.pos += 1
            return Num(int(tok.text))
        if tok.kind == "id":
            self.pos += 1
            return Var(tok.text)
        if self.accept("("):
            e = self.aexp()
            self.expect(")")
            return e
        found = tok.text or "end of input"
        raise self.error(f"expected an arithmetic expression, found {found!r}")


def parse(source: str) -> Program:
    """Parse a whole SimpleHal source file."""
    return _Parser(tokenize(source)).program()


def parse_command(source: str):
    """Parse a bare command (no procedure declarations)."""
    p = _Parser(tokenize(source))
    c = p.command()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return c
