"""Concrete syntax for CCS terms.

Grammar, loosest binding first::

    sum    := par ('+' par)*
    par    := unary ('||' unary)*
    unary  := 'rec' VAR '.' sum
            | '(' 'nu' LABEL ')' unary
            | LABEL '.' unary
            | 'nil' | VAR | '(' sum ')'
    LABEL  := NAME | '~' LABEL | 'tau'

``+`` and ``||`` are left-associative and the body of ``rec`` extends as far
right as possible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..labels import TAU, LabelSet, normalize
from .terms import Nil, Par, Prefix, Rec, Restrict, Sum, Term, Var

KEYWORDS = {"nil", "nu", "rec"}

_TOKEN = re.compile(r"\s*(?:(\|\|)|([()+.~])|([A-Za-z_][A-Za-z0-9_']*))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.pos, self.line, self.col = pos, line, col


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        kind = "name" if m.lastindex == 3 else m.group(m.lastindex)
        toks.append(_Tok(kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, sigma: LabelSet | None, auto_register: bool):
        self.text = text
        self.toks = _lex(text)
        self.k = 0
        self.sigma = sigma
        self.auto = auto_register
        self.labels: set[str] = set()

    def peek(self, ahead: int = 0) -> _Tok:
        return self.toks[min(self.k + ahead, len(self.toks) - 1)]

    def fail(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok.pos)

    def expect(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or "end of input"
            self.fail(f"expected {want!r}, found {got!r}")
        self.k += 1
        return tok

    def sum(self) -> Term:
        t = self.par()
        while self.peek().kind == "+":
            self.k += 1
            t = Sum(t, self.par())
        return t

    def par(self) -> Term:
        t = self.unary()
        while self.peek().kind == "||":
            self.k += 1
            t = Par(t, self.unary())
        return t

    def label(self) -> str:
        start = self.peek()
        tildes = 0
        while self.peek().kind == "~":
            tildes += 1
            self.k += 1
        tok = self.expect("name")
        if tok.text in KEYWORDS:
            self.fail(f"keyword {tok.text!r} cannot be a label", tok)
        name = normalize("~" * tildes + tok.text)
        if name != TAU and self.sigma is not None and name not in self.sigma and not self.auto:
            self.fail(f"unknown label {name!r}", start)
        self.labels.add(name)
        return name

    def unary(self) -> Term:
        tok = self.peek()
        if tok.kind == "name" and tok.text == "rec":
            self.k += 1
            var = self.expect("name")
            if var.text == TAU or var.text in KEYWORDS:
                self.fail(f"reserved name {var.text!r} cannot be a recursion variable", var)
            self.expect(".")
            return Rec(var.text, self.sum())
        if tok.kind == "(" and self.peek(1).kind == "name" and self.peek(1).text == "nu":
            self.k += 2
            at = self.peek()
            a = self.label()
            if a == TAU:
                self.fail("tau cannot be restricted", at)
            self.expect(")")
            return Restrict(a, self.unary())
        if tok.kind == "(":
            self.k += 1
            t = self.sum()
            self.expect(")")
            return t
        if tok.kind == "~":
            a = self.label()
            self.expect(".")
            return Prefix(a, self.unary())
        if tok.kind == "name":
            if self.peek(1).kind == ".":
                a = self.label()
                self.expect(".")
                return Prefix(a, self.unary())
            self.k += 1
            if tok.text == "nil":
                return Nil()
            if tok.text in KEYWORDS or tok.text == TAU:
                self.fail(f"unexpected {tok.text!r}", tok)
            return Var(tok.text)
        self.fail(f"unexpected {tok.text or 'end of input'!r}")


def parse(text: str, sigma: LabelSet | None = None, auto_register: bool = True) -> Term:
    """Parse a CCS term.

    With ``auto_register`` off, every label (up to the involution) must
    belong to ``sigma``.
    """
    p = _Parser(text, sigma, auto_register)
    t = p.sum()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r}")
    return t


def parse_with_labels(text: str, sigma: LabelSet | None = None, auto_register: bool = True) -> tuple[Term, LabelSet]:
    """Parse and also return the label set, extended by every label used."""
    p = _Parser(text, sigma, auto_register)
    t = p.sum()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r}")
    base = sigma or LabelSet(frozenset())
    return t, base.union(LabelSet(frozenset(p.labels)))
