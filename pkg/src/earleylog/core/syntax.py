"""Concrete syntax: tokenizer, clause parser and printer.

Variables start with an uppercase letter or ``_``; constants are lowercase
identifiers, integers or double-quoted strings.  ``%`` starts a line comment.
Symbolic values (``$c0``) are only accepted when reading serialized automata.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from typing import Iterable, Iterator

from ..errors import ParseError
from .terms import Const, Literal, Rule, Sym, Term, Var

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<neck>:-)
  | (?P<punct>[(),.])
  | (?P<sym>\$c[0-9]+)
  | (?P<int>-?[0-9]+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> Iterator[Token]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            yield Token(kind, m.group(), line, pos - line_start + 1)
        nl = m.group().count("\n")
        if nl:
            line += nl
            line_start = m.start() + m.group().rfind("\n") + 1
        pos = m.end()
    yield Token("eof", "", line, pos - line_start + 1)


def _unescape(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


class _Parser:
    def __init__(self, text: str, allow_symbolic: bool):
        self.tokens = list(tokenize(text))
        self.i = 0
        self.allow_symbolic = allow_symbolic
        self.varmap: dict[str, int] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise ParseError(f"{msg}, found {found!r}", tok.line, tok.column)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("punct", "neck"):
            self.error(f"expected {text!r}")
        tok = self.tok
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("punct", "neck")

    def term(self) -> Term:
        tok = self.tok
        self.i += 1
        if tok.kind == "var":
            if tok.text == "_":
                # anonymous: fresh on every occurrence
                idx = len(self.varmap)
                self.varmap[f"_{idx}\0"] = idx
                return Var(idx)
            return Var(self.varmap.setdefault(tok.text, len(self.varmap)))
        if tok.kind == "ident":
            return Const(sys.intern(tok.text))
        if tok.kind == "int":
            return Const(int(tok.text))
        if tok.kind == "string":
            return Const(sys.intern(_unescape(tok.text)))
        if tok.kind == "sym" and self.allow_symbolic:
            return Sym(int(tok.text[2:]))
        self.error("expected a term", tok)

    def literal(self) -> Literal:
        if self.tok.kind != "ident":
            self.error("expected a predicate name")
        pred = sys.intern(self.tok.text)
        self.i += 1
        args: list[Term] = []
        if self.at("("):
            self.i += 1
            if not self.at(")"):
                args.append(self.term())
                while self.at(","):
                    self.i += 1
                    args.append(self.term())
            self.expect(")")
        return Literal(pred, tuple(args))

    def clause(self) -> tuple[Rule, Token]:
        self.varmap = {}
        start = self.tok
        head = self.literal()
        body: list[Literal] = []
        if self.at(":-"):
            self.i += 1
            body.append(self.literal())
            while self.at(","):
                self.i += 1
                body.append(self.literal())
        self.expect(".")
        return Rule(head, tuple(body)), start

    def clauses(self) -> list[tuple[Rule, Token]]:
        out = []
        while self.tok.kind != "eof":
            out.append(self.clause())
        return out


def parse_clauses(text: str, allow_symbolic: bool = False) -> list[tuple[Rule, Token]]:
    """Parse every clause in ``text``; each comes with its first token for diagnostics."""
    return _Parser(text, allow_symbolic).clauses()


def parse_rule(text: str, allow_symbolic: bool = False) -> Rule:
    p = _Parser(text if text.rstrip().endswith(".") else text + ".", allow_symbolic)
    rule, _ = p.clause()
    if p.tok.kind != "eof":
        p.error("expected end of input")
    return rule


def parse_literal(text: str, allow_symbolic: bool = False) -> Literal:
    p = _Parser(text, allow_symbolic)
    lit = p.literal()
    if p.tok.kind != "eof":
        p.error("expected end of input")
    return lit


def format_rules(rules: Iterable[Rule]) -> str:
    return "".join(f"{r}\n" for r in rules)
