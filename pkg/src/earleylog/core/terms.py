"""Terms, literals and rules of function-free Datalog.

All values are immutable and hashable.  Rules inside engine states are kept
in normal form (variables ``X0..Xk-1`` numbered by first occurrence), so
structural equality doubles as equality up to variable renaming.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"X{self.index}"


@dataclass(frozen=True, slots=True)
class Const:
    value: Union[int, str]

    def __str__(self) -> str:
        v = self.value
        if isinstance(v, int) or _PLAIN_CONST.fullmatch(v):
            return str(v)
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True, slots=True)
class Sym:
    """Symbolic value standing for a data value unknown until run time."""

    id: int

    def __str__(self) -> str:
        return f"$c{self.id}"


@dataclass(frozen=True, slots=True)
class Placeholder:
    """Position-canonical stand-in for a symbolic value inside a rule schema."""

    index: int

    def __str__(self) -> str:
        return f"$b{self.index}"


Term = Union[Var, Const, Sym, Placeholder]

_PLAIN_CONST = re.compile(r"[a-z][A-Za-z0-9_]*")


def term_key(t: Term) -> tuple:
    # total order across term kinds; ints and strings never get compared
    if isinstance(t, Var):
        return (0, t.index)
    if isinstance(t, Const):
        if isinstance(t.value, int):
            return (1, 0, t.value)
        return (1, 1, t.value)
    if isinstance(t, Sym):
        return (2, t.id)
    return (3, t.index)


@dataclass(frozen=True, slots=True)
class Literal:
    pred: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def signature(self) -> tuple[str, int]:
        return (self.pred, len(self.args))

    def is_ground(self) -> bool:
        return not any(isinstance(a, Var) for a in self.args)

    def variables(self) -> Iterator[int]:
        for a in self.args:
            if isinstance(a, Var):
                yield a.index

    def key(self) -> tuple:
        return (self.pred, tuple(term_key(a) for a in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(map(str, self.args))})"


@dataclass(frozen=True, slots=True)
class Rule:
    head: Literal
    body: tuple[Literal, ...] = ()

    def is_fact(self) -> bool:
        return not self.body and self.head.is_ground()

    def literals(self) -> Iterator[Literal]:
        yield self.head
        yield from self.body

    def variables(self) -> list[int]:
        """Variable indices in order of first occurrence, head first."""
        seen: dict[int, None] = {}
        for lit in self.literals():
            for v in lit.variables():
                seen.setdefault(v, None)
        return list(seen)

    def symbols(self) -> list[int]:
        """Symbolic value ids in order of first occurrence."""
        seen: dict[int, None] = {}
        for lit in self.literals():
            for a in lit.args:
                if isinstance(a, Sym):
                    seen.setdefault(a.id, None)
        return list(seen)

    def key(self) -> tuple:
        return (self.head.key(), tuple(b.key() for b in self.body))

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


def fact(pred: str, *values: Union[int, str]) -> Literal:
    """Shorthand for a ground literal over plain constants."""
    return Literal(pred, tuple(Const(v) for v in values))
