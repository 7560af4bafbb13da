"""Rule normalization, rule schemata and canonical state forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .core.terms import Literal, Placeholder, Rule, Sym, Var
from .errors import InvalidState


def _rename_terms(r: Rule, mapping) -> Rule:
    def lit(l: Literal) -> Literal:
        return Literal(l.pred, tuple(mapping(a) for a in l.args))

    return Rule(lit(r.head), tuple(lit(b) for b in r.body))


def normalize(r: Rule) -> Rule:
    """Renumber variables ``X0..Xk-1`` by first occurrence, head before body."""
    order = {v: i for i, v in enumerate(r.variables())}
    if all(k == v for k, v in order.items()):
        return r
    return _rename_terms(r, lambda a: Var(order[a.index]) if isinstance(a, Var) else a)


def normalize_literal(lit: Literal) -> Literal:
    order: dict[int, int] = {}
    for v in lit.variables():
        order.setdefault(v, len(order))
    return Literal(lit.pred, tuple(Var(order[a.index]) if isinstance(a, Var) else a for a in lit.args))


def schema_of(r: Rule) -> Rule:
    """Replace symbolic values by placeholders ``$b0..`` in first-occurrence order.

    Program constants are plain ``Const`` terms and are left alone.
    """
    order = {s: i for i, s in enumerate(r.symbols())}
    if not order:
        return r
    return _rename_terms(r, lambda a: Placeholder(order[a.id]) if isinstance(a, Sym) else a)


def rename_symbols(r: Rule, mapping: dict[int, int]) -> Rule:
    return _rename_terms(r, lambda a: Sym(mapping[a.id]) if isinstance(a, Sym) else a)


@dataclass(frozen=True)
class State:
    """A set of normalized rules.

    Equality is set equality.  ``ordered`` lists the rules in the canonical
    total order (schema first, then the concrete rule).
    """

    rules: frozenset[Rule]

    @classmethod
    def of(cls, rules: Iterable[Rule]) -> "State":
        return cls(frozenset(rules))

    @cached_property
    def ordered(self) -> tuple[Rule, ...]:
        return tuple(sorted(self.rules, key=lambda r: (schema_of(r).key(), r.key())))

    @cached_property
    def symbols(self) -> tuple[int, ...]:
        seen: dict[int, None] = {}
        for r in self.ordered:
            for s in r.symbols():
                seen.setdefault(s, None)
        return tuple(seen)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.ordered)

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, r: Rule) -> bool:
        return r in self.rules

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.ordered)


def schema_collision(rules: Iterable[Rule]) -> Optional[tuple[Rule, Rule]]:
    """First pair of distinct rules sharing a schema, if any."""
    seen: dict[Rule, Rule] = {}
    for r in sorted(rules, key=Rule.key):
        sch = schema_of(r)
        if sch in seen:
            return (seen[sch], r)
        seen[sch] = r
    return None


def canonicalize_with_map(s: State) -> tuple[State, dict[int, int]]:
    """Canonical representative of ``s`` plus the symbolic renumbering used.

    Symbolic values are renumbered ``$c0, $c1, ..`` by first occurrence in
    schema order.  Only sound when all schemata are distinct.
    """
    clash = schema_collision(s.rules)
    if clash is not None:
        raise InvalidState(s, clash)
    mapping = {old: new for new, old in enumerate(s.symbols)}
    if all(k == v for k, v in mapping.items()):
        return s, mapping
    return State.of(rename_symbols(r, mapping) for r in s.rules), mapping


def canonicalize(s: State) -> State:
    return canonicalize_with_map(s)[0]


def canonical_form(s: State) -> str:
    """Text form of the canonical representative; equal iff states are equivalent."""
    return str(canonicalize(s))


def states_equivalent(a: State, b: State) -> bool:
    return canonicalize(a) == canonicalize(b)


def equivalence_map(a: State, b: State) -> Optional[dict[int, int]]:
    """Bijection from the symbolic values of ``a`` to those of ``b``, if equivalent."""
    ca, ma = canonicalize_with_map(a)
    cb, mb = canonicalize_with_map(b)
    if ca != cb:
        return None
    back = {new: old for old, new in mb.items()}
    return {old: back[new] for old, new in ma.items()}
