"""Programs, databases and their validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

from ..errors import ArityError, ParseError, RangeRestrictionError, ValidationError
from .syntax import format_rules, parse_clauses
from .terms import Const, Literal, Rule, Sym, Var

ANSWER = "answer"
TRUE = Literal("true")


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]
    goals: tuple[Rule, ...]
    idb: frozenset[str]
    edb: frozenset[str]
    arity: Mapping[str, int] = field(compare=False, repr=False)

    @cached_property
    def _by_head(self) -> dict[str, tuple[Rule, ...]]:
        index: dict[str, list[Rule]] = {}
        for r in self.rules:
            index.setdefault(r.head.pred, []).append(r)
        return {k: tuple(v) for k, v in index.items()}

    def rules_for(self, pred: str) -> tuple[Rule, ...]:
        return self._by_head.get(pred, ())

    def is_idb(self, pred: str) -> bool:
        return pred in self.idb

    @property
    def all_rules(self) -> tuple[Rule, ...]:
        return self.rules + self.goals

    @cached_property
    def max_body(self) -> int:
        return max((len(r.body) for r in self.all_rules), default=0)

    @cached_property
    def constants(self) -> frozenset[Const]:
        return frozenset(
            a for r in self.all_rules for lit in r.literals() for a in lit.args if isinstance(a, Const)
        )

    def __str__(self) -> str:
        return format_rules(self.all_rules)


def _check_arity(lit: Literal, arity: dict[str, int], where: str) -> None:
    known = arity.setdefault(lit.pred, lit.arity)
    if known != lit.arity:
        raise ArityError(f"{where}: predicate {lit.pred} used with arity {lit.arity} and {known}")


def make_program(rules: Iterable[Rule], where: Optional[list[str]] = None) -> Program:
    """Validate ``rules`` and split them into program rules and goal rules."""
    rules = list(dict.fromkeys(rules))
    where = where or [str(r) for r in rules]
    arity: dict[str, int] = {"true": 0}
    idb = {r.head.pred for r in rules}
    if "true" in idb:
        raise ValidationError("true is a built-in EDB predicate and cannot head a rule")
    for r, loc in zip(rules, where):
        for lit in r.literals():
            _check_arity(lit, arity, loc)
            if any(isinstance(a, Sym) for a in lit.args):
                raise ValidationError(f"{loc}: symbolic value in a program rule")
        if not r.body:
            raise ValidationError(f"{loc}: program rule {r} has an empty body")
        if any(b.pred == ANSWER for b in r.body):
            raise ValidationError(f"{loc}: {ANSWER} must not occur in a rule body")
        body_vars = {v for b in r.body for v in b.variables()}
        missing = [v for v in r.head.variables() if v not in body_vars]
        if missing:
            raise RangeRestrictionError(f"{loc}: head variable of {r} does not occur in the body")
    goals = tuple(r for r in rules if r.head.pred == ANSWER)
    if not goals:
        raise ValidationError(f"no goal rule for predicate {ANSWER}")
    preds = set(arity)
    return Program(
        rules=tuple(r for r in rules if r.head.pred != ANSWER),
        goals=goals,
        idb=frozenset(idb),
        edb=frozenset(preds - idb),
        arity=arity,
    )


def parse_program(text: str) -> Program:
    clauses = parse_clauses(text)
    return make_program(
        [r for r, _ in clauses], [f"{tok.line}:{tok.column}" for _, tok in clauses]
    )


class Database:
    """A finite set of ground EDB facts with lookup by bound-argument pattern.

    The built-in ``true`` fact is always present.
    """

    def __init__(self, facts: Iterable[Literal] = ()):
        ordered: dict[Literal, int] = {}
        arity: dict[str, int] = {}
        for f in facts:
            if not f.is_ground() or any(isinstance(a, Sym) for a in f.args):
                raise ValidationError(f"fact {f} is not ground")
            _check_arity(f, arity, str(f))
            ordered.setdefault(f, len(ordered))
        self.facts: tuple[Literal, ...] = tuple(ordered)
        self.arity = arity
        self._position = ordered
        self._by_pred: dict[str, list[Literal]] = {}
        for f in self.facts:
            self._by_pred.setdefault(f.pred, []).append(f)
        self._indexes: dict[tuple[str, tuple[int, ...]], dict[tuple, list[Literal]]] = {}

    def __len__(self) -> int:
        return len(self.facts)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.facts)

    def __contains__(self, f: Literal) -> bool:
        return f == TRUE or f in self._position

    def __eq__(self, other) -> bool:
        return isinstance(other, Database) and set(self.facts) == set(other.facts)

    def __repr__(self) -> str:
        return f"Database({len(self.facts)} facts)"

    def position(self, f: Literal) -> int:
        """File-order position of ``f``; the implicit ``true`` comes first."""
        return -1 if f == TRUE else self._position[f]

    @property
    def predicates(self) -> frozenset[str]:
        return frozenset(self._by_pred) | {"true"}

    def facts_of(self, pred: str) -> list[Literal]:
        if pred == "true":
            return [TRUE]
        return self._by_pred.get(pred, [])

    def match(self, pattern: Literal) -> list[Literal]:
        """Facts that are instances of ``pattern`` (constants bound, variables free)."""
        if pattern.pred == "true":
            return [TRUE] if not pattern.args else []
        bound = tuple(i for i, a in enumerate(pattern.args) if not isinstance(a, Var))
        ix_key = (pattern.pred, bound)
        index = self._indexes.get(ix_key)
        if index is None:
            index = {}
            for f in self._by_pred.get(pattern.pred, ()):
                if f.arity == pattern.arity:
                    index.setdefault(tuple(f.args[i] for i in bound), []).append(f)
            self._indexes[ix_key] = index
        hits = index.get(tuple(pattern.args[i] for i in bound), [])
        if len(set(pattern.variables())) == sum(1 for _ in pattern.variables()):
            return hits
        # repeated variables: the matching positions must agree
        out = []
        for f in hits:
            seen: dict[int, object] = {}
            if all(
                seen.setdefault(a.index, v) == v
                for a, v in zip(pattern.args, f.args)
                if isinstance(a, Var)
            ):
                out.append(f)
        return out

    def __str__(self) -> str:
        return "".join(f"{f}.\n" for f in self.facts)


def parse_database(text: str, program: Optional[Program] = None) -> Database:
    facts = []
    for rule, tok in parse_clauses(text):
        if rule.body:
            raise ParseError("database entries must be facts", tok.line, tok.column)
        if not rule.head.is_ground():
            raise ValidationError(f"{tok.line}:{tok.column}: fact {rule.head} is not ground")
        facts.append(rule.head)
    db = Database(facts)
    if program is not None:
        check_pairing(program, db)
    return db


def check_pairing(program: Program, db: Database) -> None:
    """Reject databases that define IDB predicates or disagree on arities."""
    for pred, n in db.arity.items():
        if pred in program.idb:
            raise ValidationError(f"database fact uses IDB predicate {pred}")
        if program.arity.get(pred, n) != n:
            raise ArityError(
                f"predicate {pred} has arity {program.arity[pred]} in the program and {n} in the database"
            )
