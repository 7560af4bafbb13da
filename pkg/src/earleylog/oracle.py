"""Naive bottom-up fixpoint of the immediate-consequence operator.

Used as ground truth in tests.  It shares only the data types with the rest
of the package: matching is done here with plain dictionaries.
"""

from __future__ import annotations

from typing import Iterator

from .core.program import ANSWER, TRUE, Database, Program
from .core.terms import Literal, Rule, Var


class FactSet:
    def __init__(self, facts=()):
        self.by_pred: dict[str, set[Literal]] = {}
        for f in facts:
            self.add(f)

    def add(self, f: Literal) -> bool:
        bucket = self.by_pred.setdefault(f.pred, set())
        if f in bucket:
            return False
        bucket.add(f)
        return True

    def __contains__(self, f: Literal) -> bool:
        return f in self.by_pred.get(f.pred, ())

    def __iter__(self) -> Iterator[Literal]:
        for facts in self.by_pred.values():
            yield from facts

    def __len__(self) -> int:
        return sum(map(len, self.by_pred.values()))

    def of(self, pred: str) -> set[Literal]:
        return self.by_pred.get(pred, set())

    def as_set(self) -> frozenset[Literal]:
        return frozenset(self)


def _match(pattern: Literal, f: Literal, env: dict) -> dict | None:
    if len(pattern.args) != len(f.args):
        return None
    env = dict(env)
    for a, v in zip(pattern.args, f.args):
        if isinstance(a, Var):
            if env.setdefault(a.index, v) != v:
                return None
        elif a != v:
            return None
    return env


def _joins(body: tuple[Literal, ...], facts: FactSet, env: dict) -> Iterator[dict]:
    if not body:
        yield env
        return
    for f in list(facts.of(body[0].pred)):
        e = _match(body[0], f, env)
        if e is not None:
            yield from _joins(body[1:], facts, e)


def _consequence(r: Rule, env: dict) -> Literal:
    return Literal(r.head.pred, tuple(env[a.index] if isinstance(a, Var) else a for a in r.head.args))


def fixpoint(p: Program, d: Database) -> FactSet:
    """Least set of facts containing ``d`` and closed under the rules of ``p``."""
    facts = FactSet(d)
    facts.add(TRUE)
    rules = p.all_rules
    while True:
        new = [
            _consequence(r, env)
            for r in rules
            for env in _joins(r.body, facts, {})
        ]
        changed = False
        for f in new:
            changed |= facts.add(f)
        if not changed:
            facts.by_pred["true"].discard(TRUE)
            if not facts.by_pred["true"]:
                del facts.by_pred["true"]
            return facts


def answers_of(f: FactSet) -> frozenset[Literal]:
    return frozenset(f.of(ANSWER))
