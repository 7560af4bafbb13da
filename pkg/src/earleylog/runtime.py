"""Run a compiled automaton against a concrete database.

A frame is an automaton state plus a register file holding the data value of
each of the state's symbolic values.  The search backtracks over the facts
matching each outgoing transition label; a visited set over frames makes it
terminate on cyclic data.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core.program import Database
from .core.terms import Literal, Sym, Term
from .errors import UnknownPredicate
from .parteval import Automaton

log = logging.getLogger(__name__)


@dataclass
class RunStats:
    frames: int = 0
    facts_fetched: int = 0
    visited: int = 0


@dataclass
class RunResult:
    answers: frozenset
    stats: RunStats = field(default_factory=RunStats)


def _fill(lit: Literal, regs: tuple[Term, ...]) -> Literal:
    return Literal(lit.pred, tuple(regs[a.id] if isinstance(a, Sym) else a for a in lit.args))


def check_predicates(a: Automaton, d: Database, strict: bool = False) -> None:
    """Complain about label predicates the database has no facts for."""
    used = {t.label.pred for t in a.transitions}
    missing = sorted(used - d.predicates)
    if not missing:
        return
    msg = f"database has no facts for {', '.join(missing)}"
    if strict:
        raise UnknownPredicate(msg)
    log.warning("%s; treating as empty", msg)


def run_stream(
    a: Automaton, d: Database, strict: bool = False, stats: Optional[RunStats] = None
) -> Iterator[Literal]:
    """Yield answers in depth-first order, each once."""
    check_predicates(a, d, strict)
    stats = stats if stats is not None else RunStats()
    visited: set[tuple[int, tuple[Term, ...]]] = set()
    emitted: set[Literal] = set()
    stack: list[tuple[int, tuple[Term, ...]]] = [(a.initial, ())]
    while stack:
        frame = stack.pop()
        if frame in visited:
            continue
        visited.add(frame)
        stats.visited = len(visited)
        stats.frames += 1
        state, regs = frame
        for tmpl in a.finals.get(state, ()):
            ans = _fill(tmpl, regs)
            if ans not in emitted:
                emitted.add(ans)
                yield ans
        children = []
        for t in a.outgoing(state):
            facts = d.match(_fill(t.label, regs))
            stats.facts_fetched += len(facts)
            for f in facts:
                new = tuple(
                    regs[o.index] if o.kind == "reg" else f.args[o.index - 1] for o in t.registers
                )
                children.append((t.target, new))
        stack.extend(reversed(children))


def run(a: Automaton, d: Database, strict: bool = False) -> RunResult:
    stats = RunStats()
    answers = frozenset(run_stream(a, d, strict, stats))
    return RunResult(answers, stats)
