"""Concrete Earley Deduction over sets of normalized rules.

One EDB fact takes a state to its successor: reduction with the fact,
reduction with the IDB facts that result, instantiation of the new rules,
and copying of the waiting rules that still depend on them.  ``evaluate``
searches the graph of reachable states and collects every ``answer`` fact.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Union

from .core.program import ANSWER, Database, Program
from .core.terms import Literal, Rule
from .core.unify import apply, rename_literal, unifiable, unify
from .normalize import State, canonicalize, normalize

AnswerSet = frozenset  # of ground ``answer`` literals


class Mode(enum.Enum):
    BASIC = "basic"
    EXTENDED = "extended"


def selected_index(r: Rule) -> int:
    """Leftmost selection.  Every other function goes through this one."""
    return 0


def selected(r: Rule) -> Literal:
    return r.body[selected_index(r)]


def _rest(r: Rule) -> tuple[Literal, ...]:
    i = selected_index(r)
    return r.body[:i] + r.body[i + 1:]


def _renamed(prog_rule: Rule, offset: int) -> Rule:
    return Rule(
        rename_literal(prog_rule.head, offset),
        tuple(rename_literal(b, offset) for b in prog_rule.body),
    )


def instantiate(state_rule: Rule, prog_rule: Rule) -> Optional[Rule]:
    """Instance of ``prog_rule`` called by the selected literal of ``state_rule``."""
    prog_rule = _renamed(prog_rule, len(state_rule.variables()))
    s = unify(selected(state_rule), prog_rule.head)
    if s is None:
        return None
    return normalize(apply(s, prog_rule))


def reduce(r: Rule, f: Literal) -> Optional[Rule]:
    """Reduct of ``r`` by the ground fact ``f``, or None if they do not match."""
    s = unify(selected(r), f)
    if s is None:
        return None
    return normalize(apply(s, Rule(r.head, _rest(r))))


def last_literal_resolve(r: Rule, prog_rule: Rule) -> Optional[Rule]:
    """Resolve the selected literal of ``r`` against ``prog_rule`` in one step."""
    prog_rule = _renamed(prog_rule, len(r.variables()))
    s = unify(selected(r), prog_rule.head)
    if s is None:
        return None
    return normalize(apply(s, Rule(r.head, prog_rule.body + _rest(r))))


@lru_cache(maxsize=4096)
def _callers(s: State) -> dict[Rule, tuple[Rule, ...]]:
    # rule -> rules of s whose selected literal unifies with its head
    by_pred: dict[str, list[Rule]] = {}
    for r in s.ordered:
        if r.body:
            by_pred.setdefault(selected(r).pred, []).append(r)
    return {
        t: tuple(r for r in by_pred.get(t.head.pred, ()) if unifiable(selected(r), t.head))
        for t in s.ordered
    }


def dependents(s: State, targets: Iterable[Rule]) -> dict[Rule, Rule]:
    """Rules of ``s`` depending (w.r.t. ``s``) on one of ``targets``.

    Maps each such rule to the rule it directly depends on in the chain.
    """
    callers = _callers(s)
    waiting: dict[str, list[Rule]] = {}
    for r in s.ordered:
        if r.body:
            waiting.setdefault(selected(r).pred, []).append(r)
    found: dict[Rule, Rule] = {}
    queue: deque[Rule] = deque()
    for t in targets:
        for r in waiting.get(t.head.pred, ()):
            if r not in found and unifiable(selected(r), t.head):
                found[r] = t
                queue.append(r)
    while queue:
        t = queue.popleft()
        for r in callers[t]:
            if r not in found:
                found[r] = t
                queue.append(r)
    return found


def depends_on(r: Rule, target: Rule, s: State) -> bool:
    return r in s and r in dependents(s, [target])


@dataclass(frozen=True)
class Derivation:
    """How a rule entered a state.

    ``kind`` is one of goal, inst, llr, reduce, copy.  ``source`` is the rule
    acted on; ``other`` the program rule, fact or witness involved.
    """

    kind: str
    source: Optional[Rule] = None
    other: Union[Rule, Literal, None] = None


def _close(rules: Iterable[Rule], out: dict[Rule, Derivation], p: Program, mode: Mode) -> None:
    # instantiation closure (and last literal resolution in extended mode)
    work = deque(rules)
    while work:
        r = work.popleft()
        if not r.body or not p.is_idb(selected(r).pred):
            continue
        llr = mode is Mode.EXTENDED and len(r.body) == 1
        step = last_literal_resolve if llr else instantiate
        for pr in p.rules_for(selected(r).pred):
            new = step(r, pr)
            if new is not None and new not in out:
                out[new] = Derivation("llr" if llr else "inst", r, pr)
                work.append(new)


def initial_derivation(p: Program, mode: Mode = Mode.EXTENDED) -> dict[Rule, Derivation]:
    out = {g: Derivation("goal", g) for g in p.goals}
    _close(list(out), out, p, mode)
    return out


def initial_state(p: Program, mode: Mode = Mode.EXTENDED) -> State:
    return State.of(initial_derivation(p, mode))


def successor_derivation(
    s: State, f: Literal, p: Program, mode: Mode = Mode.EXTENDED
) -> Optional[dict[Rule, Derivation]]:
    """Rules of the successor of ``s`` under ``f`` in derivation order, or None."""
    ext = mode is Mode.EXTENDED
    out: dict[Rule, Derivation] = {}
    for r in s.ordered:
        if r.body:
            red = reduce(r, f)
            if red is not None and red not in out:
                out[red] = Derivation("reduce", r, f)
    if not out:
        return None

    min_body = 2 if ext else 1
    facts = [r for r in out if not r.body]
    i = 0
    while i < len(facts):
        g = facts[i]
        i += 1
        for r in s.ordered:
            if len(r.body) >= min_body and selected(r).pred == g.head.pred:
                red = reduce(r, g.head)
                if red is not None and red not in out:
                    out[red] = Derivation("reduce", r, g)
                    if not red.body:
                        facts.append(red)

    _close(list(out), out, p, mode)

    for r, why in dependents(s, [t for t in out if t.body]).items():
        if ext and len(r.body) < 2:
            continue
        if r not in out:
            out[r] = Derivation("copy", r, why)
    return out


def successor_state(
    s: State, f: Literal, p: Program, mode: Mode = Mode.EXTENDED
) -> Optional[State]:
    out = successor_derivation(s, f, p, mode)
    return None if out is None else State.of(out)


def selected_edb(s: State, p: Program) -> list[Literal]:
    """Distinct selected EDB literals of ``s`` in canonical rule order."""
    seen: dict[Literal, None] = {}
    for r in s.ordered:
        if r.body and not p.is_idb(selected(r).pred):
            seen.setdefault(selected(r), None)
    return list(seen)


def candidate_facts(s: State, p: Program, d: Database) -> list[Literal]:
    found = {f for lit in selected_edb(s, p) for f in d.match(lit)}
    return sorted(found, key=d.position)


def answers_in(s: State) -> set[Literal]:
    return {r.head for r in s.rules if not r.body and r.head.pred == ANSWER}


@dataclass
class Exploration:
    answers: AnswerSet
    states: list[State]
    transitions: list[tuple[int, Literal, int]] = field(default_factory=list)


OnStep = Callable[[int, Literal, dict, int, bool], None]


def explore(
    p: Program,
    d: Database,
    mode: Mode = Mode.EXTENDED,
    on_step: Optional[OnStep] = None,
    initial: Optional[dict[Rule, Derivation]] = None,
) -> Exploration:
    """Breadth-first search of the state graph.

    Facts are tried in database order.  ``on_step(src, fact, derivation,
    dst, is_new)`` observes every transition.
    """
    s0 = State.of(initial if initial is not None else initial_derivation(p, mode))
    ids = {canonicalize(s0): 0}
    states = [s0]
    transitions = []
    answers: set[Literal] = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        s = states[i]
        answers |= answers_in(s)
        for f in candidate_facts(s, p, d):
            out = successor_derivation(s, f, p, mode)
            if out is None:
                continue
            nxt = State.of(out)
            key = canonicalize(nxt)
            is_new = key not in ids
            if is_new:
                ids[key] = len(states)
                states.append(nxt)
                queue.append(ids[key])
            transitions.append((i, f, ids[key]))
            if on_step is not None:
                on_step(i, f, out, ids[key], is_new)
    return Exploration(frozenset(answers), states, transitions)


def evaluate(p: Program, d: Database, mode: Mode = Mode.EXTENDED) -> AnswerSet:
    return explore(p, d, mode).answers


@dataclass
class TraceStep:
    index: int
    state: State
    parent: Optional[int]
    fact: Optional[Literal]
    lines: list[tuple[int, Rule, str]]


@dataclass
class Trace:
    header: list[tuple[int, str, str]]
    steps: list[TraceStep]
    transitions: list[tuple[int, Literal, int]]
    answers: AnswerSet

    def __str__(self) -> str:
        return format_trace(self)


def trace(p: Program, d: Database, mode: Mode = Mode.EXTENDED) -> Trace:
    """Replay ``explore`` and number every rule as in a hand-written derivation."""
    counter = 0
    header = []
    prog_no: dict[Rule, int] = {}
    fact_no: dict[Literal, int] = {}

    def number() -> int:
        nonlocal counter
        counter += 1
        return counter

    for r in p.rules:
        prog_no[r] = number()
        header.append((prog_no[r], str(r), "program"))
    for f in d:
        fact_no[f] = number()
        header.append((fact_no[f], f"{f}.", "database"))
    for g in p.goals:
        prog_no[g] = number()
        header.append((prog_no[g], str(g), "goal rule"))

    state_no: list[dict[Rule, int]] = []
    steps: list[TraceStep] = []

    def ref(x, *maps) -> str:
        if isinstance(x, Literal):
            return f"[{fact_no[x]}]" if x in fact_no else str(x)
        for m in maps:
            if x in m:
                return f"[{m[x]}]"
        return str(x)

    def listing(out: dict[Rule, Derivation], parent: Optional[dict[Rule, int]]):
        here: dict[Rule, int] = {}
        lines = []
        prev = parent or {}
        for r, dv in out.items():
            here[r] = number()
            if dv.kind == "goal":
                note = f"goal {ref(r, prog_no)}"
            elif dv.kind == "inst":
                note = f"inst. of {ref(dv.other, prog_no)} because of {ref(dv.source, here, prev)}"
            elif dv.kind == "llr":
                note = (
                    f"last literal resolution of {ref(dv.source, here, prev)}"
                    f" with {ref(dv.other, prog_no)}"
                )
            elif dv.kind == "reduce":
                note = f"reduction of {ref(dv.source, prev)} with {ref(dv.other, here)}"
            else:
                note = f"copy of {ref(dv.source, prev)} because of {ref(dv.other, here, prev)}"
            lines.append((here[r], r, note))
        return here, lines

    init = initial_derivation(p, mode)
    here, lines = listing(init, None)
    state_no.append(here)
    steps.append(TraceStep(0, State.of(init), None, None, lines))

    def on_step(src, f, out, dst, is_new):
        if is_new:
            here, lines = listing(out, state_no[src])
            state_no.append(here)
            steps.append(TraceStep(dst, State.of(out), src, f, lines))

    ex = explore(p, d, mode, on_step, initial=init)
    return Trace(header, steps, ex.transitions, ex.answers)


def format_trace(t: Trace) -> str:
    def block(rows: list[tuple[int, str, str]]) -> list[str]:
        width = max((len(text) for _, text, _ in rows), default=0)
        nw = max((len(str(n)) for n, _, _ in rows), default=0) + 2
        return [f"{f'[{n}]':<{nw}} {text.ljust(width)}  % {note}" for n, text, note in rows]

    out = block(t.header)
    for st in t.steps:
        out.append("")
        if st.parent is None:
            out.append(f"S{st.index}: initial state")
        else:
            out.append(f"S{st.index}: successor of S{st.parent} with {st.fact}")
        out.extend(block([(n, str(r), note) for n, r, note in st.lines]))
    out.append("")
    out.extend(f"S{a} --{f}--> S{b}" for a, f, b in t.transitions)
    return "\n".join(out) + "\n"
