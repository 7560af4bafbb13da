"""Compile a program into a finite automaton by deduction over symbolic values.

Each transition is labeled with a selected EDB literal.  Its variables are
replaced by fresh symbolic values, the concrete successor construction runs
on that symbolic fact, and the result is canonicalized so that states equal
up to renaming of symbolic values fuse.  The renumbering done by
canonicalization is kept on the transition as a register map, which is what
the runtime needs to carry data values from state to state.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core.program import ANSWER, Program
from .core.syntax import parse_literal, parse_rule
from .core.terms import Literal, Rule, Sym, Var
from .deduction import Mode, initial_state, selected, successor_derivation
from .errors import CompilationFailed, DatalogError, InvalidState
from .normalize import State, canonicalize_with_map, normalize_literal, schema_collision

FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class Origin:
    """Where a target register gets its value.

    ``kind == "reg"``: copied from source register ``index``.
    ``kind == "arg"``: taken from argument ``index`` (1-based) of the matched fact.
    """

    kind: str
    index: int

    def __str__(self) -> str:
        return f"$c{self.index}" if self.kind == "reg" else f"@{self.index}"


RegisterMap = tuple[Origin, ...]


@dataclass(frozen=True)
class Transition:
    source: int
    label: Literal
    registers: RegisterMap
    target: int


@dataclass(frozen=True)
class Automaton:
    states: tuple[State, ...]
    transitions: tuple[Transition, ...]
    finals: dict[int, tuple[Literal, ...]]
    initial: int = 0
    mode: Mode = Mode.EXTENDED
    _out: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        out: dict[int, list[Transition]] = {i: [] for i in range(len(self.states))}
        for t in self.transitions:
            out[t.source].append(t)
        object.__setattr__(self, "_out", {k: tuple(v) for k, v in out.items()})

    def outgoing(self, state: int) -> tuple[Transition, ...]:
        return self._out[state]

    def registers(self, state: int) -> int:
        return len(self.states[state].symbols)

    def is_final(self, state: int) -> bool:
        return state in self.finals


def is_valid(s: State) -> bool:
    return schema_collision(s.rules) is None


def symbolic_labels(s: State, p: Program) -> list[Literal]:
    """Selected EDB literals of ``s``, deduplicated up to variable names."""
    labels = {
        normalize_literal(selected(r))
        for r in s.rules
        if r.body and not p.is_idb(selected(r).pred)
    }
    return sorted(labels, key=Literal.key)


def symbolic_fact(label: Literal, fresh: Iterator[int]) -> tuple[Literal, dict[int, int]]:
    """Replace label variables by fresh symbolic values.

    Returns the fact and, per fresh value, the 1-based label position it fills.
    """
    by_var: dict[int, int] = {}
    position: dict[int, int] = {}
    args = []
    for pos, a in enumerate(label.args, 1):
        if isinstance(a, Var):
            if a.index not in by_var:
                by_var[a.index] = next(fresh)
                position[by_var[a.index]] = pos
            args.append(Sym(by_var[a.index]))
        else:
            args.append(a)
    return Literal(label.pred, tuple(args)), position


def symbolic_step(
    s: State, label: Literal, p: Program, mode: Mode = Mode.EXTENDED,
    fresh: Optional[Iterator[int]] = None,
) -> tuple[State, dict[int, int]]:
    """Raw (not canonicalized) successor for ``label`` and the fresh-value positions."""
    if fresh is None:
        fresh = itertools.count(max(s.symbols, default=-1) + 1)
    f, position = symbolic_fact(label, fresh)
    out = successor_derivation(s, f, p, mode)
    if out is None:
        raise DatalogError(f"label {label} reduces no rule of the state")
    return State.of(out), position


def symbolic_successor(
    s: State, label: Literal, p: Program, mode: Mode = Mode.EXTENDED,
    fresh: Optional[Iterator[int]] = None,
) -> tuple[State, RegisterMap]:
    raw, position = symbolic_step(s, label, p, mode, fresh)
    target, renumber = canonicalize_with_map(raw)
    origin = {new: old for old, new in renumber.items()}
    regs = tuple(
        Origin("arg", position[origin[j]]) if origin[j] in position else Origin("reg", origin[j])
        for j in range(len(renumber))
    )
    return target, regs


def final_templates(s: State) -> tuple[Literal, ...]:
    return tuple(r.head for r in s.ordered if not r.body and r.head.pred == ANSWER)


def compile_program(p: Program, mode: Mode = Mode.EXTENDED, cap: int = 10_000) -> Automaton:
    """Build the automaton; raise CompilationFailed on an invalid state or when ``cap`` is hit."""
    start, _ = canonicalize_with_map(initial_state(p, mode))
    states = [start]
    ids = {start: 0}
    path: list[tuple[Optional[int], Optional[Literal]]] = [(None, None)]
    transitions = []
    queue = deque([0])

    def route(i: int, last: Literal) -> list[str]:
        labels = [str(last)]
        while path[i][0] is not None:
            labels.append(str(path[i][1]))
            i = path[i][0]
        return labels[::-1]

    while queue:
        i = queue.popleft()
        for label in symbolic_labels(states[i], p):
            try:
                target, regs = symbolic_successor(states[i], label, p, mode)
            except InvalidState as e:
                a, b = e.witnesses
                trail = route(i, label)
                raise CompilationFailed(
                    f"invalid state after S{i} --{label}-->: {a} and {b} have the same schema"
                    f" (path: {' '.join(trail)})",
                    state=e.state, witnesses=e.witnesses, path=trail,
                ) from None
            j = ids.get(target)
            if j is None:
                if len(states) >= cap:
                    raise CompilationFailed(
                        f"state cap of {cap} reached", state=target, path=route(i, label)
                    )
                j = ids[target] = len(states)
                states.append(target)
                path.append((i, label))
                queue.append(j)
            transitions.append(Transition(i, label, regs, j))
    finals = {i: final_templates(s) for i, s in enumerate(states) if final_templates(s)}
    return Automaton(tuple(states), tuple(transitions), finals, 0, mode)


# serialization -------------------------------------------------------------

def dump_automaton(a: Automaton) -> str:
    lines = [f"earleylog-automaton {FORMAT_VERSION}", f"mode {a.mode.value}"]
    for i, s in enumerate(a.states):
        tags = (" initial" if i == a.initial else "") + (" final" if a.is_final(i) else "")
        lines.append(f"state {i}{tags}")
        lines.extend(f"  {r}" for r in s.ordered)
    for t in a.transitions:
        regs = ",".join(f"$c{j}={o}" for j, o in enumerate(t.registers))
        lines.append(f"transition {t.source} {t.target} [{regs}] {t.label}")
    for i in sorted(a.finals):
        lines.extend(f"final {i} {lit}" for lit in a.finals[i])
    return "\n".join(lines) + "\n"


_REG = re.compile(r"\$c(\d+)=(?:\$c(\d+)|@(\d+))")


def load_automaton(text: str) -> Automaton:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("%")]
    if not lines or lines[0].split()[:1] != ["earleylog-automaton"]:
        raise DatalogError("not an automaton file")
    version = int(lines[0].split()[1])
    if version != FORMAT_VERSION:
        raise DatalogError(f"automaton format {version} is not supported (expected {FORMAT_VERSION})")
    mode = Mode.EXTENDED
    rules: list[list[Rule]] = []
    initial = 0
    transitions = []
    finals: dict[int, list[Literal]] = {}
    for ln in lines[1:]:
        if ln.startswith("  "):
            rules[-1].append(parse_rule(ln.strip(), allow_symbolic=True))
            continue
        word, _, rest = ln.partition(" ")
        if word == "mode":
            mode = Mode(rest.strip())
        elif word == "state":
            parts = rest.split()
            if int(parts[0]) != len(rules):
                raise DatalogError(f"state {parts[0]} out of order")
            if "initial" in parts:
                initial = len(rules)
            rules.append([])
        elif word == "transition":
            src, dst, regs, label = rest.split(" ", 3)
            origins = []
            for j, m in enumerate(_REG.finditer(regs)):
                if int(m.group(1)) != j:
                    raise DatalogError(f"register map {regs} out of order")
                origins.append(Origin("reg", int(m.group(2))) if m.group(2) else Origin("arg", int(m.group(3))))
            transitions.append(
                Transition(int(src), parse_literal(label, allow_symbolic=True), tuple(origins), int(dst))
            )
        elif word == "final":
            i, lit = rest.split(" ", 1)
            finals.setdefault(int(i), []).append(parse_literal(lit, allow_symbolic=True))
        else:
            raise DatalogError(f"unknown automaton line: {ln!r}")
    return Automaton(
        tuple(State.of(rs) for rs in rules),
        tuple(transitions),
        {i: tuple(v) for i, v in finals.items()},
        initial,
        mode,
    )


def format_automaton(a: Automaton) -> str:
    """Human-readable listing: states with their rules, then the transition function."""
    out = []
    for i, s in enumerate(a.states):
        tag = " (final)" if a.is_final(i) else ""
        out.append(f"S{i}{tag}:")
        out.extend(f"  {r}" for r in s.ordered)
    out.append("")
    for t in a.transitions:
        regs = ", ".join(f"$c{j} := {o}" for j, o in enumerate(t.registers))
        out.append(f"delta(S{t.source}, {t.label}) = S{t.target}" + (f"   [{regs}]" if regs else ""))
    return "\n".join(out) + "\n"


def export_dot(a: Automaton) -> str:
    def esc(s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"')

    lines = ["digraph automaton {", "  rankdir=LR;", '  start [shape=point];']
    for i in range(len(a.states)):
        shape = "doublecircle" if a.is_final(i) else "circle"
        label = f"S{i}"
        if a.is_final(i):
            label += "\\n" + "\\n".join(esc(str(t)) for t in a.finals[i])
        lines.append(f'  s{i} [shape={shape}, label="{label}"];')
    lines.append(f"  start -> s{a.initial};")
    for t in a.transitions:
        regs = ",".join(f"$c{j}={o}" for j, o in enumerate(t.registers))
        text = esc(str(t.label)) + (f" / {esc(regs)}" if regs else "")
        lines.append(f'  s{t.source} -> s{t.target} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
