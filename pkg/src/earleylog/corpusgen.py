"""Seeded generators of small programs and edge databases for property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .core.program import Database, Program, parse_program
from .core.terms import fact

PROGRAMS = {
    "tc_left": """
        path(X,Y) :- edge(X,Y).
        path(X,Y) :- path(X,Z), edge(Z,Y).
        answer(Y) :- path(1,Y).
    """,
    "tc_tail": """
        path(X,Y) :- edge(X,Y).
        path(X,Y) :- edge(X,Z), path(Z,Y).
        answer(Y) :- path(1,Y).
    """,
    # odd/even path lengths, left recursive through each other
    "mutual": """
        odd(X,Y) :- edge(X,Y).
        odd(X,Y) :- even(X,Z), edge(Z,Y).
        even(X,Y) :- odd(X,Z), edge(Z,Y).
        answer(Y) :- even(1,Y).
    """,
}

_JOINS = {
    1: "answer(Y) :- edge(1,Y).",
    2: """
        two(X,Y) :- edge(X,Z), edge(Z,Y).
        answer(Y) :- two(1,Y).
    """,
    3: """
        two(X,Y) :- edge(X,Z), edge(Z,Y).
        three(X,Y) :- two(X,Z), edge(Z,Y).
        answer(Y) :- three(1,Y).
        answer(Y) :- edge(1,Y), two(Y,Y).
    """,
}

TEMPLATES = ("tc_left", "tc_tail", "join", "mutual")
SHAPES = ("chain", "cycle", "dag", "random")
MAX_NODES = 7


@dataclass(frozen=True)
class InstanceSpec:
    template: str
    shape: str = "chain"
    nodes: int = 3
    density: float = 0.35
    seed: int = 0

    def __post_init__(self):
        if self.template not in TEMPLATES:
            raise ValueError(f"unknown template {self.template!r}")
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        if not 0 <= self.nodes <= MAX_NODES:
            raise ValueError(f"nodes must be in 0..{MAX_NODES}")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must be in [0, 1]")


def program_for(spec: InstanceSpec) -> Program:
    if spec.template == "join":
        return parse_program(_JOINS[1 + spec.seed % 3])
    return parse_program(PROGRAMS[spec.template])


def edges_for(spec: InstanceSpec) -> list[tuple[int, int]]:
    rng = random.Random(spec.seed)
    n = spec.nodes
    nodes = range(1, n + 1)
    if spec.shape == "chain":
        return [(i, i + 1) for i in range(1, n)]
    if spec.shape == "cycle":
        return [(i, i % n + 1) for i in nodes]
    if spec.shape == "dag":
        return [(i, j) for i in nodes for j in nodes if i < j and rng.random() < spec.density]
    return [(i, j) for i in nodes for j in nodes if rng.random() < spec.density]


def generate(spec: InstanceSpec) -> tuple[Program, Database]:
    return program_for(spec), Database(fact("edge", a, b) for a, b in edges_for(spec))


def instance_specs(seeds: int = 6) -> list[InstanceSpec]:
    """The grid used by the acceptance sweep: templates x shapes x sizes x seeds."""
    out = []
    for t in TEMPLATES:
        for shape in SHAPES:
            for n in range(0, MAX_NODES + 1):
                for seed in range(seeds if shape in ("dag", "random") or t == "join" else 1):
                    out.append(InstanceSpec(t, shape, n, density=0.2 + 0.1 * (seed % 4), seed=seed))
    return out


def write_instance(spec: InstanceSpec, directory: Path) -> tuple[Path, Path]:
    """Serialize an instance to ``.dl``/``.facts`` files for replay from the CLI."""
    p, d = generate(spec)
    directory.mkdir(parents=True, exist_ok=True)
    stem = f"{spec.template}-{spec.shape}-n{spec.nodes}-s{spec.seed}"
    dl, facts = directory / f"{stem}.dl", directory / f"{stem}.facts"
    dl.write_text(f"% {spec}\n{p}")
    facts.write_text(str(d))
    return dl, facts
