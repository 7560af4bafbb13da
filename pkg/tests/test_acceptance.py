"""Acceptance checks, one test per numbered criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible even under
captured output) before asserting.  Run alone with::

    pytest tests/test_acceptance.py -v
"""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from earleylog.core import Database, Literal, Sym, Var, fact, parse_literal, parse_rule
from earleylog.corpusgen import instance_specs, generate
from earleylog.deduction import Mode, evaluate, explore, initial_state, trace
from earleylog.errors import CompilationFailed
from earleylog.normalize import canonical_form, canonicalize, equivalence_map, schema_of, states_equivalent
from earleylog.oracle import answers_of, fixpoint
from earleylog.parteval import compile_program, symbolic_step
from earleylog.runtime import RunStats, run, run_stream

from .conftest import load

TESTS = Path(__file__).resolve().parent


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, seconds: float | None = None) -> None:
        timing = f" ({seconds:.3f}s)" if seconds is not None else ""
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}{timing}")
        assert ok, f"criterion {n}: {detail}"

    return emit


def rules(*texts):
    return {parse_rule(t, allow_symbolic=True) for t in texts}


def structure(a):
    """Transition table and finals with state ids as-is (ids are BFS order, so already canonical)."""
    return (
        len(a.states),
        sorted((t.source, str(t.label), t.target) for t in a.transitions),
        sorted(a.finals),
    )


EXPECTED_DELTA = (2, [(0, "edge(1,X0)", 1), (1, "edge($c0,X0)", 1)], [1])


def test_criterion_1_left_recursive_trace(report):
    t0 = time.perf_counter()
    p, d = load("tc_left.dl"), load("graph.facts")
    answers = evaluate(p, d, Mode.BASIC)
    tr = trace(p, d, Mode.BASIC)
    elapsed = time.perf_counter() - t0
    got = [{r for _, r, _ in step.lines} for step in tr.steps]
    want = [
        rules("answer(A) :- path(1,A).", "path(1,A) :- edge(1,A).", "path(1,A) :- path(1,B), edge(B,A)."),
        rules("path(1,2).", "answer(2).", "path(1,A) :- edge(2,A).",
              "answer(A) :- path(1,A).", "path(1,A) :- path(1,B), edge(B,A)."),
        rules("path(1,3).", "answer(3).", "path(1,A) :- edge(3,A).",
              "answer(A) :- path(1,A).", "path(1,A) :- path(1,B), edge(B,A)."),
    ]
    ok = answers == {fact("answer", 2), fact("answer", 3)} and got == want and elapsed < 1
    report(1, ok, f"answers={sorted(map(str, answers))} state sizes={[len(g) for g in got]}", elapsed)


def test_criterion_2_left_recursive_automaton(report):
    t0 = time.perf_counter()
    a = compile_program(load("tc_left.dl"), Mode.BASIC)
    elapsed = time.perf_counter() - t0
    ok = structure(a) == EXPECTED_DELTA and elapsed < 1
    report(2, ok, f"states={len(a.states)} delta={structure(a)[1]}", elapsed)


def test_criterion_3_tail_recursive_extended(report):
    t0 = time.perf_counter()
    p = load("tc_tail.dl")
    a = compile_program(p, Mode.EXTENDED)
    s0 = initial_state(p, Mode.EXTENDED)
    elapsed = time.perf_counter() - t0
    want = rules("answer(A) :- path(1,A).", "answer(A) :- edge(1,A).", "answer(A) :- edge(1,B), path(B,A).")
    ok = structure(a) == EXPECTED_DELTA and s0.rules == want and a.states[0].rules == want and elapsed < 1
    report(3, ok, f"states={len(a.states)} initial rules={len(s0)}", elapsed)


def test_criterion_4_equivalence(report):
    p = load("tc_left.dl")
    s0 = canonicalize(initial_state(p, Mode.BASIC))
    s1 = canonicalize(symbolic_step(s0, parse_literal("edge(1,X)"), p, Mode.BASIC)[0])
    s2, _ = symbolic_step(s1, Literal("edge", (Sym(0), Var(0))), p, Mode.BASIC)
    mapping = equivalence_map(s2, s1)
    ok = (
        s2.symbols == (1,)
        and states_equivalent(s1, s2)
        and mapping == {1: 0}
        and canonical_form(s1).encode() == canonical_form(s2).encode()
    )
    report(4, ok, f"map={{c1 -> c0}} equal={mapping == {1: 0}}")


def test_criterion_5_oracle_sweep(report):
    t0 = time.perf_counter()
    specs = instance_specs()
    mismatches = []
    for spec in specs:
        p, d = generate(spec)
        expected = answers_of(fixpoint(p, d))
        got = (evaluate(p, d, Mode.EXTENDED), run(compile_program(p), d).answers)
        if any(g != expected for g in got):
            mismatches.append(spec)
    elapsed = time.perf_counter() - t0
    ok = len(specs) >= 500 and not mismatches and elapsed < 60
    report(5, ok, f"instances={len(specs)} mismatches={len(mismatches)}", elapsed)


def test_criterion_6_cycle(report):
    p, d = load("tc_tail.dl"), load("cycle5.facts")
    t0 = time.perf_counter()
    got = run(compile_program(p), d).answers
    elapsed = time.perf_counter() - t0
    expected = answers_of(fixpoint(p, d))
    ok = got == expected == {fact("answer", i) for i in range(1, 6)} and elapsed < 1
    report(6, ok, f"answers={len(got)}", elapsed)


def test_criterion_7_nonlinear(report):
    outcomes = []
    for mode in Mode:
        try:
            compile_program(load("tc_nonlinear.dl"), mode, cap=1000)
            outcomes.append(None)
        except CompilationFailed as e:
            outcomes.append(e)
    ok = all(
        e is not None and len(e.witnesses) == 2
        and schema_of(e.witnesses[0]) == schema_of(e.witnesses[1])
        and list(e.path) == ["edge(1,X0)", "edge($c0,X0)"]
        for e in outcomes
    )
    ext = outcomes[-1]
    ok = ok and str(ext.witnesses[0]) == "answer(X0) :- path($c0,X1), path(X1,X0)."
    report(7, ok, f"CompilationFailed in both modes: {ext.witnesses[0]} / {ext.witnesses[1]}")


def test_criterion_8_chain(report):
    d = Database(fact("edge", i, i + 1) for i in range(1, 101))
    counts = []
    for name in ("tc_left.dl", "tc_tail.dl"):
        p = load(name)
        states = [len(explore(p, d, m).states) for m in Mode]
        stats = RunStats()
        list(run_stream(compile_program(p), d, stats=stats))
        counts.append((states, stats.frames, stats.facts_fetched, stats.visited))
    ok = counts == [([101, 101], 101, 100, 101)] * 2
    report(8, ok, f"(states basic/ext, frames, fetched, visited)={counts}")


def test_criterion_9_grammar(report):
    p = load("abc_grammar.dl")
    a = compile_program(p)
    good, bad = load("abc.facts"), load("bac.facts")
    accept = run(a, good).answers
    reject = run(a, bad).answers
    ok = (
        accept == answers_of(fixpoint(p, good)) == evaluate(p, good) != frozenset()
        and reject == answers_of(fixpoint(p, bad)) == evaluate(p, bad) == frozenset()
    )
    report(9, ok, f"abc -> {sorted(map(str, accept))}, bac -> {sorted(map(str, reject))}")


INVARIANTS = [
    "test_normalize.py::test_normalize_idempotent_and_variant_collapsing",
    "test_core.py::test_unifier_is_sound",
    "test_core.py::test_unifier_is_most_general",
    "test_deduction.py::test_reduct_is_one_literal_shorter",
    "test_deduction.py::test_engine_invariants",
    "test_normalize.py::test_schema_invariant_under_symbol_renaming",
    "test_normalize.py::test_equivalence_is_an_equivalence_relation",
    "test_parteval.py::test_compile_is_deterministic",
    "test_parteval.py::test_stored_states_canonical_and_valid",
]


def _basic_agrees(spec) -> bool:
    p, d = generate(spec)
    return evaluate(p, d, Mode.BASIC) == evaluate(p, d, Mode.EXTENDED)


def test_criterion_10_invariants(report):
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *(str(TESTS / t) for t in INVARIANTS)],
        capture_output=True, text=True, cwd=TESTS.parent,
    )
    # Basic deduction has no last-literal resolution, so tail recursion over
    # dense graphs builds exponentially many states; keep those out of reach.
    agree = [
        s for s in instance_specs()
        if not (s.template == "tc_tail" and s.shape == "random" and s.nodes > 5)
    ]
    disagree = [s for s in agree if not _basic_agrees(s)]
    ok = proc.returncode == 0 and not disagree
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    report(10, ok, f"invariant tests: {summary}; basic/extended agreement on {len(agree)} instances, "
                   f"{len(disagree)} disagreements")
