"""Earley Deduction for function-free Datalog, with compilation to finite automata."""

__version__ = "0.1.0"
