"""Datalog data model, parser, validation and unification."""

from .program import ANSWER, TRUE, Database, Program, check_pairing, make_program, parse_database, parse_program
from .syntax import format_rules, parse_literal, parse_rule
from .terms import Const, Literal, Placeholder, Rule, Sym, Term, Var, fact, term_key
from .unify import Substitution, apply, apply_literal, compose, rename_apart, unifiable, unify

__all__ = [
    "ANSWER", "TRUE", "Const", "Database", "Literal", "Placeholder", "Program", "Rule",
    "Substitution", "Sym", "Term", "Var", "apply", "apply_literal", "check_pairing",
    "compose", "fact", "format_rules", "make_program", "parse_database", "parse_literal",
    "parse_program", "parse_rule", "rename_apart", "term_key", "unifiable", "unify",
]
