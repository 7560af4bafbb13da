"""Substitutions and most general unifiers over function-free literals.

A substitution is a plain ``dict`` from variable index to term.  Without
function symbols every term is a variable or an atomic value, so no occurs
check is needed.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .terms import Literal, Rule, Term, Var

Substitution = dict[int, Term]


def _walk(t: Term, s: Substitution) -> Term:
    while isinstance(t, Var) and t.index in s:
        t = s[t.index]
    return t


def unify(a: Literal, b: Literal, s: Optional[Substitution] = None) -> Optional[Substitution]:
    """Return an idempotent most general unifier of ``a`` and ``b``, or None.

    If ``s`` is given the result extends it.  When two variables meet, the
    one from ``b`` is bound to the one from ``a``.
    """
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    s = dict(s) if s else {}
    for x, y in zip(a.args, b.args):
        x = _walk(x, s)
        y = _walk(y, s)
        if x == y:
            continue
        if isinstance(y, Var):
            s[y.index] = x
        elif isinstance(x, Var):
            s[x.index] = y
        else:
            return None
    return {v: _walk(t, s) for v, t in s.items()}


def unifiable(a: Literal, b: Literal) -> bool:
    """Whether ``a`` and ``b`` unify once their variables are kept apart."""
    if a.pred != b.pred or len(a.args) != len(b.args):
        return False
    off = max(a.variables(), default=-1) + 1
    return unify(a, rename_literal(b, off)) is not None


def apply_term(s: Substitution, t: Term) -> Term:
    if isinstance(t, Var):
        return s.get(t.index, t)
    return t


def apply_literal(s: Substitution, lit: Literal) -> Literal:
    if not s:
        return lit
    return Literal(lit.pred, tuple(apply_term(s, a) for a in lit.args))


def apply(s: Substitution, r: Rule) -> Rule:
    if not s:
        return r
    return Rule(apply_literal(s, r.head), tuple(apply_literal(s, b) for b in r.body))


def compose(first: Substitution, then: Substitution) -> Substitution:
    """Substitution equivalent to applying ``first`` and then ``then``."""
    out = {v: apply_term(then, t) for v, t in first.items()}
    for v, t in then.items():
        out.setdefault(v, t)
    return {v: t for v, t in out.items() if t != Var(v)}


def rename_literal(lit: Literal, offset: int) -> Literal:
    if not offset:
        return lit
    return Literal(
        lit.pred,
        tuple(Var(a.index + offset) if isinstance(a, Var) else a for a in lit.args),
    )


def rename_apart(r: Rule, forbidden: Iterable[int]) -> Rule:
    """Variant of ``r`` sharing no variable index with ``forbidden``."""
    forbidden = set(forbidden)
    if not forbidden or forbidden.isdisjoint(r.variables()):
        return r
    off = max(forbidden) + 1
    return Rule(rename_literal(r.head, off), tuple(rename_literal(b, off) for b in r.body))
