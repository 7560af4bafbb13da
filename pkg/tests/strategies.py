"""Hypothesis strategies for small literals and rules."""

from hypothesis import strategies as st

from earleylog.core.terms import Const, Literal, Rule, Var

PREDS = {"p": 2, "q": 1, "r": 3}

terms = st.one_of(
    st.builds(Var, st.integers(0, 3)),
    st.builds(Const, st.sampled_from([1, 2, "a"])),
)


def literal(pred: str):
    return st.lists(terms, min_size=PREDS[pred], max_size=PREDS[pred]).map(
        lambda args: Literal(pred, tuple(args))
    )


literals = st.sampled_from(sorted(PREDS)).flatmap(literal)


@st.composite
def literal_pairs(draw):
    pred = draw(st.sampled_from(sorted(PREDS)))
    return draw(literal(pred)), draw(literal(pred))


@st.composite
def rules(draw):
    """Range-restricted rules over p/q/r (head variables drawn from the body)."""
    body = draw(st.lists(literals, min_size=1, max_size=3))
    body_vars = sorted({v for b in body for v in b.variables()})
    head_terms = st.sampled_from([Var(v) for v in body_vars]) if body_vars else st.nothing()
    head_terms = st.one_of(head_terms, st.builds(Const, st.sampled_from([1, "b"])))
    head_args = draw(st.lists(head_terms, min_size=2, max_size=2))
    return Rule(Literal("h", tuple(head_args)), tuple(body))
