import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from earleylog.core import (
    Const, Database, Literal, Rule, Sym, Var, apply, apply_literal, compose, fact, make_program,
    parse_database, parse_literal, parse_program, parse_rule, rename_apart, unify,
)
from earleylog.core.program import check_pairing
from earleylog.errors import ArityError, ParseError, RangeRestrictionError, ValidationError
from earleylog.normalize import normalize

from .conftest import TC_LEFT
from .strategies import literal_pairs, rules, terms

X0, X1, X2, X3 = (Var(i) for i in range(4))


def lit(text):
    return parse_literal(text)


# parse_program ---------------------------------------------------------------

def test_parse_closure_program():
    p = parse_program(TC_LEFT)
    assert len(p.rules) == 2 and len(p.goals) == 1
    assert p.idb == {"path", "answer"}
    assert p.edb == {"edge", "true"}
    assert str(p.goals[0]) == "answer(X0) :- path(1,X0)."


def test_parse_goal_only():
    p = parse_program("answer(A) :- p(A,A).")
    assert p.rules == ()
    assert p.goals == (Rule(Literal("answer", (X0,)), (Literal("p", (X0, X0)),)),)
    assert "p" in p.edb


def test_range_restriction():
    with pytest.raises(RangeRestrictionError):
        parse_program("p(X) :- q(Y).\nanswer(X) :- p(X).")


@pytest.mark.parametrize(
    "text, error",
    [
        ("answer(X) :- p(X), answer(X).", ValidationError),
        ("p(1).\nanswer(X) :- p(X).", ValidationError),
        ("answer(X) :- p(X), p(X,X).", ArityError),
        ("p(X) :- q(X).", ValidationError),  # no goal rule
        ("true :- q(1).\nanswer :- true.", ValidationError),
        ("answer(X) :- p(X)", ParseError),
        ("answer(X) :- p(X)).", ParseError),
    ],
)
def test_program_errors(text, error):
    with pytest.raises(error):
        parse_program(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_program("answer(X) :- p(X).\n\nanswer(X) :- p(X) q(X).")
    assert (e.value.line, e.value.column) == (3, 19)


def test_syntax_details():
    r = parse_rule('p(X, _, "Hello world", -3, _) :- q(X, "a\\"b"), true.')
    assert r.head.args[1] != r.head.args[4]
    assert r.head.args[2] == Const("Hello world")
    assert r.head.args[3] == Const(-3)
    assert r.body[0].args[1] == Const('a"b')
    assert r.body[1] == Literal("true")
    assert parse_rule(str(r)) == r
    assert parse_rule("answer :- p(X). % trailing comment") == parse_rule("answer() :- p(X).")


# parse_database --------------------------------------------------------------

def test_parse_database():
    d = parse_database("edge(1,2).\nedge(2,3).\nedge(1,2).")
    assert len(d) == 2
    assert list(d) == [fact("edge", 1, 2), fact("edge", 2, 3)]
    assert len(parse_database("")) == 0


def test_parse_token_facts():
    d = parse_database("input(1,a,2).\ninput(2,b,3).\ninput(3,c,4).\neof(4).")
    assert len(d) == 4
    assert fact("input", 1, "a", 2) in d


def test_database_errors():
    with pytest.raises(ValidationError):
        parse_database("edge(1,X).")
    with pytest.raises(ParseError):
        parse_database("edge(1,2) :- foo(1).")
    with pytest.raises(ValidationError):
        parse_database("path(1,2).", parse_program(TC_LEFT))
    with pytest.raises(ArityError):
        check_pairing(parse_program(TC_LEFT), parse_database("edge(1,2,3)."))


def test_database_match():
    d = parse_database("e(1,2). e(2,2). e(3,3). e(1,3). f(1).")
    assert d.match(lit("e(1,X)")) == [fact("e", 1, 2), fact("e", 1, 3)]
    assert d.match(lit("e(X,X)")) == [fact("e", 2, 2), fact("e", 3, 3)]
    assert d.match(lit("e(X,Y)")) == list(d)[:4]
    assert d.match(lit("e(4,X)")) == []
    assert d.match(lit("g(X)")) == []
    assert d.match(lit("true")) == [Literal("true")]
    assert Literal("true") in d


# unify / apply / rename_apart ------------------------------------------------

def test_unify_examples():
    assert unify(lit("path(1,X0)"), Literal("path", (X1, X2))) == {1: Const(1), 2: X0}
    assert unify(lit("p(X0)"), lit("p(X0)")) == {}
    assert unify(lit("edge(1,X0)"), Literal("edge", (Const(2), X1))) is None
    assert unify(lit("p(X)"), lit("q(X)")) is None


def test_apply_examples():
    r = Rule(Literal("p", (X0,)), (Literal("q", (X0, X1)),))
    assert apply({0: Const(1)}, r) == Rule(Literal("p", (Const(1),)), (Literal("q", (Const(1), X1)),))
    assert apply({}, r) == r
    goal = parse_rule("answer(X) :- path(1,X).")
    assert str(apply({0: Sym(0)}, goal)) == "answer($c0) :- path(1,$c0)."


def test_rename_apart_examples():
    r = parse_rule("p(X) :- q(X).")
    assert rename_apart(r, {0}) == Rule(Literal("p", (X1,)), (Literal("q", (X1,)),))
    assert rename_apart(r, set()) == r
    r2 = parse_rule("p(X,Y) :- q(X,Y).")
    assert rename_apart(r2, {0, 1}) == Rule(Literal("p", (X2, X3)), (Literal("q", (X2, X3)),))


@given(literal_pairs())
def test_unifier_is_sound(pair):
    a, b = pair
    s = unify(a, b)
    if s is not None:
        assert apply_literal(s, a) == apply_literal(s, b)
        # idempotent: no bound variable occurs in the image
        assert not {t.index for t in s.values() if isinstance(t, Var)} & s.keys()


SPACE = [Const(1), Const(2), Const("a")] + [Var(i) for i in range(4)]


@settings(max_examples=60, deadline=None)
@given(literal_pairs())
def test_unifier_is_most_general(pair):
    """Every unifier in a small term space factors through the computed one."""
    a, b = pair
    s = unify(a, b)
    vs = sorted(set(a.variables()) | set(b.variables()))
    found_any = False
    for image in itertools.product(SPACE, repeat=len(vs)):
        tau = dict(zip(vs, image))
        if apply_literal(tau, a) != apply_literal(tau, b):
            continue
        found_any = True
        assert s is not None
        delta = {}
        for v in vs:
            sv = s.get(v, Var(v))
            if isinstance(sv, Var):
                assert delta.setdefault(sv.index, tau[v]) == tau[v]
            else:
                assert sv == tau[v]
    assert found_any == (s is not None)


@given(rules(), st.dictionaries(st.integers(0, 3), terms), st.dictionaries(st.integers(0, 3), terms))
def test_apply_composition(r, s1, s2):
    assert apply(s2, apply(s1, r)) == apply(compose(s1, s2), r)


@given(st.lists(rules(), min_size=1, max_size=4))
def test_print_parse_roundtrip(rs):
    rs = [normalize(r) for r in rs]
    p = make_program(rs + [parse_rule("answer(X) :- h(X,Y).")])
    assert parse_program(str(p)) == p


@given(rules(), st.sets(st.integers(0, 6)))
def test_rename_apart_is_disjoint_variant(r, forbidden):
    out = rename_apart(r, forbidden)
    assert not set(out.variables()) & forbidden
    assert normalize(out) == normalize(r)


def test_database_is_a_value():
    assert Database([fact("e", 1)]) == Database([fact("e", 1), fact("e", 1)])
