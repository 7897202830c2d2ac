import pytest
from hypothesis import given, settings, strategies as st

from mereology.formula import (
    And, CardEq, Diff, Empty, Exists, FormulaError, Inter, ModeError, Subseteq, TheoryMode, Var,
    free_variables, max_constant, parse, quantifier_rank, render,
)

from conftest import formulas

SET, CLASS = TheoryMode.SET, TheoryMode.CLASS


def test_parse_inclusion():
    assert parse("a <= b") == Subseteq(Var("a"), Var("b"))


def test_parse_splitting_formula():
    f = parse("E x. (|x /\\ a| = 2 & |a - x| = 3)")
    assert f == Exists("x", And(CardEq(Inter(Var("x"), Var("a")), 2), CardEq(Diff(Var("a"), Var("x")), 3)))


def test_universe_rejected_in_set_mode():
    with pytest.raises(ModeError):
        parse("1 - a <= b", SET)
    assert parse("1 - a <= b", CLASS)


def test_render_examples():
    assert render(Subseteq(Var("a"), Var("b"))) == "a <= b"
    assert render(CardEq(Empty(), 0)) == "|0| = 0"


@pytest.mark.parametrize("text, names", [("a <= b", ["a", "b"]), ("E x. x <= a", ["a"]), ("|0| = 0", [])])
def test_free_variables(text, names):
    assert free_variables(parse(text)) == names


def test_rank_and_constants():
    f = parse("A x. (E y. |y - x| = 3 | |x| = 7)")
    assert quantifier_rank(f) == 2
    assert max_constant(f) == 7


def test_quantifier_scope_is_weak():
    # a quantifier extends as far right as possible
    f = parse("E x. x <= a & a <= x")
    assert isinstance(f, Exists) and isinstance(f.body, And)


def test_error_positions():
    with pytest.raises(FormulaError) as info:
        parse("a <= (b")
    assert info.value.line == 1 and info.value.column > 1


def test_unbound_variable_with_declared_params():
    with pytest.raises(FormulaError):
        parse("a <= q", CLASS, params=["a"])


@settings(max_examples=1000)
@given(formulas(CLASS))
def test_round_trip_class(f):
    assert parse(render(f), CLASS) == f


@settings(max_examples=300)
@given(formulas(SET))
def test_round_trip_set(f):
    assert parse(render(f), SET) == f


@settings(max_examples=500)
@given(st.text(alphabet="abxy01EA.()<=-|&~\\/ 23>\n", max_size=30))
def test_parser_is_total(text):
    # every input either parses or raises a located FormulaError
    try:
        parse(text)
    except FormulaError as exc:
        assert exc.line >= 1 and exc.column >= 1


@settings(max_examples=300)
@given(formulas(CLASS))
def test_free_variables_unique_and_closable(f):
    # first-occurrence order, no repeats
    names = free_variables(f)
    assert len(names) == len(set(names))
    g = f
    for v in names:
        g = Exists(v, g)
    assert free_variables(g) == []
