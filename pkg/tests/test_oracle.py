import pytest

from mereology.corpus import generate_corpus
from mereology.formula import TheoryMode, parse
from mereology.models import EPSet
from mereology.oracle import (
    DEFAULT_RUNGS, OracleError, RungStructure, Unstable, bounded_eval_set, brute_eval_finite, check_rungs,
    eval_at_rung, stabilized_decide_class,
)

SET, CLASS = TheoryMode.SET, TheoryMode.CLASS
TINY = ((1, 1, 1), (2, 1, 2), (2, 1, 3))


def test_finite_examples():
    assert brute_eval_finite(3, parse("E x. A y. (y <= x)"))
    assert not brute_eval_finite(3, parse("E x. |x| = 4"))
    assert brute_eval_finite(8, parse("A a. E x. (x <= a & |x| = 1 | a = 0)"))


def test_finite_assignment():
    f = parse("E x. (x <= a & |x| = 2)")
    assert brute_eval_finite(5, f, {"a": {0, 3}})
    assert not brute_eval_finite(5, f, {"a": 0b1})
    with pytest.raises(OracleError):
        brute_eval_finite(5, f)
    with pytest.raises(OracleError):
        brute_eval_finite(3, f, {"a": {7}})


def test_size_guard():
    with pytest.raises(OracleError):
        brute_eval_finite(17, parse("|0| = 0"))


def test_stabilized_examples():
    assert stabilized_decide_class(parse("E x. A y. (y <= x)"), [8, 10, 12]) is True
    assert stabilized_decide_class(parse("E a. |1 - a| = 3"), [8, 10, 12]) is True
    result = stabilized_decide_class(parse("|1| = 10"), [8, 10, 12])
    assert isinstance(result, Unstable)
    assert result.values == ((8, False), (10, True), (12, False))
    with pytest.raises(TypeError):
        bool(result)


def test_window_must_increase():
    with pytest.raises(OracleError):
        stabilized_decide_class(parse("|0| = 0"), [10, 8])


def test_set_examples():
    assert bounded_eval_set(parse("A a. E x. (a <= x & ~(x = a))", SET)) is True
    assert bounded_eval_set(parse("E x. |x| = 3", SET)) is True
    f = parse("E x. A y. (y <= x)", SET)
    assert bounded_eval_set(f) is False
    # rung by rung: the universal always looks one rung further
    k = len(DEFAULT_RUNGS)
    assert [eval_at_rung(f, DEFAULT_RUNGS, offset) for offset in range(k - 1)] == [False] * (k - 1)


def test_unbounded_from_first_rung():
    # true at every offset that leaves the inner quantifier a finer rung;
    # at the last offset both clamp to the finest rung, whose top defeats it
    f = parse("A a. E x. (a <= x & ~(x = a))", SET)
    k = len(DEFAULT_RUNGS)
    assert [eval_at_rung(f, DEFAULT_RUNGS, offset) for offset in range(k)] == [True] * (k - 1) + [False]


def test_set_assignment():
    f = parse("E x. (x <= a & ~(x = a) & ~(|x| = 0) & ~(|x| = 1))", SET)
    assert bounded_eval_set(f, {"a": {0: EPSet.full()}}) is True
    assert bounded_eval_set(f, {"a": {0: EPSet.finite({0, 1})}}) is False


def test_rung_validation():
    with pytest.raises(OracleError):
        check_rungs(((1, 1, 2), (2, 1, 3)))
    with pytest.raises(OracleError):
        check_rungs(((1, 2, 2), (2, 3, 4), (3, 6, 6)))
    with pytest.raises(OracleError):
        check_rungs(((1, 1, 2), (2, 1, 3), (3, 1000, 10000)))


def test_rung_encoding():
    s = RungStructure(DEFAULT_RUNGS)
    evens = s.encode({0: EPSet.periodic(2, {0})})
    assert s.rung_of(evens) == 2
    assert s.rung_of(s.encode({0: EPSet.full()})) == 0
    with pytest.raises(OracleError):
        s.encode({0: EPSet.periodic(3, {0})})


@pytest.mark.parametrize("n", [3, 4, 5])
def test_reduction_matches_full_search_finite(n):
    for f in generate_corpus(CLASS, 40, seed=n, max_rank=2):
        assert brute_eval_finite(n, f, reduce=True) == brute_eval_finite(n, f, reduce=False)


def test_reduction_matches_full_search_rungs():
    for f in generate_corpus(SET, 40, seed=4, max_rank=2):
        for offset in range(3):
            assert eval_at_rung(f, TINY, offset, reduce=True) == eval_at_rung(f, TINY, offset, reduce=False)


def test_oracle_never_imports_qe():
    import mereology.oracle as oracle

    source = open(oracle.__file__, encoding="utf-8").read()
    for name in ("qe", "cells", "sizesets", "models"):
        assert f"from .{name}" not in source and f"from mereology.{name}" not in source
