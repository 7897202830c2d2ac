import itertools

from hypothesis import given, settings, strategies as st

from mereology.cells import (
    CellProfile, atomic_to_profiles, compositions, dump_disjunction, negate_profile,
    negated_atomic_to_profiles, profile_and, term_cells,
)
from mereology.formula import TheoryMode, parse
from mereology.qe import holds
from mereology.sizesets import ANY, INF, CoFin, Fin

from conftest import cell_sizes_of, concrete_eval, dense_sizes, terms

SET, CLASS = TheoryMode.SET, TheoryMode.CLASS


def term_of(text, mode=CLASS):
    return parse(f"{text} = 0", mode).left


def test_term_cells_examples():
    assert term_cells(term_of("a"), ["a", "b"]) == {0b01, 0b11}
    assert term_cells(term_of("a - (b \\/ c)"), ["a", "b", "c"]) == {0b001}
    assert term_cells(term_of("1"), ["a"], CLASS) == {0, 1}


def test_inclusion_profile():
    (p,) = atomic_to_profiles(parse("a <= b"), ["a", "b"])
    assert p[0b01] == Fin(0)
    assert all(p[m].is_everything for m in (0, 0b10, 0b11))


def test_cardinality_splits_over_cells():
    # oracle: put each of two atoms into {a} or {a,b} and count per cell
    placements = {(cells.count(0b01), cells.count(0b11)) for cells in itertools.product((0b01, 0b11), repeat=2)}
    profiles = atomic_to_profiles(parse("|a| = 2"), ["a", "b"])
    got = {(p[0b01], p[0b11]) for p in profiles}
    assert got == {(Fin(i), Fin(j)) for i, j in placements}
    assert len(profiles) == 3


def test_trivial_atom():
    (p,) = atomic_to_profiles(parse("|0| = 0"), [])
    assert p.is_true()


def test_profile_and_examples():
    params = ["a", "b"]
    p2 = CellProfile.from_map(params, CLASS, {1: Fin(2)})
    p3 = CellProfile.from_map(params, CLASS, {1: Fin(3)})
    assert profile_and(p2, p3)[1] == Fin()
    assert not profile_and(p2, p3).satisfiable()
    q = CellProfile.from_map(params, CLASS, {2: Fin(3)})
    both = profile_and(p2, q)
    assert both[1] == Fin(2) and both[2] == Fin(3)
    assert profile_and(p2, CellProfile.true(params, CLASS)) == p2


def test_negated_inclusion():
    (p,) = negated_atomic_to_profiles(parse("a <= b"), ["a", "b"])
    assert p[0b01] == CoFin(0)


def test_set_mode_exterior_never_constrained():
    (p,) = atomic_to_profiles(parse("a = 0", SET), ["a"], SET)
    assert p[0] == ANY and p.satisfiable()


def test_dump_format():
    assert dump_disjunction([]) == "false"
    assert dump_disjunction([CellProfile.true(["a"], CLASS)]) == "true"
    p = CellProfile.from_map(["a", "b"], CLASS, {3: Fin(1)})
    assert dump_disjunction([p]).splitlines() == [
        "disjunct 0:", "{a} : ~{}", "{b} : ~{}", "{a,b} : {1}", "{} : ~{}"]


def test_compositions():
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions(3, 0)) == []


@settings(max_examples=300)
@given(st.sampled_from([SET, CLASS]).flatmap(lambda m: st.tuples(st.just(m), terms(m, ("a", "b", "c")))))
def test_term_cells_partition(case):
    # a term and its relative complement split the reachable cells
    mode, t = case
    params = ["a", "b", "c"]
    cells = term_cells(t, params, mode)
    reach = set(range(8)) if mode is CLASS else set(range(1, 8))
    assert cells <= reach


@settings(max_examples=400)
@given(st.sampled_from([SET, CLASS]).flatmap(
    lambda m: st.tuples(st.just(m), terms(m, ("a", "b")), terms(m, ("a", "b")), st.integers(0, 4),
                        dense_sizes(2, m))))
def test_atoms_match_concrete_models(case):
    mode, s, t, n, dense = case
    params = ["a", "b"]
    from mereology.formula import CardEq, Equal, Not, Subseteq

    sizes = cell_sizes_of(params, mode, dense)
    for f in (Subseteq(s, t), Equal(s, t), CardEq(s, n)):
        want = concrete_eval(f, params, dense)
        assert holds(atomic_to_profiles(f, params, mode), sizes) == want
        assert holds(negated_atomic_to_profiles(f, params, mode), sizes) == (not want)
        assert concrete_eval(Not(f), params, dense) == (not want)


@settings(max_examples=300)
@given(dense_sizes(2, CLASS), st.dictionaries(st.integers(0, 3), st.sampled_from([Fin(0), Fin(1, 2), CoFin(1)]),
                                             max_size=3))
def test_negate_profile(dense, constraints):
    p = CellProfile.from_map(["a", "b"], CLASS, constraints)
    sizes = cell_sizes_of(["a", "b"], CLASS, dense)
    assert holds(negate_profile(p), sizes) == (not p.satisfied_by(sizes))


def test_infinite_size_marker():
    assert INF in CoFin(3) and INF not in Fin(3)
