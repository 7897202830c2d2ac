import sys

from hypothesis import settings, strategies as st

from mereology.formula import (
    And, CardEq, Diff, Empty, Equal, Exists, Forall, Iff, Implies, Inter, Not, Or, Subseteq,
    TheoryMode, Union_, Universe, Var,
)
from mereology.sizesets import SizeSet

settings.register_profile("default", deadline=None)
settings.load_profile("default")
sys.setrecursionlimit(10_000)

NAMES = ("a", "b", "c", "x", "y")


def terms(mode=TheoryMode.CLASS, names=NAMES):
    leaves = [st.sampled_from(names).map(Var), st.just(Empty())]
    if mode is TheoryMode.CLASS:
        leaves.append(st.just(Universe()))
    return st.recursive(
        st.one_of(*leaves),
        lambda sub: st.one_of(
            st.builds(Union_, sub, sub), st.builds(Inter, sub, sub), st.builds(Diff, sub, sub)),
        max_leaves=6,
    )


def formulas(mode=TheoryMode.CLASS, names=NAMES):
    t = terms(mode, names)
    atoms = st.one_of(
        st.builds(Subseteq, t, t), st.builds(Equal, t, t),
        st.builds(CardEq, t, st.integers(0, 6)),
    )
    return st.recursive(
        atoms,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(And, sub, sub), st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub), st.builds(Iff, sub, sub),
            st.builds(Exists, st.sampled_from(names), sub),
            st.builds(Forall, st.sampled_from(names), sub),
        ),
        max_leaves=8,
    )


def sizesets(bound=12):
    return st.builds(SizeSet, st.booleans(), st.frozensets(st.integers(0, bound), max_size=6))


# a direct set-of-atoms evaluator for quantifier-free formulas, used as an
# oracle for the cell machinery; an infinite cell is modelled by many atoms
# that carry an "infinite" tag
_INF_ATOMS = 12


def concrete_atoms(params, sizes):
    """Atoms (mask, i, infinite) for dense cell sizes indexed by mask."""
    from mereology.sizesets import INF

    atoms = []
    for mask, v in enumerate(sizes):
        k = _INF_ATOMS if v is INF else v
        atoms += [(mask, i, v is INF) for i in range(k)]
    return atoms


def concrete_eval(f, params, sizes):
    from mereology.formula import (
        And, CardEq, Diff, Empty, Equal, Iff, Implies, Inter, Not, Or, Subseteq, Union_, Universe, Var,
    )

    atoms = concrete_atoms(params, sizes)
    index = {p: i for i, p in enumerate(params)}

    def term(t):
        if isinstance(t, Var):
            return frozenset(a for a in atoms if a[0] >> index[t.name] & 1)
        if isinstance(t, Empty):
            return frozenset()
        if isinstance(t, Universe):
            return frozenset(atoms)
        left, right = term(t.left), term(t.right)
        if isinstance(t, Union_):
            return left | right
        if isinstance(t, Inter):
            return left & right
        assert isinstance(t, Diff)
        return left - right

    def holds(g):
        if isinstance(g, Subseteq):
            return term(g.left) <= term(g.right)
        if isinstance(g, Equal):
            return term(g.left) == term(g.right)
        if isinstance(g, CardEq):
            s = term(g.term)
            return not any(a[2] for a in s) and len(s) == g.n
        if isinstance(g, Not):
            return not holds(g.body)
        if isinstance(g, And):
            return holds(g.left) and holds(g.right)
        if isinstance(g, Or):
            return holds(g.left) or holds(g.right)
        if isinstance(g, Implies):
            return not holds(g.left) or holds(g.right)
        if isinstance(g, Iff):
            return holds(g.left) == holds(g.right)
        raise TypeError(g)

    return holds(f)


def cell_sizes_of(params, mode, dense):
    from mereology.cells import CellSizes

    return CellSizes.build(params, mode, {m: v for m, v in enumerate(dense) if m}, dense[0])


def quantifier_free(mode, names):
    """Quantifier-free formulas over ``names``."""
    from mereology.formula import And, CardEq, Equal, Iff, Implies, Not, Or, Subseteq

    t = terms(mode, names)
    atoms = st.one_of(
        st.builds(Subseteq, t, t), st.builds(Equal, t, t), st.builds(CardEq, t, st.integers(0, 4)))
    return st.recursive(
        atoms,
        lambda sub: st.one_of(st.builds(Not, sub), st.builds(And, sub, sub), st.builds(Or, sub, sub),
                              st.builds(Implies, sub, sub), st.builds(Iff, sub, sub)),
        max_leaves=5,
    )


def dense_sizes(width, mode):
    from mereology.sizesets import INF

    size = st.one_of(st.integers(0, 4), st.just(INF))
    ext = st.just(INF) if mode is TheoryMode.SET else size
    sizes = st.tuples(ext, *([size] * ((1 << width) - 1)))
    # with a top the universe is infinite, so some cell must be
    return sizes.filter(lambda d: INF in d)
