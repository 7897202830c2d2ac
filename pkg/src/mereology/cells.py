"""Venn-cell calculus.

For an ordered parameter list ``v_0 .. v_{n-1}`` a cell is identified by a
bitmask: bit ``i`` is set when the region lies inside ``v_i``.  Mask 0 is the
exterior.  A :class:`CellProfile` constrains the number of atoms in every
cell with a :class:`~mereology.sizesets.SizeSet`; formulas become
disjunctions of profiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import (
    CardEq, Diff, Empty, Equal, Inter, Subseteq, Term, TheoryMode, Union_, Universe, Var,
)
from .sizesets import ANY, EMPTY, INF, ZERO, SizeSet, at_least, exactly

DISJUNCT_WARN = 10_000


class UnknownVariableError(KeyError):
    pass


def mask_members(mask: int, params: Sequence[str]) -> list:
    return [p for i, p in enumerate(params) if mask >> i & 1]


def format_mask(mask: int, params: Sequence[str]) -> str:
    return "{" + ",".join(mask_members(mask, params)) + "}"


@dataclass(frozen=True)
class CellProfile:
    """A constraint on every cell of the Venn diagram of ``params``.

    ``cells[mask]`` is the constraint on the cell ``mask``; the tuple has
    ``2 ** len(params)`` entries and index 0 is the exterior.  In set mode
    the exterior is always infinite and its entry stays ``ANY``.
    """

    params: tuple
    mode: TheoryMode
    cells: tuple

    @classmethod
    def true(cls, params, mode) -> "CellProfile":
        params = tuple(params)
        return cls(params, mode, (ANY,) * (1 << len(params)))

    @classmethod
    def from_map(cls, params, mode, constraints: dict) -> "CellProfile":
        p = cls.true(params, mode)
        return p.constrain(constraints)

    @property
    def width(self) -> int:
        return len(self.params)

    def __getitem__(self, mask: int) -> SizeSet:
        return self.cells[mask]

    def constrain(self, constraints: dict) -> "CellProfile":
        cells = list(self.cells)
        for mask, s in constraints.items():
            if mask == 0 and self.mode is TheoryMode.SET:
                # no set-mode term can reach the exterior
                assert INF in s, "set-mode exterior must stay infinite"
                continue
            cells[mask] = cells[mask] & s
        return CellProfile(self.params, self.mode, tuple(cells))

    def is_true(self) -> bool:
        return all(s.is_everything for s in self.cells)

    def constrained_cells(self) -> list:
        return [m for m, s in enumerate(self.cells) if not s.is_everything]

    def satisfiable(self, infinite_top: bool = True) -> bool:
        """Whether some model of the theory has a tuple meeting the profile.

        Every cell needs a nonempty constraint.  In class mode the universe is
        infinite, so some cell must admit infinitely many atoms; pass
        ``infinite_top=False`` to drop that rule when working inside a finite
        Boolean algebra.
        """
        if any(s.is_empty for s in self.cells):
            return False
        if self.mode is TheoryMode.SET:
            return INF in self.cells[0]
        if infinite_top:
            return any(s.cofinite for s in self.cells)
        return True

    def satisfied_by(self, sizes) -> bool:
        """``sizes`` is a :class:`CellSizes` over the same parameters."""
        return all(sizes[m] in s for m, s in enumerate(self.cells))

    def dump(self) -> str:
        lines = []
        masks = list(range(1, len(self.cells))) + [0]
        for m in masks:
            lines.append(f"{format_mask(m, self.params)} : {self.cells[m]}")
        return "\n".join(lines)

    def sort_key(self):
        return tuple(s.sort_key() for s in self.cells)

    def __str__(self):
        return self.dump()


@dataclass(frozen=True)
class CellSizes:
    """Exact atom counts of the cells of a concrete tuple.

    Stored sparsely: ``counts`` maps nonempty non-exterior masks to a size
    (an int or ``INF``); ``exterior`` is the exterior size.  Infinity here is
    the exact-infinite marker, which lies only in cofinite size sets.
    """

    params: tuple
    mode: TheoryMode
    counts: tuple  # sorted (mask, size) pairs with size != 0
    exterior: object

    @classmethod
    def build(cls, params, mode, counts: dict, exterior) -> "CellSizes":
        items = tuple(sorted((m, v) for m, v in counts.items() if v != 0 and m != 0))
        return cls(tuple(params), mode, items, exterior)

    def __getitem__(self, mask: int):
        if mask == 0:
            return self.exterior
        for m, v in self.counts:
            if m == mask:
                return v
        return 0

    def as_dict(self) -> dict:
        return dict(self.counts)

    def dense(self) -> tuple:
        d = dict(self.counts)
        return tuple(self.exterior if m == 0 else d.get(m, 0) for m in range(1 << len(self.params)))

    def dump(self) -> str:
        lines = []
        for m in list(range(1, 1 << len(self.params))) + [0]:
            v = self[m]
            lines.append(f"{format_mask(m, self.params)} : {'inf' if v is INF else v}")
        return "\n".join(lines)

    def __str__(self):
        return self.dump()


# --------------------------------------------------------------------------
# terms and atoms


def term_cells(t: Term, params: Sequence[str], mode: TheoryMode = TheoryMode.CLASS) -> frozenset:
    """Masks of the cells whose union is the denotation of ``t``."""
    n = len(params)
    index = {p: i for i, p in enumerate(params)}
    everything = frozenset(range(1 << n)) if mode is TheoryMode.CLASS else frozenset(range(1, 1 << n))

    def walk(t):
        if isinstance(t, Var):
            if t.name not in index:
                raise UnknownVariableError(t.name)
            bit = 1 << index[t.name]
            return frozenset(m for m in range(1 << n) if m & bit)
        if isinstance(t, Empty):
            return frozenset()
        if isinstance(t, Universe):
            if mode is TheoryMode.SET:
                raise ValueError("the top constant is not available in set mode")
            return everything
        left, right = walk(t.left), walk(t.right)
        if isinstance(t, Union_):
            return left | right
        if isinstance(t, Inter):
            return left & right
        if isinstance(t, Diff):
            return left - right
        raise TypeError(f"not a term: {t!r}")

    return walk(t)


def compositions(total: int, parts: int):
    """All ordered ways to write ``total`` as a sum of ``parts`` naturals."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _card_profiles(cells, k, params, mode, make):
    cells = sorted(cells)
    base = CellProfile.true(params, mode)
    return [base.constrain({m: make(c) for m, c in zip(cells, comp)}) for comp in compositions(k, len(cells))]


def atomic_to_profiles(f, params: Sequence[str], mode: TheoryMode = TheoryMode.CLASS) -> list:
    """Disjunction of profiles equivalent to an atomic formula."""
    params = tuple(params)
    base = CellProfile.true(params, mode)
    if isinstance(f, (Subseteq, Equal)):
        left, right = term_cells(f.left, params, mode), term_cells(f.right, params, mode)
        zero = left - right
        if isinstance(f, Equal):
            zero |= right - left
        return [base.constrain({m: ZERO for m in zero})]
    if isinstance(f, CardEq):
        cells = term_cells(f.term, params, mode)
        if not cells:
            return [base] if f.n == 0 else []
        return _card_profiles(cells, f.n, params, mode, _fin)
    raise TypeError(f"not an atomic formula: {f!r}")


def negated_atomic_to_profiles(f, params: Sequence[str], mode: TheoryMode = TheoryMode.CLASS) -> list:
    """Disjunction of profiles equivalent to the negation of an atom."""
    params = tuple(params)
    base = CellProfile.true(params, mode)
    nonzero = at_least(1)
    if isinstance(f, (Subseteq, Equal)):
        left, right = term_cells(f.left, params, mode), term_cells(f.right, params, mode)
        witness = left - right
        if isinstance(f, Equal):
            witness |= right - left
        return [base.constrain({m: nonzero}) for m in sorted(witness)]
    if isinstance(f, CardEq):
        cells = term_cells(f.term, params, mode)
        k = f.n
        if not cells:
            return [] if k == 0 else [base]
        if len(cells) == 1:
            (m,) = cells
            return [base.constrain({m: ~_fin(k)})]
        out = []
        for j in range(k):
            out += _card_profiles(cells, j, params, mode, _fin)
        # |t| > k  iff some distribution of k+1 atoms fits under the cells
        out += _card_profiles(cells, k + 1, params, mode, at_least)
        return out
    raise TypeError(f"not an atomic formula: {f!r}")


def _fin(k: int) -> SizeSet:
    return exactly(k)


# --------------------------------------------------------------------------
# profile algebra


def profile_and(p: CellProfile, q: CellProfile) -> CellProfile:
    if p.params != q.params or p.mode is not q.mode:
        raise ValueError("profiles range over different parameters")
    return CellProfile(p.params, p.mode, tuple(a & b for a, b in zip(p.cells, q.cells)))


def negate_profile(p: CellProfile) -> list:
    """The complement of one profile as a disjunction of one-cell profiles."""
    base = CellProfile.true(p.params, p.mode)
    out = []
    for m in p.constrained_cells():
        if m == 0 and p.mode is TheoryMode.SET:
            continue
        out.append(CellProfile(p.params, p.mode, base.cells[:m] + (~p.cells[m],) + base.cells[m + 1:]))
    return out


def subsumes(p: CellProfile, q: CellProfile) -> bool:
    """True when every tuple meeting ``q`` also meets ``p``."""
    return all(b.issubset(a) for a, b in zip(p.cells, q.cells))


def prune(profiles: Iterable[CellProfile], infinite_top: bool = True, absorb: bool = True) -> list:
    """Drop unsatisfiable and duplicate disjuncts, in canonical order.

    With ``absorb`` a disjunct implied by another disjunct is dropped too;
    that never changes the meaning of the disjunction.
    """
    uniq = {p for p in profiles if p.satisfiable(infinite_top)}
    out = sorted(uniq, key=CellProfile.sort_key)
    if absorb and 1 < len(out) <= 4000:
        # a profile constraining fewer cells cannot be subsumed by one
        # constraining more, so test candidates in order of weakness
        ranked = sorted(out, key=lambda p: len(p.constrained_cells()))
        kept: list = []
        for p in ranked:
            if not any(subsumes(q, p) for q in kept):
                kept = [q for q in kept if not subsumes(p, q)]
                kept.append(p)
        out = sorted(kept, key=CellProfile.sort_key)
    return out


def dump_disjunction(profiles: Sequence[CellProfile]) -> str:
    if not profiles:
        return "false"
    if len(profiles) == 1 and profiles[0].is_true():
        return "true"
    blocks = []
    for i, p in enumerate(profiles):
        blocks.append(f"disjunct {i}:\n{p.dump()}")
    return "\n".join(blocks)


__all__ = [
    "CellProfile", "CellSizes", "UnknownVariableError", "atomic_to_profiles", "compositions",
    "dump_disjunction", "format_mask", "negate_profile", "negated_atomic_to_profiles",
    "profile_and", "prune", "subsumes", "term_cells", "EMPTY", "INF",
]
