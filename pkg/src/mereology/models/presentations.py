"""Computable presentations of countable models.

Every element is identified with the set of atoms below it.  An atom is a
pair ``(column, position)``; an element is a finite map from columns to
nonempty :class:`EPSet` slices.  Each presentation restricts which slices
are allowed:

========== ============================================================
prime      column 0 only, finite slices (the finite subsets of N)
columns    any columns, any eventually periodic slices (saturated)
char<n>    blocks 0..n-1 finite or cofinite, block n finite only
amorphous  column 0 finite or cofinite, other columns unrestricted
ba<N>      column 0, subsets of {0..N-1}; class mode (has a top)
ba-sat     column 0, any eventually periodic set; class mode
========== ============================================================
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from ..cells import CellSizes
from ..formula import TheoryMode, free_variables
from ..sizesets import INF
from . import coding
from .epset import EMPTY_SET, FULL_SET, EPSet

SCHEMA_VERSION = 1


class PresentationMismatch(TypeError):
    pass


class DescriptorError(ValueError):
    pass


class MalformedSplit(ValueError):
    pass


@dataclass(frozen=True)
class InfGrade:
    """An infinite size refined by the number of cofinite blocks it meets."""

    blocks: int

    def __repr__(self):
        return f"inf[{self.blocks}]"


def is_infinite_size(v) -> bool:
    return v is INF or isinstance(v, InfGrade)


def coarse(v):
    return INF if isinstance(v, InfGrade) else v


def format_size(v) -> str:
    if v is INF:
        return "inf"
    return repr(v) if isinstance(v, InfGrade) else str(v)


@dataclass(frozen=True)
class Unrealizable:
    """No element realizes the requested split; ``cell`` 0 is the exterior."""

    cell: int
    demand: tuple
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Unavailable:
    reason: str

    def __bool__(self):
        return False


# --------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class ColumnElem:
    cols: tuple = ()  # sorted ((column, EPSet), ...) with nonempty slices

    tag = "columns"

    def get(self, c: int) -> EPSet:
        for col, s in self.cols:
            if col == c:
                return s
        return EMPTY_SET

    @property
    def support(self) -> list:
        return [c for c, _ in self.cols]

    def __repr__(self):
        inner = ", ".join(f"{c}: {s!r}" for c, s in self.cols)
        return f"{type(self).__name__}({{{inner}}})"


@dataclass(frozen=True, repr=False)
class PrimeElem(ColumnElem):
    tag = "prime"

    @property
    def atoms(self) -> frozenset:
        return self.get(0).prefix

    def __repr__(self):
        return f"PrimeElem({sorted(self.atoms)})"


@dataclass(frozen=True, repr=False)
class CharElem(ColumnElem):
    n: int = 0
    tag = "char"


@dataclass(frozen=True, repr=False)
class AmorphElem(ColumnElem):
    tag = "amorphous"


@dataclass(frozen=True, repr=False)
class FiniteBAElem(ColumnElem):
    n: int = 0
    tag = "ba"

    @property
    def bits(self) -> int:
        return coding.set_encode(self.get(0).prefix)

    def __repr__(self):
        return f"FiniteBAElem({self.n}, {sorted(self.get(0).prefix)})"


@dataclass(frozen=True, repr=False)
class BAElem(ColumnElem):
    tag = "ba-sat"

    @property
    def set(self) -> EPSet:
        return self.get(0)

    def __repr__(self):
        return f"BAElem({self.get(0)!r})"


# --------------------------------------------------------------------------
# generic machinery


class Model:
    """Base class for column presentations.

    Subclasses set ``elem_cls``, ``mode`` and override the restriction and
    splitting hooks.
    """

    elem_cls = ColumnElem
    mode = TheoryMode.SET
    id = "?"
    finite_top = False

    # -- element plumbing ---------------------------------------------------

    def _extra(self) -> dict:
        return {}

    def make(self, cols: dict):
        items = tuple(sorted((c, s) for c, s in cols.items() if not s.is_empty))
        e = self.elem_cls(items, **self._extra())
        self.validate(e)
        return e

    @property
    def bottom(self):
        return self.make({})

    def column_universe(self, c: int):
        """Atoms of column ``c`` that exist in the model (None if no column)."""
        return FULL_SET

    def slice_allowed(self, c: int, s: EPSet) -> bool:
        return True

    def check(self, *elems):
        for e in elems:
            if type(e) is not self.elem_cls or e.__dict__.get("n", None) != self._extra().get("n", None):
                raise PresentationMismatch(f"{e!r} is not an element of {self.id}")

    def validate(self, e):
        self.check(e)
        for c, s in e.cols:
            u = self.column_universe(c)
            if u is None or not s.issubset(u) or not self.slice_allowed(c, s):
                raise DescriptorError(f"slice {s!r} in column {c} is not allowed in {self.id}")
        return e

    def _binary(self, a, b, op):
        self.check(a, b)
        cols = {}
        for c in sorted(set(a.support) | set(b.support)):
            cols[c] = op(a.get(c), b.get(c))
        return self.make(cols)

    def union(self, a, b):
        return self._binary(a, b, lambda x, y: x | y)

    def inter(self, a, b):
        return self._binary(a, b, lambda x, y: x & y)

    def diff(self, a, b):
        return self._binary(a, b, lambda x, y: x - y)

    def lattice_op(self, op: str, a, b):
        ops = {"union": self.union, "intersection": self.inter, "inter": self.inter,
               "difference": self.diff, "diff": self.diff}
        try:
            return ops[op](a, b)
        except KeyError:
            raise ValueError(f"unknown lattice operation {op!r}") from None

    def leq(self, a, b) -> bool:
        self.check(a, b)
        return all(s.issubset(b.get(c)) for c, s in a.cols)

    def is_empty(self, a) -> bool:
        return not a.cols

    def size(self, a):
        self.check(a)
        total = 0
        for _, s in a.cols:
            if s.is_finite:
                total += len(s.prefix)
            else:
                return INF
        return total

    def fine_size(self, a):
        return self.size(a)

    def is_infinite(self, a) -> bool:
        return self.size(a) is INF

    def atoms(self, a):
        """Atoms of ``a`` as (column, position) pairs in canonical order."""
        for c, s in a.cols:
            for n in s:
                yield (c, n)
            # an infinite column never ends, later columns are unreachable
            if not s.is_finite:
                return

    def atom(self, c: int, n: int):
        return self.make({c: EPSet.finite([n])})

    def atoms_below(self, a, k: int) -> list:
        self.check(a)
        return [self.atom(c, n) for c, n in itertools.islice(self.atoms(a), k)]

    def take_first(self, a, k: int):
        cols = {}
        remaining = k
        for c, s in a.cols:
            if remaining == 0:
                break
            part = s.take(remaining)
            cols[c] = part
            remaining -= len(part.prefix)
        return self.make(cols)

    def drop_first(self, a, k: int):
        return self.diff(a, self.take_first(a, k))

    # -- Venn diagrams ------------------------------------------------------

    def regions(self, elems: Sequence) -> tuple:
        """Nonempty non-exterior cells of ``elems`` as ``{mask: element}``, and their union."""
        self.check(*elems)
        regions: dict = {}
        union = self.bottom
        for i, a in enumerate(elems):
            regions, union = refine(self, regions, union, a, 1 << i)
        return regions, union

    def exterior_element(self, union):
        """The exterior as an element, for presentations with a top."""
        return None

    def exterior_size(self, union):
        ext = self.exterior_element(union)
        return INF if ext is None else self.size(ext)

    def cell_sizes(self, elems: Sequence, names=None) -> CellSizes:
        elems = list(elems)
        names = tuple(names) if names is not None else tuple(f"p{i}" for i in range(len(elems)))
        if len(names) != len(elems):
            raise ValueError("one name per element required")
        regions, union = self.regions(elems)
        return CellSizes.build(names, self.mode, {m: self.size(r) for m, r in regions.items()},
                               self.exterior_size(union))

    # -- realizing types ----------------------------------------------------

    def split_infinite(self, r, want_in, want_out):
        """Split an infinite cell into two infinite parts; return the in-part or None."""
        return None

    def exterior_take(self, union, demand):
        """An element of the given size disjoint from ``union`` (set mode) or None."""
        if is_infinite_size(demand):
            return self.exterior_infinite(union, demand)
        cols = {}
        remaining = demand
        for c in itertools.count():
            if remaining == 0:
                break
            u = self.column_universe(c)
            if u is None:
                return None
            free = u - union.get(c)
            part = free.take(remaining)
            if not part.is_empty:
                cols[c] = part
                remaining -= len(part.prefix)
        return self.make(cols)

    def exterior_infinite(self, union, demand):
        return None

    def split_cell(self, r, want_in, want_out):
        """In-part of cell ``r`` for the demand, or None if impossible here."""
        actual = self.fine_size(r)
        if not is_infinite_size(actual):
            if is_infinite_size(want_in) or is_infinite_size(want_out) or want_in + want_out != actual:
                return None
            return self.take_first(r, want_in)
        if not (is_infinite_size(want_in) or is_infinite_size(want_out)):
            return None
        if not _grades_fit(actual, want_in, want_out):
            return None
        if not is_infinite_size(want_in):
            return self.take_first(r, want_in)
        if not is_infinite_size(want_out):
            return self.drop_first(r, want_out)
        return self.split_infinite(r, want_in, want_out)

    def realize_type(self, params: Sequence, split: dict):
        """Assemble ``x`` whose cells against ``params`` have the demanded sizes.

        ``split`` maps a cell mask to ``(in_size, out_size)``; cells left out
        are empty on both sides.  Mask 0 is the exterior: in set mode only its
        in-part is given (the rest is infinite regardless).
        """
        params = list(params)
        regions, union = self.regions(params)
        return self.realize_in_regions(regions, union, _normalize_split(split, len(params), self.mode))

    def realize_in_regions(self, regions: dict, union, split: dict):
        """:meth:`realize_type` against a precomputed region decomposition."""
        parts = []
        for mask in sorted(set(regions) | {m for m in split if m != 0}):
            want_in, want_out = split.get(mask, (0, 0))
            r = regions.get(mask)
            if r is None:
                if want_in != 0 or want_out != 0:
                    return Unrealizable(mask, (want_in, want_out), "cell is empty")
                continue
            part = self.split_cell(r, want_in, want_out)
            if part is None:
                return Unrealizable(mask, (want_in, want_out), self._failure(r, want_in, want_out))
            parts.append(part)
        want_in, want_out = split.get(0, (0, None))
        ext = self.exterior_element(union)
        if ext is not None:
            part = self.split_cell(ext, want_in, want_out)
        else:
            part = self.exterior_take(union, want_in)
        if part is None:
            return Unrealizable(0, (want_in, want_out), "exterior cannot supply the demand")
        parts.append(part)
        x = self.bottom
        for p in parts:
            x = self.union(x, p)
        return x

    def _failure(self, r, want_in, want_out) -> str:
        actual = self.fine_size(r)
        if not is_infinite_size(actual) or not (is_infinite_size(want_in) and is_infinite_size(want_out)):
            return f"cell of size {format_size(actual)} cannot split as {format_size(want_in)}+{format_size(want_out)}"
        return "infinite cell does not split into two infinite parts"

    def fresh_disjoint_infinite(self, a):
        self.check(a)
        part = self.exterior_infinite(a, INF) if self.exterior_element(a) is None else None
        if part is None and self.exterior_element(a) is not None:
            ext = self.exterior_element(a)
            if self.is_infinite(ext):
                # keep the top out of reach: take half of an infinite co-part
                part = self.split_infinite(ext, INF, INF)
        return part if part is not None else Unavailable(f"no infinite element disjoint from {a!r}")

    # -- enumeration ----------------------------------------------------------

    def enumerate(self, i: int):
        raise NotImplementedError

    def index_of(self, e) -> int:
        raise NotImplementedError

    # -- descriptors ----------------------------------------------------------

    def to_json(self, e) -> dict:
        self.check(e)
        return {"version": SCHEMA_VERSION, "presentation": self.elem_cls.tag,
                "cols": {str(c): s.to_json() for c, s in e.cols}}

    def from_json(self, obj):
        if obj.get("presentation", self.elem_cls.tag) != self.elem_cls.tag:
            raise DescriptorError(f"descriptor for {obj.get('presentation')!r}, expected {self.elem_cls.tag!r}")
        try:
            cols = {int(c): EPSet.from_json(s) for c, s in obj.get("cols", {}).items()}
        except (TypeError, ValueError, AttributeError) as exc:
            raise DescriptorError(str(exc)) from None
        return self.make(cols)

    # -- semantics ------------------------------------------------------------

    def eval(self, f, assignment: dict | None = None) -> bool:
        """Truth of ``f`` under ``assignment`` via cell normal form and cell sizes."""
        from ..qe import holds, qe_normal_form

        assignment = assignment or {}
        params = free_variables(f)
        missing = [v for v in params if v not in assignment]
        if missing:
            raise ValueError(f"no value for free variable {missing[0]!r}")
        sizes = self.cell_sizes([assignment[v] for v in params], params)
        profiles = qe_normal_form(f, self.mode, params, infinite_top=not self.finite_top)
        return holds(profiles, sizes)

    def describe(self, e) -> str:
        return repr(e)

    def __repr__(self):
        return f"<model {self.id}>"


def refine(model, regions: dict, union, a, bit: int) -> tuple:
    """Add element ``a`` (bit ``bit``) to a region decomposition."""
    out = {}
    for mask, r in regions.items():
        inside = model.inter(r, a)
        outside = model.diff(r, a)
        if not model.is_empty(inside):
            out[mask | bit] = inside
        if not model.is_empty(outside):
            out[mask] = outside
    fresh = model.diff(a, union)
    if not model.is_empty(fresh):
        out[bit] = fresh
    return out, model.union(union, a)


def _grades_fit(actual, want_in, want_out) -> bool:
    if not isinstance(actual, InfGrade):
        return True
    graded = [w for w in (want_in, want_out) if isinstance(w, InfGrade)]
    if len(graded) == 2:
        return want_in.blocks + want_out.blocks == actual.blocks
    if len(graded) == 1 and not (is_infinite_size(want_in) and is_infinite_size(want_out)):
        return graded[0].blocks == actual.blocks
    return True


def _size_value(v):
    if v is None or v is INF or isinstance(v, InfGrade):
        return v
    if isinstance(v, str):
        if v in ("inf", "oo", "∞"):
            return INF
        m = re.fullmatch(r"inf\[(\d+)\]", v)
        if m:
            return InfGrade(int(m.group(1)))
        v = int(v)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise MalformedSplit(f"bad size {v!r}")
    return v


def _normalize_split(split: dict, width: int, mode) -> dict:
    out = {}
    for mask, demand in split.items():
        mask = int(mask)
        if not 0 <= mask < (1 << width):
            raise MalformedSplit(f"cell mask {mask} out of range for {width} parameters")
        if not isinstance(demand, (tuple, list)):
            demand = (demand, None) if mask == 0 else demand
        if not isinstance(demand, (tuple, list)):
            raise MalformedSplit(f"cell {mask}: expected an (in, out) pair")
        demand = list(demand)
        if mask == 0 and len(demand) == 1:
            demand.append(None)
        if len(demand) != 2:
            raise MalformedSplit(f"cell {mask}: expected an (in, out) pair")
        want_in, want_out = (_size_value(v) for v in demand)
        if want_in is None or (want_out is None and not (mask == 0 and mode is TheoryMode.SET)):
            raise MalformedSplit(f"cell {mask}: missing size")
        out[mask] = (want_in, want_out)
    if 0 not in out:
        raise MalformedSplit("the exterior (cell 0) is required")
    return out


# --------------------------------------------------------------------------
# concrete presentations


class PrimeModel(Model):
    """Finite subsets of N: the prime model, with no infinite elements."""

    elem_cls = PrimeElem
    id = "prime"

    def column_universe(self, c):
        return FULL_SET if c == 0 else None

    def slice_allowed(self, c, s):
        return s.is_finite

    def elem(self, atoms) -> PrimeElem:
        return self.make({0: EPSet.finite(atoms)})

    def enumerate(self, i: int):
        return self.elem(coding.set_decode(i))

    def index_of(self, e) -> int:
        self.check(e)
        return coding.set_encode(e.atoms)

    def to_json(self, e):
        self.check(e)
        return {"version": SCHEMA_VERSION, "presentation": "prime", "atoms": sorted(e.atoms)}

    def from_json(self, obj):
        if obj.get("presentation", "prime") != "prime":
            raise DescriptorError(f"descriptor for {obj.get('presentation')!r}, expected 'prime'")
        atoms = obj.get("atoms", [])
        if not all(isinstance(a, int) and a >= 0 for a in atoms):
            raise DescriptorError("atoms must be naturals")
        return self.elem(atoms)


class ColumnsModel(Model):
    """Finite maps column -> eventually periodic set: the countable saturated model.

    Infinite elements split by occurrence parity and every element misses a
    whole fresh column, so both saturation criteria hold.
    ``perm=True`` gives the same structure with a different enumeration
    (columns 2k and 2k+1 swapped).
    """

    elem_cls = ColumnElem

    def __init__(self, perm: bool = False):
        self.perm = perm
        self.id = "columns-perm" if perm else "columns"

    def split_infinite(self, r, want_in, want_out):
        return self.make({c: s.parity_split()[0] for c, s in r.cols})

    def exterior_infinite(self, union, demand):
        for c in itertools.count():
            free = FULL_SET - union.get(c)
            if not free.is_finite:
                return self.make({c: free})

    def fresh_column(self, a) -> int:
        return max(a.support, default=-1) + 1

    def fresh_disjoint_infinite(self, a):
        self.check(a)
        return self.make({self.fresh_column(a): FULL_SET})

    def _permute(self, e):
        return self.make({c ^ 1: s for c, s in e.cols}) if self.perm else e

    def enumerate(self, i: int):
        codes = coding.support_decode(i)
        return self._permute(self.make({c: coding.epset_decode(z) for c, z in codes.items()}))

    def index_of(self, e) -> int:
        self.check(e)
        e = self._permute(e)
        return coding.support_encode({c: coding.epset_encode(s) for c, s in e.cols})


class CharacteristicModel(Model):
    """Blocks A_0..A_n: slices finite or cofinite on A_i (i<n), finite on A_n.

    The largest family of pairwise disjoint infinite elements has size n:
    an infinite element is cofinite on some A_i with i<n.
    """

    elem_cls = CharElem

    def __init__(self, n: int, perm: bool = False):
        if n < 1:
            raise ValueError("characteristic presentations need n >= 1")
        self.n = n
        self.perm = perm
        self.id = f"char{n}" + ("-perm" if perm else "")

    def _extra(self):
        return {"n": self.n}

    def column_universe(self, c):
        return FULL_SET if 0 <= c <= self.n else None

    def slice_allowed(self, c, s):
        return s.is_finite if c == self.n else (s.is_finite or s.is_cofinite)

    def cofinite_blocks(self, a) -> list:
        return [c for c, s in a.cols if c < self.n and s.is_cofinite]

    def fine_size(self, a):
        blocks = self.cofinite_blocks(a)
        return InfGrade(len(blocks)) if blocks else self.size(a)

    def split_infinite(self, r, want_in, want_out):
        blocks = self.cofinite_blocks(r)
        k = want_in.blocks if isinstance(want_in, InfGrade) else 1
        if len(blocks) < 2 or not 1 <= k < len(blocks):
            return None
        return self.make({c: r.get(c) for c in blocks[:k]})

    def exterior_infinite(self, union, demand):
        k = demand.blocks if isinstance(demand, InfGrade) else 1
        free = [c for c in range(self.n) if union.get(c).is_finite]
        if len(free) < k:
            return None
        return self.make({c: FULL_SET - union.get(c) for c in free[:k]})

    def _permute(self, e):
        if not self.perm:
            return e
        return self.make({(self.n - 1 - c if c < self.n else c): s for c, s in e.cols})

    def enumerate(self, i: int):
        codes = coding.tuple_decode(i, self.n + 1)
        cols = {c: coding.flag_decode(z) for c, z in enumerate(codes[:-1])}
        cols[self.n] = EPSet.finite(coding.set_decode(codes[-1]))
        return self._permute(self.make(cols))

    def index_of(self, e) -> int:
        self.check(e)
        e = self._permute(e)
        codes = [coding.flag_encode(e.get(c)) for c in range(self.n)]
        codes.append(coding.set_encode(e.get(self.n).prefix))
        return coding.tuple_encode(codes)

    def to_json(self, e):
        self.check(e)
        return {"version": SCHEMA_VERSION, "presentation": "char", "n": self.n,
                "blocks": {str(c): s.to_json() for c, s in e.cols}}

    def from_json(self, obj):
        if obj.get("presentation", "char") != "char" or int(obj.get("n", self.n)) != self.n:
            raise DescriptorError(f"descriptor is not an element of {self.id}")
        try:
            cols = {int(c): EPSet.from_json(s) for c, s in obj.get("blocks", {}).items()}
        except (TypeError, ValueError, AttributeError) as exc:
            raise DescriptorError(str(exc)) from None
        return self.make(cols)


class AmorphousModel(Model):
    """Column 0 plays an amorphous set u: its slices are finite or cofinite.

    Ordinary columns 1, 2, ... are unrestricted.  This reproduces the one
    property of an amorphous set that matters for inclusion; it is not
    claimed to be the reduct of an actual model of set theory.
    """

    elem_cls = AmorphElem
    id = "amorphous"

    def slice_allowed(self, c, s):
        return c != 0 or s.is_finite or s.is_cofinite

    @property
    def u(self):
        return self.make({0: FULL_SET})

    def split_infinite(self, r, want_in, want_out):
        ordinary = {c: s for c, s in r.cols if c != 0 and not s.is_finite}
        if not ordinary:
            return None
        return self.make({c: s.parity_split()[0] for c, s in ordinary.items()})

    def exterior_infinite(self, union, demand):
        if union.get(0).is_finite:
            return self.make({0: FULL_SET - union.get(0)})
        for c in itertools.count(1):
            free = FULL_SET - union.get(c)
            if not free.is_finite:
                return self.make({c: free})

    def enumerate(self, i: int):
        a, b = coding.unpair(i)
        cols = {c + 1: coding.epset_decode(z) for c, z in coding.support_decode(b).items()}
        cols[0] = coding.flag_decode(a)
        return self.make(cols)

    def index_of(self, e) -> int:
        self.check(e)
        rest = {c - 1: coding.epset_encode(s) for c, s in e.cols if c != 0}
        return coding.pair(coding.flag_encode(e.get(0)), coding.support_encode(rest))


class FiniteBAModel(Model):
    """The powerset algebra of {0..N-1}; class mode with a finite top."""

    elem_cls = FiniteBAElem
    mode = TheoryMode.CLASS
    finite_top = True

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("negative atom count")
        self.n = n
        self.id = f"ba{n}"
        self._universe = EPSet.finite(range(n))

    def _extra(self):
        return {"n": self.n}

    def column_universe(self, c):
        return self._universe if c == 0 else None

    @property
    def top(self):
        return self.make({0: self._universe})

    def elem(self, atoms) -> FiniteBAElem:
        return self.make({0: EPSet.finite(atoms)})

    def from_bits(self, bits: int) -> FiniteBAElem:
        return self.elem(coding.set_decode(bits))

    def exterior_element(self, union):
        return self.diff(self.top, union)

    def enumerate(self, i: int):
        return self.from_bits(i % (1 << self.n))

    def index_of(self, e) -> int:
        self.check(e)
        return e.bits

    def to_json(self, e):
        self.check(e)
        return {"version": SCHEMA_VERSION, "presentation": "ba", "n": self.n, "atoms": sorted(e.get(0).prefix)}

    def from_json(self, obj):
        if obj.get("presentation", "ba") != "ba" or int(obj.get("n", self.n)) != self.n:
            raise DescriptorError(f"descriptor is not an element of {self.id}")
        return self.elem(obj.get("atoms", []))


class SaturatedBAModel(Model):
    """Eventually periodic subsets of N: the countable saturated atomic Boolean algebra."""

    elem_cls = BAElem
    mode = TheoryMode.CLASS
    id = "ba-sat"

    def column_universe(self, c):
        return FULL_SET if c == 0 else None

    @property
    def top(self):
        return self.make({0: FULL_SET})

    def elem(self, s: EPSet) -> BAElem:
        return self.make({0: s})

    def exterior_element(self, union):
        return self.diff(self.top, union)

    def split_infinite(self, r, want_in, want_out):
        return self.make({0: r.get(0).parity_split()[0]})

    def fresh_disjoint_infinite(self, a):
        self.check(a)
        ext = self.exterior_element(a)
        if not self.is_infinite(ext):
            return Unavailable("the complement is finite")
        return self.split_infinite(ext, INF, INF)

    def enumerate(self, i: int):
        return self.elem(coding.epset_decode(i))

    def index_of(self, e) -> int:
        self.check(e)
        return coding.epset_encode(e.get(0))

    def to_json(self, e):
        self.check(e)
        return {"version": SCHEMA_VERSION, "presentation": "ba-sat", "set": e.get(0).to_json()}

    def from_json(self, obj):
        if obj.get("presentation", "ba-sat") != "ba-sat":
            raise DescriptorError(f"descriptor for {obj.get('presentation')!r}, expected 'ba-sat'")
        try:
            return self.elem(EPSet.from_json(obj.get("set", {"prefix": []})))
        except (TypeError, ValueError, AttributeError) as exc:
            raise DescriptorError(str(exc)) from None


# --------------------------------------------------------------------------
# registry

MODEL_IDS = ("prime", "columns", "columns-perm", "char<N>", "char<N>-perm", "amorphous", "ba<N>", "ba-sat")


def get_model(model_id: str) -> Model:
    """Look up a presentation by id (see :data:`MODEL_IDS`)."""
    fixed = {
        "prime": PrimeModel,
        "columns": ColumnsModel,
        "columns-perm": lambda: ColumnsModel(perm=True),
        "amorphous": AmorphousModel,
        "ba-sat": SaturatedBAModel,
    }
    if model_id in fixed:
        return fixed[model_id]()
    m = re.fullmatch(r"char(\d+)(-perm)?", model_id)
    if m:
        return CharacteristicModel(int(m.group(1)), perm=bool(m.group(2)))
    m = re.fullmatch(r"ba(\d+)", model_id)
    if m:
        return FiniteBAModel(int(m.group(1)))
    raise KeyError(f"unknown model {model_id!r}; known: {', '.join(MODEL_IDS)}")
