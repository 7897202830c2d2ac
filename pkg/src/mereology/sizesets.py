"""Cardinality constraints over the naturals extended with infinity.

A :class:`SizeSet` is either a finite set of naturals (``Fin``) or the
complement of one, which then also contains infinity (``CoFin``).  Boolean
combinations of ``|t| = n`` can never separate infinity from the large
naturals, so this family is exactly what cell constraints need.
"""

from __future__ import annotations

from dataclasses import dataclass


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()


def is_size(v) -> bool:
    return v is INF or (isinstance(v, int) and not isinstance(v, bool) and v >= 0)


@dataclass(frozen=True)
class SizeSet:
    cofinite: bool
    elems: frozenset

    def __post_init__(self):
        if not isinstance(self.elems, frozenset):
            object.__setattr__(self, "elems", frozenset(self.elems))

    def __contains__(self, v) -> bool:
        if v is INF:
            return self.cofinite
        return (v in self.elems) != self.cofinite

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.elems

    @property
    def is_everything(self) -> bool:
        return self.cofinite and not self.elems

    def bound(self) -> int:
        """One past the largest natural mentioned in the representation."""
        return max(self.elems, default=-1) + 1

    def finite_members(self, limit: int):
        return [k for k in range(limit) if k in self]

    def issubset(self, other: "SizeSet") -> bool:
        if self.cofinite and not other.cofinite:
            return False
        if not self.cofinite:
            return all(k in other for k in self.elems)
        # both cofinite: complement of other must lie inside complement of self
        return other.elems <= self.elems

    def __and__(self, other):
        return ss_combine("and", self, other)

    def __or__(self, other):
        return ss_combine("or", self, other)

    def __invert__(self):
        return ss_combine("not", self)

    def __str__(self):
        body = "{" + ",".join(str(k) for k in sorted(self.elems)) + "}"
        return "~" + body if self.cofinite else body

    def __repr__(self):
        return ("CoFin" if self.cofinite else "Fin") + "{" + ",".join(map(str, sorted(self.elems))) + "}"

    def sort_key(self):
        return (self.cofinite, tuple(sorted(self.elems)))


def Fin(*elems) -> SizeSet:
    if len(elems) == 1 and not isinstance(elems[0], int):
        elems = tuple(elems[0])
    return SizeSet(False, frozenset(elems))


def CoFin(*elems) -> SizeSet:
    if len(elems) == 1 and not isinstance(elems[0], int):
        elems = tuple(elems[0])
    return SizeSet(True, frozenset(elems))


EMPTY = Fin()
ANY = CoFin()
ZERO = Fin(0)


def exactly(v) -> SizeSet:
    """Narrowest SizeSet containing ``v``; for infinity this is everything."""
    return ANY if v is INF else Fin(v)


def at_least(k: int) -> SizeSet:
    return CoFin(range(k))


def parse_sizeset(text: str) -> SizeSet:
    text = text.strip()
    cofinite = text.startswith("~")
    body = text[1:] if cofinite else text
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"bad size set {text!r}")
    inner = body[1:-1].strip()
    elems = frozenset(int(x) for x in inner.split(",")) if inner else frozenset()
    return SizeSet(cofinite, elems)


def ss_combine(op: str, a: SizeSet, b: SizeSet = None) -> SizeSet:
    """Intersection (``and``), union (``or``) or complement (``not``)."""
    if op == "not":
        if b is not None:
            raise TypeError("'not' takes a single size set")
        return SizeSet(not a.cofinite, a.elems)
    if b is None:
        raise TypeError(f"{op!r} takes two size sets")
    if op == "and":
        if a.cofinite and b.cofinite:
            return SizeSet(True, a.elems | b.elems)
        if a.cofinite:
            return SizeSet(False, b.elems - a.elems)
        if b.cofinite:
            return SizeSet(False, a.elems - b.elems)
        return SizeSet(False, a.elems & b.elems)
    if op == "or":
        if a.cofinite and b.cofinite:
            return SizeSet(True, a.elems & b.elems)
        if a.cofinite:
            return SizeSet(True, a.elems - b.elems)
        if b.cofinite:
            return SizeSet(True, b.elems - a.elems)
        return SizeSet(False, a.elems | b.elems)
    raise ValueError(f"unknown operation {op!r}")


def ss_contains(a: SizeSet, v) -> bool:
    return v in a


def ss_sumset(a: SizeSet, b: SizeSet) -> SizeSet:
    """All sums ``x + y`` with ``x`` in ``a`` and ``y`` in ``b``.

    Infinity absorbs: ``n + inf = inf + inf = inf``.
    """
    if a.is_empty or b.is_empty:
        return EMPTY
    if not a.cofinite and not b.cofinite:
        return Fin(x + y for x in a.elems for y in b.elems)
    # at least one side is cofinite and the other nonempty: the sum holds
    # infinity and every large natural; only finitely many naturals can miss
    limit = a.bound() + b.bound() + 1
    if not a.cofinite:
        limit = max(a.elems) + b.bound() + 1
    elif not b.cofinite:
        limit = a.bound() + max(b.elems) + 1
    a_fin = [x for x in range(limit + 1) if x in a]
    b_fin = set(y for y in range(limit + 1) if y in b)
    missing = [m for m in range(limit + 1) if not any((m - x) in b_fin for x in a_fin if x <= m)]
    return CoFin(missing)
