"""Eventually periodic subsets of the naturals.

``EPSet(t, p, residues, prefix)`` is ``prefix | {n >= t : n % p in residues}``
with ``prefix`` below ``t``.  Instances are always canonical: the period is
minimal and then the threshold is minimal, so equal sets compare equal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from ..sizesets import INF


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True, init=False)
class EPSet:
    t: int
    p: int
    residues: frozenset
    prefix: frozenset

    def __init__(self, t=0, p=1, residues=(), prefix=()):
        t, p, residues, prefix = _canonical(int(t), int(p), frozenset(residues), frozenset(prefix))
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "prefix", prefix)

    # constructors ---------------------------------------------------------

    @classmethod
    def finite(cls, members: Iterable[int]) -> "EPSet":
        members = frozenset(members)
        if any(m < 0 for m in members):
            raise ValueError("negative member")
        return cls(max(members, default=-1) + 1, 1, (), members)

    @classmethod
    def full(cls) -> "EPSet":
        return cls(0, 1, (0,), ())

    @classmethod
    def periodic(cls, p: int, residues, start: int = 0) -> "EPSet":
        """``{n >= start : n % p in residues}``."""
        return cls(start, p, residues, ())

    @classmethod
    def cofinite(cls, missing: Iterable[int]) -> "EPSet":
        missing = frozenset(missing)
        t = max(missing, default=-1) + 1
        return cls(t, 1, (0,), (n for n in range(t) if n not in missing))

    @classmethod
    def from_membership(cls, member, t: int, p: int) -> "EPSet":
        """Build from a predicate known to be periodic with period ``p`` from ``t`` on."""
        prefix = [n for n in range(t) if member(n)]
        residues = [(t + k) % p for k in range(p) if member(t + k)]
        return cls(t, p, residues, prefix)

    # queries --------------------------------------------------------------

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.t:
            return n in self.prefix
        return (n % self.p) in self.residues

    @property
    def is_empty(self) -> bool:
        return not self.residues and not self.prefix

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return self.p == 1 and bool(self.residues)

    def size(self):
        return len(self.prefix) if not self.residues else INF

    def __iter__(self) -> Iterator[int]:
        yield from sorted(self.prefix)
        if self.residues:
            for n in itertools.count(self.t):
                if n % self.p in self.residues:
                    yield n

    def first(self, k: int) -> list:
        return list(itertools.islice(iter(self), k))

    # boolean operations ---------------------------------------------------

    def _combine(self, other: "EPSet", op) -> "EPSet":
        t = max(self.t, other.t)
        p = self.p * other.p // math.gcd(self.p, other.p)
        return EPSet.from_membership(lambda n: op(n in self, n in other), t, p)

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> "EPSet":
        return EPSet(self.t, self.p, (r for r in range(self.p) if r not in self.residues),
                     (n for n in range(self.t) if n not in self.prefix))

    def issubset(self, other: "EPSet") -> bool:
        return (self - other).is_empty

    def isdisjoint(self, other: "EPSet") -> bool:
        return (self & other).is_empty

    # splitting ------------------------------------------------------------

    def take(self, k: int) -> "EPSet":
        """The first ``k`` members."""
        return EPSet.finite(self.first(k))

    def drop(self, k: int) -> "EPSet":
        """Everything except the first ``k`` members."""
        return self - self.take(k)

    def parity_split(self) -> tuple:
        """(members with even occurrence index, members with odd index)."""
        before = len(self.prefix)
        even_prefix = [m for i, m in enumerate(sorted(self.prefix)) if i % 2 == 0]
        period = 2 * self.p
        even_tail = []
        count = before
        for n in range(self.t, self.t + period):
            if n in self:
                if count % 2 == 0:
                    even_tail.append(n % period)
                count += 1
        even = EPSet(self.t, period, even_tail, even_prefix)
        return even, self - even

    # display --------------------------------------------------------------

    def to_json(self) -> dict:
        return {"prefix": sorted(self.prefix), "t": self.t, "p": self.p, "r": sorted(self.residues)}

    @classmethod
    def from_json(cls, obj) -> "EPSet":
        if isinstance(obj, list):
            return cls.finite(obj)
        prefix = [int(x) for x in obj.get("prefix", [])]
        t = int(obj.get("t", max(prefix, default=-1) + 1))
        p = int(obj.get("p", 1))
        r = [int(x) for x in obj.get("r", [])]
        if p < 1 or t < 0 or any(x >= t for x in prefix) or any(not 0 <= x < p for x in r):
            raise ValueError(f"malformed eventually periodic set {obj!r}")
        return cls(t, p, r, prefix)

    def __repr__(self):
        if not self.residues:
            return "{" + ",".join(map(str, sorted(self.prefix))) + "}"
        head = ",".join(map(str, sorted(self.prefix)))
        tail = f"n>={self.t} & n%{self.p} in {{{','.join(map(str, sorted(self.residues)))}}}"
        return f"EP({head + ' | ' if head else ''}{tail})"

    def sort_key(self):
        return (self.t, self.p, tuple(sorted(self.residues)), tuple(sorted(self.prefix)))


def _canonical(t: int, p: int, residues: frozenset, prefix: frozenset):
    if p < 1 or t < 0:
        raise ValueError("period must be positive and threshold nonnegative")
    residues = frozenset(r % p for r in residues)
    prefix = frozenset(n for n in prefix if 0 <= n < t)
    if not residues:
        p = 1
    else:
        for d in _divisors(p):
            if all(((n in residues) == (((n + d) % p) in residues)) for n in range(p)):
                residues = frozenset(r for r in residues if r < d)
                p = d
                break
    while t > 0 and ((t - 1) in prefix) == (((t - 1) % p) in residues):
        t -= 1
    prefix = frozenset(n for n in prefix if n < t)
    return t, p, residues, prefix


EMPTY_SET = EPSet()
FULL_SET = EPSet.full()
