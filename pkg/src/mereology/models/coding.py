"""Bijective codings of descriptors by natural numbers.

These drive the deterministic enumerations of the model presentations.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .epset import EPSet


def pair(a: int, b: int) -> int:
    """Cantor pairing."""
    return (a + b) * (a + b + 1) // 2 + b


def unpair(z: int) -> tuple:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def tuple_decode(z: int, k: int) -> tuple:
    """Bijection from the naturals onto k-tuples of naturals."""
    if k == 1:
        return (z,)
    out = []
    for _ in range(k - 1):
        a, z = unpair(z)
        out.append(a)
    out.append(z)
    return tuple(out)


def tuple_encode(values) -> int:
    values = list(values)
    z = values[-1]
    for a in reversed(values[:-1]):
        z = pair(a, z)
    return z


def set_decode(z: int) -> frozenset:
    return frozenset(i for i in range(z.bit_length()) if z >> i & 1)


def set_encode(s) -> int:
    return sum(1 << i for i in s)


def support_decode(z: int) -> dict:
    """Bijection from the naturals onto finitely supported maps ``N -> N>0``."""
    bits = sorted(set_decode(z))
    if not bits:
        return {}
    gaps = [bits[0]] + [b - a - 1 for a, b in zip(bits, bits[1:])]
    gaps[-1] += 1
    return {i: g for i, g in enumerate(gaps) if g}


def support_encode(mapping: dict) -> int:
    if not mapping:
        return 0
    k = max(mapping) + 1
    gaps = [mapping.get(i, 0) for i in range(k)]
    gaps[-1] -= 1
    pos, z = -1, 0
    for g in gaps:
        pos += g + 1
        z |= 1 << pos
    return z


# purely periodic patterns, ordered by minimal period then by bitmask


def _minimal_period(mask: int, p: int) -> int:
    for d in range(1, p + 1):
        if p % d == 0 and all(((mask >> n) & 1) == ((mask >> ((n + d) % p)) & 1) for n in range(p)):
            return d
    return p


@lru_cache(maxsize=None)
def _primitive(p: int) -> tuple:
    if p == 1:
        return (0, 1)
    return tuple(m for m in range(1, (1 << p) - 1) if _minimal_period(m, p) == p)


def periodic_decode(z: int) -> EPSet:
    p = 1
    while z >= len(_primitive(p)):
        z -= len(_primitive(p))
        p += 1
    mask = _primitive(p)[z]
    return EPSet(0, p, [r for r in range(p) if mask >> r & 1], ())


def periodic_encode(s: EPSet) -> int:
    z = sum(len(_primitive(q)) for q in range(1, s.p + 1 if s.residues else 1))
    if not s.residues:
        return 0
    mask = set_encode(s.residues)
    return z - len(_primitive(s.p)) + _primitive(s.p).index(mask)


def _periodic_part(s: EPSet) -> EPSet:
    return EPSet(0, s.p, s.residues, ())


def epset_decode(z: int) -> EPSet:
    """Bijection from the naturals onto eventually periodic sets; 0 is empty."""
    qi, fi = unpair(z)
    q = periodic_decode(qi)
    f = EPSet.finite(set_decode(fi))
    return (q - f) | (f - q)


def epset_encode(s: EPSet) -> int:
    q = _periodic_part(s)
    f = (s - q) | (q - s)
    return pair(periodic_encode(q), set_encode(f.prefix))


def flag_decode(z: int) -> EPSet:
    """Finite-or-cofinite sets: even codes finite, odd codes cofinite."""
    fin = set_decode(z >> 1)
    return EPSet.cofinite(fin) if z & 1 else EPSet.finite(fin)


def flag_encode(s: EPSet) -> int:
    if s.is_finite:
        return set_encode(s.prefix) << 1
    if not s.is_cofinite:
        raise ValueError("not a finite-or-cofinite set")
    missing = [n for n in range(s.t) if n not in s]
    return (set_encode(missing) << 1) | 1
