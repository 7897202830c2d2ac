"""Saturation criterion, back-and-forth isomorphisms, and the characteristic."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .formula import TheoryMode, parse
from .models import (
    AmorphousModel, CharacteristicModel, ColumnsModel, FiniteBAModel, InfGrade, Model, PrimeModel,
    SaturatedBAModel, Unavailable, Unrealizable, coarse, format_size, is_infinite_size, refine,
)
from .sizesets import INF

FRAGMENT_DEPTH = 16


# --------------------------------------------------------------------------
# criterion


@dataclass(frozen=True)
class NoInfiniteElements:
    def describe(self) -> str:
        return "NoInfiniteElements"


@dataclass(frozen=True)
class UnsplittableInfinite:
    """An infinite ``u`` with the splitting type p(x,u) finitely realized but omitted."""

    element: object
    fragments: tuple  # (k, formula text, truth in the model) for k = 1..FRAGMENT_DEPTH
    failure: Unrealizable

    def describe(self) -> str:
        return f"UnsplittableInfinite(u = {self.element!r})"


@dataclass
class SaturationReport:
    model_id: str
    verdict: str  # "Saturated" or "NotSaturated"
    evidence: object = None
    log: list = field(default_factory=list)

    @property
    def saturated(self) -> bool:
        return self.verdict == "Saturated"

    def dump(self) -> str:
        lines = [f"model: {self.model_id}", f"verdict: {self.verdict}"]
        if self.evidence is not None:
            lines.append(f"evidence: {self.evidence.describe()}")
            if isinstance(self.evidence, UnsplittableInfinite):
                for k, text, value in self.evidence.fragments:
                    lines.append(f"  fragment k={k}: {'true' if value else 'false'}")
                ev = self.evidence.failure
                lines.append(f"  realize x with x/\\u = inf, u-x = inf: UNREALIZABLE cell {ev.cell} ({ev.reason})")
        lines.extend(f"check: {entry}" for entry in self.log)
        return "\n".join(lines)


def splitting_fragment(k: int, u: str = "u") -> str:
    """``|x /\\ u| >= k & |u - x| >= k`` written with the language's ``|t| = n``."""
    parts = []
    for j in range(k):
        parts.append(f"~(|x /\\ {u}| = {j})")
        parts.append(f"~(|{u} - x| = {j})")
    return "E x. (" + " & ".join(parts) + ")"


def _unsplittable(m: Model, u, depth: int = FRAGMENT_DEPTH) -> UnsplittableInfinite:
    fragments = []
    for k in range(1, depth + 1):
        text = splitting_fragment(k)
        fragments.append((k, text, m.eval(parse(text, m.mode), {"u": u})))
    failure = m.realize_type([u], {1: (INF, INF), 0: (0, None)})
    return UnsplittableInfinite(u, tuple(fragments), failure)


def verify_evidence(m: Model, report: SaturationReport) -> bool:
    """Replay NotSaturated evidence against the model."""
    ev = report.evidence
    if isinstance(ev, NoInfiniteElements):
        return isinstance(m.fresh_disjoint_infinite(m.bottom), Unavailable)
    if isinstance(ev, UnsplittableInfinite):
        fresh = _unsplittable(m, ev.element, len(ev.fragments))
        return (m.is_infinite(ev.element) and all(v for _, _, v in fresh.fragments)
                and isinstance(fresh.failure, Unrealizable))
    return ev is None and report.saturated


def _random_infinite(m: Model, rng: random.Random, tries: int = 200):
    for _ in range(tries):
        e = m.enumerate(rng.randrange(1, 10**6))
        if m.is_infinite(e):
            return e
    return None


def check_criterion(m: Model, trials: int = 8, seed: int = 0) -> SaturationReport:
    """Decide the two-clause saturation criterion from the presentation's structure.

    The verdict is structural; ``trials`` randomized witness replays are
    appended to the log (for saturated presentations they exercise both
    clauses on random infinite elements).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    log = []
    if isinstance(m, (ColumnsModel, SaturatedBAModel)):
        for _ in range(trials):
            a = _random_infinite(m, rng)
            ext = m.exterior_element(a)
            x = m.realize_type([a], {1: (INF, INF), 0: (0, None if ext is None else m.size(ext))})
            sizes = m.cell_sizes([a, x])
            ok_split = sizes[0b11] is INF and sizes[0b01] is INF
            fresh = m.fresh_disjoint_infinite(a)
            ok_fresh = (not isinstance(fresh, Unavailable) and m.is_infinite(fresh)
                        and m.is_empty(m.inter(a, fresh)))
            if ext is not None and not m.is_infinite(ext):
                # with a top, clause (2) only concerns co-infinite elements
                ok_fresh = isinstance(fresh, Unavailable)
            log.append(f"a={a!r} split={'ok' if ok_split else 'FAIL'} fresh={'ok' if ok_fresh else 'FAIL'}")
        return SaturationReport(m.id, "Saturated", None, log)
    if isinstance(m, (PrimeModel, FiniteBAModel)):
        for _ in range(trials):
            a = m.enumerate(rng.randrange(10**6))
            log.append(f"a={a!r} infinite={m.is_infinite(a)}")
        return SaturationReport(m.id, "NotSaturated", NoInfiniteElements(), log)
    if isinstance(m, AmorphousModel):
        # every subset of column 0 is finite or cofinite, so u never splits
        return SaturationReport(m.id, "NotSaturated", _unsplittable(m, m.u), log)
    if isinstance(m, CharacteristicModel):
        # below a single block only finite and cofinite slices exist
        u = m.make({0: m.column_universe(0)})
        return SaturationReport(m.id, "NotSaturated", _unsplittable(m, u), log)
    raise TypeError(f"no structural analysis for {m!r}")


def characteristic(m: Model):
    """Size of the largest family of pairwise disjoint infinite elements.

    Read off the descriptors: prime and finite algebras have no infinite
    elements; in char<n> an infinite element is cofinite on one of the n
    blocks, so n+1 disjoint infinite elements would share a block; columns,
    amorphous (ordinary columns) and ba-sat (residues mod k) have arbitrarily
    large families.
    """
    if isinstance(m, (PrimeModel, FiniteBAModel)):
        return 0
    if isinstance(m, CharacteristicModel):
        return m.n
    if isinstance(m, (ColumnsModel, AmorphousModel, SaturatedBAModel)):
        return INF
    raise TypeError(f"no structural analysis for {m!r}")


# --------------------------------------------------------------------------
# back and forth


@dataclass
class PartialIso:
    left: str
    right: str
    pairs: list = field(default_factory=list)  # (a, b)
    sources: list = field(default_factory=list)  # (side, enumeration index)

    def __len__(self):
        return len(self.pairs)


@dataclass
class Obstruction:
    step: int
    side: str  # side whose element could not be matched
    index: int
    element: object
    cell: int
    demand: tuple
    reason: str
    partial: PartialIso

    def describe(self) -> str:
        d = ", ".join(format_size(v) if v is not None else "-" for v in self.demand)
        return (f"OBSTRUCTION step={self.step} side={self.side} index={self.index} "
                f"element={self.element!r} cell={self.cell} demand=({d}) reason={self.reason}")


class _Side:
    def __init__(self, model: Model, name: str):
        self.model = model
        self.name = name
        self.next_index = 0
        self.regions: dict = {}
        self.union = model.bottom
        self.seen: set = set()

    def take(self):
        while True:
            i = self.next_index
            self.next_index += 1
            e = self.model.enumerate(i)
            if e not in self.seen:
                return i, e

    def add(self, e, bit):
        self.regions, self.union = refine(self.model, self.regions, self.union, e, bit)
        self.seen.add(e)


def _split_of(side: _Side, e, graded: bool) -> dict:
    m = side.model
    size = m.fine_size if graded else m.size
    split = {}
    for mask, r in side.regions.items():
        split[mask] = (size(m.inter(r, e)), size(m.diff(r, e)))
    outside = m.diff(e, side.union)
    ext = m.exterior_element(side.union)
    split[0] = (size(outside), size(m.diff(ext, e)) if ext is not None else None)
    return split


def _fingerprint(side: _Side, graded: bool) -> dict:
    size = side.model.fine_size if graded else side.model.size
    out = {mask: size(r) for mask, r in side.regions.items()}
    ext = side.model.exterior_element(side.union)
    if ext is not None:
        out[0] = size(ext)
    return out


def back_and_forth(left: Model, right: Model, steps: int):
    """Grow a partial isomorphism by strict alternation of the two enumerations.

    Even steps take the next new element of ``left`` and realize its split
    type over the image tuple in ``right``; odd steps go the other way.
    Returns a :class:`PartialIso` with ``steps`` pairs or an
    :class:`Obstruction`.
    """
    if left.mode is not right.mode:
        raise ValueError(f"mode mismatch: {left.id} is {left.mode.value}, {right.id} is {right.mode.value}")
    if steps < 1:
        raise ValueError("steps must be positive")
    # char<n> sizes carry the number of blocks; both sides must speak it
    graded = isinstance(left, CharacteristicModel) and isinstance(right, CharacteristicModel)
    iso = PartialIso(left.id, right.id)
    sides = (_Side(left, "left"), _Side(right, "right"))
    for step in range(steps):
        src, dst = sides if step % 2 == 0 else sides[::-1]
        index, e = src.take()
        split = _split_of(src, e, graded)
        image = dst.model.realize_in_regions(dst.regions, dst.union, split)
        if isinstance(image, Unrealizable):
            return Obstruction(step, src.name, index, e, image.cell, image.demand, image.reason, iso)
        bit = 1 << step
        src.add(e, bit)
        dst.add(image, bit)
        if _fingerprint(src, graded) != _fingerprint(dst, graded):
            raise AssertionError(f"realized element does not match the split at step {step}")
        a, b = (e, image) if src is sides[0] else (image, e)
        iso.pairs.append((a, b))
        iso.sources.append((src.name, index))
    return iso


# --------------------------------------------------------------------------
# independent verification

_BIG = float(2 ** 40)


def _cell_rows(m: Model, elems: list) -> tuple:
    regions, union = m.regions(elems)
    masks = list(regions)
    weights = [m.size(r) for r in regions.values()]
    ext = m.exterior_element(union)
    masks.append(0)
    weights.append(INF if ext is None else m.size(ext))
    n = len(elems)
    bits = np.array([[(mask >> i) & 1 for i in range(n)] for mask in masks], dtype=np.int64)
    w = np.array([_BIG if v is INF else float(v) for v in weights])
    return bits, w


def _triple_tables(bits, w, n):
    for i in range(n):
        for j in range(i + 1, n - 1):
            rest = bits[:, j + 1:]
            width = rest.shape[1]
            codes = bits[:, i:i + 1] + 2 * bits[:, j:j + 1] + 4 * rest + 8 * np.arange(width)[None, :]
            sums = np.bincount(codes.ravel(), weights=np.repeat(w, width), minlength=8 * width)
            yield (i, j), np.where(sums >= _BIG, -1.0, sums)


def verify_partial_iso(left: Model, right: Model, iso: PartialIso) -> list:
    """Problems found by brute checking; an empty list means the map is sound.

    Checks inclusion both ways for every pair of indices and the exact cell
    sizes of every subtuple of length at most 3 (through the triples, whose
    marginals cover the shorter subtuples).
    """
    problems = []
    a = [p[0] for p in iso.pairs]
    b = [p[1] for p in iso.pairs]
    n = len(a)
    for i in range(n):
        for j in range(n):
            if i != j and left.leq(a[i], a[j]) != right.leq(b[i], b[j]):
                problems.append(f"inclusion differs at ({i}, {j})")
    if n < 3:
        for sub in [(i,) for i in range(n)] + [(i, j) for i in range(n) for j in range(i + 1, n)]:
            if left.cell_sizes([a[k] for k in sub]).dense() != right.cell_sizes([b[k] for k in sub]).dense():
                problems.append(f"cell sizes differ on {sub}")
        return problems
    lb, lw = _cell_rows(left, a)
    rb, rw = _cell_rows(right, b)
    for ((i, j), ls), (_, rs) in zip(_triple_tables(lb, lw, n), _triple_tables(rb, rw, n)):
        if not np.array_equal(ls, rs):
            k = j + 1 + int(np.nonzero((ls != rs).reshape(-1, 8).any(axis=1))[0][0])
            problems.append(f"cell sizes differ on ({i}, {j}, {k})")
    return problems


def format_pair_table(left: Model, right: Model, iso: PartialIso) -> str:
    import json

    lines = []
    for k, ((a, b), (side, index)) in enumerate(zip(iso.pairs, iso.sources)):
        src, dst = (a, b) if side == "left" else (b, a)
        sm, dm = (left, right) if side == "left" else (right, left)
        lines.append(f"{k}\t{side}\t{index}\t{json.dumps(sm.to_json(src), sort_keys=True)}"
                     f"\t{json.dumps(dm.to_json(dst), sort_keys=True)}")
    return "\n".join(lines)


__all__ = [
    "NoInfiniteElements", "Obstruction", "PartialIso", "SaturationReport", "UnsplittableInfinite",
    "back_and_forth", "characteristic", "check_criterion", "format_pair_table", "splitting_fragment",
    "verify_evidence", "verify_partial_iso", "coarse", "is_infinite_size", "InfGrade",
]
