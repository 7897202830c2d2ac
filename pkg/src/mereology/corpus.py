"""Seeded generator of random sentences for cross-checking."""

from __future__ import annotations

import random

from .formula import (
    And, CardEq, Diff, Empty, Equal, Exists, Forall, Formula, Iff, Implies, Inter, Not, Or, Subseteq,
    TheoryMode, Union_, Universe, Var,
)

VARIABLES = ("x", "y", "z")


class SentenceGenerator:
    """Random sentences with bounded quantifier rank, variables and constants."""

    def __init__(self, mode: TheoryMode, seed: int = 0, max_rank: int = 3, max_const: int = 4,
                 variables=VARIABLES):
        self.mode = mode
        self.rng = random.Random(seed)
        self.max_rank = max_rank
        self.max_const = max_const
        self.variables = tuple(variables)

    def leaf(self, scope: list, avoid=None):
        rng = self.rng
        r = rng.random()
        if self.mode is TheoryMode.CLASS and r < 0.12:
            return Universe()
        if r < 0.17 or not scope:
            return Empty()
        # lean towards the innermost variable and away from repeating a leaf
        choices = [v for v in scope if Var(v) != avoid] or list(scope)
        weights = [2 if v == scope[-1] else 1 for v in choices]
        return Var(rng.choices(choices, weights)[0])

    def term(self, scope: list, depth: int = 2):
        rng = self.rng
        if depth == 0 or rng.random() < 0.4:
            return self.leaf(scope)
        op = rng.choice((Union_, Inter, Diff, Diff))
        left = self.term(scope, depth - 1)
        right = self.leaf(scope, avoid=left) if rng.random() < 0.6 else self.term(scope, depth - 1)
        return op(left, right)

    def atom(self, scope: list) -> Formula:
        rng = self.rng
        r = rng.random()
        if r < 0.4:
            return CardEq(self.term(scope), rng.randint(0, self.max_const))
        if r < 0.75:
            return Subseteq(self.term(scope), self.term(scope))
        return Equal(self.term(scope), self.term(scope))

    def formula(self, scope: list, rank: int, size: int) -> Formula:
        """A formula of quantifier rank exactly ``rank`` over ``scope``."""
        rng = self.rng
        free = [v for v in self.variables if v not in scope]
        rank = min(rank, len(free))
        r = rng.random()
        if rank > 0 and (not scope or size <= 1 or r < 0.4):
            v = free[0]
            body = self.formula(scope + [v], rank - 1, size)
            return rng.choice((Exists, Forall))(v, body)
        if rank == 0 and (size <= 1 or r < 0.5):
            return self.atom(scope)
        if r < 0.6:
            return Not(self.formula(scope, rank, size - 1))
        op = rng.choice((And, And, Or, Or, Implies, Iff))
        ranks = [rank, rng.randint(0, rank)]
        rng.shuffle(ranks)
        return op(self.formula(scope, ranks[0], size // 2), self.formula(scope, ranks[1], size // 2))

    def sentence(self) -> Formula:
        rank = self.rng.choices(range(1, self.max_rank + 1), range(1, self.max_rank + 1))[0]
        return self.formula([], rank, self.rng.randint(2, 6))


def generate_corpus(mode: TheoryMode, size: int, seed: int = 0, **kw) -> list:
    """``size`` distinct sentences, deterministic in ``seed``."""
    gen = SentenceGenerator(mode, seed, **kw)
    out, seen = [], set()
    attempts = 0
    while len(out) < size:
        attempts += 1
        if attempts > 100 * size + 1000:
            raise RuntimeError("could not generate enough distinct sentences")
        f = gen.sentence()
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out
