"""Brute-force semantics, independent of the normal-form machinery.

Formulas are evaluated by textbook recursion over concrete bitsets.  Only
the AST module is used; nothing here looks at profiles or size sets.

Class mode runs in the powerset algebra of ``{0..N-1}``.  Set mode runs in
bounded fragments of the column model: a rung ``(C, P, T)`` admits the
elements supported on columns ``< C`` whose slices are unions of the
singletons below ``T`` and the residue classes mod ``P`` from ``T`` on.

Two reductions keep the search small, both justified by symmetry:

* a quantifier only tries one witness per orbit: inside each Venn cell of
  the variables in play, the blocks of a kind (finite or infinite) are
  interchangeable, so taking the first ``a`` of them covers all choices of
  ``a`` blocks; results are memoized on the per-cell block counts;
* below an innermost quantifier the body only sees cell sizes, and a size
  above the body's largest constant behaves like any other such size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .formula import (
    And, CardEq, Diff, Empty, Equal, Exists, Forall, Formula, Iff, Implies, Inter, Not, Or, Subseteq,
    TheoryMode, Union_, Universe, Var, free_variables, max_constant, quantifier_rank,
)

MAX_EXHAUSTIVE_N = 16
DESCRIPTOR_CAP = 10**7
DEFAULT_WINDOW = (8, 10, 12, 14)
_CHUNK = 1 << 18
DEFAULT_RUNGS = ((1, 1, 5), (2, 1, 6), (3, 2, 7), (4, 2, 9))


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class Unstable:
    """Evaluations that failed to agree; ``values`` pairs a setting with its verdict."""

    values: tuple

    def __bool__(self):
        raise TypeError("an Unstable verdict has no truth value")

    def __str__(self):
        return "unstable(" + ", ".join(f"{k}:{'T' if v else 'F'}" for k, v in self.values) + ")"


# --------------------------------------------------------------------------
# the evaluator


class _Structure:
    """A finite piece universe with a tower of block partitions.

    ``levels[r]`` is a list of ``(bitset, infinite)`` blocks; every block of
    level ``r`` is a union of blocks of level ``r + 1``.  ``inf_mask`` marks
    pieces that stand for infinitely many atoms.
    """

    def __init__(self, levels: list, inf_mask: int, top):
        self.levels = levels
        self.inf_mask = inf_mask
        self.top = top  # bitset of the top element, or None without one
        self.width = max((b for blocks in levels for b, _ in blocks), default=0).bit_length()
        # each block is named by its lowest piece
        self.reps = []
        self.by_rep = []
        for blocks in levels:
            rep_fin = rep_inf = universe = 0
            named = []
            for bits, infinite in blocks:
                rep = bits & -bits
                named.append((bits, rep, infinite))
                universe |= bits
                if infinite:
                    rep_inf |= rep
                else:
                    rep_fin |= rep
            self.reps.append((rep_fin, rep_inf, universe))
            self.by_rep.append(named)

    def size(self, bits: int):
        if bits & self.inf_mask:
            return None  # infinite
        return bin(bits).count("1")


def _product_size(options) -> int:
    n = 1
    for o in options:
        n *= len(o)
    return n


class _Evaluator:
    """Compiles a formula into closures over an environment of bitsets."""

    def __init__(self, structure: _Structure, rung_of_depth, reduce: bool = True):
        self.s = structure
        self.rung_of_depth = rung_of_depth
        self.reduce = reduce
        self.memo: dict = {}
        self.calls = 0

    def holds(self, f: Formula, env: dict) -> bool:
        return self.compile(f, 0)(dict(env))

    # compilation ------------------------------------------------------------

    def term(self, t):
        if isinstance(t, Var):
            name = t.name
            return lambda env: env[name]
        if isinstance(t, Empty):
            return lambda env: 0
        if isinstance(t, Universe):
            if self.s.top is None:
                raise OracleError("the top constant has no meaning here")
            top = self.s.top
            return lambda env: top
        left, right = self.term(t.left), self.term(t.right)
        if isinstance(t, Union_):
            return lambda env: left(env) | right(env)
        if isinstance(t, Inter):
            return lambda env: left(env) & right(env)
        if isinstance(t, Diff):
            return lambda env: left(env) & ~right(env)
        raise TypeError(f"not a term: {t!r}")

    def compile(self, f: Formula, depth: int):
        if isinstance(f, Subseteq):
            left, right = self.term(f.left), self.term(f.right)
            return lambda env: left(env) & ~right(env) == 0
        if isinstance(f, Equal):
            left, right = self.term(f.left), self.term(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, CardEq):
            t, n, inf_mask = self.term(f.term), f.n, self.s.inf_mask

            def card(env):
                bits = t(env)
                return not bits & inf_mask and bits.bit_count() == n
            return card
        if isinstance(f, Not):
            body = self.compile(f.body, depth)
            return lambda env: not body(env)
        if isinstance(f, (And, Or, Implies, Iff)):
            left, right = self.compile(f.left, depth), self.compile(f.right, depth)
            if isinstance(f, And):
                return lambda env: left(env) and right(env)
            if isinstance(f, Or):
                return lambda env: left(env) or right(env)
            if isinstance(f, Implies):
                return lambda env: (not left(env)) or right(env)
            return lambda env: left(env) == right(env)
        if isinstance(f, (Exists, Forall)):
            return self._compile_quantifier(f, depth + 1)
        raise TypeError(f"not a formula: {f!r}")

    def vterm(self, t):
        if isinstance(t, Var):
            name = t.name
            return lambda env: env[name]
        if isinstance(t, Empty):
            return lambda env: np.uint64(0)
        if isinstance(t, Universe):
            top = np.uint64(self.s.top)
            return lambda env: top
        left, right = self.vterm(t.left), self.vterm(t.right)
        if isinstance(t, Union_):
            return lambda env: left(env) | right(env)
        if isinstance(t, Inter):
            return lambda env: left(env) & right(env)
        return lambda env: left(env) & ~right(env)

    def vcompile(self, f: Formula):
        """Elementwise version of :meth:`compile` for quantifier-free formulas."""
        if isinstance(f, Subseteq):
            left, right = self.vterm(f.left), self.vterm(f.right)
            return lambda env: (left(env) & ~right(env)) == 0
        if isinstance(f, Equal):
            left, right = self.vterm(f.left), self.vterm(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, CardEq):
            t, n, inf_mask = self.vterm(f.term), f.n, np.uint64(self.s.inf_mask)

            def card(env):
                bits = t(env)
                return ((bits & inf_mask) == 0) & (np.bitwise_count(bits) == n)
            return card
        if isinstance(f, Not):
            body = self.vcompile(f.body)
            return lambda env: ~body(env)
        left, right = self.vcompile(f.left), self.vcompile(f.right)
        if isinstance(f, And):
            return lambda env: left(env) & right(env)
        if isinstance(f, Or):
            return lambda env: left(env) | right(env)
        if isinstance(f, Implies):
            return lambda env: ~left(env) | right(env)
        if isinstance(f, Iff):
            return lambda env: left(env) == right(env)
        raise TypeError(f"not a quantifier-free formula: {f!r}")

    # quantifiers ----------------------------------------------------------

    def _compile_quantifier(self, f, depth: int):
        names = tuple(free_variables(f))
        innermost = quantifier_rank(f.body) == 0
        c = max_constant(f.body)
        body = self.compile(f.body, depth)
        vbody = self.vcompile(f.body) if innermost and self.reduce and self.s.width <= 64 else None
        r = self.rung_of_depth(depth)
        want = isinstance(f, Exists)
        var = f.var
        node = object()  # memo namespace of this occurrence

        def run(env):
            self.calls += 1
            if not self.reduce:
                return self._scan(self._all_subsets(self.s.levels[r]), env, var, body, want)
            rep_fin, rep_inf, universe = self.s.reps[r]
            cells = [(0, universe)]
            for i, v in enumerate(names):
                p = env[v]
                split = []
                for cell, bits in cells:
                    if bits & p:
                        split.append((cell | 1 << i, bits & p))
                    if bits & ~p:
                        split.append((cell, bits & ~p))
                cells = split
            cells.sort()
            if innermost:
                cap = 2 * c + 3
                sig = tuple((cell, min((b & rep_fin).bit_count(), cap), min((b & rep_inf).bit_count(), 2))
                            for cell, b in cells)
            else:
                sig = tuple((cell, (b & rep_fin).bit_count(), (b & rep_inf).bit_count()) for cell, b in cells)
            key = (node, sig)
            hit = self.memo.get(key)
            if hit is not None:
                return hit
            named = self.s.by_rep[r]
            options = []
            for _, bits in cells:
                fin = [blk for blk, rep, inf in named if not inf and rep & bits]
                inf = [blk for blk, rep, inf in named if inf and rep & bits]
                options.append(self._cell_options(fin, inf, innermost, c))
            if vbody is not None and _product_size(options) > 64:
                result = self._scan_vectorized(options, env, var, vbody, want)
            else:
                result = self._scan((self._join(ch) for ch in itertools.product(*options)), env, var, body, want)
            self.memo[key] = result
            return result
        return run

    @staticmethod
    def _scan(candidates, env, var, body, want) -> bool:
        inner = dict(env)
        for x in candidates:
            inner[var] = x
            if body(inner) == want:
                return want
        return not want

    @staticmethod
    def _scan_vectorized(options, env, var, vbody, want) -> bool:
        xs = np.zeros(1, dtype=np.uint64)
        for opts in options:
            xs = (xs[:, None] | np.array(opts, dtype=np.uint64)[None, :]).ravel()
        scope = {k: np.uint64(v) for k, v in env.items()}
        for start in range(0, len(xs), _CHUNK):
            scope[var] = xs[start:start + _CHUNK]
            truth = vbody(scope)
            if want and truth.any():
                return True
            if not want and not truth.all():
                return False
        return not want

    @staticmethod
    def _join(parts) -> int:
        x = 0
        for p in parts:
            x |= p
        return x

    @staticmethod
    def _prefixes(items: list) -> list:
        out = [0]
        for b in items:
            out.append(out[-1] | b)
        return out

    def _cell_options(self, fin, inf, innermost: bool, c: int) -> list:
        pf, pi = self._prefixes(fin), self._prefixes(inf)
        if innermost:
            # the body sees sizes only: finite sizes matter up to c + 1,
            # infinite parts only through being empty or not
            a_values = sorted({a for a in range(len(fin) + 1) if a <= c + 1 or len(fin) - a <= c + 1}
                              | ({c + 2} if len(fin) > 2 * c + 3 else set()))
            b_values = sorted({0, len(inf)} | ({1} if len(inf) >= 2 else set()))
        else:
            a_values = range(len(fin) + 1)
            b_values = range(len(inf) + 1)
        return [pf[a] | pi[b] for a in a_values for b in b_values]

    @staticmethod
    def _all_subsets(blocks):
        if len(blocks) > 20:
            raise OracleError("exhaustive search over more than 2^20 candidates")
        for mask in range(1 << len(blocks)):
            x = 0
            for i, (bits, _) in enumerate(blocks):
                if mask >> i & 1:
                    x |= bits
            yield x


# --------------------------------------------------------------------------
# class mode


def _finite_structure(n: int) -> _Structure:
    atoms = [(1 << i, False) for i in range(n)]
    return _Structure([atoms], 0, (1 << n) - 1)


def _as_bitset(v) -> int:
    if isinstance(v, int):
        return v
    return sum(1 << i for i in v)


def brute_eval_finite(n: int, f: Formula, assignment: dict | None = None, reduce: bool = True) -> bool:
    """Truth of ``f`` in the powerset algebra of ``{0..n-1}``.

    ``assignment`` maps free variables to bitsets (or iterables of atoms).
    With ``reduce=False`` every quantifier scans all ``2**n`` subsets.
    """
    if n > MAX_EXHAUSTIVE_N or (not reduce and n > 12):
        raise OracleError(f"N = {n} is too large for exhaustive search")
    assignment = {k: _as_bitset(v) for k, v in (assignment or {}).items()}
    top = (1 << n) - 1
    for name, bits in assignment.items():
        if bits & ~top:
            raise OracleError(f"{name} mentions atoms beyond {n - 1}")
    missing = [v for v in free_variables(f) if v not in assignment]
    if missing:
        raise OracleError(f"no value for free variable {missing[0]!r}")
    ev = _Evaluator(_finite_structure(n), lambda depth: 0, reduce)
    return ev.holds(f, assignment)


def stabilized_decide_class(f: Formula, window: Sequence[int] = DEFAULT_WINDOW):
    """Common truth value over the window of algebra sizes, else :class:`Unstable`."""
    window = list(window)
    if not window or window != sorted(set(window)):
        raise OracleError("window must be a nonempty increasing list")
    if free_variables(f):
        raise OracleError("expected a sentence")
    values = tuple((n, brute_eval_finite(n, f)) for n in window)
    verdicts = {v for _, v in values}
    return verdicts.pop() if len(verdicts) == 1 else Unstable(values)


# --------------------------------------------------------------------------
# set mode


def check_rungs(rungs: Sequence) -> list:
    """Validate a rung schedule; each rung must refine the previous one uniformly."""
    rungs = [tuple(int(v) for v in r) for r in rungs]
    if len(rungs) < 3:
        raise OracleError("a rung schedule needs at least 3 rungs")
    for c, p, t in rungs:
        if c < 1 or p < 1 or t < 0:
            raise OracleError(f"bad rung {(c, p, t)}")
    for (c0, p0, t0), (c1, p1, t1) in zip(rungs, rungs[1:]):
        if c1 < c0 or t1 < t0 or p1 % p0 or (t1 - t0) % p0:
            raise OracleError(f"rung {(c1, p1, t1)} does not refine {(c0, p0, t0)} uniformly")
    c, p, t = rungs[-1]
    if (c * t + 1) * (c * p + 1) > DESCRIPTOR_CAP:
        raise OracleError("rung search space above the hard cap")
    return rungs


class RungStructure(_Structure):
    """Piece universe of the finest rung, with the block tower of all rungs."""

    def __init__(self, rungs: Sequence):
        self.rungs = check_rungs(rungs)
        cols, period, thresh = self.rungs[-1]
        self.index = {}
        inf_mask = 0
        for c in range(cols):
            for n in range(thresh):
                self.index[(c, "n", n)] = len(self.index)
            for rho in range(period):
                bit = len(self.index)
                self.index[(c, "r", rho)] = bit
                inf_mask |= 1 << bit
        levels = [self._level(*r) for r in self.rungs]
        super().__init__(levels, inf_mask, None)

    def _level(self, cols, period, thresh) -> list:
        top_c, top_p, top_t = self.rungs[-1]
        blocks = []
        for c in range(cols):
            for n in range(thresh):
                blocks.append((1 << self.index[(c, "n", n)], False))
            for rho in range(period):
                bits = 0
                for n in range(thresh, top_t):
                    if n % period == rho:
                        bits |= 1 << self.index[(c, "n", n)]
                for r2 in range(top_p):
                    if r2 % period == rho:
                        bits |= 1 << self.index[(c, "r", r2)]
                blocks.append((bits, True))
        return blocks

    def encode(self, cols: dict) -> int:
        """Bitset of an element given as ``{column: EPSet}``."""
        top_c, top_p, top_t = self.rungs[-1]
        bits = 0
        for c, s in cols.items():
            if c >= top_c or s.t > top_t or top_p % s.p:
                raise OracleError(f"slice {s!r} of column {c} lies outside the finest rung")
            for n in range(top_t):
                if n in s:
                    bits |= 1 << self.index[(c, "n", n)]
            for rho in range(top_p):
                if top_t + (rho - top_t) % top_p in s:
                    bits |= 1 << self.index[(c, "r", rho)]
        return bits

    def rung_of(self, bits: int) -> int:
        """Coarsest rung whose blocks cut ``bits`` cleanly."""
        for r, blocks in enumerate(self.levels):
            if all(b & bits in (0, b) for b, _ in blocks) and bits & ~self._level_union(r) == 0:
                return r
        raise OracleError("element is not expressible at any rung")

    def _level_union(self, r: int) -> int:
        out = 0
        for b, _ in self.levels[r]:
            out |= b
        return out


def _set_offsets(rank: int, k: int) -> tuple:
    last = max(1, k - rank)
    return last - 1, last


def bounded_eval_set(f: Formula, assignment: dict | None = None, rungs: Sequence = DEFAULT_RUNGS,
                     detail: bool = False):
    """Stabilized bounded-witness truth of ``f`` in the column model.

    A quantifier at nesting depth ``d`` ranges over the elements of rung
    ``offset + d - 1`` (clamped to the finest), so every inner quantifier
    sees strictly more elements than its context whenever the schedule is
    long enough.  The verdict is taken at the two largest offsets that fit
    the quantifier rank; disagreement gives :class:`Unstable`.

    ``assignment`` maps free variables to ``{column: EPSet}`` dicts (or
    objects with a ``cols`` attribute, such as column-model elements).
    """
    structure = RungStructure(rungs)
    k = len(structure.rungs)
    env = {}
    for name, value in (assignment or {}).items():
        cols = dict(value.cols) if hasattr(value, "cols") else dict(value)
        env[name] = structure.encode(cols)
    missing = [v for v in free_variables(f) if v not in env]
    if missing:
        raise OracleError(f"no value for free variable {missing[0]!r}")
    base = max((structure.rung_of(b) for b in env.values()), default=0)
    values = []
    for offset in _set_offsets(quantifier_rank(f), k):
        start = max(offset, base)
        ev = _Evaluator(structure, lambda d, s=start: min(s + d - 1, k - 1))
        values.append((offset, ev.holds(f, env)))
    verdicts = {v for _, v in values}
    result = verdicts.pop() if len(verdicts) == 1 else Unstable(tuple(values))
    return (result, tuple(values)) if detail else result


def eval_at_rung(f: Formula, rungs: Sequence = DEFAULT_RUNGS, offset: int = 0, reduce: bool = True) -> bool:
    """One bounded evaluation of a sentence, for transcripts and cross-checks."""
    structure = RungStructure(rungs)
    k = len(structure.rungs)
    ev = _Evaluator(structure, lambda d: min(offset + d - 1, k - 1), reduce)
    return ev.holds(f, {})


def is_unstable(v) -> bool:
    return isinstance(v, Unstable)


def oracle_decide(f: Formula, mode: TheoryMode, window=DEFAULT_WINDOW, rungs=DEFAULT_RUNGS):
    if mode is TheoryMode.CLASS:
        return stabilized_decide_class(f, window)
    return bounded_eval_set(f, None, rungs)


__all__ = [
    "DEFAULT_RUNGS", "DEFAULT_WINDOW", "OracleError", "RungStructure", "Unstable", "bounded_eval_set",
    "brute_eval_finite", "check_rungs", "eval_at_rung", "is_unstable", "oracle_decide",
    "stabilized_decide_class",
]
