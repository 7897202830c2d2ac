"""Quantifier elimination to cell normal form, and the decision procedure.

Every formula is turned into a disjunction of :class:`CellProfile` over its
free variables.  An existential is eliminated one variable at a time: the
bound variable cuts every parameter cell into an inside and an outside part,
and the witness exists exactly when each cell's size can be written as a
sum of an allowed inside size and an allowed outside size.
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

from .cells import (
    CellProfile, atomic_to_profiles, negate_profile, negated_atomic_to_profiles, profile_and, prune,
    term_cells,
)
from .formula import (
    ATOMIC, And, CardEq, Exists, Forall, Formula, Iff, Implies, Not, Or, TheoryMode, free_variables,
    quantifier_rank, rename_bound,
)
from .sizesets import INF, ss_sumset

log = logging.getLogger(__name__)

DISJUNCT_CAP = 1_000_000


class ResourceLimitError(RuntimeError):
    """The disjunctive normal form grew past :data:`DISJUNCT_CAP`."""


class _Ctx:
    def __init__(self, mode: TheoryMode, infinite_top: bool):
        self.mode = mode
        self.infinite_top = infinite_top

    def prune(self, profiles):
        out = prune(profiles, self.infinite_top)
        if len(out) > DISJUNCT_CAP:
            raise ResourceLimitError(f"normal form exceeds {DISJUNCT_CAP} disjuncts")
        return out

    def conjoin(self, left: list, right: list) -> list:
        if len(left) * len(right) > DISJUNCT_CAP:
            raise ResourceLimitError(f"normal form exceeds {DISJUNCT_CAP} disjuncts")
        return self.prune(profile_and(p, q) for p in left for q in right)

    def negate(self, dnf: list, params) -> list:
        result = [CellProfile.true(params, self.mode)]
        for p in sorted(dnf, key=lambda p: len(p.constrained_cells())):
            result = self.conjoin(result, negate_profile(p))
            if not result:
                break
        return result


def _check_expansion(f: CardEq, params: tuple, positive: bool, mode: TheoryMode) -> None:
    # |t| = k over c cells has C(k+c-1, c-1) profiles; its negation at most C(k+c+1, c)
    c = len(term_cells(f.term, params, mode))
    if c == 0:
        return
    k = f.n
    count = math.comb(k + c - 1, c - 1) if positive else math.comb(k + c + 1, c)
    if count > DISJUNCT_CAP:
        raise ResourceLimitError(f"|t| = {k} expands to more than {DISJUNCT_CAP} disjuncts")


def _dnf(f: Formula, params: tuple, positive: bool, ctx: _Ctx) -> list:
    if isinstance(f, ATOMIC):
        if isinstance(f, CardEq):
            _check_expansion(f, params, positive, ctx.mode)
        build = atomic_to_profiles if positive else negated_atomic_to_profiles
        return ctx.prune(build(f, params, ctx.mode))
    if isinstance(f, Not):
        return _dnf(f.body, params, not positive, ctx)
    if isinstance(f, (And, Or)):
        conjunctive = isinstance(f, And) == positive
        left = _dnf(f.left, params, positive, ctx)
        if conjunctive and not left:
            return []
        right = _dnf(f.right, params, positive, ctx)
        if conjunctive:
            return ctx.conjoin(left, right)
        return ctx.prune(left + right)
    if isinstance(f, Implies):
        return _dnf(Or(Not(f.left), f.right), params, positive, ctx)
    if isinstance(f, Iff):
        a, b = f.left, f.right
        if positive:
            g = Or(And(a, b), And(Not(a), Not(b)))
        else:
            g = Or(And(a, Not(b)), And(Not(a), b))
        return _dnf(g, params, True, ctx)
    if isinstance(f, (Exists, Forall)):
        inner = params + (f.var,)
        # A x.phi is handled as ~E x.~phi
        body_positive = isinstance(f, Exists)
        eliminated = _eliminate(_dnf(f.body, inner, body_positive, ctx), params, ctx)
        wants_exists = (isinstance(f, Exists) and positive) or (isinstance(f, Forall) and not positive)
        if wants_exists:
            return eliminated
        return ctx.negate(eliminated, params)
    raise TypeError(f"not a formula: {f!r}")


def _eliminate(dnf: list, params: tuple, ctx: _Ctx) -> list:
    n = len(params)
    bit = 1 << n
    out = []
    for p in dnf:
        cells = []
        for sigma in range(1 << n):
            s_in, s_out = p.cells[sigma | bit], p.cells[sigma]
            if sigma == 0 and ctx.mode is TheoryMode.SET:
                # the exterior is infinite whatever x takes from it
                s = p.cells[0] if not s_in.is_empty else s_in
            else:
                s = ss_sumset(s_in, s_out)
            if s.is_empty:
                break
            cells.append(s)
        else:
            out.append(CellProfile(params, ctx.mode, tuple(cells)))
    return ctx.prune(out)


def eliminate_exists(x: str, dnf: Sequence[CellProfile], infinite_top: bool = True) -> list:
    """Eliminate ``E x`` from a disjunction of profiles whose last parameter is ``x``."""
    dnf = list(dnf)
    if not dnf:
        return []
    params = dnf[0].params
    if params[-1] != x:
        raise ValueError(f"{x!r} must be the last parameter, got {params}")
    return _eliminate(dnf, params[:-1], _Ctx(dnf[0].mode, infinite_top))


def to_profiles(f: Formula, params: Sequence[str], mode: TheoryMode = TheoryMode.CLASS,
                infinite_top: bool = True) -> list:
    """Disjunctive cell normal form of a quantifier-free formula."""
    if quantifier_rank(f) != 0:
        raise ValueError("to_profiles expects a quantifier-free formula")
    missing = [v for v in free_variables(f) if v not in params]
    if missing:
        raise ValueError(f"free variable {missing[0]!r} is not a parameter")
    return _dnf(f, tuple(params), True, _Ctx(mode, infinite_top))


def qe_normal_form(f: Formula, mode: TheoryMode = TheoryMode.CLASS, params=None,
                   infinite_top: bool = True) -> list:
    """Quantifier-free equivalent of ``f`` as a disjunction of profiles.

    The profiles range over ``params`` (default: the free variables of ``f``
    in first-occurrence order).  ``infinite_top=False`` evaluates class-mode
    formulas over finite Boolean algebras, where the top may be finite.
    """
    if isinstance(mode, str):
        mode = TheoryMode.parse(mode)
    free = free_variables(f)
    params = tuple(free if params is None else params)
    missing = [v for v in free if v not in params]
    if missing:
        raise ValueError(f"free variable {missing[0]!r} is not a parameter")
    g = rename_bound(f, avoid=params)
    out = _dnf(g, params, True, _Ctx(mode, infinite_top))
    if len(out) > 10_000:
        log.warning("normal form has %d disjuncts", len(out))
    return out


def decide(f: Formula, mode: TheoryMode = TheoryMode.CLASS) -> bool:
    """Truth value of a sentence in the (complete) theory of ``mode``."""
    if isinstance(mode, str):
        mode = TheoryMode.parse(mode)
    free = free_variables(f)
    if free:
        raise ValueError(f"decide expects a sentence; free variables: {', '.join(free)}")
    return any(p.satisfiable() for p in qe_normal_form(f, mode))


def universal_closure(f: Formula) -> Formula:
    for v in reversed(free_variables(f)):
        f = Forall(v, f)
    return f


def equivalent(f: Formula, g: Formula, mode: TheoryMode = TheoryMode.CLASS) -> bool:
    return decide(universal_closure(Iff(f, g)), mode)


def type_satisfiable(p: CellProfile, mode: TheoryMode = None) -> bool:
    if mode is not None and mode is not p.mode:
        raise ValueError("profile built for a different theory mode")
    return p.satisfiable()


def holds(profiles: Sequence[CellProfile], sizes) -> bool:
    """Whether concrete cell sizes satisfy some disjunct."""
    return any(p.satisfied_by(sizes) for p in profiles)


__all__ = [
    "DISJUNCT_CAP", "INF", "ResourceLimitError", "decide", "eliminate_exists", "equivalent",
    "holds", "qe_normal_form", "to_profiles", "type_satisfiable", "universal_closure",
]
