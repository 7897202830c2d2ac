"""End-to-end acceptance criteria; each prints one PASS/FAIL line."""

import time

import pytest

from mereology.corpus import generate_corpus
from mereology.formula import Not, TheoryMode
from mereology.models import Unrealizable, get_model
from mereology.oracle import Unstable, bounded_eval_set, stabilized_decide_class
from mereology.qe import decide
from mereology.saturation import (
    NoInfiniteElements, Obstruction, PartialIso, UnsplittableInfinite, back_and_forth, characteristic,
    check_criterion, verify_evidence, verify_partial_iso,
)
from mereology.sizesets import INF

SET, CLASS = TheoryMode.SET, TheoryMode.CLASS
SEED = 0


@pytest.fixture
def report(capsys, request):
    def emit(ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nACCEPTANCE {request.node.name}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail
    return emit


def _agreement(mode, size, oracle):
    corpus = generate_corpus(mode, size, seed=SEED)
    start = time.perf_counter()
    agree = disagree = unstable = 0
    for f in corpus:
        o = oracle(f)
        if isinstance(o, Unstable):
            unstable += 1
        elif o == decide(f, mode):
            agree += 1
        else:
            disagree += 1
    return agree, disagree, unstable, time.perf_counter() - start


def test_criterion_1_class_soundness(report):
    agree, disagree, unstable, secs = _agreement(CLASS, 500, stabilized_decide_class)
    ok = disagree == 0 and unstable / 500 < 0.02 and secs < 60
    report(ok, f"agree={agree} disagree={disagree} unstable={unstable} time={secs:.1f}s")


def test_criterion_2_set_soundness(report):
    agree, disagree, unstable, secs = _agreement(SET, 300, bounded_eval_set)
    ok = disagree == 0 and secs < 120
    report(ok, f"agree={agree} disagree={disagree} unstable={unstable} time={secs:.1f}s")


def test_criterion_3_completeness(report):
    violations = total = 0
    for mode, size in ((CLASS, 500), (SET, 300)):
        for f in generate_corpus(mode, size, seed=SEED):
            total += 1
            violations += decide(f, mode) == decide(Not(f), mode)
    report(violations == 0, f"{total} sentences, {violations} violations")


def test_criterion_4_figure_replay(report):
    cols = get_model("columns")
    a = cols.realize_type([], {0: (INF,)})
    b = cols.realize_type([a], {1: (8, INF), 0: (INF,)})
    c = cols.realize_type([a, b], {1: (0, INF), 3: (5, 3), 2: (INF, 2), 0: (17,)})
    sizes = cols.cell_sizes([a, b, c])
    by_mask = tuple(sizes[m] for m in (7, 2, 1, 4, 3, 6, 5))
    ok_set = by_mask == (5, 2, INF, 17, 3, INF, 0) and sizes.exterior is INF
    ba = get_model("ba-sat")
    a = ba.realize_type([], {0: (INF, INF)})
    b = ba.realize_type([a], {1: (8, INF), 0: (INF, 74)})
    c = ba.realize_type([a, b], {1: (0, INF), 3: (5, 3), 2: (INF, 2), 0: (17, 57)})
    class_sizes = ba.cell_sizes([a, b, c])
    ok_class = class_sizes.exterior == 57 and tuple(class_sizes[m] for m in (7, 2, 1, 4, 3, 6, 5)) == by_mask
    shown = ", ".join("inf" if v is INF else str(v) for v in by_mask)
    report(ok_set and ok_class, f"cells ({shown}), exterior inf; class exterior {class_sizes.exterior}")


def test_criterion_5_all_isomorphic(report):
    left, right = get_model("columns"), get_model("columns-perm")
    start = time.perf_counter()
    iso = back_and_forth(left, right, 200)
    problems = verify_partial_iso(left, right, iso) if isinstance(iso, PartialIso) else ["obstructed"]
    secs = time.perf_counter() - start
    ok = isinstance(iso, PartialIso) and len(iso) == 200 and not problems and secs < 30
    report(ok, f"{len(iso.pairs) if isinstance(iso, PartialIso) else 0} pairs, "
               f"{len(problems)} verifier problems, time={secs:.1f}s")


def test_criterion_6_observations(report):
    prime, amorph = get_model("prime"), get_model("amorphous")
    r_prime = check_criterion(prime)
    ok_prime = not r_prime.saturated and isinstance(r_prime.evidence, NoInfiniteElements)
    r_amorph = check_criterion(amorph)
    ev = r_amorph.evidence
    ok_amorph = (not r_amorph.saturated and isinstance(ev, UnsplittableInfinite)
                 and ev.element == amorph.u
                 and [k for k, _, v in ev.fragments if v] == list(range(1, 17))
                 and isinstance(ev.failure, Unrealizable) and verify_evidence(amorph, r_amorph))
    obstruction = back_and_forth(get_model("columns"), amorph, 100)
    ok_iso = isinstance(obstruction, Obstruction)
    report(ok_prime and ok_amorph and ok_iso,
           f"prime {r_prime.verdict}, amorphous {r_amorph.verdict} with 16 fragments true, "
           f"columns vs amorphous {'obstructed' if ok_iso else 'NOT obstructed'}")


def test_criterion_7_characteristic(report):
    values = [characteristic(get_model(f"char{n}")) for n in range(1, 6)]
    same2 = back_and_forth(get_model("char2"), get_model("char2"), 100)
    perm2 = back_and_forth(get_model("char2"), get_model("char2-perm"), 100)
    diff = back_and_forth(get_model("char2"), get_model("char3"), 100)
    invariant = characteristic(get_model("char2")) == characteristic(get_model("char2-perm"))
    ok = (values == [1, 2, 3, 4, 5] and isinstance(same2, PartialIso) and isinstance(perm2, PartialIso)
          and not verify_partial_iso(get_model("char2"), get_model("char2-perm"), perm2)
          and isinstance(diff, Obstruction) and invariant)
    report(ok, f"characteristics {values}, char2~char2 {type(same2).__name__}, "
               f"char2~char2-perm {type(perm2).__name__}, char2~char3 {type(diff).__name__}")


def test_criterion_8_elementary_equivalence(report):
    prime, cols = get_model("prime"), get_model("columns")
    disagreements = 0
    for f in generate_corpus(SET, 200, seed=SEED + 1):
        if not (prime.eval(f) == cols.eval(f) == decide(f, SET)):
            disagreements += 1
    report(disagreements == 0, f"200 sentences, {disagreements} disagreements")


def test_criterion_9_unit_suites(report):
    # the property tests run at 1000 examples each
    from test_epset import test_boolean_ops_pointwise
    from test_formula import test_round_trip_class
    from test_sizesets import test_boolean_ops_match_membership, test_sum_matches_membership

    failed = []
    for prop in (test_boolean_ops_match_membership, test_sum_matches_membership, test_round_trip_class,
                 test_boolean_ops_pointwise):
        try:
            prop()
        except Exception as exc:  # report every failing suite, not just the first
            failed.append(f"{prop.__name__}: {type(exc).__name__}")
    report(not failed, "all green" if not failed else "; ".join(failed))
