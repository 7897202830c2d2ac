"""Named replays of the main results, each a thin driver over library calls.

Every demo prints a deterministic transcript and returns an exit code:
0 when the replayed claim holds, 1 otherwise.
"""

from __future__ import annotations

from .formula import TheoryMode, parse
from .models import Unrealizable, get_model
from .qe import decide
from .saturation import (
    Obstruction, back_and_forth, characteristic, check_criterion, format_pair_table, verify_evidence,
    verify_partial_iso,
)
from .sizesets import INF

# cell masks over (a, b, c): bit 0 is a, bit 1 is b, bit 2 is c
FIGURE = {7: 5, 2: 2, 1: INF, 4: 17, 3: 3, 6: INF, 5: 0}
CLASS_EXTERIOR = 57


def _verdict(ok: bool) -> int:
    print("result: " + ("ok" if ok else "FAILED"))
    return 0 if ok else 1


def _figure_elements(model_id: str, exterior_b, exterior_c):
    m = get_model(model_id)
    a = m.realize_type([], {0: (INF,) if m.mode is TheoryMode.SET else (INF, INF)})
    b = m.realize_type([a], {1: (8, INF), 0: exterior_b})
    c = m.realize_type([a, b], {1: (0, INF), 3: (5, 3), 2: (INF, 2), 0: exterior_c})
    return m, [a, b, c]


def _show_figure(m, elems, exterior) -> bool:
    sizes = m.cell_sizes(elems, ["a", "b", "c"])
    for name, e in zip("abc", elems):
        print(f"{name} = {e!r}")
    print(sizes.dump())
    return all(sizes[mask] == v for mask, v in FIGURE.items()) and sizes.exterior == exterior


def demo_cell_types() -> int:
    """Three elements of the columns model whose Venn cells have prescribed sizes."""
    m, elems = _figure_elements("columns", (INF,), (17,))
    return _verdict(_show_figure(m, elems, INF))


def demo_class_types() -> int:
    """The same picture with a top element: the exterior is an ordinary cell."""
    m, elems = _figure_elements("ba-sat", (INF, 74), (17, CLASS_EXTERIOR))
    return _verdict(_show_figure(m, elems, CLASS_EXTERIOR))


def _iso(left_id: str, right_id: str, steps: int, shown: int = 6) -> bool:
    left, right = get_model(left_id), get_model(right_id)
    result = back_and_forth(left, right, steps)
    if isinstance(result, Obstruction):
        print(result.describe())
        return False
    rows = format_pair_table(left, right, result).splitlines()
    print(f"{left_id} ~ {right_id}: {len(result)} pairs, first {shown}:")
    for row in rows[:shown]:
        print(row)
    problems = verify_partial_iso(left, right, result)
    for p in problems:
        print(f"VERIFY FAIL {p}")
    print(f"verifier: {len(problems)} problems")
    return not problems


def demo_all_isomorphic() -> int:
    """Back and forth between two presentations of the saturated set model."""
    return _verdict(_iso("columns", "columns-perm", 200))


def demo_class_isomorphic() -> int:
    """Back and forth inside the saturated atomic algebra with infinitely many atoms."""
    return _verdict(_iso("ba-sat", "ba-sat", 100))


def demo_amorphous_fails() -> int:
    """The amorphous surrogate has an infinite element that never splits."""
    m = get_model("amorphous")
    report = check_criterion(m)
    print(report.dump())
    print(f"evidence replay: {'ok' if verify_evidence(m, report) else 'FAILED'}")
    result = back_and_forth(get_model("columns"), m, 40)
    if isinstance(result, Obstruction):
        print(result.describe())
    ok = (not report.saturated and verify_evidence(m, report) and isinstance(result, Obstruction))
    return _verdict(ok)


SAMPLE_SENTENCES = (
    "E x. ~(x = 0)",
    "A x. E y. (x <= y & ~(y = x))",
    "E x. A y. (y <= x)",
    "A x. (|x| = 1 | E y. (y <= x & |y| = 1) | x = 0)",
    "A x. A y. E z. (z = x \\/ y)",
    "E x. ~(|x| = 0 | |x| = 1 | |x| = 2 | |x| = 3)",
    "A x. E y. (y /\\ x = 0 & |y| = 2)",
)


def demo_prime_model() -> int:
    """Finite sets of atoms: no infinite elements, yet the same sentences hold."""
    prime, columns = get_model("prime"), get_model("columns")
    report = check_criterion(prime, trials=3)
    print(report.dump())
    ok = not report.saturated
    for text in SAMPLE_SENTENCES:
        f = parse(text, TheoryMode.SET)
        values = (decide(f, TheoryMode.SET), prime.eval(f), columns.eval(f))
        agree = len(set(values)) == 1
        ok = ok and agree
        shown = " ".join("true" if v else "false" for v in values)
        print(f"{'agree' if agree else 'DIFFER'}  decide/prime/columns = {shown}  {text}")
    return _verdict(ok)


def demo_unbounded() -> int:
    """No largest element without a top; the universal class with one."""
    ok = True
    for mode, text, want in (
        (TheoryMode.SET, "E x. A y. (y <= x)", False),
        (TheoryMode.CLASS, "E x. A y. (y <= x)", True),
        (TheoryMode.CLASS, "A x. (x <= 1)", True),
        (TheoryMode.CLASS, "E x. (|x| = 0 & ~(x = 0))", False),
    ):
        value = decide(parse(text, mode), mode)
        ok = ok and value == want
        print(f"{mode.value}: {text} -> {'true' if value else 'false'}")
    return _verdict(ok)


def demo_characteristic() -> int:
    """Largest family of disjoint infinite elements in each presentation."""
    ok = True
    for model_id, want in (("prime", 0), ("ba8", 0), ("char1", 1), ("char2", 2), ("char3", 3),
                           ("char4", 4), ("char5", 5), ("columns", INF), ("ba-sat", INF)):
        value = characteristic(get_model(model_id))
        ok = ok and value == want
        print(f"{model_id}: {'inf' if value is INF else value}")
    return _verdict(ok)


def demo_char_invariance() -> int:
    """Two presentations of characteristic 2 match; characteristics 2 and 3 do not."""
    ok = _iso("char2", "char2-perm", 100)
    for model_id in ("char2", "char2-perm"):
        print(f"characteristic {model_id}: {characteristic(get_model(model_id))}")
    ok = ok and characteristic(get_model("char2")) == characteristic(get_model("char2-perm"))
    result = back_and_forth(get_model("char2"), get_model("char3"), 60)
    if isinstance(result, Obstruction):
        print(result.describe())
    return _verdict(ok and isinstance(result, Obstruction))


def demo_unrealizable() -> int:
    """A demand the prime model cannot meet: an infinite part of a finite cell."""
    m = get_model("prime")
    a = m.elem([0, 1, 2])
    result = m.realize_type([a], {1: (INF, 0), 0: (0,)})
    if isinstance(result, Unrealizable):
        print(f"UNREALIZABLE cell {result.cell}: {result.reason}")
    return _verdict(isinstance(result, Unrealizable))


DEMOS = {
    "cell-types": demo_cell_types,
    "class-types": demo_class_types,
    "all-isomorphic": demo_all_isomorphic,
    "class-isomorphic": demo_class_isomorphic,
    "amorphous-fails": demo_amorphous_fails,
    "prime-model": demo_prime_model,
    "unbounded": demo_unbounded,
    "characteristic": demo_characteristic,
    "char-invariance": demo_char_invariance,
    "unrealizable": demo_unrealizable,
}
