from hypothesis import given, settings, strategies as st

from mereology.models import coding
from mereology.models.epset import EMPTY_SET, FULL_SET, EPSet
from mereology.sizesets import INF

RANGE = range(201)


def epsets():
    return st.builds(
        EPSet, st.integers(0, 12), st.integers(1, 6),
        st.frozensets(st.integers(0, 5), max_size=4), st.frozensets(st.integers(0, 11), max_size=6))


def members(s):
    return [n for n in RANGE if n in s]


@settings(max_examples=1000)
@given(epsets(), epsets())
def test_boolean_ops_pointwise(a, b):
    assert members(a | b) == [n for n in RANGE if n in a or n in b]
    assert members(a & b) == [n for n in RANGE if n in a and n in b]
    assert members(a - b) == [n for n in RANGE if n in a and n not in b]
    assert members(a.complement()) == [n for n in RANGE if n not in a]


@settings(max_examples=500)
@given(epsets(), epsets())
def test_equality_is_extensional(a, b):
    # canonical form: equal membership (beyond every threshold and period) means equal descriptors
    same = all((n in a) == (n in b) for n in range(max(a.t, b.t) + 2 * a.p * b.p + 1))
    assert (a == b) == same


@settings(max_examples=300)
@given(epsets())
def test_canonical_form(s):
    # minimal period, then minimal threshold
    for d in range(1, s.p):
        if s.p % d == 0:
            assert any((n in s) != (n + d in s) for n in range(s.t, s.t + s.p))
    if s.t > 0:
        assert ((s.t - 1) in s) != (((s.t - 1) % s.p) in s.residues)
    assert EPSet(s.t, s.p, s.residues, s.prefix) == s


@settings(max_examples=300)
@given(epsets())
def test_parity_split(s):
    even, odd = s.parity_split()
    assert (even | odd) == s and even.isdisjoint(odd)
    listed = s.first(40)
    assert even.first(20) == listed[0::2][:20]
    if s.size() is INF:
        assert even.size() is INF and odd.size() is INF


@settings(max_examples=300)
@given(epsets(), st.integers(0, 10))
def test_take_and_drop(s, k):
    assert s.take(k) | s.drop(k) == s
    want = k if s.size() is INF else min(k, s.size())
    assert s.take(k).size() == want


def test_examples():
    evens, threes = EPSet.periodic(2, {0}), EPSet.periodic(3, {0})
    assert evens & threes == EPSet.periodic(6, {0})
    assert EPSet.cofinite({5}) - EPSet.finite({5, 7}) == EPSet.cofinite({5, 7})
    assert FULL_SET.complement() == EMPTY_SET
    assert EPSet.finite({1, 2}).size() == 2 and evens.size() is INF


@settings(max_examples=300)
@given(epsets())
def test_json_round_trip(s):
    assert EPSet.from_json(s.to_json()) == s


def test_codings_are_bijective_on_an_initial_segment():
    for decode, encode in ((coding.epset_decode, coding.epset_encode),
                           (coding.flag_decode, coding.flag_encode),
                           (coding.set_decode, coding.set_encode),
                           (coding.support_decode, coding.support_encode)):
        seen = set()
        for z in range(3000):
            v = decode(z)
            assert encode(v) == z
            key = repr(sorted(v.items())) if isinstance(v, dict) else v
            assert key not in seen
            seen.add(key)
    assert coding.epset_decode(0) == EMPTY_SET


@settings(max_examples=300)
@given(epsets())
def test_epset_encoding_round_trip(s):
    assert coding.epset_decode(coding.epset_encode(s)) == s


@settings(max_examples=200)
@given(st.lists(st.integers(0, 50), min_size=1, max_size=4))
def test_tuple_coding(values):
    z = coding.tuple_encode(values)
    assert coding.tuple_decode(z, len(values)) == tuple(values)
