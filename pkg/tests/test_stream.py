import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multidedup.dedup import BlockScheme, Record
from multidedup.errors import IdCollisionError, ZeroWindowError
from multidedup.multimetric import ABS, capped
from multidedup.multireal import MultiReal
from multidedup.multiset import Multiset
from multidedup.stream import WindowState, stream_init, stream_process

from conftest import datasets

EPS = MultiReal(0, 2)


def window_oracle(records, W, k, f=lambda a, b: abs(a - b)):
    """Each arrival against exactly the W records before it, by brute force."""
    out = []
    for t, new in enumerate(records):
        matches = []
        for old in records[max(0, t - W):t]:
            keys = new.attrs.support | old.attrs.support
            mult = sum(f(new.attrs[x], old.attrs[x]) for x in keys)
            if mult < k:
                matches.append((old.id, mult))
        out.append(matches)
    return out


def test_init():
    state = stream_init(100, EPS, ABS, BlockScheme("card_band", 1))
    assert len(state) == 0 and len(state.index) == 0
    assert len(stream_init(1, EPS)) == 0
    with pytest.raises(ZeroWindowError):
        stream_init(0, EPS)


def test_paper_stream_trace(stream_records):
    state = stream_init(100, EPS)
    T1, T2, T3 = stream_records
    v1, state = stream_process(state, T1)
    assert v1.status == "distinct" and v1.matches == []
    v2, state = stream_process(state, T2)
    assert v2.status == "duplicate" and v2.matches == [("T1", MultiReal(0, 1))]
    v3, state = stream_process(state, T3)
    assert v3.status == "distinct"
    assert len(state) == 3


def test_window_of_one_compares_only_previous(stream_records):
    state = stream_init(1, EPS, ABS, BlockScheme("none"))
    compared = []
    for r in stream_records:
        before = [x.id for x in state.resident]
        state.process(r)
        compared.append(before)
    assert compared == [[], ["T1"], ["T2"]]


def test_id_collision_in_window(stream_records):
    state = stream_init(5, EPS)
    state.process(stream_records[0])
    with pytest.raises(IdCollisionError):
        state.process(stream_records[0])


def test_evicted_id_may_return():
    state = stream_init(1, EPS)
    state.process(Record("a", Multiset({"x": 1})))
    state.process(Record("b", Multiset({"x": 5})))
    assert state.process(Record("a", Multiset({"x": 1}))).status == "distinct"


def test_drop_duplicates_keeps_first_representative(stream_records):
    state = WindowState(10, EPS, drop_duplicates=True)
    for r in stream_records:
        state.process(r)
    assert [r.id for r in state.resident] == ["T1", "T3"]


def test_verdict_json(stream_records):
    state = stream_init(3, EPS)
    state.process(stream_records[0])
    assert state.process(stream_records[1]).to_dict() == {
        "id": "T2",
        "status": "duplicate",
        "matches": [{"id": "T1", "delta_mult": 1}],
    }


@pytest.mark.parametrize("scheme", ["card:1", "card:3", "none"])
@pytest.mark.parametrize("W", [1, 2, 8])
def test_window_equivalence_random(scheme, W):
    rng = random.Random(W)
    records = [
        Record(f"s{i}", Multiset({a: rng.randint(0, 3) for a in "abcd"})) for i in range(120)
    ]
    state = stream_init(W, EPS, ABS, BlockScheme.parse(scheme))
    got = []
    for r in records:
        got.append([(i, d.mult) for i, d in state.process(r).matches])
        assert len(state.resident) <= W and len(state.index) == len(state.resident)
    assert got == window_oracle(records, W, EPS.mult)


@given(datasets(max_size=30), st.integers(1, 6), st.integers(1, 5))
def test_window_equivalence(records, W, k):
    state = stream_init(W, MultiReal(0, k))
    got = [[(i, d.mult) for i, d in state.process(r).matches] for r in records]
    assert got == window_oracle(records, W, k)


@given(datasets(max_size=20), st.integers(1, 4))
def test_window_equivalence_capped(records, W):
    f = capped(2)
    state = stream_init(W, MultiReal(0, 3), f, BlockScheme("card_band", 1))
    got = [[(i, d.mult) for i, d in state.process(r).matches] for r in records]
    assert got == window_oracle(records, W, 3, f)
