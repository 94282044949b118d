import bisect
import random

import pytest
from hypothesis import given, strategies as st

from mongeq.ordered import PredecessorSet, RangeMaxIndex, SmallSetPredecessor


@pytest.mark.parametrize("engine", ["bisect", "yfast"])
def test_textbook(engine):
    ps = PredecessorSet([2, 5, 9], universe=16, engine=engine)
    assert ps.pred(7) == 5
    assert ps.pred(1) is None
    assert ps.succ(6) == 9 and ps.succ(10) is None


def test_engines_agree_large():
    rng = random.Random(0)
    universe = 1 << 30
    keys = sorted(rng.sample(range(universe), 10 ** 4))
    a = PredecessorSet(keys, universe=universe, engine="bisect")
    b = PredecessorSet(keys, universe=universe, engine="yfast")
    for _ in range(10 ** 5):
        x = rng.randrange(universe)
        assert a.pred_index(x) == b.pred_index(x)
    for x in keys[:500]:
        assert b.pred(x) == x and b.pred(x - 1) != x


def test_rejects_unsorted():
    with pytest.raises(ValueError):
        PredecessorSet([3, 1])


@given(st.sets(st.integers(0, 500), max_size=60), st.lists(st.integers(-3, 520), max_size=40))
def test_small_set_rank(keys, queries):
    keys = sorted(keys)
    s = SmallSetPredecessor(keys, 501)
    for x in queries:
        assert s.rank(x) == bisect.bisect_right(keys, x)


def test_rmq_examples():
    r = RangeMaxIndex([3, 1, 4, 1, 5])
    assert r.query(2, 4) == (3, 4)
    for i in range(1, 6):
        assert r.query(i, i) == (i, r.values[i - 1])


def test_rmq_leftmost_ties():
    assert RangeMaxIndex([2, 7, 7, 1]).query(1, 4) == (2, 7)


def test_rmq_random_all_ranges():
    rng = random.Random(1)
    for k in (1, 7, 64, 1000):
        vals = [rng.randint(0, 50) for _ in range(k)]
        r = RangeMaxIndex(vals)
        step = 1 if k <= 64 else 13
        for lo in range(1, k + 1, step):
            best = lo
            for hi in range(lo, k + 1):
                if vals[hi - 1] > vals[best - 1]:
                    best = hi
                assert r.query(lo, hi) == (best, vals[best - 1])
