import bisect
import random

import pytest

from mongeq.duality import (MongePredecessor, ReductionMatrix, UniverseReduction, predecessor_via_monge,
                            reduction_build, reduction_entry, universe_reduce)
from mongeq.matrix import verify_monge

WORKED_SET = [3, 18, 21, 22, 42, 46, 57, 60]
WORKED_MATRIX = [
    [-48, -33, -18, -3, 12, 27, 42, 57],
    [-45, -32, -19, -6, 8, 22, 36, 50],
    [-41, -28, -15, -2, 11, 24, 37, 50],
    [-34, -23, -12, -1, 10, 21, 32, 43],
    [-32, -23, -14, -4, 6, 17, 28, 39],
    [-29, -20, -11, -2, 7, 16, 27, 38],
    [-28, -19, -10, -1, 8, 17, 26, 36],
    [-27, -18, -9, 0, 9, 18, 27, 36],
    [-20, -13, -6, 1, 8, 15, 22, 29],
    [-13, -8, -3, 2, 7, 12, 17, 22],
    [-11, -8, -5, -1, 3, 7, 12, 17],
    [-7, -4, -1, 2, 5, 8, 11, 15],
    [-6, -3, 0, 3, 6, 9, 12, 15],
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, 1, 1, 1, 2, 3, 4, 5],
    [5, 4, 3, 2, 1, 1, 1, 1],
    [8, 7, 6, 5, 4, 3, 2, 1],
]


def sorted_pred(keys, x):
    k = bisect.bisect_right(keys, x)
    return keys[k - 1] if k else None


def test_worked_matrix():
    rm = reduction_build(WORKED_SET, 8)
    assert rm.materialize() == WORKED_MATRIX
    assert verify_monge(rm, "min")[0]


def test_worked_entries():
    rm = reduction_build(WORKED_SET, 8)
    assert reduction_entry(rm, 1, 1) == -48
    assert (rm.entry(15, 1), rm.entry(15, 2)) == (2, 1)


def test_worked_queries():
    rm = reduction_build(WORKED_SET, 8)
    assert predecessor_via_monge(rm, 20) == 18
    assert predecessor_via_monge(rm, 3) == 3
    assert predecessor_via_monge(rm, 0) is None


@pytest.mark.parametrize("elements,n", [([0, 4], 1), ([1, 1], 4), ([16], 4), ([-1], 4), (list(range(5)), 4)])
def test_build_errors(elements, n):
    with pytest.raises(ValueError):
        ReductionMatrix(elements, n)


def test_query_outside_universe():
    with pytest.raises(ValueError):
        predecessor_via_monge(reduction_build([1], 2), 4)


def test_empty_set():
    mp = MongePredecessor([], 3)
    assert all(mp.pred(x) is None for x in range(9))


@pytest.mark.parametrize("kind", ["basic", "two-level"])
def test_all_x(kind):
    rng = random.Random(kind)
    for n in (2, 3, 5, 8, 13):
        for _ in range(10):
            keys = sorted(rng.sample(range(n * n), rng.randint(0, n)))
            mp = MongePredecessor(keys, n, kind)
            assert verify_monge(mp.matrix, "min")[0]
            assert mp.matrix.rows == n + 1 + len(keys)
            for x in range(n * n):
                assert mp.pred(x) == sorted_pred(keys, x)


def test_words_linear():
    rng = random.Random(1)
    keys = sorted(rng.sample(range(64 * 64), 64))
    assert reduction_build(keys, 64).words() <= 8 * 64


def test_universe_examples():
    ur = universe_reduce([6, 13], 4, n=2)
    assert ur.pred(7) == 6
    assert ur.pred(5) is None and ur.pred(15) == 13


@pytest.mark.parametrize("c", [3, 4])
@pytest.mark.parametrize("engine", ["direct", "monge"])
def test_universe_random(c, engine):
    rng = random.Random(c * 10 + len(engine))
    n = 16
    for _ in range(5):
        keys = sorted(rng.sample(range(n ** c), n))
        ur = UniverseReduction(keys, n, c, engine)
        probes = [rng.randrange(n ** c) for _ in range(1000)] + keys + [k - 1 for k in keys if k]
        for x in probes:
            assert ur.pred(x) == sorted_pred(keys, x)


def test_universe_duplicate_digits():
    # shared high digits and shared low digits
    n = 4
    keys = [1 * 16 + 3, 1 * 16 + 5, 2 * 16 + 3, 5 * 16 + 5]
    ur = UniverseReduction(keys, n, 4)
    for x in range(n ** 4):
        assert ur.pred(x) == sorted_pred(keys, x)


def test_universe_errors():
    with pytest.raises(ValueError):
        UniverseReduction([1], 2, 5)
    with pytest.raises(ValueError):
        UniverseReduction([16], 2, 4)
