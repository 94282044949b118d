import random

from hypothesis import given, strategies as st

from mongeq.dominance import DominanceIndex, dominance_build, dominance_max


def scan(points, x, y):
    best = None
    for px, py, w in points:
        if px >= x and py >= y and (best is None or w > best[1]):
            best = ((px, py), w)
    return best


def test_examples():
    pts = [(1, 1, 5), (2, 3, 7), (3, 2, 4)]
    index = dominance_build(pts)
    assert dominance_max(index, 2, 2) == ((2, 3), 7)
    assert dominance_max(index, 3, 3) is None


def test_empty():
    assert DominanceIndex([]).query(0, 0) == -1


@given(st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12), st.integers(-20, 20)), max_size=40))
def test_matches_scan(points):
    index = DominanceIndex(points)
    for x in range(-1, 14):
        for y in range(-1, 14):
            got = index.dominance_max(x, y)
            want = scan(points, x, y)
            assert (got is None) == (want is None)
            if got is not None:
                assert got[1] == want[1] and got[0][0] >= x and got[0][1] >= y


def test_large_random():
    rng = random.Random(0)
    pts = [(rng.randint(0, 500), rng.randint(0, 500), rng.randint(0, 10 ** 6)) for _ in range(1000)]
    index = DominanceIndex(pts)
    for _ in range(10 ** 4):
        x, y = rng.randint(0, 510), rng.randint(0, 510)
        want = scan(pts, x, y)
        got = index.dominance_max(x, y)
        assert (got and got[1]) == (want and want[1])
