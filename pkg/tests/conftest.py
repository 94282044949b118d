import random

import pytest
from hypothesis import settings, strategies as st

from mongeq.matrix import GENERATOR_KINDS, ExplicitMatrix, generate_monge

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# the running example used throughout: lines a=(-1,0,1), b=(6,4,0)
EXAMPLE_ROWS = [[5, 4, 3, 2], [4, 4, 4, 4], [1, 2, 3, 4]]


@pytest.fixture
def example():
    return ExplicitMatrix(EXAMPLE_ROWS)


def product(m, n):
    return ExplicitMatrix([[i * j for j in range(1, n + 1)] for i in range(1, m + 1)])


def random_monge(rng: random.Random, max_m: int, max_n: int = None):
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n or max_m)
    return generate_monge(rng.getrandbits(64), m, n, rng.choice(GENERATOR_KINDS))


@st.composite
def monge_matrices(draw, max_m=16, max_n=16):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2 ** 64 - 1))
    kind = draw(st.sampled_from(GENERATOR_KINDS))
    return generate_monge(seed, m, n, kind)


def all_rects(m, n):
    for i0 in range(1, m + 1):
        for i1 in range(i0, m + 1):
            for j0 in range(1, n + 1):
                for j1 in range(j0, n + 1):
                    yield i0, i1, j0, j1


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
