import random

import pytest
from hypothesis import given

from mongeq.breakpoint_tree import build_breakpoint_tree
from mongeq.matrix import brute_max, generate_monge, lines_oracle
from mongeq.micro import level_sizes
from mongeq.submatrix import build_basic, build_linear, prefix_parts, submatrix_max

from conftest import all_rects, monge_matrices

BUILDERS = [build_basic, build_linear]


def check(mat, index, rect):
    i, j, v = index.query(*rect)
    i0, i1, j0, j1 = rect
    assert i0 <= i <= i1 and j0 <= j <= j1
    assert mat.entry(i, j) == v == brute_max(mat, *rect)[2]


def prefix_value(mat, tree, k, j0, j1):
    intervals, exact = prefix_parts(tree, k, j0, j1)
    vals = [mat.entry(r, c) for r, lo, hi in intervals for c in range(lo, hi + 1)]
    if exact is not None:
        assert mat.entry(exact[0], exact[1]) == exact[2]
        vals.append(exact[2])
    return max(vals)


def test_prefix_parts_examples(example):
    tree = build_breakpoint_tree(example)
    assert prefix_value(example, tree, 3, 1, 4) == 5
    assert prefix_value(example, tree, 3, 3, 4) == 4
    assert prefix_value(example, tree, 3, 2, 2) == 4


@given(mat=monge_matrices(12, 16))
def test_prefix_parts_all(mat):
    tree = build_breakpoint_tree(mat)
    for k in range(1, mat.rows + 1):
        for j0 in range(1, mat.cols + 1):
            for j1 in range(j0, mat.cols + 1):
                assert prefix_value(mat, tree, k, j0, j1) == brute_max(mat, 1, k, j0, j1)[2]


@pytest.mark.parametrize("build", BUILDERS)
def test_examples(build, example):
    index = build(example)
    assert submatrix_max(index, 1, 3, 1, 4) == (1, 1, 5)
    i, j, v = index.query(1, 2, 3, 4)
    assert v == 4 and (i, j) in ((2, 3), (2, 4))
    assert index.query(2, 2, 3, 3) == (2, 3, 4)
    for j in range(1, 5):
        assert index.query(1, 3, j, j)[2] == max(example.entry(i, j) for i in (1, 2, 3))


@pytest.mark.parametrize("build", BUILDERS)
@given(mat=monge_matrices(14, 14))
def test_all_rectangles(build, mat):
    index = build(mat)
    for rect in all_rects(mat.rows, mat.cols):
        check(mat, index, rect)


@pytest.mark.parametrize("build", BUILDERS)
def test_tall_and_wide(build):
    rng = random.Random(2)
    for m, n in ((64, 3), (3, 64), (50, 1), (1, 50)):
        mat = generate_monge(m * n, m, n, "density")
        index = build(mat)
        for _ in range(400):
            i0, i1 = sorted(rng.randint(1, m) for _ in range(2))
            j0, j1 = sorted(rng.randint(1, n) for _ in range(2))
            check(mat, index, (i0, i1, j0, j1))


def test_linear_candidate_bound():
    mat = lines_oracle(4, 512, 512)
    index = build_linear(mat)
    x, xs = level_sizes(512)
    rng = random.Random(3)
    for _ in range(300):
        i0, i1 = sorted(rng.randint(1, 512) for _ in range(2))
        j0, j1 = sorted(rng.randint(1, 512) for _ in range(2))
        rows, cols = index.candidate_sets(i0, i1, j0, j1)
        assert len(rows) <= 6 * xs - 2 and len(cols) <= 6 * xs - 2


def test_linear_words_per_row_flat():
    small, large = lines_oracle(1, 256, 256), lines_oracle(1, 1024, 1024)
    a, b = build_linear(small).words() / 256, build_linear(large).words() / 1024
    assert b <= 1.5 * a
