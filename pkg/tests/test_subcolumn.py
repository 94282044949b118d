import random

import pytest
from hypothesis import given

from mongeq.matrix import ExplicitMatrix, generate_monge
from mongeq.micro import MicroIndex, Partition, level_sizes, slice_breakpoints
from mongeq.subcolumn import RowTree, build_basic, build_two_level, subcolumn_max

from conftest import monge_matrices

BUILDERS = [build_basic, build_two_level]


def brute(mat, j, i0, i1):
    best = i0
    for i in range(i0, i1 + 1):
        if mat.entry(i, j) >= mat.entry(best, j):
            best = i
    return best, mat.entry(best, j)


def test_micro_examples(example):
    micro = MicroIndex(example.entry, 1, 2, 4)
    assert micro.column_max(1) == (1, 5)
    assert micro.column_max(4) == (2, 4)
    single = MicroIndex(example.entry, 3, 3, 4)
    assert [single.column_max(c) for c in range(1, 5)] == [(3, v) for v in (1, 2, 3, 4)]


def test_slice_breakpoints_example(example):
    assert slice_breakpoints(example.entry, 1, 3, 4) == ([1, 2, 4], [1, 2, 3])


def test_level_sizes():
    assert level_sizes(1) == (1, 1)
    assert level_sizes(64) == (6, 3)
    assert level_sizes(65) == (7, 3)


def test_partition_ragged_tail():
    p = Partition(10, 4)
    assert p.groups == 3 and (p.start(3), p.end(3)) == (9, 10) and p.group(8) == 2


def test_row_tree_split_covers_range():
    for m in range(2, 40):
        tree = RowTree(m)
        for i0 in range(1, m + 1):
            for i1 in range(i0 + 1, m + 1):
                level, left, mid, right = tree.split(i0, i1)
                assert i0 <= mid < i1


@pytest.mark.parametrize("build", BUILDERS)
def test_example(build, example):
    index = build(example)
    assert subcolumn_max(index, 1, 2, 3) == (2, 4)
    for i in range(1, 4):
        for j in range(1, 5):
            assert index.query(j, i, i) == (i, example.entry(i, j))


@pytest.mark.parametrize("build", BUILDERS)
def test_out_of_range(build, example):
    index = build(example)
    with pytest.raises(IndexError):
        index.query(5, 1, 2)
    with pytest.raises(IndexError):
        index.query(1, 3, 2)


@pytest.mark.parametrize("build", BUILDERS)
@given(mat=monge_matrices(40, 12))
def test_all_triples(build, mat):
    index = build(mat)
    for j in range(1, mat.cols + 1):
        for i0 in range(1, mat.rows + 1):
            for i1 in range(i0, mat.rows + 1):
                r, v = index.query(j, i0, i1)
                assert v == brute(mat, j, i0, i1)[1] and mat.entry(r, j) == v and i0 <= r <= i1


@pytest.mark.parametrize("build", BUILDERS)
def test_sampled_200_by_300(build):
    mat = generate_monge(11, 200, 300, "density")
    index = build(mat)
    rng = random.Random(0)
    for _ in range(10 ** 4):
        j = rng.randint(1, 300)
        i0, i1 = sorted(rng.randint(1, 200) for _ in range(2))
        assert index.query(j, i0, i1)[1] == brute(mat, j, i0, i1)[1]
