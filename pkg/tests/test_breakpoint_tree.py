import random

from hypothesis import given

from mongeq.breakpoint_tree import ROOT, build_breakpoint_tree
from mongeq.matrix import ExplicitMatrix, generate_monge, submatrix
from mongeq.smawk import breakpoints

from conftest import monge_matrices, product


def node_of(tree, col, row):
    return next(k for k in range(1, len(tree)) if (tree.weight[k], tree.row[k]) == (col, row))


def test_example_stacks(example):
    tree = build_breakpoint_tree(example)
    stacks = [[(c, r) for c, r, _ in tree.breakpoints(i)] for i in (1, 2, 3)]
    assert stacks == [[(1, 1)], [(1, 1), (2, 2)], [(1, 1), (2, 2), (4, 3)]]


def test_product_is_a_star():
    tree = build_breakpoint_tree(product(5, 4))
    assert len(tree) == 6
    for i in range(1, 6):
        node = tree.handle(i)
        assert tree.parent[node] == ROOT
        assert (tree.weight[node], tree.row[node]) == (1, i)


def test_single_row():
    tree = build_breakpoint_tree(ExplicitMatrix([[4, 2, 9]]))
    assert len(tree) == 2 and tree.breakpoints(1) == [(1, 1, None)]


def test_weighted_ancestor_examples(example):
    tree = build_breakpoint_tree(example)
    s3 = tree.handle(3)
    assert tree.weighted_ancestor(s3, 3) == node_of(tree, 2, 2)
    assert tree.weighted_ancestor(s3, 4) == s3
    assert tree.weighted_ancestor(s3, 0) == ROOT


def test_path_max_example(example):
    tree = build_breakpoint_tree(example)
    top = node_of(tree, 1, 1)
    node, value = tree.path_max(top, tree.handle(3))
    assert (tree.weight[node], value) == (2, 5)
    child = node_of(tree, 2, 2)
    assert tree.path_max(top, child) == (child, 5)


@given(monge_matrices(20, 20))
def test_ancestors_are_prefix_breakpoints(mat):
    tree = build_breakpoint_tree(mat)
    for i in range(1, mat.rows + 1):
        assert tree.breakpoints(i) == [tuple(b) for b in breakpoints(submatrix(mat, 1, i, 1, mat.cols))]


@given(monge_matrices(20, 20))
def test_queries_match_chain_walks(mat):
    tree = build_breakpoint_tree(mat)
    rng = random.Random(mat.rows * 31 + mat.cols)
    for i in range(1, mat.rows + 1):
        chain = tree.ancestors(tree.handle(i))
        for j in range(0, mat.cols + 2):
            want = max((v for v in chain if tree.weight[v] <= j), key=lambda v: tree.depth[v], default=ROOT)
            assert tree.weighted_ancestor(tree.handle(i), j) == want
        for d, v in enumerate(chain, 1):
            assert tree.level_ancestor(tree.handle(i), d) == v
        if len(chain) >= 2:
            a = rng.randrange(len(chain) - 1)
            b = rng.randrange(a + 1, len(chain))
            below = chain[a + 1:b + 1]
            best = max(tree.value[v] for v in below)
            node, value = tree.path_max(chain[a], chain[b])
            assert value == best and node in below
