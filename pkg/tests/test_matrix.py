import random

import pytest
from hypothesis import given, strategies as st

from mongeq.matrix import (ExplicitMatrix, MatrixFormatError, PartialShape, brute_max,
                           fill_staircase, format_matrix, generate_monge, lines_oracle,
                           negate, parse_matrix, random_partial_shape, random_staircase,
                           reverse_both, transpose, verify_monge)

from conftest import EXAMPLE_ROWS, all_rects, monge_matrices, product


def test_verify_examples(example):
    assert verify_monge(example) == (True, None)
    assert verify_monge(product(5, 7))[0]
    assert verify_monge(ExplicitMatrix([[0, 1], [0, 0]])) == (False, (1, 1))


def test_min_convention_is_negation(example):
    assert verify_monge(negate(example), "min")[0]
    assert not verify_monge(example, "min")[0]


def test_lines_generator_explicit_parameters():
    m = generate_monge(123, 3, 4, "lines", a=[-1, 0, 1], b=[6, 4, 0])
    assert m.materialize() == EXAMPLE_ROWS


def test_lines_rejects_decreasing_slopes():
    with pytest.raises(ValueError):
        generate_monge(0, 2, 2, "lines", a=[1, 0], b=[0, 0])


def test_one_by_one():
    assert verify_monge(generate_monge(9, 1, 1))[0]


@pytest.mark.parametrize("kind", ["lines", "density", "product"])
def test_generators_64(kind):
    for seed in range(3):
        assert verify_monge(generate_monge(seed, 64, 64, kind))[0]


def test_generators_deterministic():
    assert generate_monge(5, 6, 7, "density").materialize() == \
        generate_monge(5, 6, 7, "density").materialize()


def test_lines_oracle_monge():
    assert verify_monge(lines_oracle(3, 40, 50))[0]


@given(monge_matrices())
def test_views_preserve_monge(mat):
    assert verify_monge(transpose(mat))[0]
    assert verify_monge(reverse_both(mat))[0]
    t = transpose(mat)
    assert t.entry(1, mat.rows) == mat.entry(mat.rows, 1)


def test_fill_small_example():
    # bound 1, one undefined cell counted by g(2, 2)
    base = ExplicitMatrix([[0, 0], [0, None]])
    shape = PartialShape(2, 2, [1, 1], [2, 1])
    filled = fill_staircase(base, shape)
    assert filled.materialize() == [[0, 0], [0, 2]]
    assert verify_monge(filled)[0]


def test_linear_fill_counterexample():
    # B(i+j) fill, B = 1: quadruple rows 1-2, cols 2-3 has only (1, 2) defined; 0 + 5 - 4 - 4 < 0
    shape = PartialShape(2, 3, [1, 1], [2, 1])
    linear = ExplicitMatrix([[0, 0, 4], [0, 4, 5]])
    assert not verify_monge(linear)[0]
    assert verify_monge(fill_staircase(ExplicitMatrix([[0, 0, None], [0, None, None]]), shape))[0]


def test_fill_full_shape_is_shift(example):
    filled = fill_staircase(example, PartialShape.full(3, 4))
    assert [[v + filled.shift for v in row] for row in filled.materialize()] == EXAMPLE_ROWS


@pytest.mark.parametrize("orientation", ["top-left", "bottom-left", "top-right", "bottom-right"])
def test_fill_random_staircases(orientation):
    rng = random.Random(orientation)
    for _ in range(4):
        mat = generate_monge(rng.getrandbits(32), 32, 32, rng.choice(["lines", "density"]))
        shape = random_staircase(rng, 32, 32, orientation)
        filled = fill_staircase(mat, shape)
        assert verify_monge(filled)[0]
        for i in range(1, 33):
            for j in range(shape.s[i - 1], shape.t[i - 1] + 1):
                assert filled.entry(i, j) + filled.shift == mat.entry(i, j)


def test_fill_many_small_staircases():
    rng = random.Random(1000)
    for k in range(1000):
        m, n = rng.randint(1, 9), rng.randint(1, 9)
        mat = generate_monge(k, m, n, rng.choice(["lines", "density", "product"]))
        orientation = ("top-left", "bottom-left", "top-right", "bottom-right")[k % 4]
        shape = random_staircase(rng, m, n, orientation)
        assert verify_monge(fill_staircase(mat, shape))[0]


def test_fill_rectangles_match_shifted_maxima():
    rng = random.Random(8)
    mat = generate_monge(1, 12, 12, "density")
    shape = random_staircase(rng, 12, 12, "top-left")
    filled = fill_staircase(mat, shape)
    for i0, i1, j0, j1 in all_rects(12, 12):
        if all(shape.defined(i, j) for i in (i0, i1) for j in (j0, j1)):
            a = brute_max(filled, i0, i1, j0, j1)
            assert a[2] + filled.shift == brute_max(mat, i0, i1, j0, j1)[2]


def test_random_partial_shape_valid():
    rng = random.Random(0)
    for _ in range(200):
        random_partial_shape(rng, rng.randint(1, 20), rng.randint(1, 20)).validate()


def test_text_round_trip():
    mat = generate_monge(4, 5, 6, "product")
    again, shape = parse_matrix(format_matrix(mat))
    assert shape is None and again.materialize() == mat.materialize()
    rng = random.Random(1)
    shape = random_partial_shape(rng, 5, 6)
    again, parsed = parse_matrix(format_matrix(mat, shape))
    assert (parsed.s, parsed.t) == (shape.s, shape.t)


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("2\n1 2\n", 1),
    ("2 2\n1 2\n3\n", 3),
    ("2 2\n1 2\n3 z\n", 3),
    ("2 2\n1 2\n", 2),
    ("1 3\n1 * 2\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix(text)
    assert err.value.line == line
