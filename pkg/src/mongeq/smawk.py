"""Column maxima of max-convention Monge matrices via SMAWK."""
from __future__ import annotations

from typing import Callable, List, NamedTuple, Optional, Sequence

from .matrix import MatrixOracle, PartialShape

Entry = Callable[[int, int], int]


def smawk(rows: Sequence[int], cols: Sequence[int], f: Entry) -> List[int]:
    """For each column label return the row label holding its maximum.

    ``f(row, col)`` must be Monge over the given (increasing) labels.  Ties
    go to the larger row, which keeps the answer non-decreasing.
    """
    rows = list(rows)
    cols = list(cols)
    out = {}
    _smawk(rows, cols, f, out)
    return [out[c] for c in cols]


def _smawk(rows, cols, f, out):
    if not cols:
        return
    # reduce: keep at most len(cols) rows, dropping rows that can never win
    stack = []
    tops = []  # f(stack[k], cols[k]) cached alongside the stack
    ncols = len(cols)
    for r in rows:
        while stack:
            c = cols[len(stack) - 1]
            v = f(r, c)
            if v >= tops[-1]:
                stack.pop()
                tops.pop()
            else:
                break
        if len(stack) < ncols:
            stack.append(r)
            tops.append(f(r, cols[len(stack) - 1]))
    rows = stack
    _smawk(rows, cols[1::2], f, out)
    # interpolate even-indexed columns between their neighbours' answers
    where = {r: k for k, r in enumerate(rows)}
    k = 0
    last = len(rows) - 1
    for ci in range(0, ncols, 2):
        c = cols[ci]
        stop = where[out[cols[ci + 1]]] if ci + 1 < ncols else last
        best_r = rows[k]
        best_v = f(best_r, c)
        while k < stop:
            k += 1
            v = f(rows[k], c)
            if v >= best_v:
                best_v, best_r = v, rows[k]
        out[c] = best_r


def column_maxima(oracle: MatrixOracle) -> List[int]:
    """``r(c)`` for ``c = 1..n`` (1-based rows), larger row on ties."""
    return smawk(range(1, oracle.rows + 1), range(1, oracle.cols + 1), oracle.entry)


def row_maxima(oracle: MatrixOracle) -> List[int]:
    """Column of the maximum in each row, larger column on ties."""
    f = oracle.entry
    return smawk(range(1, oracle.cols + 1), range(1, oracle.rows + 1), lambda j, i: f(i, j))


class Breakpoint(NamedTuple):
    col: int
    row: int
    value: Optional[int]  # max of the previous breakpoint's row on [prev col, col)


def breakpoints(oracle: MatrixOracle) -> List[Breakpoint]:
    """Column 1 plus every column where the column-maximum row increases."""
    r = column_maxima(oracle)
    f = oracle.entry
    out = [Breakpoint(1, r[0], None)]
    for c in range(2, oracle.cols + 1):
        if r[c - 1] != r[c - 2]:
            prev = out[-1]
            v = max(f(prev.row, j) for j in range(prev.col, c))
            out.append(Breakpoint(c, r[c - 1], v))
    return out


def partial_column_maxima(oracle: MatrixOracle, shape: PartialShape) -> List[Optional[int]]:
    """Row of the maximum defined entry in every column (``None`` for empty columns).

    The shape is cut into staircase pieces and those into fully defined
    Monge fragments; SMAWK runs on every fragment and the per-column
    winners are merged, larger row on ties.
    """
    from .partial import decompose_partial, staircase_fragments

    f = oracle.entry
    best_row: List[Optional[int]] = [None] * oracle.cols
    best_val: List[Optional[int]] = [None] * oracle.cols
    for piece in decompose_partial(shape):
        for r0, r1, c0, c1 in staircase_fragments(piece):
            winners = smawk(range(r0, r1 + 1), range(c0, c1 + 1), f)
            for c, r in zip(range(c0, c1 + 1), winners):
                v = f(r, c)
                cur = best_val[c - 1]
                if cur is None or v > cur or (v == cur and r > best_row[c - 1]):
                    best_val[c - 1] = v
                    best_row[c - 1] = r
    return best_row
