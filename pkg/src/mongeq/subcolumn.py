"""Subcolumn maximum queries: one column, a contiguous range of rows."""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .breakpoint_tree import BreakpointTree, build_breakpoint_tree
from .matrix import MatrixOracle, reverse_both, submatrix
from .micro import MicroIndex, Partition, level_sizes


class RowTree:
    """Implicit complete binary tree over rows ``1..m``.

    A query ``[i0, i1]`` with ``i0 < i1`` splits at the lowest common
    ancestor into a suffix of its left child and a prefix of its right
    child.  Left children therefore only need suffix structures and right
    children only prefix structures; leaves need neither.
    """

    def __init__(self, m: int):
        self.m = m
        self.height = max(0, (m - 1).bit_length())

    def nodes(self):
        """``(level, index, lo, hi, is_right)`` for every internal node below the root."""
        for level in range(1, self.height):
            span = 1 << level
            for k in range((self.m - 1) // span + 1):
                lo = k * span + 1
                yield level, k, lo, min(lo + span - 1, self.m), bool(k & 1)

    def split(self, i0: int, i1: int) -> Tuple[int, int, int, int]:
        """``(child level, left index, mid, right index)`` below lca(i0, i1)."""
        h = ((i0 - 1) ^ (i1 - 1)).bit_length() - 1
        left = (i0 - 1) >> h
        right = (i1 - 1) >> h
        mid = right << h  # last row of the left child
        return h, left, mid, right

    def bounds(self, level: int, k: int) -> Tuple[int, int]:
        lo = (k << level) + 1
        return lo, min(lo + (1 << level) - 1, self.m)


class SubcolumnIndex:
    """Base class: ``query(j, i0, i1) -> (row, value)``."""

    oracle: MatrixOracle

    def query(self, j: int, i0: int, i1: int) -> Tuple[int, int]:
        m, n = self.oracle.rows, self.oracle.cols
        if not (1 <= i0 <= i1 <= m and 1 <= j <= n):
            raise IndexError(f"subcolumn query (j={j}, rows {i0}..{i1}) outside {m}x{n}")
        return self._query(j, i0, i1)

    def words(self) -> int:
        raise NotImplementedError


class BasicSubcolumnIndex(SubcolumnIndex):
    """O(m log m) words: one breakpoint tree per row-tree node."""

    def __init__(self, oracle: MatrixOracle):
        self.oracle = oracle
        self.tree = RowTree(oracle.rows)
        self.structs: Dict[Tuple[int, int], BreakpointTree] = {}
        n = oracle.cols
        for level, k, lo, hi, is_right in self.tree.nodes():
            block = submatrix(oracle, lo, hi, 1, n)
            self.structs[level, k] = build_breakpoint_tree(block if is_right else reverse_both(block), values=False)

    def _query(self, j, i0, i1):
        f = self.oracle.entry
        if i0 == i1:
            return i0, f(i0, j)
        h, left, mid, right = self.tree.split(i0, i1)
        if h == 0:
            a, b = f(i0, j), f(i1, j)
            return (i1, b) if b >= a else (i0, a)
        # suffix [i0, mid] of the left child, read in reverse-both coordinates
        t = self.structs[h, left]
        r = t.row[t.weighted_ancestor(t.s[mid - i0], self.oracle.cols + 1 - j)]
        ra = mid + 1 - r
        # prefix [mid + 1, i1] of the right child
        t = self.structs[h, right]
        rb = mid + t.row[t.weighted_ancestor(t.s[i1 - mid - 1], j)]
        a, b = f(ra, j), f(rb, j)
        return (rb, b) if b >= a else (ra, a)

    def words(self) -> int:
        return sum(t.words() for t in self.structs.values())


class TwoLevelSubcolumnIndex(SubcolumnIndex):
    """O(m) words: slices of ``x`` rows, sub-slices of ``x'`` rows.

    Micro structures give O(1) access to the contracted matrices ``M'``
    (slice column maxima) and ``M'_a`` (sub-slice column maxima inside slice
    ``a``); both are Monge and carry basic indexes.  A query scans at most
    two partial sub-slices and defers whole sub-slices and whole slices to
    the contracted indexes.
    """

    def __init__(self, oracle: MatrixOracle):
        self.oracle = oracle
        m, n = oracle.rows, oracle.cols
        f = oracle.entry
        self.x, self.xs = level_sizes(m)
        self.slices = Partition(m, self.x)
        self.micro = [MicroIndex(f, self.slices.start(a), self.slices.end(a), n)
                      for a in range(1, self.slices.groups + 1)]
        micro = self.micro
        contracted = MatrixOracle(self.slices.groups, n, lambda a, j: micro[a - 1].value(j))
        self.top = BasicSubcolumnIndex(contracted)
        self.sub_micro: List[List[MicroIndex]] = []
        self.sub_index: List[Optional[BasicSubcolumnIndex]] = []
        for a in range(1, self.slices.groups + 1):
            lo, hi = self.slices.start(a), self.slices.end(a)
            subs = [MicroIndex(f, r, min(r + self.xs - 1, hi), n)
                    for r in range(lo, hi + 1, self.xs)]
            self.sub_micro.append(subs)
            if len(subs) > 2:
                inner = MatrixOracle(len(subs), n, lambda b, j, subs=subs: subs[b - 1].value(j))
                self.sub_index.append(BasicSubcolumnIndex(inner))
            else:
                self.sub_index.append(None)

    def _within(self, a, p, q, j):
        """Rows ``[p, q]`` inside slice ``a``."""
        f = self.oracle.entry
        base = self.slices.start(a)
        xs = self.xs
        b0 = (p - base) // xs
        b1 = (q - base) // xs
        if b0 == b1 or b1 - b0 == 1:
            rows = range(p, q + 1)
        else:
            rows = list(range(p, base + (b0 + 1) * xs)) + list(range(base + b1 * xs, q + 1))
        best_r, best_v = p, f(p, j)
        for r in rows:
            v = f(r, j)
            if v >= best_v:
                best_r, best_v = r, v
        if b1 - b0 >= 2:
            b, _ = self.sub_index[a - 1].query(j, b0 + 2, b1)
            r, v = self.sub_micro[a - 1][b - 1].column_max(j)
            if v >= best_v:
                best_r, best_v = r, v
        return best_r, best_v

    def _query(self, j, i0, i1):
        sl = self.slices
        a0, a1 = sl.group(i0), sl.group(i1)
        if a0 == a1:
            return self._within(a0, i0, i1, j)
        ra, va = self._within(a0, i0, sl.end(a0), j)
        rb, vb = self._within(a1, sl.start(a1), i1, j)
        if vb >= va:
            ra, va = rb, vb
        if a1 - a0 >= 2:
            a, _ = self.top.query(j, a0 + 1, a1 - 1)
            r, v = self.micro[a - 1].column_max(j)
            if v >= va:
                ra, va = r, v
        return ra, va

    def words(self) -> int:
        w = sum(mi.words() for mi in self.micro) + self.top.words()
        w += sum(mi.words() for subs in self.sub_micro for mi in subs)
        w += sum(ix.words() for ix in self.sub_index if ix is not None)
        return w


def build_basic(oracle: MatrixOracle) -> BasicSubcolumnIndex:
    return BasicSubcolumnIndex(oracle)


def build_two_level(oracle: MatrixOracle) -> TwoLevelSubcolumnIndex:
    return TwoLevelSubcolumnIndex(oracle)


def subcolumn_max(index: SubcolumnIndex, j: int, i0: int, i1: int) -> Tuple[int, int]:
    return index.query(j, i0, i1)
