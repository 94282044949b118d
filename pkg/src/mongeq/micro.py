"""Entire-column maxima of thin slices, and the row partitions built from them."""
from __future__ import annotations

from typing import Callable, List, Tuple

from .ordered import SmallSetPredecessor

Entry = Callable[[int, int], int]


def ceil_log2(k: int) -> int:
    return max(0, (k - 1).bit_length())


def slice_breakpoints(f: Entry, r0: int, r1: int, n: int) -> Tuple[List[int], List[int]]:
    """Breakpoint columns and rows of the row block ``[r0, r1]`` (later row wins ties)."""
    cols: List[int] = []
    rows: List[int] = []
    for i in range(r0, r1 + 1):
        popped_at = 0
        while cols:
            c = cols[-1]
            if f(i, c) >= f(rows[-1], c):
                cols.pop()
                rows.pop()
                popped_at = c
            else:
                break
        if not cols:
            cols.append(1)
            rows.append(i)
            continue
        r = rows[-1]
        if popped_at:
            hi = popped_at
        elif f(i, n) >= f(r, n):
            hi = n
        else:
            continue
        lo = cols[-1] + 1
        while lo < hi:
            mid = (lo + hi) // 2
            if f(i, mid) >= f(r, mid):
                hi = mid
            else:
                lo = mid + 1
        cols.append(lo)
        rows.append(i)
    return cols, rows


class MicroIndex:
    """Column maxima of an ``x``-row slice in O(1): packed predecessor over its breakpoints."""

    __slots__ = ("f", "rows", "_pred")

    def __init__(self, f: Entry, r0: int, r1: int, n: int):
        cols, rows = slice_breakpoints(f, r0, r1, n)
        self.f = f
        self.rows = rows
        self._pred = SmallSetPredecessor(cols, n + 1)

    @property
    def cols(self) -> List[int]:
        return self._pred.keys

    def row(self, c: int) -> int:
        return self.rows[self._pred.rank(c) - 1]

    def column_max(self, c: int) -> Tuple[int, int]:
        r = self.rows[self._pred.rank(c) - 1]
        return r, self.f(r, c)

    def value(self, c: int) -> int:
        return self.f(self.rows[self._pred.rank(c) - 1], c)

    def words(self) -> int:
        return len(self.rows) + self._pred.words()


class Partition:
    """Consecutive groups of ``size`` items over ``1..count`` (last group may be short)."""

    __slots__ = ("count", "size", "groups")

    def __init__(self, count: int, size: int):
        self.count = count
        self.size = size
        self.groups = -(-count // size)

    def group(self, i: int) -> int:
        return (i - 1) // self.size + 1

    def start(self, g: int) -> int:
        return (g - 1) * self.size + 1

    def end(self, g: int) -> int:
        return min(g * self.size, self.count)


def level_sizes(m: int) -> Tuple[int, int]:
    """Slice height ``x`` and sub-slice height ``x'`` for ``m`` rows."""
    x = max(1, ceil_log2(m))
    return x, max(1, ceil_log2(x))
