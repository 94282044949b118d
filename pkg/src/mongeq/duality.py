"""Predecessor search expressed as subcolumn minima of a synthetic Monge matrix.

The universe ``[0, n^2)`` is cut into ``n`` blocks of ``n`` values.  Block
``i`` becomes a small matrix ``M_i``: a top row ``1..n``, one row per
element of the block and a bottom row ``n..1``.  The row of element
``a'_j`` holds 1 exactly on columns ``a'_j + 1 .. a'_{j+1}``, so the column
of ``x mod n`` has its minimum on the row of the predecessor.  Blocks are
stacked by repeatedly adding ``H[k] = 2k - n - 1`` to everything above,
which turns the previous bottom row into the next top row while keeping
the whole matrix Monge (minimum convention).
"""
from __future__ import annotations

import math
from bisect import bisect_right
from typing import List, Optional, Sequence

from .matrix import MatrixOracle, negate
from .ordered import PredecessorSet
from .subcolumn import BasicSubcolumnIndex, TwoLevelSubcolumnIndex


class ReductionMatrix(MatrixOracle):
    """O(n)-word encoding of the stacked matrix; entries cost O(1)."""

    def __init__(self, elements: Sequence[int], n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        elems = sorted(set(elements))
        if len(elems) != len(elements):
            raise ValueError("elements must be distinct")
        if len(elems) > n:
            raise ValueError(f"at most n={n} elements allowed")
        if elems and (elems[0] < 0 or elems[-1] >= n * n):
            raise ValueError(f"elements must lie in [0, {n * n})")
        self.n = n
        self.elements = elems
        self.offsets = [x % n for x in elems]  # a' values, block after block
        self.first = [0] * (n + 1)  # position of each block's first element
        for x in elems:
            self.first[x // n + 1] += 1
        for i in range(n):
            self.first[i + 1] += self.first[i]
        # base[i]: stacked row holding M_i's top row (shared with M_{i-1}'s bottom)
        self.base = [1] * n
        for i in range(1, n):
            self.base[i] = self.base[i - 1] + self.count(i - 1) + 1
        rows = self.base[n - 1] + self.count(n - 1) + 1
        self.block_of = [0] * (rows + 1)
        for i in range(n):
            top = self.base[i] + (0 if i == 0 else 1)
            for r in range(top, self.base[i] + self.count(i) + 2):
                self.block_of[r] = i
        # largest element below each block start, for queries under a_1
        self.before: List[Optional[int]] = []
        for i in range(n):
            p = self.first[i]
            self.before.append(elems[p - 1] if p else None)
        super().__init__(rows, n, self._entry)

    def count(self, i: int) -> int:
        return self.first[i + 1] - self.first[i]

    def block_entry(self, i: int, local: int, k: int) -> int:
        """``M_i[local, k]`` straight from the three-part row definition."""
        n = self.n
        cnt = self.count(i)
        if local == 1:
            return k
        if local == cnt + 2:
            return n + 1 - k
        p = self.first[i] + local - 2
        a = self.offsets[p]
        b = self.offsets[p + 1] if local - 1 < cnt else n
        if k <= a:
            return a - k + 2
        if k <= b:
            return 1
        return k - b + 1

    def _entry(self, r: int, k: int) -> int:
        i = self.block_of[r]
        n = self.n
        return self.block_entry(i, r - self.base[i] + 1, k) + (n - 1 - i) * (2 * k - n - 1)

    def element_rows(self, i: int):
        """Stacked rows of block ``i``'s elements (possibly empty)."""
        lo = self.base[i] + 1
        return lo, lo + self.count(i) - 1

    def words(self) -> int:
        return len(self.offsets) + len(self.first) + len(self.base) + len(self.before) + len(self.block_of)


def reduction_build(elements: Sequence[int], n: int) -> ReductionMatrix:
    return ReductionMatrix(elements, n)


def reduction_entry(rm: ReductionMatrix, i: int, j: int) -> int:
    return rm.entry(i, j)


def minimum_engine(rm: ReductionMatrix, kind: str = "two-level"):
    """Subcolumn minima via the maximum index over the negated matrix."""
    if kind == "two-level":
        return TwoLevelSubcolumnIndex(negate(rm))
    if kind == "basic":
        return BasicSubcolumnIndex(negate(rm))
    raise ValueError(f"unknown engine {kind!r}")


def predecessor_via_monge(rm: ReductionMatrix, x: int, engine=None) -> Optional[int]:
    n = rm.n
    if not 0 <= x < n * n:
        raise ValueError(f"x={x} outside the universe [0, {n * n})")
    if engine is None:
        engine = minimum_engine(rm)
    i, col = divmod(x, n)
    cnt = rm.count(i)
    if cnt == 0 or x < rm.elements[rm.first[i]]:
        return rm.before[i]
    lo, hi = rm.element_rows(i)
    r, _ = engine.query(col + 1, lo, hi)
    return rm.elements[rm.first[i] + r - lo]


class MongePredecessor:
    """Predecessor structure backed by one subcolumn minimum per query."""

    def __init__(self, elements: Sequence[int], n: int, kind: str = "two-level"):
        self.matrix = ReductionMatrix(elements, n)
        self.engine = minimum_engine(self.matrix, kind)

    def pred(self, x: int) -> Optional[int]:
        return predecessor_via_monge(self.matrix, x, self.engine)

    def words(self) -> int:
        return self.matrix.words() + self.engine.words()


class _DirectPredecessor:
    def __init__(self, keys: Sequence[int], universe: int, engine: str = "yfast"):
        self.set = PredecessorSet(sorted(keys), universe=universe, engine=engine)

    def pred(self, x: int) -> Optional[int]:
        return self.set.pred(x)

    def words(self) -> int:
        return self.set.words()


class UniverseReduction:
    """Predecessor on ``S`` in ``[0, n^c)`` through one set in ``[0, 2 n^2)``.

    ``x = y * n^2 + z``.  ``S'`` holds every distinct digit ``y_i`` and
    ``z_i`` together with their ranks among the ``y`` digits and among the
    ``z`` digits.  ``S''`` holds ``(rank(y_i) - 1) * n + rank(z_i) - 1``,
    so comparing keys compares elements.  Both live in one merged set
    (``S''`` shifted by ``n^2``) of which only every third key is indexed;
    the two keys after each indexed one are kept next to it.
    """

    def __init__(self, elements: Sequence[int], n: int, c: int, engine: str = "direct"):
        if c not in (3, 4):
            raise ValueError("only c in {3, 4} is supported")
        elems = sorted(set(elements))
        if len(elems) != len(elements):
            raise ValueError("elements must be distinct")
        if len(elems) > n or (elems and (elems[0] < 0 or elems[-1] >= n ** c)):
            raise ValueError(f"need at most n elements in [0, {n ** c})")
        self.n, self.c = n, c
        nn = n * n
        ys = sorted({x // nn for x in elems})
        zs = sorted({x % nn for x in elems})
        digits = sorted(set(ys) | set(zs))
        yset = set(ys)
        # S' payload: (count of y digits <= v, count of z digits <= v, v is a y digit)
        merged = [(v, (bisect_right(ys, v), bisect_right(zs, v), v in yset)) for v in digits]
        keyed = sorted(((bisect_right(ys, x // nn) - 1) * n + bisect_right(zs, x % nn) - 1, x)
                       for x in elems)
        merged += [(nn + k, x) for k, x in keyed]
        self.keys = [k for k, _ in merged]
        self.payload = [p for _, p in merged]
        kept = self.keys[::3]
        universe = 2 * nn
        if engine == "direct":
            self.engine = _DirectPredecessor(kept, universe)
        elif engine == "monge":
            side = max(2, math.isqrt(universe - 1) + 1)
            self.engine = MongePredecessor(kept, side)
        else:
            raise ValueError(f"unknown engine {engine!r}")
        self._pos = {k: p for p, k in enumerate(kept)}

    def _pred(self, v: int) -> int:
        """Position of the largest merged key ``<= v``, or -1."""
        if v < 0:
            return -1
        head = self.engine.pred(v)
        if head is None:
            return -1
        p = 3 * self._pos[head]
        keys = self.keys
        end = min(p + 3, len(keys))
        while p + 1 < end and keys[p + 1] <= v:
            p += 1
        return p

    def pred(self, x: int) -> Optional[int]:
        n, nn = self.n, self.n * self.n
        if not 0 <= x < n ** self.c:
            raise ValueError(f"x={x} outside the universe [0, {n ** self.c})")
        y, z = divmod(x, nn)
        p = self._pred(y)
        if p < 0:
            return None
        ry, _, _ = self.payload[p]
        if ry == 0:
            return None
        if self.keys[p] == y and self.payload[p][2]:
            q = self._pred(z)
            rz = self.payload[q][1] if q >= 0 else 0
            key = (ry - 1) * n + rz - 1
        else:
            key = (ry - 1) * n + n - 1
        p = self._pred(nn + key)
        if p < 0 or self.keys[p] < nn:
            return None
        return self.payload[p]

    def words(self) -> int:
        return 2 * len(self.keys) + 2 * len(self._pos) + self.engine.words()


def universe_reduce(elements: Sequence[int], c: int, n: Optional[int] = None,
                    engine: str = "direct") -> UniverseReduction:
    return UniverseReduction(elements, len(elements) if n is None else n, c, engine)
