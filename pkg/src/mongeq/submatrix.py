"""Submatrix maximum queries on Monge matrices.

``BasicSubmatrixIndex`` stores one breakpoint tree per row-tree node, with
node values equal to interval maxima of the row that owned the previous
breakpoint.  A prefix query resolves into a head interval, a run of whole
breakpoint intervals (one path maximum) and a tail interval.

``LinearSubmatrixIndex`` applies the slice and sub-slice decomposition to
both ``M`` and its transpose.  Whole slices go to an exact index over the
slice-maxima matrix ``M'``; whole sub-slices go to candidate-mode indexes
over ``M'_a``; leftovers become candidate rows and columns, and a final
SMAWK pass over the candidate grid settles the answer.
"""
from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from .breakpoint_tree import BreakpointTree, build_breakpoint_tree
from .matrix import MatrixOracle, reverse_both, submatrix, transpose
from .micro import MicroIndex, Partition, level_sizes
from .smawk import smawk
from .subcolumn import RowTree, TwoLevelSubcolumnIndex

Answer = Tuple[int, int, int]
SubrowMax = Callable[[int, int, int], Tuple[int, int]]


def _best(cands):
    best = None
    for c in cands:
        if best is None or c[2] > best[2]:
            best = c
    return best


def prefix_parts(t: BreakpointTree, k: int, j0: int, j1: int):
    """Split the rectangle ``rows 1..k x [j0, j1]`` of ``t``'s matrix.

    Returns ``(intervals, exact)``: ``intervals`` holds up to two
    ``(row, lo, hi)`` row intervals whose maxima are still to be taken and
    ``exact`` is ``None`` or ``(row, col, value)`` covering everything else.
    """
    v = t.s[k - 1]
    a = t.weighted_ancestor(v, j1)
    p = t.weighted_ancestor(v, j0)
    row, weight = t.row, t.weight
    if p == a:
        return [(row[p], j0, j1)], None
    q = p if weight[p] == j0 else t.level_ancestor(v, t.depth[p] + 1)
    intervals = []
    if q != p:
        intervals.append((row[p], j0, weight[q] - 1))
    exact = None
    if q != a:
        u, val = t.path_max(q, a)
        exact = (row[t.parent[u]], t.argcol[u], val)
    intervals.append((row[a], weight[a], j1))
    return intervals, exact


class BasicSubmatrixIndex:
    """O(m log m) words.

    ``subrow(row, lo, hi) -> (col, value)`` supplies row-interval maxima in
    the oracle's coordinates.  With ``exact=True`` queries return
    ``(i, j, value)``; otherwise ``subrow`` is only used to fill node values
    and queries return ``(candidate rows, exact entries)``.
    """

    def __init__(self, oracle: MatrixOracle, subrow: Optional[SubrowMax] = None,
                 exact: bool = True):
        self.oracle = oracle
        self.exact = exact
        self.sub_index = None
        if subrow is None:
            self.sub_index = TwoLevelSubcolumnIndex(transpose(oracle))
            sq = self.sub_index.query
            subrow = lambda r, lo, hi: sq(r, lo, hi)
        self.subrow = subrow
        m, n = oracle.rows, oracle.cols
        self.tree = RowTree(m)
        self.structs: Dict[Tuple[int, int], BreakpointTree] = {}
        for level, k, lo, hi, is_right in self.tree.nodes():
            block = submatrix(oracle, lo, hi, 1, n)
            if is_right:
                sr = lambda r, a, b, lo=lo: subrow(lo + r - 1, a, b)
                self.structs[level, k] = build_breakpoint_tree(block, sr)
            else:
                def sr(r, a, b, hi=hi):
                    c, val = subrow(hi + 1 - r, n + 1 - b, n + 1 - a)
                    return n + 1 - c, val
                self.structs[level, k] = build_breakpoint_tree(reverse_both(block), sr)

    def _parts(self, i0, i1, j0, j1):
        """Row intervals and exact entries (global coordinates) covering the rectangle."""
        if i0 == i1:
            return [(i0, j0, j1)], []
        h, left, mid, right = self.tree.split(i0, i1)
        if h == 0:
            return [(i0, j0, j1), (i1, j0, j1)], []
        n = self.oracle.cols
        # suffix [i0, mid] lives in reverse-both coordinates
        ivs, ex = prefix_parts(self.structs[h, left], mid - i0 + 1, n + 1 - j1, n + 1 - j0)
        intervals = [(mid + 1 - r, n + 1 - b, n + 1 - a) for r, a, b in ivs]
        exacts = [] if ex is None else [(mid + 1 - ex[0], n + 1 - ex[1], ex[2])]
        ivs, ex = prefix_parts(self.structs[h, right], i1 - mid, j0, j1)
        intervals += [(mid + r, a, b) for r, a, b in ivs]
        if ex is not None:
            exacts.append((mid + ex[0], ex[1], ex[2]))
        return intervals, exacts

    def query(self, i0: int, i1: int, j0: int, j1: int):
        m, n = self.oracle.rows, self.oracle.cols
        if not (1 <= i0 <= i1 <= m and 1 <= j0 <= j1 <= n):
            raise IndexError(f"rectangle [{i0},{i1}]x[{j0},{j1}] outside {m}x{n}")
        intervals, exacts = self._parts(i0, i1, j0, j1)
        if not self.exact:
            return sorted({r for r, _, _ in intervals}), exacts
        subrow = self.subrow
        for r, a, b in intervals:
            c, v = subrow(r, a, b)
            exacts.append((r, c, v))
        return _best(exacts)

    def words(self) -> int:
        w = sum(t.words() for t in self.structs.values())
        if self.sub_index is not None:
            w += self.sub_index.words()
        return w


class _Side:
    """Slice structures of one orientation (``M`` or its transpose)."""

    def __init__(self, oracle: MatrixOracle):
        self.oracle = oracle
        m, n = oracle.rows, oracle.cols
        f = oracle.entry
        self.x, self.xs = level_sizes(m)
        self.slices = sl = Partition(m, self.x)
        self.micro = [MicroIndex(f, sl.start(a), sl.end(a), n) for a in range(1, sl.groups + 1)]
        self.sub_starts: List[List[int]] = []
        self.sub_micro: List[List[MicroIndex]] = []
        for a in range(1, sl.groups + 1):
            lo, hi = sl.start(a), sl.end(a)
            starts = list(range(lo, hi + 1, self.xs))
            self.sub_starts.append(starts)
            self.sub_micro.append([MicroIndex(f, r, min(r + self.xs - 1, hi), n) for r in starts])
        micro = self.micro
        self.contracted = MatrixOracle(sl.groups, n, lambda a, j: micro[a - 1].value(j))
        self.top = BasicSubmatrixIndex(self.contracted)
        self.inner: List[BasicSubmatrixIndex] = []

    def build_inner(self, other: "_Side"):
        n = self.oracle.cols
        for a in range(1, self.slices.groups + 1):
            subs = self.sub_micro[a - 1]
            starts = self.sub_starts[a - 1]
            end = self.slices.end(a)
            oracle = MatrixOracle(len(subs), n, lambda b, j, subs=subs: subs[b - 1].value(j))

            def values(b, lo, hi, starts=starts, end=end):
                g0 = starts[b - 1]
                g1 = starts[b] - 1 if b < len(starts) else end
                i, j, v = other.thin_rect(lo, hi, g0, g1)
                return i, v
            self.inner.append(BasicSubmatrixIndex(oracle, values, exact=False))

    def sub_range(self, a, p, q):
        """Whole sub-slices of slice ``a`` inside ``[p, q]`` and the leftover rows."""
        starts = self.sub_starts[a - 1]
        base, xs = starts[0], self.xs
        end = self.slices.end(a)
        b0 = (p - base) // xs + 1
        b1 = (q - base) // xs + 1
        sub_end = lambda b: min(base + b * xs - 1, end)
        lead = []
        if p != starts[b0 - 1]:
            lead = list(range(p, min(q, sub_end(b0)) + 1))
            b0 += 1
        tail = []
        if b1 >= b0 and q != sub_end(b1):
            tail = list(range(starts[b1 - 1], q + 1))
            b1 -= 1
        return b0, b1, lead + tail

    def thin_rect(self, i0, i1, g0, g1) -> Answer:
        """Exact maximum over rows ``[i0, i1]`` and a short column range ``[g0, g1]``.

        Used to fill node values of the other side's ``M'_a`` indexes;
        returns coordinates of the other side (column, row swapped back).
        """
        f = self.oracle.entry
        sl = self.slices
        best = None
        a0, a1 = sl.group(i0), sl.group(i1)
        ranges = []
        if a0 == a1:
            ranges.append((a0, i0, i1))
        else:
            first, last = a0, a1
            if i0 != sl.start(a0):
                ranges.append((a0, i0, sl.end(a0)))
                first += 1
            if i1 != sl.end(a1):
                ranges.append((a1, sl.start(a1), i1))
                last -= 1
            if first <= last:
                a, c, v = self.top.query(first, last, g0, g1)
                best = (self.micro[a - 1].row(c), c, v)
        for a, p, q in ranges:
            b0, b1, rows = self.sub_range(a, p, q)
            for r in rows:
                for g in range(g0, g1 + 1):
                    v = f(r, g)
                    if best is None or v > best[2]:
                        best = (r, g, v)
            subs = self.sub_micro[a - 1]
            for b in range(b0, b1 + 1):
                mi = subs[b - 1]
                for g in range(g0, g1 + 1):
                    r, v = mi.column_max(g)
                    if best is None or v > best[2]:
                        best = (r, g, v)
        r, g, v = best
        return g, r, v

    def candidates(self, i0, i1, j0, j1):
        """Candidate rows and exact entries for rows ``[i0, i1]`` x columns ``[j0, j1]``."""
        sl = self.slices
        rows: List[int] = []
        exacts: List[Answer] = []
        a0, a1 = sl.group(i0), sl.group(i1)
        partial = []
        first, last = a0, a1
        if i0 != sl.start(a0) or (a0 == a1 and i1 != sl.end(a1)):
            partial.append((a0, i0, min(i1, sl.end(a0))))
            first += 1
        if a1 > a0 and i1 != sl.end(a1):
            partial.append((a1, sl.start(a1), i1))
            last -= 1
        if first <= last:
            a, c, v = self.top.query(first, last, j0, j1)
            exacts.append((self.micro[a - 1].row(c), c, v))
        for a, p, q in partial:
            b0, b1, lead = self.sub_range(a, p, q)
            rows += lead
            if b0 <= b1:
                cand, ex = self.inner[a - 1].query(b0, b1, j0, j1)
                subs = self.sub_micro[a - 1]
                starts = self.sub_starts[a - 1]
                for b, c, v in ex:
                    exacts.append((subs[b - 1].row(c), c, v))
                for b in cand:
                    g1 = starts[b] - 1 if b < len(starts) else sl.end(a)
                    rows += range(starts[b - 1], g1 + 1)
        return rows, exacts

    def words(self) -> int:
        w = sum(mi.words() for mi in self.micro)
        w += sum(mi.words() for subs in self.sub_micro for mi in subs)
        w += sum(len(s) for s in self.sub_starts)
        w += self.top.words() + sum(ix.words() for ix in self.inner)
        return w


class LinearSubmatrixIndex:
    """O(n) words for an n x n matrix; rectangular inputs use per-dimension slice sizes."""

    def __init__(self, oracle: MatrixOracle):
        self.oracle = oracle
        self.rowside = _Side(oracle)
        self.colside = _Side(transpose(oracle))
        self.rowside.build_inner(self.colside)
        self.colside.build_inner(self.rowside)
        self.last_candidates = (0, 0)

    def query(self, i0: int, i1: int, j0: int, j1: int) -> Answer:
        m, n = self.oracle.rows, self.oracle.cols
        if not (1 <= i0 <= i1 <= m and 1 <= j0 <= j1 <= n):
            raise IndexError(f"rectangle [{i0},{i1}]x[{j0},{j1}] outside {m}x{n}")
        rows, exacts = self.rowside.candidates(i0, i1, j0, j1)
        cols, tex = self.colside.candidates(j0, j1, i0, i1)
        exacts += [(i, j, v) for j, i, v in tex]
        rows = sorted(set(rows))
        cols = sorted(set(cols))
        self.last_candidates = (len(rows), len(cols))
        if rows and cols:
            f = self.oracle.entry
            for c, r in zip(cols, smawk(rows, cols, f)):
                exacts.append((r, c, f(r, c)))
        return _best(exacts)

    def candidate_sets(self, i0, i1, j0, j1) -> Tuple[List[int], List[int]]:
        rows, _ = self.rowside.candidates(i0, i1, j0, j1)
        cols, _ = self.colside.candidates(j0, j1, i0, i1)
        return sorted(set(rows)), sorted(set(cols))

    def words(self) -> int:
        return self.rowside.words() + self.colside.words()


SubmatrixIndex = BasicSubmatrixIndex  # either class answers ``query(i0, i1, j0, j1)``


def build_basic(oracle: MatrixOracle) -> BasicSubmatrixIndex:
    return BasicSubmatrixIndex(oracle)


def build_linear(oracle: MatrixOracle) -> LinearSubmatrixIndex:
    return LinearSubmatrixIndex(oracle)


def submatrix_max(index, i0: int, i1: int, j0: int, j1: int) -> Answer:
    return index.query(i0, i1, j0, j1)
