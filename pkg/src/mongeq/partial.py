"""Submatrix maxima on general partial Monge matrices.

The rows split into three slices.  In the first, ``s`` falls while ``t``
rises; in the last, ``s`` rises while ``t`` falls; one column cut turns
each of them into two staircases.  In the middle slice both boundaries move
the same way, and it is cut into blocks: block ``k`` yields an *A* piece
(the block rows restricted to the first row's interval) and a *B* piece
(the cells to the far side of it).  All A pieces are pairwise row- and
column-disjoint, as are all B pieces, so a query meets a contiguous run of
each collection; only the two ends of a run can be cut by the rectangle.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from .matrix import MatrixOracle, PartialShape, submatrix
from .ordered import PredecessorSet, RangeMaxIndex
from .smawk import smawk
from .staircase import Frame, StaircaseIndex, decompose_t

Answer = Tuple[int, int, int]


class Piece:
    """A staircase sub-rectangle ``[r0, r1] x [c0, c1]`` with its local shape."""

    __slots__ = ("r0", "r1", "c0", "c1", "shape")

    def __init__(self, r0, r1, c0, c1, s, t):
        self.r0, self.r1, self.c0, self.c1 = r0, r1, c0, c1
        self.shape = PartialShape(r1 - r0 + 1, c1 - c0 + 1,
                                  [x - c0 + 1 for x in s], [x - c0 + 1 for x in t])

    def __repr__(self):
        return f"Piece([{self.r0},{self.r1}]x[{self.c0},{self.c1}], {self.shape})"

    def orientation(self) -> str:
        return "top-left" if self.shape.is_full() else self.shape.staircase_orientation()


def _piece(shape, r0, r1, c0, c1) -> Optional[Piece]:
    if r0 > r1 or c0 > c1:
        return None
    s = [max(shape.s[i - 1], c0) for i in range(r0, r1 + 1)]
    t = [min(shape.t[i - 1], c1) for i in range(r0, r1 + 1)]
    return Piece(r0, r1, c0, c1, s, t)


def _prefix_end(seq, ok):
    k = 1
    while k < len(seq) and ok(seq[k - 1], seq[k]):
        k += 1
    return k


def _suffix_start(seq, ok):
    k = len(seq)
    while k > 1 and ok(seq[k - 2], seq[k - 1]):
        k -= 1
    return k


def partition(shape: PartialShape) -> Tuple[List[Piece], List[Piece], List[Piece], bool]:
    """``(outer pieces, A collection, B collection, middle rises)``."""
    shape.validate()
    m = shape.rows
    s, t = shape.s, shape.t
    le, ge = (lambda a, b: a <= b), (lambda a, b: a >= b)
    p1 = min(_prefix_end(s, ge), _prefix_end(t, le))
    q = max(_suffix_start(s, le), _suffix_start(t, ge), p1 + 1)

    outer: List[Piece] = []
    # first slice: widening rows, cut at the top row's right end
    x = t[0]
    outer.append(_piece(shape, 1, p1, s[p1 - 1], x))
    k = next((i for i in range(1, p1 + 1) if t[i - 1] > x), None)
    if k is not None:
        outer.append(_piece(shape, k, p1, x + 1, t[p1 - 1]))
    # last slice: narrowing rows, cut at the bottom row's right end
    if q <= m:
        x = t[m - 1]
        outer.append(_piece(shape, q, m, s[q - 1], x))
        k = next((i for i in range(m, q - 1, -1) if t[i - 1] > x), None)
        if k is not None:
            outer.append(_piece(shape, q, k, x + 1, t[q - 1]))

    first, last = p1 + 1, q - 1
    rising = True
    coll_a: List[Piece] = []
    coll_b: List[Piece] = []
    if first <= last:
        rows = range(first, last + 1)
        rising = all(s[i] >= s[i - 1] and t[i] >= t[i - 1] for i in range(first, last))
        if not rising and not all(s[i] <= s[i - 1] and t[i] <= t[i - 1] for i in range(first, last)):
            raise AssertionError("middle slice boundaries are not co-monotone")
        r = first
        while r <= last:
            sr, tr = s[r - 1], t[r - 1]
            if rising:
                nxt = next((i for i in rows if i > r and s[i - 1] > tr), last + 1)
                coll_a.append(_piece(shape, r, nxt - 1, sr, tr))
                k = next((i for i in range(r, nxt) if t[i - 1] > tr), None)
                if k is not None:
                    coll_b.append(_piece(shape, k, nxt - 1, tr + 1, t[nxt - 2]))
            else:
                nxt = next((i for i in rows if i > r and t[i - 1] < sr), last + 1)
                coll_a.append(_piece(shape, r, nxt - 1, sr, tr))
                k = next((i for i in range(r, nxt) if s[i - 1] < sr), None)
                if k is not None:
                    coll_b.append(_piece(shape, k, nxt - 1, s[nxt - 2], sr - 1))
            r = nxt
    return [p for p in outer if p is not None], coll_a, coll_b, rising


def decompose_partial(shape: PartialShape) -> List[Piece]:
    """Staircase pieces whose defined cells tile the shape exactly."""
    outer, coll_a, coll_b, _ = partition(shape)
    return outer + coll_a + coll_b


def staircase_fragments(piece: Piece):
    """Fully defined rectangles ``(r0, r1, c0, c1)`` (original coordinates) tiling a piece."""
    sh = piece.shape
    frame = Frame(sh.rows, sh.cols, piece.orientation())
    for a0, a1, b0, b1 in decompose_t(frame.canonical_t(sh), sh.cols):
        i0, i1, j0, j1 = frame.rect(a0, a1, b0, b1)
        yield i0 + piece.r0 - 1, i1 + piece.r0 - 1, j0 + piece.c0 - 1, j1 + piece.c0 - 1


def piece_maximum(oracle: MatrixOracle, piece: Piece) -> Answer:
    """Maximum defined entry of a piece: SMAWK on each of its fragments."""
    f = oracle.entry
    best = None
    for r0, r1, c0, c1 in staircase_fragments(piece):
        cols = range(c0, c1 + 1)
        for c, r in zip(cols, smawk(range(r0, r1 + 1), cols, f)):
            v = f(r, c)
            if best is None or v > best[2]:
                best = (r, c, v)
    return best


class _Placed:
    """A piece with its own staircase index, queried in global coordinates."""

    __slots__ = ("piece", "index")

    def __init__(self, oracle, piece: Piece, variant, full):
        self.piece = piece
        sub = submatrix(oracle, piece.r0, piece.r1, piece.c0, piece.c1)
        self.index = StaircaseIndex(sub, piece.shape, variant=variant, full=full)

    def query(self, i0, i1, j0, j1) -> Optional[Answer]:
        p = self.piece
        i0, i1 = max(i0, p.r0), min(i1, p.r1)
        j0, j1 = max(j0, p.c0), min(j1, p.c1)
        if i0 > i1 or j0 > j1:
            return None
        hit = self.index.query(i0 - p.r0 + 1, i1 - p.r0 + 1, j0 - p.c0 + 1, j1 - p.c0 + 1)
        if hit is None:
            return None
        return hit[0] + p.r0 - 1, hit[1] + p.c0 - 1, hit[2]


class _Collection:
    """Pairwise row- and column-disjoint pieces in row order."""

    def __init__(self, oracle, pieces: List[Piece], rising: bool, variant, full):
        self.placed = [_Placed(oracle, p, variant, full) for p in pieces]
        # falling column ranges are mirrored so both bound lists increase
        self.mirror = 0 if rising else oracle.cols + 1
        col = (lambda c: c) if rising else (lambda c: self.mirror - c)
        self.r0 = PredecessorSet([p.r0 for p in pieces])
        self.r1 = PredecessorSet([p.r1 for p in pieces])
        self.c0 = PredecessorSet([min(col(p.c0), col(p.c1)) for p in pieces])
        self.c1 = PredecessorSet([max(col(p.c0), col(p.c1)) for p in pieces])
        self.best = [piece_maximum(oracle, p) for p in pieces]
        self.rmq = RangeMaxIndex([b[2] for b in self.best]) if pieces else None

    def query(self, i0, i1, j0, j1) -> Optional[Answer]:
        if not self.placed:
            return None
        a = self.r1.succ_index(i0)
        b = self.r0.pred_index(i1)
        if self.mirror:
            c = self.c1.succ_index(self.mirror - j1)
            d = self.c0.pred_index(self.mirror - j0)
        else:
            c = self.c1.succ_index(j0)
            d = self.c0.pred_index(j1)
        lo, hi = max(a, c), min(b, d)
        if lo > hi:
            return None
        best = self.placed[lo].query(i0, i1, j0, j1)
        if hi > lo:
            hit = self.placed[hi].query(i0, i1, j0, j1)
            if hit is not None and (best is None or hit[2] > best[2]):
                best = hit
        if hi - lo >= 2:
            hit = self.best[self.rmq.argmax0(lo + 1, hi - 1)]
            if best is None or hit[2] > best[2]:
                best = hit
        return best

    def words(self) -> int:
        if not self.placed:
            return 0
        w = sum(p.index.words() + 4 for p in self.placed) + 3 * len(self.best)
        w += self.rmq.words() + sum(ps.words() for ps in (self.r0, self.r1, self.c0, self.c1))
        return w


class PartialIndex:
    """Rectangle maxima over the defined cells of a partial Monge matrix."""

    def __init__(self, oracle: MatrixOracle, shape: PartialShape,
                 variant: str = "large", full: str = "basic"):
        if (shape.rows, shape.cols) != (oracle.rows, oracle.cols):
            raise ValueError("shape does not match the oracle dimensions")
        self.oracle, self.shape = oracle, shape
        outer, coll_a, coll_b, rising = partition(shape)
        self.outer = [_Placed(oracle, p, variant, full) for p in outer]
        self.collections = [_Collection(oracle, coll_a, rising, variant, full),
                            _Collection(oracle, coll_b, rising, variant, full)]

    def query(self, i0: int, i1: int, j0: int, j1: int) -> Optional[Answer]:
        m, n = self.shape.rows, self.shape.cols
        if not (1 <= i0 <= i1 <= m and 1 <= j0 <= j1 <= n):
            raise IndexError(f"rectangle [{i0},{i1}]x[{j0},{j1}] outside {m}x{n}")
        best = None
        for part in self.outer + self.collections:
            hit = part.query(i0, i1, j0, j1)
            if hit is not None and (best is None or hit[2] > best[2]):
                best = hit
        return best

    def words(self) -> int:
        return sum(p.index.words() + 4 for p in self.outer) + sum(c.words() for c in self.collections)


def partial_build(oracle: MatrixOracle, shape: PartialShape, variant: str = "large",
                  full: str = "basic") -> PartialIndex:
    return PartialIndex(oracle, shape, variant, full)


def partial_query(index: PartialIndex, i0: int, i1: int, j0: int, j1: int) -> Optional[Answer]:
    return index.query(i0, i1, j0, j1)
