"""Submatrix maxima on staircase matrices.

Every staircase is handled in a *canonical frame*: rows and/or columns are
flipped so that each row is defined on a prefix ``[1, t_i]`` with ``t``
non-increasing.  Flips break the Monge property, so they are used only for
bookkeeping; every value, fill and SMAWK run happens in original
coordinates, where rectangles stay rectangles.

A query rectangle splits into two fully defined rectangles (answered by a
submatrix index over the filled matrix) and one *dominance region*: all
defined cells with ``i >= i'`` and ``j >= j'``.  ``StaircaseIndex`` answers
that region either from the fragment decomposition (``variant="large"``)
or through a grid of cells and a contracted matrix (``variant="linear"``).
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Dict, List, Optional, Tuple

from .dominance import DominanceIndex
from .matrix import FilledStaircase, MatrixOracle, PartialShape
from .micro import ceil_log2, slice_breakpoints
from .ordered import RangeMaxIndex, SmallSetPredecessor
from .smawk import smawk
from .submatrix import BasicSubmatrixIndex, LinearSubmatrixIndex

Answer = Tuple[int, int, int]
Fragment = Tuple[int, int, int, int]


def _better(best, cand):
    if cand is None:
        return best
    if best is None or cand[2] > best[2]:
        return cand
    return best


class Frame:
    """Coordinate flips taking a staircase orientation to the top-left one."""

    __slots__ = ("m", "n", "orientation", "flip_rows", "flip_cols")

    def __init__(self, m: int, n: int, orientation: str):
        self.m, self.n = m, n
        self.orientation = orientation
        self.flip_rows = orientation in ("bottom-left", "bottom-right")
        self.flip_cols = orientation in ("top-right", "bottom-right")

    def row(self, i: int) -> int:
        return self.m + 1 - i if self.flip_rows else i

    def col(self, j: int) -> int:
        return self.n + 1 - j if self.flip_cols else j

    def rect(self, i0, i1, j0, j1):
        """Image of a rectangle (the map is an involution)."""
        if self.flip_rows:
            i0, i1 = self.m + 1 - i1, self.m + 1 - i0
        if self.flip_cols:
            j0, j1 = self.n + 1 - j1, self.n + 1 - j0
        return i0, i1, j0, j1

    def canonical_t(self, shape: PartialShape) -> List[int]:
        out = []
        for i in range(1, self.m + 1):
            o = self.row(i) - 1
            out.append(self.n + 1 - shape.s[o] if self.flip_cols else shape.t[o])
        return out

    def shape(self, t: List[int]) -> PartialShape:
        """Shape in this frame's orientation whose canonical boundary is ``t``."""
        m, n = self.m, self.n
        s_out, t_out = [0] * m, [0] * m
        for i in range(1, m + 1):
            o = self.row(i) - 1
            if self.flip_cols:
                s_out[o], t_out[o] = n + 1 - t[i - 1], n
            else:
                s_out[o], t_out[o] = 1, t[i - 1]
        return PartialShape(m, n, s_out, t_out)


# ---------------------------------------------------------------------------
# decomposition

def _last_at_least(t, a, b, c):
    """Last row in ``[a, b]`` with ``t >= c`` (``a - 1`` if none); ``t`` non-increasing."""
    lo, hi = a, b
    while lo <= hi:
        mid = (lo + hi) // 2
        if t[mid - 1] >= c:
            lo = mid + 1
        else:
            hi = mid - 1
    return hi


def _decompose(t: List[int], a: int, b: int, c: int, d: int, out: List[Fragment]):
    # region: rows [a, b], columns c..min(d, t_i)
    b = _last_at_least(t, a, b, c)
    if b < a or c > d:
        return
    mid = (a + b) // 2
    tm = t[mid - 1]
    out.append((a, mid, c, min(d, tm)))
    if tm < d:
        k = _last_at_least(t, a, mid - 1, tm + 1)
        if k >= a:
            _decompose(t, a, k, tm + 1, d, out)
    if mid < b:
        _decompose(t, mid + 1, b, c, min(d, t[mid]), out)


def decompose_t(t: List[int], n: int) -> List[Fragment]:
    out: List[Fragment] = []
    if t:
        _decompose(t, 1, len(t), 1, n, out)
    return out


def decompose_staircase(shape: PartialShape) -> List[Fragment]:
    """Fragments ``(r0, r1, c0, c1)`` tiling a top-left staircase."""
    if shape.staircase_orientation() != "top-left" and not shape.is_full():
        raise ValueError("decompose_staircase expects the top-left orientation; "
                         "flip the shape first (see Frame)")
    return decompose_t(shape.t, shape.cols)


def line_crossings(fragments: List[Fragment], m: int) -> List[int]:
    """Number of fragments meeting each row."""
    count = [0] * (m + 2)
    for r0, r1, _, _ in fragments:
        count[r0] += 1
        count[r1 + 1] -= 1
    out, run = [], 0
    for i in range(1, m + 1):
        run += count[i]
        out.append(run)
    return out


# ---------------------------------------------------------------------------
# cell maxima

class _SliceMaxima:
    """Breakpoints of every row slice with interval maxima and a range maximum over them."""

    def __init__(self, f, m, n, starts, subrow):
        self.starts = starts
        self.slices = []
        for a, lo in enumerate(starts):
            hi = starts[a + 1] - 1 if a + 1 < len(starts) else m
            cols, rows = slice_breakpoints(f, lo, hi, n)
            vals, args = [], []
            for k, c in enumerate(cols):
                end = cols[k + 1] - 1 if k + 1 < len(cols) else n
                j, v = subrow(rows[k], c, end)
                vals.append(v)
                args.append(j)
            self.slices.append((SmallSetPredecessor(cols, n + 1), rows, args, RangeMaxIndex(vals)))

    def candidates(self, a, c0, c1):
        pred, rows, args, rmq = self.slices[a]
        k0 = pred.rank(c0) - 1
        k1 = pred.rank(c1) - 1
        exact = None
        if k1 - k0 >= 2:
            p = rmq.argmax0(k0 + 1, k1 - 1)
            exact = (rows[p], args[p], rmq.values[p])
        return rows[k0], rows[k1], exact

    def words(self):
        return sum(len(r) * 2 + p.words() + q.words() for p, r, _, q in self.slices)


class CellMaxima:
    """O(1) maximum of any grid cell of a full Monge oracle.

    Each row slice yields at most two candidate rows plus one exact entry;
    the column slices do the same for columns, and the two candidate sets
    meet in at most four probes.
    """

    def __init__(self, oracle: MatrixOracle, row_starts: List[int], col_starts: List[int],
                 subrow, subcol):
        f = oracle.entry
        m, n = oracle.rows, oracle.cols
        self.f = f
        self.row_index = {r: a for a, r in enumerate(row_starts)}
        self.col_index = {c: a for a, c in enumerate(col_starts)}
        self.rows = _SliceMaxima(f, m, n, row_starts, subrow)
        self.cols = _SliceMaxima(lambda j, i: f(i, j), n, m, col_starts, subcol)

    def query(self, r0: int, r1: int, c0: int, c1: int) -> Answer:
        f = self.f
        ra, rb, ex = self.rows.candidates(self.row_index[r0], c0, c1)
        ca, cb, ex2 = self.cols.candidates(self.col_index[c0], r0, r1)
        best = ex
        if ex2 is not None:
            best = _better(best, (ex2[1], ex2[0], ex2[2]))
        for i in (ra, rb):
            for j in (ca, cb):
                best = _better(best, (i, j, f(i, j)))
        return best

    def words(self) -> int:
        return self.rows.words() + self.cols.words() + len(self.row_index) + len(self.col_index)


def cell_maxima_build(oracle: MatrixOracle, g: int) -> CellMaxima:
    """Cells of side ``g`` aligned at (1, 1); subrow maxima come from a basic index."""
    full = BasicSubmatrixIndex(oracle)
    subrow = lambda i, lo, hi: full.query(i, i, lo, hi)[1:]
    subcol = lambda j, lo, hi: (lambda a: (a[0], a[2]))(full.query(lo, hi, j, j))
    return CellMaxima(oracle, list(range(1, oracle.rows + 1, g)),
                      list(range(1, oracle.cols + 1, g)), subrow, subcol)


# ---------------------------------------------------------------------------
# dominance regions

class _FragmentDominance:
    """Dominance-region maxima from the fragment decomposition (O(n log n) words)."""

    def __init__(self, ix: "StaircaseIndex"):
        t, frame, f = ix.t, ix.frame, ix.oracle.entry
        m, n = frame.m, frame.n
        self.ix = ix
        self.fragments = frags = decompose_t(t, n)
        self.best: List[Answer] = []
        rows_below: Dict[int, List[Tuple[int, Answer]]] = {}
        cols_right: Dict[int, List[Tuple[int, Answer]]] = {}
        cover: Dict[int, List[Tuple[int, int]]] = {}
        for k, (r0, r1, c0, c1) in enumerate(frags):
            o0, o1, p0, p1 = frame.rect(r0, r1, c0, c1)
            orows = range(o0, o1 + 1)
            ocols = range(p0, p1 + 1)
            col_win = dict(zip(ocols, smawk(orows, ocols, f)))
            row_win = dict(zip(orows, smawk(ocols, orows, lambda j, i: f(i, j))))
            acc = None
            for x in range(c1, c0 - 1, -1):
                oc = frame.col(x)
                acc = _better(acc, (col_win[oc], oc, f(col_win[oc], oc)))
                if x > c0:
                    cols_right.setdefault(x, []).append((r0, acc))
            self.best.append(acc)
            acc = None
            for y in range(r1, r0 - 1, -1):
                orow = frame.row(y)
                acc = _better(acc, (orow, row_win[orow], f(orow, row_win[orow])))
                if y > r0:
                    rows_below.setdefault(y, []).append((c0, acc))
                cover.setdefault(y, []).append((c0, k))
        self.dominance = DominanceIndex([(c0, r0, self.best[k][2])
                                         for k, (r0, _, c0, _) in enumerate(frags)])
        self.rows_below = {y: _suffix_table(v) for y, v in rows_below.items()}
        self.cols_right = {x: _suffix_table(v) for x, v in cols_right.items()}
        self.cover = {}
        for y, v in cover.items():
            v.sort()
            self.cover[y] = ([c for c, _ in v], [k for _, k in v])

    def dom(self, i: int, j: int) -> Optional[Answer]:
        ix = self.ix
        if i > len(ix.t) or ix.t[i - 1] < j:
            return None
        cols, ids = self.cover[i]
        r0, r1, c0, c1 = self.fragments[ids[bisect_right(cols, j) - 1]]
        best = ix.rect(i, r1, j, c1)
        k = self.dominance.query(j, i)
        if k >= 0:
            best = _better(best, self.best[k])
        table = self.rows_below.get(i)
        if table is not None:
            keys, suf = table
            p = bisect_left(keys, j)
            if p < len(keys):
                best = _better(best, suf[p])
        table = self.cols_right.get(j)
        if table is not None:
            keys, suf = table
            p = bisect_left(keys, i)
            if p < len(keys):
                best = _better(best, suf[p])
        return best

    def words(self) -> int:
        w = 5 * len(self.fragments) + 3 * len(self.best) + self.dominance.words()
        for table in (self.rows_below, self.cols_right):
            w += sum(4 * len(k) for k, _ in table.values())
        w += sum(2 * len(c) for c, _ in self.cover.values())
        return w


def _suffix_table(items):
    items.sort(key=lambda kv: kv[0])
    keys = [k for k, _ in items]
    suf: List[Answer] = [None] * len(items)
    acc = None
    for p in range(len(items) - 1, -1, -1):
        acc = _better(acc, items[p][1])
        suf[p] = acc
    return keys, suf


class _NaiveRegion:
    """Scan of a small canonical block."""

    __slots__ = ("ix", "R1", "C1")

    def __init__(self, ix, R0, R1, C0, C1):
        self.ix, self.R1, self.C1 = ix, R1, C1

    def dom(self, i, j):
        ix = self.ix
        t, frame, f = ix.t, ix.frame, ix.oracle.entry
        best = None
        for r in range(i, self.R1 + 1):
            hi = min(t[r - 1], self.C1)
            if hi < j:
                break
            orow = frame.row(r)
            for c in range(j, hi + 1):
                oc = frame.col(c)
                best = _better(best, (orow, oc, f(orow, oc)))
        return best

    def words(self):
        return 3


class _CellLevel:
    """Dominance regions of a canonical block via a grid of ``g``-sided cells.

    Full cells form a contracted staircase answered by a large index;
    partial cells are ordered by (cell row up, cell column down) under a
    range maximum, and per-row/per-column tables give the bands cut by the
    query lines.  Partial cells recurse with the next side length.
    """

    def __init__(self, ix: "StaircaseIndex", R0, R1, C0, C1, sides):
        g = sides[0]
        self.ix, self.g = ix, g
        self.R0, self.R1, self.C0, self.C1 = R0, R1, C0, C1
        t = ix.t
        h, w = R1 - R0 + 1, C1 - C0 + 1
        nr, nc = -(-h // g), -(-w // g)
        self.nr, self.nc = nr, nc
        tt = lambda i: min(t[i - 1], C1) - C0 + 1

        jn = [0] * (nr + 2)
        jf = [0] * (nr + 2)
        for I in range(1, nr + 1):
            ts, te = tt(self.rs(I)), tt(self.re(I))
            jn[I] = 0 if ts <= 0 else min(nc, (ts - 1) // g + 1)
            jf[I] = nc if te >= w else max(0, te // g)
        # promote full cells next to each corner so consecutive partial cells touch
        full = [nc] + [0] * (nr + 1)
        for I in range(1, nr + 1):
            cap = jn[I + 1] - 1 if I < nr and jn[I + 1] > 0 else jf[I]
            full[I] = min(jf[I], cap, full[I - 1])
        self.jn, self.full = jn, full
        self.last_full_row = [0] * (nc + 2)  # per cell column
        for J in range(1, nc + 1):
            self.last_full_row[J] = sum(1 for I in range(1, nr + 1) if full[I] >= J)

        nxt = sides[1:]
        self.sub: Dict[Tuple[int, int], object] = {}
        order: List[Tuple[int, int]] = []
        self.row_first = [0] * (nr + 2)
        for I in range(1, nr + 1):
            self.row_first[I] = len(order)
            for J in range(jn[I], full[I], -1):
                order.append((I, J))
                a0, a1, b0, b1 = self.rs(I), self.re(I), self.cs(J), self.ce(J)
                if nxt and max(a1 - a0, b1 - b0) + 1 > nxt[0]:
                    self.sub[I, J] = _CellLevel(ix, a0, a1, b0, b1, nxt)
                else:
                    self.sub[I, J] = _NaiveRegion(ix, a0, a1, b0, b1)
        self.row_first[nr + 1] = len(order)
        self.order = order
        self.neg_col = [-J for _, J in order]
        best = [self.sub[c].dom(self.rs(c[0]), self.cs(c[1])) for c in order]
        self.partial_best = best
        self.partial_rmq = RangeMaxIndex([b[2] for b in best]) if best else None

        # horizontal tables: prefix maxima over partial cells (J descending) per row offset
        self.H: Dict[int, List[List[Answer]]] = {}
        for I in range(1, nr + 1):
            cells = order[self.row_first[I]:self.row_first[I + 1]]
            if not cells:
                continue
            table = []
            for y in range(self.rs(I), self.re(I) + 1):
                acc, run = None, []
                for c in cells:
                    acc = _better(acc, self.sub[c].dom(y, self.cs(c[1])))
                    run.append(acc)
                table.append(run)
            self.H[I] = table
        # vertical tables: suffix maxima over partial cells (I ascending) per column offset
        by_col: Dict[int, List[int]] = {}
        for I, J in order:
            by_col.setdefault(J, []).append(I)
        self.V: Dict[int, Tuple[int, List[List[Answer]]]] = {}
        for J, rows in by_col.items():
            rows.sort()
            table = []
            for x in range(self.cs(J), self.ce(J) + 1):
                acc, run = None, []
                for I in reversed(rows):
                    acc = _better(acc, self.sub[I, J].dom(self.rs(I), x))
                    run.append(acc)
                table.append(run[::-1])
            self.V[J] = (rows[0], table)

        self.imax = sum(1 for I in range(1, nr + 1) if full[I] >= 1)
        self.contracted = None
        if self.imax:
            self._build_contracted()

    def rs(self, I):
        return self.R0 + (I - 1) * self.g

    def re(self, I):
        return min(self.R0 + I * self.g - 1, self.R1)

    def cs(self, J):
        return self.C0 + (J - 1) * self.g

    def ce(self, J):
        return min(self.C0 + J * self.g - 1, self.C1)

    def _cell(self, I, J) -> Answer:
        ix = self.ix
        return ix.cell_max(self.g, *ix.frame.rect(self.rs(I), self.re(I), self.cs(J), self.ce(J)))

    def _build_contracted(self):
        frame = self.ix.frame
        cframe = Frame(self.imax, self.nc, frame.orientation)
        self.cframe = cframe
        cell = self._cell
        oracle = MatrixOracle(self.imax, self.nc,
                              lambda a, b: cell(cframe.row(a), cframe.col(b))[2])
        shape = cframe.shape(self.full[1:self.imax + 1])
        self.contracted = StaircaseIndex(oracle, shape, variant="large", full="basic",
                                         orientation=frame.orientation)

    def dom(self, i, j) -> Optional[Answer]:
        ix = self.ix
        if ix.t[i - 1] < j:
            return None
        g = self.g
        I = (i - self.R0) // g + 1
        J = (j - self.C0) // g + 1
        full, jn = self.full, self.jn
        best = None
        # the corner cell
        if J <= full[I]:
            best = ix.rect(i, self.re(I), j, self.ce(J))
        elif J <= jn[I]:
            best = self.sub[I, J].dom(i, j)
        # rest of the cell row
        if J < full[I]:
            best = _better(best, ix.rect(i, self.re(I), self.cs(J + 1), self.ce(full[I])))
        cnt = jn[I] - max(full[I] + 1, J + 1) + 1
        if cnt > 0:
            best = _better(best, self.H[I][i - self.rs(I)][cnt - 1])
        # rest of the cell column
        last = self.last_full_row[J]
        if last > I:
            best = _better(best, ix.rect(self.rs(I + 1), self.re(last), j, self.ce(J)))
        entry = self.V.get(J)
        if entry is not None:
            first, table = entry
            run = table[j - self.cs(J)]
            k = max(first, I + 1) - first
            if k < len(run):
                best = _better(best, run[k])
        # cells strictly below and to the right
        if self.contracted is not None and I < self.imax and J < self.nc:
            hit = self.contracted.dom_canonical(I + 1, J + 1)
            if hit is not None:
                a, b = self.cframe.row(hit[0]), self.cframe.col(hit[1])
                best = _better(best, self._cell(a, b))
        if self.partial_rmq is not None and I < self.nr:
            lo = self.row_first[I + 1]
            hi = bisect_right(self.neg_col, -(J + 1)) - 1
            if lo <= hi:
                best = _better(best, self.partial_best[self.partial_rmq.argmax0(lo, hi)])
        return best

    def words(self) -> int:
        w = 3 * (self.nr + 2) + self.nc + 2 + 3 * len(self.order)
        if self.partial_rmq is not None:
            w += self.partial_rmq.words()
        w += sum(3 * len(r) for table in self.H.values() for r in table)
        w += sum(3 * len(r) + 1 for _, table in self.V.values() for r in table)
        w += sum(s.words() for s in self.sub.values())
        if self.contracted is not None:
            w += self.contracted.words()
        return w


# ---------------------------------------------------------------------------
# the index

class StaircaseIndex:
    """Rectangle maxima over the defined cells of a staircase matrix.

    ``variant="large"`` keeps the fragment tables (O(n log n) words);
    ``variant="linear"`` works on cells of side about ``log n``, recursing
    once more on ``log log n`` cells before scanning.  ``full`` picks the
    submatrix index used for fully defined rectangles.
    """

    def __init__(self, oracle: MatrixOracle, shape: PartialShape,
                 variant: str = "large", full: str = "basic",
                 orientation: Optional[str] = None):
        if variant not in ("large", "linear"):
            raise ValueError(f"unknown staircase variant {variant!r}")
        if orientation is None:
            orientation = "top-left" if shape.is_full() else shape.staircase_orientation()
        if orientation is None:
            raise ValueError("shape is not a staircase; use mongeq.partial.PartialIndex")
        self.oracle = oracle
        self.shape = shape
        self.variant = variant
        m, n = oracle.rows, oracle.cols
        self.frame = Frame(m, n, orientation)
        self.t = self.frame.canonical_t(shape)
        self.filled = FilledStaircase(oracle, shape)
        if full == "basic":
            self.full = BasicSubmatrixIndex(self.filled)
        elif full == "linear":
            self.full = LinearSubmatrixIndex(self.filled)
        else:
            raise ValueError(f"unknown full-index kind {full!r}")
        # first row whose boundary falls below column j
        self.first_lt = [0] * (n + 2)
        p = m + 1
        for j in range(n + 2):
            while p > 1 and self.t[p - 2] < j:
                p -= 1
            self.first_lt[j] = p
        self._cells: Dict[int, CellMaxima] = {}
        if variant == "large":
            self.region = _FragmentDominance(self)
        else:
            self.sides = cell_sides(max(m, n))
            if max(m, n) > self.sides[0]:
                self.region = _CellLevel(self, 1, m, 1, n, self.sides)
            else:
                self.region = _NaiveRegion(self, 1, m, 1, n)

    def rect(self, i0, i1, j0, j1) -> Answer:
        """Maximum of a fully defined canonical rectangle, in original coordinates."""
        i, j, v = self.full.query(*self.frame.rect(i0, i1, j0, j1))
        return i, j, v + self.filled.shift

    def cell_max(self, g, r0, r1, c0, c1) -> Answer:
        cm = self._cells.get(g)
        if cm is None:
            cm = self._cells[g] = self._build_cells(g)
        i, j, v = cm.query(r0, r1, c0, c1)
        return i, j, v + self.filled.shift

    def _build_cells(self, g) -> CellMaxima:
        frame = self.frame
        m, n = frame.m, frame.n
        rows = sorted(frame.rect(a, min(a + g - 1, m), 1, 1)[0] for a in range(1, m + 1, g))
        cols = sorted(frame.rect(1, 1, b, min(b + g - 1, n))[2] for b in range(1, n + 1, g))
        q = self.full.query
        subrow = lambda i, lo, hi: q(i, i, lo, hi)[1:]

        def subcol(j, lo, hi):
            i, _, v = q(lo, hi, j, j)
            return i, v
        return CellMaxima(self.filled, rows, cols, subrow, subcol)

    def dom_canonical(self, i: int, j: int) -> Optional[Answer]:
        return self.region.dom(i, j)

    def query(self, i0: int, i1: int, j0: int, j1: int) -> Optional[Answer]:
        m, n = self.frame.m, self.frame.n
        if not (1 <= i0 <= i1 <= m and 1 <= j0 <= j1 <= n):
            raise IndexError(f"rectangle [{i0},{i1}]x[{j0},{j1}] outside {m}x{n}")
        a0, a1, b0, b1 = self.frame.rect(i0, i1, j0, j1)
        t = self.t
        if t[a0 - 1] < b0:
            return None
        b1 = min(b1, t[a0 - 1])
        best = None
        if b0 <= t[a1 - 1]:
            best = self.rect(a0, a1, b0, min(b1, t[a1 - 1]))
        jp = max(b0, t[a1 - 1] + 1)
        if jp <= b1:
            ip = max(a0, self.first_lt[b1])
            if ip > a0:
                best = _better(best, self.rect(a0, ip - 1, jp, b1))
            best = _better(best, self.region.dom(ip, jp))
        return best

    def maximum(self) -> Answer:
        return self.query(1, self.frame.m, 1, self.frame.n)

    def words(self) -> int:
        w = len(self.t) + len(self.first_lt) + self.full.words() + self.region.words()
        return w + sum(c.words() for c in self._cells.values())


def cell_sides(n: int) -> List[int]:
    """Cell sides of the two recursion levels; the first is a multiple of the second."""
    g1 = max(2, ceil_log2(n))
    g2 = max(2, ceil_log2(g1))
    return [g2 * -(-g1 // g2), g2]


def staircase_build(oracle: MatrixOracle, shape: PartialShape, variant: str = "large",
                    full: str = "basic") -> StaircaseIndex:
    return StaircaseIndex(oracle, shape, variant, full)


def staircase_query(index: StaircaseIndex, i0: int, i1: int, j0: int, j1: int):
    return index.query(i0, i1, j0, j1)
