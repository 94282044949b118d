"""Matrix oracles, Monge generators, orientation views and staircase filling.

All coordinates are 1-based: rows ``1..m`` and columns ``1..n``.  The
"max convention" is ``M[i,k] + M[j,l] >= M[i,l] + M[j,k]`` for ``i < j`` and
``k < l``; every index in this package answers maximum queries on matrices
of that kind.  Minimum queries are obtained by negating the oracle.
"""
from __future__ import annotations

import random
from typing import Callable, List, Optional, Sequence, Tuple

Entry = Callable[[int, int], int]

# generators keep |entry| below this so four-term sums stay in a signed word
VALUE_BOUND = 1 << 40


class MatrixOracle:
    """An ``m x n`` matrix given by an O(1) entry accessor."""

    __slots__ = ("rows", "cols", "entry")

    def __init__(self, rows: int, cols: int, entry: Entry):
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.entry = entry

    def __repr__(self):
        return f"{type(self).__name__}({self.rows}x{self.cols})"

    def materialize(self) -> List[List[int]]:
        f = self.entry
        return [[f(i, j) for j in range(1, self.cols + 1)] for i in range(1, self.rows + 1)]


class ExplicitMatrix(MatrixOracle):
    """A materialized matrix; ``None`` marks an undefined entry."""

    __slots__ = ("data",)

    def __init__(self, data: Sequence[Sequence[Optional[int]]]):
        if not data or not data[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged matrix rows")
        self.data = [list(row) for row in data]
        rows = self.data

        def entry(i, j):
            return rows[i - 1][j - 1]

        super().__init__(len(data), width, entry)


class CountingOracle(MatrixOracle):
    """Wraps an oracle and counts entry probes."""

    __slots__ = ("base", "probes")

    def __init__(self, base: MatrixOracle):
        self.base = base
        self.probes = 0
        f = base.entry

        def entry(i, j):
            self.probes += 1
            return f(i, j)

        super().__init__(base.rows, base.cols, entry)


class OrientationView(MatrixOracle):
    """Identity, transpose or reverse-both view of a base oracle.

    Both non-trivial transforms preserve the Monge property.
    """

    __slots__ = ("base", "transform")

    TRANSFORMS = ("identity", "transpose", "reverse-both")

    def __init__(self, base: MatrixOracle, transform: str = "identity"):
        f = base.entry
        m, n = base.rows, base.cols
        if transform == "identity":
            super().__init__(m, n, f)
        elif transform == "transpose":
            super().__init__(n, m, lambda i, j: f(j, i))
        elif transform == "reverse-both":
            super().__init__(m, n, lambda i, j: f(m + 1 - i, n + 1 - j))
        else:
            raise ValueError(f"unknown transform {transform!r}")
        self.base = base
        self.transform = transform


def transpose(oracle: MatrixOracle) -> MatrixOracle:
    return OrientationView(oracle, "transpose")


def reverse_both(oracle: MatrixOracle) -> MatrixOracle:
    return OrientationView(oracle, "reverse-both")


def negate(oracle: MatrixOracle) -> MatrixOracle:
    """Negated oracle: turns a min-convention Monge matrix into a max-convention one."""
    f = oracle.entry
    return MatrixOracle(oracle.rows, oracle.cols, lambda i, j: -f(i, j))


def submatrix(oracle: MatrixOracle, r0: int, r1: int, c0: int, c1: int) -> MatrixOracle:
    """Contiguous block ``[r0, r1] x [c0, c1]`` re-indexed from 1."""
    f = oracle.entry
    dr, dc = r0 - 1, c0 - 1
    return MatrixOracle(r1 - r0 + 1, c1 - c0 + 1, lambda i, j: f(i + dr, j + dc))


class PartialShape:
    """Per-row defined intervals ``[s_i, t_i]`` of a partial matrix.

    ``s`` and ``t`` are plain lists indexed from 0 (row ``i`` lives at
    position ``i - 1``); their values are 1-based columns.
    """

    __slots__ = ("rows", "cols", "s", "t")

    def __init__(self, rows: int, cols: int, s: Sequence[int], t: Sequence[int]):
        self.rows = rows
        self.cols = cols
        self.s = list(s)
        self.t = list(t)

    @classmethod
    def full(cls, rows: int, cols: int) -> "PartialShape":
        return cls(rows, cols, [1] * rows, [cols] * rows)

    @classmethod
    def from_matrix(cls, data: Sequence[Sequence[Optional[int]]]) -> "PartialShape":
        s, t = [], []
        for r, row in enumerate(data, 1):
            cols = [j for j, v in enumerate(row, 1) if v is not None]
            if not cols:
                raise ValueError(f"row {r} has no defined entry")
            if cols[-1] - cols[0] + 1 != len(cols):
                raise ValueError(f"row {r}: defined entries are not contiguous")
            s.append(cols[0])
            t.append(cols[-1])
        shape = cls(len(data), len(data[0]), s, t)
        shape.validate()
        return shape

    def defined(self, i: int, j: int) -> bool:
        return self.s[i - 1] <= j <= self.t[i - 1]

    def is_full(self) -> bool:
        return all(a == 1 for a in self.s) and all(b == self.cols for b in self.t)

    def validate(self) -> None:
        if len(self.s) != self.rows or len(self.t) != self.rows:
            raise ValueError("shape sequences do not match the row count")
        for i, (a, b) in enumerate(zip(self.s, self.t), 1):
            if not 1 <= a <= b <= self.cols:
                raise ValueError(f"row {i}: invalid defined interval [{a}, {b}]")
        if not _is_valley(self.s):
            raise ValueError("s must be non-increasing then non-decreasing")
        if not _is_valley([-b for b in self.t]):
            raise ValueError("t must be non-decreasing then non-increasing")
        for j in range(1, self.cols + 1):
            rows = [i for i in range(1, self.rows + 1) if self.defined(i, j)]
            if rows and rows[-1] - rows[0] + 1 != len(rows):
                raise ValueError(f"column {j}: defined entries are not contiguous")

    def staircase_orientation(self) -> Optional[str]:
        """Corner the defined region is anchored at, or ``None`` if not a staircase."""
        s, t, n = self.s, self.t, self.cols
        if all(a == 1 for a in s):
            if _non_increasing(t):
                return "top-left"
            if _non_decreasing(t):
                return "bottom-left"
        if all(b == n for b in t):
            if _non_decreasing(s):
                return "top-right"
            if _non_increasing(s):
                return "bottom-right"
        return None

    def __repr__(self):
        return f"PartialShape({self.rows}x{self.cols}, s={self.s}, t={self.t})"


def _non_increasing(seq):
    return all(a >= b for a, b in zip(seq, seq[1:]))


def _non_decreasing(seq):
    return all(a <= b for a, b in zip(seq, seq[1:]))


def _is_valley(seq):
    k = 0
    while k + 1 < len(seq) and seq[k + 1] <= seq[k]:
        k += 1
    return _non_decreasing(seq[k:])


def verify_monge(oracle: MatrixOracle, convention: str = "max",
                 shape: Optional[PartialShape] = None) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Check the adjacent 2x2 condition on every fully defined quadruple.

    Returns ``(True, None)`` or ``(False, (i, j))`` where ``(i, j)`` is the
    top-left corner of the first violation in row-major order.
    """
    if convention not in ("max", "min"):
        raise ValueError(f"unknown convention {convention!r}")
    f = oracle.entry
    sign = 1 if convention == "max" else -1
    for i in range(1, oracle.rows):
        if shape is None:
            lo, hi = 1, oracle.cols - 1
        else:
            lo = max(shape.s[i - 1], shape.s[i])
            hi = min(shape.t[i - 1], shape.t[i]) - 1
        for j in range(lo, hi + 1):
            d = f(i, j) + f(i + 1, j + 1) - f(i + 1, j) - f(i, j + 1)
            if sign * d < 0:
                return False, (i, j)
    return True, None


# ---------------------------------------------------------------------------
# generators

GENERATOR_KINDS = ("lines", "density", "product")


def generate_monge(seed: int, m: int, n: int, kind: str = "lines",
                   a: Optional[Sequence[int]] = None,
                   b: Optional[Sequence[int]] = None) -> ExplicitMatrix:
    """Deterministic explicit ``m x n`` max-convention Monge matrix.

    ``lines``: ``a_i * j + b_i`` with ``a`` non-decreasing.
    ``density``: ``R_i + C_j + sum_{p<=i, q<=j} D[p][q]`` with sparse ``D >= 0``.
    ``product``: ``i * j + u_i * v_j + R_i + C_j`` with ``u``, ``v`` non-decreasing.
    """
    if m < 1 or n < 1:
        raise ValueError(f"matrix dimensions must be positive, got {m}x{n}")
    rng = random.Random(seed)
    if kind == "lines":
        if a is None:
            spread = rng.choice((2, 5, 40, 1000))
            a = sorted(rng.randint(-spread, spread) for _ in range(m))
        if b is None:
            span = max(1, rng.choice((1, 4, 30, 1000)) * n)
            b = [rng.randint(-span, span) for _ in range(m)]
        if len(a) != m or len(b) != m:
            raise ValueError("lines parameters must have one entry per row")
        if any(x > y for x, y in zip(a, a[1:])):
            raise ValueError("line slopes must be non-decreasing")
        data = [[a[i] * j + b[i] for j in range(1, n + 1)] for i in range(m)]
    elif kind == "density":
        fill = rng.choice((0.05, 0.2, 0.6))
        top = rng.choice((1, 3, 50))
        rmax = rng.choice((0, 5, 500))
        R = [rng.randint(-rmax, rmax) for _ in range(m)]
        C = [rng.randint(-rmax, rmax) for _ in range(n)]
        acc = [0] * n
        data = []
        for i in range(m):
            run = 0
            for j in range(n):
                if rng.random() < fill:
                    run += rng.randint(1, top)
                acc[j] += run
            data.append([R[i] + C[j] + acc[j] for j in range(n)])
    elif kind == "product":
        u = sorted(rng.randint(-20, 20) for _ in range(m))
        v = sorted(rng.randint(-20, 20) for _ in range(n))
        rmax = rng.choice((0, 3, 100))
        R = [rng.randint(-rmax, rmax) for _ in range(m)]
        C = [rng.randint(-rmax, rmax) for _ in range(n)]
        data = [[(i + 1) * (j + 1) + u[i] * v[j] + R[i] + C[j] for j in range(n)]
                for i in range(m)]
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return ExplicitMatrix(data)


def lines_oracle(seed: int, m: int, n: int) -> MatrixOracle:
    """Implicit ``lines`` Monge oracle for sizes too large to materialize."""
    if m < 1 or n < 1:
        raise ValueError(f"matrix dimensions must be positive, got {m}x{n}")
    rng = random.Random(seed)
    spread = 4 * m
    a = sorted(rng.randint(-spread, spread) for _ in range(m))
    span = 4 * m * n
    b = [rng.randint(-span, span) for _ in range(m)]
    a.insert(0, 0)
    b.insert(0, 0)
    return MatrixOracle(m, n, lambda i, j: a[i] * j + b[i])


# ---------------------------------------------------------------------------
# staircase filling

class FilledStaircase(MatrixOracle):
    """Full Monge oracle agreeing with ``base - shift`` on the defined cells.

    Fill rules (shifted defined values lie in ``[0, bound - 1]``):

    * ``top-left``: undefined ``(i, j)`` gets ``2 * bound * g(i, j)`` where
      ``g(i, j)`` counts undefined cells ``(p, q)`` with ``p <= i`` and
      ``q <= j``.  The quadruple defect of ``g`` is 1 when the bottom-right
      corner is undefined and 0 otherwise.  As the undefined set is closed
      downwards and rightwards, a defined top-left corner has ``g = 0`` and
      every mixed quadruple gains at least ``bound`` per missing corner.
      A linear fill such as ``bound * (i + j)`` fails here: with only the
      top-left corner defined its defect is ``M[i,j] - bound * (i + j)``.
    * ``bottom-right``: the reverse-both image of the previous rule.
    * ``bottom-left``: undefined ``(i, j)`` gets ``-2 * bound * h(i, j)``
      where ``h(i, j)`` counts undefined cells ``(p, q)`` with ``p >= i``
      and ``q <= j``.  The quadruple defect of ``-h`` is the number of
      undefined cells strictly inside it, which is zero only when every
      corner is defined.
    * ``top-right``: the transpose of the previous rule.
    """

    __slots__ = ("base", "shape", "orientation", "shift", "bound")

    def __init__(self, base: MatrixOracle, shape: PartialShape):
        orientation = shape.staircase_orientation()
        if orientation is None:
            raise ValueError("shape is not a staircase; decompose it with "
                             "mongeq.partial.decompose_partial first")
        if (shape.rows, shape.cols) != (base.rows, base.cols):
            raise ValueError("shape does not match the oracle dimensions")
        f = base.entry
        m, n = base.rows, base.cols
        s, t = shape.s, shape.t
        lo = hi = None
        for i in range(1, m + 1):
            for j in range(s[i - 1], t[i - 1] + 1):
                v = f(i, j)
                if lo is None or v < lo:
                    lo = v
                if hi is None or v > hi:
                    hi = v
        shift = lo
        bound = hi - lo + 1
        self.base = base
        self.shape = shape
        self.orientation = orientation
        self.shift = shift
        self.bound = bound

        if orientation == "top-left":
            count = _prefix_undefined(t, n)

            def entry(i, j):
                if j <= t[i - 1]:
                    return f(i, j) - shift
                return 2 * bound * count(i, j)
        elif orientation == "bottom-right":
            count = _prefix_undefined([n + 1 - x for x in reversed(s)], n)

            def entry(i, j):
                if j >= s[i - 1]:
                    return f(i, j) - shift
                return 2 * bound * count(m + 1 - i, n + 1 - j)
        elif orientation == "bottom-left":
            # undefined cells of row p are q > t_p, t non-decreasing
            first_ge = _first_index_at_least(t, n)
            prefix = [0]
            for x in t:
                prefix.append(prefix[-1] + x)
            step = 2 * bound

            def entry(i, j):
                if j <= t[i - 1]:
                    return f(i, j) - shift
                e = first_ge[j]
                cnt = e - i
                return -step * (cnt * j - (prefix[e - 1] - prefix[i - 1]))
        else:  # top-right
            # undefined cells of row p are q < s_p, s non-decreasing
            first_gt = _first_index_greater(s, n)
            prefix = [0]
            for x in s:
                prefix.append(prefix[-1] + x)
            step = 2 * bound

            def entry(i, j):
                if j >= s[i - 1]:
                    return f(i, j) - shift
                e = first_gt[j]
                cnt = i - e + 1
                return -step * ((prefix[i] - prefix[e - 1]) - cnt * j)
        super().__init__(m, n, entry)

    def unshift(self, value: int) -> int:
        return value + self.shift


def _prefix_undefined(t, n):
    """``g(i, j)``: cells ``(p, q)`` with ``p <= i``, ``q <= j`` and ``q > t_p``; t non-increasing."""
    m = len(t)
    # first[j]: first row with t_p < j (rows below it all qualify)
    first = [0] * (n + 2)
    p = m
    for j in range(n + 2):
        while p > 0 and t[p - 1] < j:
            p -= 1
        first[j] = p + 1
    prefix = [0]
    for x in t:
        prefix.append(prefix[-1] + x)

    def count(i, j):
        e = first[j]
        if e > i:
            return 0
        return (i - e + 1) * j - (prefix[i] - prefix[e - 1])

    return count


def _first_index_at_least(seq, n):
    """``out[j]`` = first 1-based row with ``seq >= j`` (``len+1`` if none); seq non-decreasing."""
    out = [0] * (n + 2)
    p = 0
    for j in range(n + 2):
        while p < len(seq) and seq[p] < j:
            p += 1
        out[j] = p + 1
    return out


def _first_index_greater(seq, n):
    """``out[j]`` = first 1-based row with ``seq > j`` (``len+1`` if none); seq non-decreasing."""
    out = [0] * (n + 2)
    p = 0
    for j in range(n + 2):
        while p < len(seq) and seq[p] <= j:
            p += 1
        out[j] = p + 1
    return out


def fill_staircase(oracle: MatrixOracle, shape: PartialShape) -> FilledStaircase:
    return FilledStaircase(oracle, shape)


# ---------------------------------------------------------------------------
# random shapes

def random_staircase(rng: random.Random, m: int, n: int,
                     orientation: str = "top-left") -> PartialShape:
    bounds = sorted((rng.randint(1, n) for _ in range(m)), reverse=True)
    if rng.random() < 0.3:
        bounds[0] = n
    if orientation == "top-left":
        return PartialShape(m, n, [1] * m, bounds)
    if orientation == "bottom-left":
        return PartialShape(m, n, [1] * m, bounds[::-1])
    starts = [n + 1 - b for b in bounds]
    if orientation == "top-right":
        return PartialShape(m, n, starts, [n] * m)
    if orientation == "bottom-right":
        return PartialShape(m, n, starts[::-1], [n] * m)
    raise ValueError(f"unknown orientation {orientation!r}")


def random_partial_shape(rng: random.Random, m: int, n: int) -> PartialShape:
    """Random valid partial shape: ``s`` a valley, ``t`` a peak, ``s <= t``.

    Half the draws are "bands" whose valley and peak sit at independent
    rows, so that both boundaries often move the same way for a while.
    """
    while True:
        if rng.random() < 0.5:
            t = _peak(rng, m, n, rng.randint(1, m))
            u = [min(x, y) for x, y in zip(t, _peak(rng, m, n, rng.randint(1, m), valley=True))]
        else:
            w = [rng.randint(1, n) for _ in range(m)]
            t = [min(x, y) for x, y in zip(_running(w, max), _running(w[::-1], max)[::-1])]
            u = [rng.randint(1, b) if rng.random() < 0.8 else 1 for b in t]
        s = [max(x, y) for x, y in zip(_running(u, min), _running(u[::-1], min)[::-1])]
        shape = PartialShape(m, n, s, t)
        try:
            shape.validate()
        except ValueError:
            continue
        return shape


def _peak(rng, m, n, top, valley=False):
    """Non-decreasing up to row ``top`` and non-increasing after (mirrored for a valley)."""
    rise = sorted(rng.randint(1, n) for _ in range(top))
    fall = sorted((rng.randint(1, rise[-1]) for _ in range(m - top)), reverse=True)
    seq = rise + fall
    return [n + 1 - x for x in seq] if valley else seq


def _running(seq, op):
    out, cur = [], None
    for x in seq:
        cur = x if cur is None else op(cur, x)
        out.append(cur)
    return out


# ---------------------------------------------------------------------------
# text format

class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_matrix(text: str) -> Tuple[ExplicitMatrix, Optional[PartialShape]]:
    """Parse ``m n`` followed by ``m`` rows; ``*`` marks an undefined entry."""
    lines = [(k, ln.split()) for k, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise MatrixFormatError("empty input", 1)
    k, head = lines[0]
    try:
        m, n = (int(x) for x in head)
    except ValueError:
        raise MatrixFormatError("header must be 'm n'", k) from None
    if m < 1 or n < 1:
        raise MatrixFormatError("dimensions must be positive", k)
    if len(lines) - 1 != m:
        last = lines[-1][0]
        raise MatrixFormatError(f"expected {m} rows, found {len(lines) - 1}", last)
    data = []
    partial = False
    for k, tokens in lines[1:]:
        if len(tokens) != n:
            raise MatrixFormatError(f"expected {n} entries, found {len(tokens)}", k)
        row = []
        for tok in tokens:
            if tok == "*":
                row.append(None)
                partial = True
            else:
                try:
                    row.append(int(tok))
                except ValueError:
                    raise MatrixFormatError(f"bad entry {tok!r}", k) from None
        data.append(row)
    shape = None
    if partial:
        try:
            shape = PartialShape.from_matrix(data)
        except ValueError as exc:
            raise MatrixFormatError(str(exc), lines[0][0]) from None
    return ExplicitMatrix(data), shape


def format_matrix(oracle: MatrixOracle, shape: Optional[PartialShape] = None) -> str:
    out = [f"{oracle.rows} {oracle.cols}"]
    f = oracle.entry
    for i in range(1, oracle.rows + 1):
        out.append(" ".join(
            str(f(i, j)) if shape is None or shape.defined(i, j) else "*"
            for j in range(1, oracle.cols + 1)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# brute force

def brute_max(oracle: MatrixOracle, i0: int, i1: int, j0: int, j1: int,
              shape: Optional[PartialShape] = None) -> Optional[Tuple[int, int, int]]:
    """Largest defined entry of a rectangle by scanning it; ``None`` if none is defined."""
    f = oracle.entry
    best = None
    for i in range(i0, i1 + 1):
        lo, hi = j0, j1
        if shape is not None:
            lo, hi = max(lo, shape.s[i - 1]), min(hi, shape.t[i - 1])
        for j in range(lo, hi + 1):
            v = f(i, j)
            if best is None or v > best[2]:
                best = (i, j, v)
    return best
