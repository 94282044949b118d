"""Predecessor structures and one-dimensional range maximum."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import List, Optional, Sequence, Tuple

WORD_BITS = 64


class SmallSetPredecessor:
    """Up to ~``WORD_BITS`` keys packed into one integer for word-parallel rank.

    Each key occupies a field of ``b + 1`` bits whose top bit is a sentinel;
    subtracting a replicated query leaves the sentinel set exactly in the
    fields whose key is at least the query, so a rank is one subtraction,
    one mask and one popcount.
    """

    __slots__ = ("keys", "_packed", "_ones", "_high", "_width", "_limit")

    def __init__(self, keys: Sequence[int], universe: Optional[int] = None):
        keys = list(keys)
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("keys must be strictly increasing")
        if keys and keys[0] < 0:
            raise ValueError("keys must be non-negative")
        if universe is None:
            universe = (keys[-1] + 1) if keys else 1
        self.keys = keys
        b = max(1, (universe + 1).bit_length())
        self._width = b + 1
        self._limit = (1 << b) - 1
        ones = high = packed = 0
        for k, key in enumerate(keys):
            shift = k * self._width
            ones |= 1 << shift
            high |= 1 << (shift + b)
            packed |= ((1 << b) | key) << shift
        self._ones, self._high, self._packed = ones, high, packed

    def __len__(self):
        return len(self.keys)

    def rank(self, x: int) -> int:
        """Number of keys ``<= x``."""
        if x < 0:
            return 0
        if x >= self._limit:
            return len(self.keys)
        above = ((self._packed - (x + 1) * self._ones) & self._high).bit_count()
        return len(self.keys) - above

    def pred_index(self, x: int) -> int:
        return self.rank(x) - 1

    def pred(self, x: int) -> Optional[int]:
        r = self.rank(x)
        return self.keys[r - 1] if r else None

    def succ(self, x: int) -> Optional[int]:
        r = self.rank(x - 1)
        return self.keys[r] if r < len(self.keys) else None

    def words(self) -> int:
        # packed word(s) plus the explicit key list
        return len(self.keys) + 3


class _YFast:
    """Static y-fast trie: x-fast trie over bucket heads, packed buckets below."""

    def __init__(self, keys: List[int], universe: int, chunk: int = 32):
        self.bits = max(1, (universe - 1).bit_length())
        self.heads = keys[::chunk]
        self.buckets = [SmallSetPredecessor(keys[k:k + chunk], universe)
                        for k in range(0, len(keys), chunk)]
        # levels[l] maps an l-bit prefix to (min index, max index) of heads below it
        self.levels = [dict() for _ in range(self.bits + 1)]
        for idx, h in enumerate(self.heads):
            for l in range(self.bits + 1):
                p = h >> (self.bits - l)
                cur = self.levels[l].get(p)
                self.levels[l][p] = (idx, idx) if cur is None else (cur[0], idx)

    def head_pred(self, x: int) -> int:
        """Index of the last head ``<= x`` or -1."""
        heads = self.heads
        if not heads or x < heads[0]:
            return -1
        if x >= heads[-1]:
            return len(heads) - 1
        lo, hi = 0, self.bits
        # longest prefix of x present in the trie (level 0 always is)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if (x >> (self.bits - mid)) in self.levels[mid]:
                lo = mid
            else:
                hi = mid - 1
        if lo == self.bits:
            return self.levels[lo][x][0]
        lo_idx, hi_idx = self.levels[lo][x >> (self.bits - lo)]
        if (x >> (self.bits - lo - 1)) & 1:
            # the 1-child is missing: everything under the prefix is smaller
            return hi_idx
        return lo_idx - 1

    def pred_index(self, x: int) -> Tuple[int, int]:
        b = self.head_pred(x)
        if b < 0:
            return -1, -1
        return b, self.buckets[b].pred_index(x)

    def words(self) -> int:
        return (len(self.heads) + sum(b.words() for b in self.buckets)
                + 3 * sum(len(level) for level in self.levels))


class PredecessorSet:
    """Static predecessor/successor over strictly increasing keys in ``[0, universe)``.

    ``engine="bisect"`` is plain binary search; ``engine="yfast"`` is the
    two-level bucket structure with word-packed buckets.  Both return
    identical answers.
    """

    def __init__(self, keys: Sequence[int], payload: Optional[Sequence] = None,
                 universe: Optional[int] = None, engine: str = "bisect"):
        keys = list(keys)
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("keys must be strictly increasing")
        if payload is not None and len(payload) != len(keys):
            raise ValueError("payload length must match keys")
        if universe is None:
            universe = (keys[-1] + 1) if keys else 1
        if keys and (keys[0] < 0 or keys[-1] >= universe):
            raise ValueError("keys must lie in [0, universe)")
        self.keys = keys
        self.payload = None if payload is None else list(payload)
        self.universe = universe
        self.engine = engine
        if engine == "bisect":
            self._yfast = None
        elif engine == "yfast":
            self._yfast = _YFast(keys, universe)
        else:
            raise ValueError(f"unknown predecessor engine {engine!r}")

    def __len__(self):
        return len(self.keys)

    def pred_index(self, x: int) -> int:
        """Position of the largest key ``<= x``, or -1."""
        if self._yfast is None:
            return bisect_right(self.keys, x) - 1
        if x >= self.universe:
            return len(self.keys) - 1
        b, k = self._yfast.pred_index(x)
        return -1 if b < 0 else b * 32 + k

    def succ_index(self, x: int) -> int:
        """Position of the smallest key ``>= x``, or ``len(self)``."""
        if self._yfast is None:
            return bisect_left(self.keys, x)
        return self.pred_index(x - 1) + 1

    def pred(self, x: int) -> Optional[int]:
        k = self.pred_index(x)
        return self.keys[k] if k >= 0 else None

    def succ(self, x: int) -> Optional[int]:
        k = self.succ_index(x)
        return self.keys[k] if k < len(self.keys) else None

    def words(self) -> int:
        w = len(self.keys) + (len(self.payload) if self.payload is not None else 0)
        if self._yfast is not None:
            w += self._yfast.words()
        return w


class RangeMaxIndex:
    """Static range maximum over a list, returning the leftmost argmax.

    Linear space: values are cut into blocks; each block keeps prefix and
    suffix argmaxima and a sparse table runs over the block maxima only.
    Queries inside a single block scan it (at most ``block`` values).
    Positions are 1-based, ranges inclusive.
    """

    __slots__ = ("values", "block", "_pre", "_suf", "_table")

    def __init__(self, values: Sequence, block: Optional[int] = None):
        self.values = list(values)
        k = len(self.values)
        if block is None:
            block = max(8, k.bit_length())
        self.block = block
        vals = self.values
        self._pre = self._suf = self._table = None
        if k <= block:
            return
        pre = [0] * k
        suf = [0] * k
        for start in range(0, k, block):
            end = min(start + block, k)
            best = start
            for p in range(start, end):
                if vals[p] > vals[best]:
                    best = p
                pre[p] = best
            best = end - 1
            for p in range(end - 1, start - 1, -1):
                if vals[p] >= vals[best]:
                    best = p
                suf[p] = best
        self._pre, self._suf = pre, suf
        level = [suf[start] for start in range(0, k, block)]
        table = [level]
        span = 1
        while 2 * span <= len(level):
            prev = table[-1]
            nxt = []
            for q in range(len(prev) - span):
                a, b = prev[q], prev[q + span]
                nxt.append(a if vals[a] >= vals[b] else b)
            table.append(nxt)
            span *= 2
        self._table = table

    def __len__(self):
        return len(self.values)

    def argmax0(self, lo: int, hi: int) -> int:
        """0-based inclusive variant used on hot paths; assumes a valid range."""
        vals = self.values
        bs = self.block
        if self._pre is None or lo // bs == hi // bs:
            best = lo
            for p in range(lo + 1, hi + 1):
                if vals[p] > vals[best]:
                    best = p
            return best
        bl, bh = lo // bs + 1, hi // bs - 1
        best = self._suf[lo]
        if bl <= bh:
            d = (bh - bl + 1).bit_length() - 1
            row = self._table[d]
            a, b = row[bl], row[bh - (1 << d) + 1]
            cand = a if vals[a] >= vals[b] else b
            if vals[cand] > vals[best]:
                best = cand
        cand = self._pre[hi]
        if vals[cand] > vals[best]:
            best = cand
        return best

    def query(self, lo: int, hi: int) -> Tuple[int, object]:
        """Leftmost ``(position, value)`` attaining the maximum on ``[lo, hi]``."""
        if not 1 <= lo <= hi <= len(self.values):
            raise IndexError(f"range [{lo}, {hi}] outside 1..{len(self.values)}")
        p = self.argmax0(lo - 1, hi - 1)
        return p + 1, self.values[p]

    def words(self) -> int:
        w = len(self.values)
        if self._pre is not None:
            w += len(self._pre) + len(self._suf) + sum(len(r) for r in self._table)
        return w
