"""Dominance maximum: the heaviest point with ``x' >= x`` and ``y' >= y``.

A sweep over ``y`` from high to low keeps the Pareto staircase of the
points seen so far, ordered by ``x`` with weights strictly decreasing.  The
heaviest point dominating ``(x, y)`` is then the first staircase point with
``x' >= x`` in the version taken at ``y``.  Versions share structure through
a path-copying treap.
"""
from __future__ import annotations

import random
from bisect import bisect_left
from typing import List, Optional, Sequence, Tuple


class _Node:
    __slots__ = ("key", "weight", "item", "prio", "left", "right")

    def __init__(self, key, weight, item, prio, left, right):
        self.key, self.weight, self.item = key, weight, item
        self.prio, self.left, self.right = prio, left, right

    def with_children(self, left, right):
        return _Node(self.key, self.weight, self.item, self.prio, left, right)


def _split_key(t, x):
    """``(keys < x, keys >= x)`` without touching the input."""
    if t is None:
        return None, None
    if t.key < x:
        a, b = _split_key(t.right, x)
        return t.with_children(t.left, a), b
    a, b = _split_key(t.left, x)
    return a, t.with_children(b, t.right)


def _split_weight(t, w):
    """``(weights > w, weights <= w)``; valid because weights fall as keys grow."""
    if t is None:
        return None, None
    if t.weight > w:
        a, b = _split_weight(t.right, w)
        return t.with_children(t.left, a), b
    a, b = _split_weight(t.left, w)
    return a, t.with_children(b, t.right)


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        return a.with_children(a.left, _merge(a.right, b))
    return b.with_children(_merge(a, b.left), b.right)


def _first(t):
    while t is not None and t.left is not None:
        t = t.left
    return t


def _drop_first(t):
    if t.left is None:
        return t.right
    return t.with_children(_drop_first(t.left), t.right)


class DominanceIndex:
    """Static index over weighted points; ``query(x, y)`` returns a point index or -1."""

    def __init__(self, points: Sequence[Tuple[int, int, int]], seed: int = 0):
        self.points = [tuple(p[:3]) for p in points]
        rng = random.Random(seed)
        order = sorted(range(len(self.points)), key=lambda k: -self.points[k][1])
        self.ys: List[int] = []  # distinct y, ascending after the reversal below
        self.versions: List[Optional[_Node]] = []
        root = None
        created = 0
        pos = 0
        while pos < len(order):
            y = self.points[order[pos]][1]
            while pos < len(order) and self.points[order[pos]][1] == y:
                k = order[pos]
                px, _, w = self.points[k]
                left, right = _split_key(root, px)
                head = _first(right)
                pos += 1
                if head is not None and head.weight >= w:
                    continue  # dominated
                if head is not None and head.key == px:
                    right = _drop_first(right)
                left, _ = _split_weight(left, w)
                node = _Node(px, w, k, rng.random(), None, None)
                root = _merge(_merge(left, node), right)
                created += 1
            self.ys.append(y)
            self.versions.append(root)
        self.ys.reverse()
        self.versions.reverse()
        self._nodes = created

    def query(self, x: int, y: int) -> int:
        v = bisect_left(self.ys, y)
        if v == len(self.ys):
            return -1
        t = self.versions[v]
        best = None
        while t is not None:
            if t.key >= x:
                best = t
                t = t.left
            else:
                t = t.right
        return -1 if best is None else best.item

    def dominance_max(self, x: int, y: int):
        """``((x', y'), weight)`` of the heaviest dominating point, or ``None``."""
        k = self.query(x, y)
        if k < 0:
            return None
        px, py, w = self.points[k]
        return (px, py), w

    def words(self) -> int:
        # live nodes are bounded by path copies; count them exactly once
        seen = set()
        stack = [t for t in self.versions if t is not None]
        while stack:
            t = stack.pop()
            if id(t) in seen:
                continue
            seen.add(id(t))
            stack.extend(c for c in (t.left, t.right) if c is not None)
        return 5 * len(seen) + 2 * len(self.ys) + 3 * len(self.points)


def dominance_build(points: Sequence[Tuple[int, int, int]]) -> DominanceIndex:
    return DominanceIndex(points)


def dominance_max(index: DominanceIndex, x: int, y: int):
    return index.dominance_max(x, y)
