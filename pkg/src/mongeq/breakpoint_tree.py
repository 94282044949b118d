"""Stack-as-tree encoding of the breakpoints of every row prefix.

Rows of a Monge matrix are inserted top to bottom while a stack holds the
breakpoints of the prefix seen so far.  Each insertion pops zero or more
breakpoints and pushes at most one, so all the stacks together form a tree
on at most ``m + 1`` nodes; the stack after row ``i`` is the root path of
the handle ``s(i)``.

Nodes carry a *weight* (the breakpoint column, strictly increasing away
from the root) and optionally a *value*: the maximum of the previous
breakpoint's row over ``[previous column, this column)``.  After the build
the tree is laid out in heavy-path order, so node ids are positions in that
order and every heavy path is a contiguous id range.  Weighted-ancestor
queries binary-search inside O(log m) paths; path maxima stitch per-path
range-maximum answers.
"""
from __future__ import annotations

from bisect import bisect_right
from typing import Callable, List, Optional, Tuple

from .matrix import MatrixOracle
from .ordered import RangeMaxIndex

ROOT = 0
NO_VALUE = float("-inf")

SubrowMax = Callable[[int, int, int], Tuple[int, int]]


class BreakpointTree:
    __slots__ = ("rows", "cols", "weight", "row", "parent", "head", "depth",
                 "value", "argcol", "s", "_rmq")

    def __init__(self):
        self._rmq = None

    def __len__(self):
        return len(self.weight)

    def handle(self, i: int) -> int:
        """``s(i)``: the stack top after inserting row ``i``."""
        return self.s[i - 1]

    def ancestors(self, node: int) -> List[int]:
        """Non-root ancestors of ``node`` (itself included), root-down."""
        out = []
        while node != ROOT:
            out.append(node)
            node = self.parent[node]
        return out[::-1]

    def breakpoints(self, i: int) -> List[Tuple[int, int, Optional[int]]]:
        """``(column, row, value)`` of the breakpoints of the first ``i`` rows."""
        out = []
        for k, node in enumerate(self.ancestors(self.s[i - 1])):
            v = self.value[node]
            out.append((self.weight[node], self.row[node], None if k == 0 or v == NO_VALUE else v))
        return out

    def weighted_ancestor(self, node: int, j: int) -> int:
        """Deepest ancestor of ``node`` (or itself) with weight ``<= j``; ROOT if none."""
        if j < 1:
            return ROOT
        weight, head, parent = self.weight, self.head, self.parent
        while True:
            h = head[node]
            if weight[h] <= j:
                return bisect_right(weight, j, h, node + 1) - 1
            node = parent[h]

    def level_ancestor(self, node: int, d: int) -> int:
        head, depth, parent = self.head, self.depth, self.parent
        if d > depth[node] or d < 0:
            raise ValueError(f"no ancestor at depth {d}")
        while depth[head[node]] > d:
            node = parent[head[node]]
        return node - (depth[node] - d)

    def path_max(self, ancestor: int, node: int) -> Tuple[int, object]:
        """Maximum value on the path strictly below ``ancestor`` down to ``node``."""
        head, parent, depth = self.head, self.parent, self.depth
        if depth[ancestor] >= depth[node]:
            raise ValueError("first argument must be a proper ancestor")
        rmq = self._rmq
        vals = self.value
        best = -1
        ha = head[ancestor]
        while head[node] != ha:
            h = head[node]
            if h == ROOT:
                raise ValueError("nodes are not in an ancestor relation")
            p = rmq.argmax0(h, node)
            if best < 0 or vals[p] > vals[best]:
                best = p
            node = parent[h]
            if depth[node] < depth[ancestor]:
                raise ValueError("nodes are not in an ancestor relation")
        if node < ancestor:
            raise ValueError("nodes are not in an ancestor relation")
        if node > ancestor:
            p = rmq.argmax0(ancestor + 1, node)
            if best < 0 or vals[p] > vals[best]:
                best = p
        return best, vals[best]

    def words(self) -> int:
        n = len(self.weight)
        w = 6 * n + len(self.s)  # weight, row, parent, head, depth, value
        if self.argcol is not None:
            w += n
        if self._rmq is not None:
            w += self._rmq.words() - n  # the value list is shared
        return w


def build_breakpoint_tree(oracle: MatrixOracle, subrow: Optional[SubrowMax] = None,
                          values: bool = True) -> BreakpointTree:
    """Insert rows top to bottom maintaining the breakpoint stack.

    ``subrow(row, lo, hi)`` returns ``(column, value)`` of the maximum of
    ``row`` over columns ``[lo, hi]``; without one, node values come from a
    plain scan.  ``values=False`` skips them (weighted ancestors only).
    Ties go to the later row, matching the column-maxima convention.
    """
    f = oracle.entry
    if not values:
        subrow = None
    elif subrow is None:
        subrow = lambda r, lo, hi: max(((j, f(r, j)) for j in range(lo, hi + 1)),
                                       key=lambda p: p[1])
    m, n = oracle.rows, oracle.cols
    weight = [0]
    row = [0]
    parent = [-1]
    value = [NO_VALUE]
    argcol = [0]
    s = []
    stack: List[int] = []
    for i in range(1, m + 1):
        popped_at = 0
        while stack:
            k = stack[-1]
            c = weight[k]
            if f(i, c) >= f(row[k], c):
                stack.pop()
                popped_at = c
            else:
                break
        if not stack:
            weight.append(1)
            row.append(i)
            parent.append(ROOT)
            value.append(NO_VALUE)
            argcol.append(0)
            stack.append(len(weight) - 1)
        else:
            k = stack[-1]
            r = row[k]
            if popped_at:
                hi = popped_at
            elif f(i, n) >= f(r, n):
                hi = n
            else:
                hi = 0
            if hi:
                lo = weight[k] + 1
                # smallest j in [lo, hi] with f(i, j) >= f(r, j); hi qualifies
                while lo < hi:
                    mid = (lo + hi) // 2
                    if f(i, mid) >= f(r, mid):
                        hi = mid
                    else:
                        lo = mid + 1
                weight.append(lo)
                row.append(i)
                parent.append(k)
                if subrow is not None:
                    col, v = subrow(r, weight[k], lo - 1)
                    value.append(v)
                    argcol.append(col)
                else:
                    value.append(NO_VALUE)
                    argcol.append(0)
                stack.append(len(weight) - 1)
        s.append(stack[-1])
    tree = _heavy_path_layout(weight, row, parent, value, argcol if subrow is not None else None, s)
    tree.rows, tree.cols = m, n
    return tree


def _heavy_path_layout(weight, row, parent, value, argcol, s) -> BreakpointTree:
    count = len(weight)
    size = [1] * count
    # children are always created after their parent
    for v in range(count - 1, 0, -1):
        size[parent[v]] += size[v]
    children: List[List[int]] = [[] for _ in range(count)]
    for v in range(1, count):
        children[parent[v]].append(v)
    heavy = [-1] * count
    for v in range(count):
        if children[v]:
            heavy[v] = max(children[v], key=size.__getitem__)

    pos = [0] * count
    head_old = [0] * count
    depth_old = [0] * count
    order = []
    todo = [ROOT]
    while todo:
        top = todo.pop()
        v = top
        while v != -1:
            pos[v] = len(order)
            order.append(v)
            head_old[v] = top
            for c in children[v]:
                depth_old[c] = depth_old[v] + 1
                if c != heavy[v]:
                    todo.append(c)
            v = heavy[v]

    tree = BreakpointTree()
    tree.weight = [weight[v] for v in order]
    tree.row = [row[v] for v in order]
    tree.parent = [pos[parent[v]] if v != ROOT else -1 for v in order]
    tree.head = [pos[head_old[v]] for v in order]
    tree.depth = [depth_old[v] for v in order]
    tree.value = [value[v] for v in order]
    tree.argcol = None if argcol is None else [argcol[v] for v in order]
    tree.s = [pos[v] for v in s]
    if argcol is not None:
        tree._rmq = RangeMaxIndex(tree.value)
        tree.value = tree._rmq.values
    return tree
