"""Exhaustive generators, counters and random generation at desk scale.

All streams are deterministic: triangulations come from recursive splits
on the reference-edge triangle with ascending apex, permutations in
lexicographic order, dissections as lexicographic diagonal subsets.  Sizes
are capped by a configurable bound (default 14, env CLIPSEQ_BOUND) so a
typo cannot wedge the process.
"""

from __future__ import annotations

import os
import random
from bisect import bisect_left, insort
from functools import lru_cache
from typing import Iterator

from .errors import BadDiagonalCount, BoundExceeded, PolygonTooSmall
from .patterns import Permutation, is_decent
from .polygon import Dissection, Triangulation, crossing

DEFAULT_BOUND = 14


def _bound(bound: int | None) -> int:
    if bound is not None:
        return bound
    return int(os.environ.get("CLIPSEQ_BOUND", DEFAULT_BOUND))


_CATALAN = [1]


def catalan(m: int) -> int:
    """Exact Catalan number via the convolution recurrence."""
    if m < 0:
        raise ValueError(f"catalan needs m >= 0, got {m}")
    while len(_CATALAN) <= m:
        k = len(_CATALAN)
        _CATALAN.append(sum(_CATALAN[i] * _CATALAN[k - 1 - i] for i in range(k)))
    return _CATALAN[m]


def all_triangulations(n: int, bound: int | None = None) -> Iterator[Triangulation]:
    """Every triangulation of the n-gon exactly once, catalan(n-2) in total.

    Splits on the triangle over the reference edge (n-1, n): its apex runs
    ascending over 1..n-2, and the two sub-paths are triangulated
    recursively.
    """
    if n < 3:
        raise PolygonTooSmall(f"need at least 3 vertices, got {n}")
    if n > _bound(bound):
        raise BoundExceeded(f"n = {n} exceeds the enumeration bound {_bound(bound)}")

    def split(vs: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        # vs is a boundary path whose closing edge (vs[-1], vs[0]) is
        # already accounted for by the caller.
        if len(vs) == 2:
            yield ()
            return
        first, last = vs[0], vs[-1]
        for i in range(1, len(vs) - 1):
            apex = vs[i]
            extra: list[tuple[int, int]] = []
            for x, y in ((first, apex), (apex, last)):
                a, b = (x, y) if x < y else (y, x)
                if b - a != 1 and not (a == 1 and b == n):
                    extra.append((a, b))
            for left in split(vs[: i + 1]):
                for right in split(vs[i:]):
                    yield left + right + tuple(extra)

    base = (n,) + tuple(range(1, n))
    for ds in split(base):
        yield Triangulation(n, tuple(sorted(ds)))


def all_312_avoiders(m: int, bound: int | None = None) -> Iterator[Permutation]:
    """All of S_m(312) in lexicographic order, catalan(m) in total.

    Grows the permutation left to right.  An ascending pair of values both
    below the running maximum would complete a 312 with that maximum, so
    at each step the legal choices are any unused value above the running
    maximum, or the single largest unused value below it.  Every branch
    completes, so the walk visits exactly the avoiders.
    """
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    if m > _bound(bound):
        raise BoundExceeded(f"m = {m} exceeds the enumeration bound {_bound(bound)}")

    remaining = list(range(1, m + 1))
    acc: list[int] = []

    def rec(mx: int) -> Iterator[Permutation]:
        if not remaining:
            yield tuple(acc)
            return
        cut = bisect_left(remaining, mx)
        candidates = remaining[cut - 1 : cut] + remaining[cut:]
        for v in candidates:
            remaining.pop(bisect_left(remaining, v))
            acc.append(v)
            yield from rec(v if v > mx else mx)
            acc.pop()
            insort(remaining, v)

    yield from rec(0)


def all_decent_312_avoiders(n: int, bound: int | None = None) -> Iterator[Permutation]:
    """The 312-avoiders whose descending runs all have length >= 2."""
    for p in all_312_avoiders(n, bound):
        if is_decent(p):
            yield p


def polygon_diagonals(n: int) -> list[tuple[int, int]]:
    """All diagonals of the n-gon in lexicographic order."""
    return [
        (a, b)
        for a in range(1, n + 1)
        for b in range(a + 2, n + 1)
        if not (a == 1 and b == n)
    ]


def all_dissections(n: int, d: int, bound: int | None = None) -> Iterator[Dissection]:
    """Every dissection of the n-gon with exactly d diagonals, once each.

    Backtracking over the lexicographically ordered diagonal list; a
    candidate is kept when it crosses none of the chosen ones.
    """
    if n < 3:
        raise PolygonTooSmall(f"need at least 3 vertices, got {n}")
    if n > _bound(bound):
        raise BoundExceeded(f"n = {n} exceeds the enumeration bound {_bound(bound)}")
    if d < 0 or d > n - 3:
        raise BadDiagonalCount(f"a {n}-gon dissection has 0..{n - 3} diagonals, not {d}")

    diags = polygon_diagonals(n)
    chosen: list[tuple[int, int]] = []

    def rec(start: int) -> Iterator[Dissection]:
        if len(chosen) == d:
            yield Dissection(n, tuple(chosen))
            return
        for i in range(start, len(diags) - (d - len(chosen)) + 1):
            cand = diags[i]
            if all(not crossing(cand, c) for c in chosen):
                chosen.append(cand)
                yield from rec(i + 1)
                chosen.pop()

    yield from rec(0)


@lru_cache(maxsize=None)
def _segment_ways(gap: int) -> tuple[tuple[int, int], ...]:
    # Ways to span a boundary gap of `gap` edges as one stretch of the
    # marked cell: a plain side (gap 1, no diagonals), or a diagonal
    # closing off a sub-polygon of gap+1 vertices, itself dissected in
    # every possible way.  Pairs are (diagonal count, ways).
    if gap == 1:
        return ((0, 1),)
    return tuple(
        (d + 1, w)
        for d in range(gap - 1)
        if (w := count_dissections(gap + 1, d))
    )


@lru_cache(maxsize=None)
def count_dissections(n: int, d: int) -> int:
    """Independent counter for dissections of the n-gon with d diagonals.

    Counts by the cell containing the side (1, n): that cell picks
    vertices 1 = j_0 < j_1 < ... < j_{s-1} = n (s >= 3), splitting the
    boundary path into segments handled by ``_segment_ways``.  Serves as a
    cross-check oracle for the backtracking generator; also agrees with
    the closed form (1/(d+1)) C(n-3, d) C(n+d-1, d).
    """
    if n < 3 or d < 0 or d > n - 3:
        return 0
    # state: (path position, segments so far capped at 2, diagonals used)
    # a gap of n-1 would be a single-segment cell, excluded by s >= 3,
    # so capping at n-2 also keeps the sub-polygon recursion decreasing
    dp: dict[tuple[int, int, int], int] = {(1, 0, 0): 1}
    for v in range(1, n):
        for (pos, segs, used), ways in sorted(dp.items()):
            if pos != v:
                continue
            for gap in range(1, min(n - v, n - 2) + 1):
                for extra, w in _segment_ways(gap):
                    if used + extra > d:
                        continue
                    key = (v + gap, min(segs + 1, 2), used + extra)
                    dp[key] = dp.get(key, 0) + ways * w
    return dp.get((n, 2, d), 0)


def random_312_avoider(m: int, seed: int) -> Permutation:
    """Uniform random element of S_m(312), deterministic for a fixed seed.

    Grows a uniform binary tree with m internal nodes by leaf grafting:
    each step picks one of the existing 2k-1 nodes and a side, and inserts
    a new internal node there with a fresh leaf as its other child.  The
    internal skeleton is then read the same way the tree bijection reads a
    triangulation's dual: labels are in-order ranks, output is post-order.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    rng = random.Random(seed)
    size = 2 * m + 1
    left = [-1] * size
    right = [-1] * size
    parent = [-1] * size
    pside = [0] * size
    root = 0
    count = 1
    for _ in range(m):
        x = rng.randrange(count)
        b = rng.randrange(2)
        u = count
        leaf = count + 1
        count += 2
        p = parent[x]
        parent[u] = p
        if p == -1:
            root = u
        elif pside[x] == 0:
            left[p] = u
            pside[u] = 0
        else:
            right[p] = u
            pside[u] = 1
        if b == 0:
            left[u], right[u] = leaf, x
            pside[leaf], pside[x] = 0, 1
        else:
            left[u], right[u] = x, leaf
            pside[x], pside[leaf] = 0, 1
        parent[x] = u
        parent[leaf] = u

    def skel(child: int) -> int:
        # leaves (no children) are absent in the skeleton
        return child if left[child] != -1 else -1

    # in-order ranks over internal nodes
    label = [0] * size
    rank = 0
    stack: list[int] = []
    node = root
    while stack or node != -1:
        while node != -1:
            stack.append(node)
            node = skel(left[node])
        node = stack.pop()
        rank += 1
        label[node] = rank
        node = skel(right[node])

    # post-order readout
    out: list[int] = []
    todo: list[tuple[int, bool]] = [(root, False)]
    while todo:
        node, expanded = todo.pop()
        if expanded:
            out.append(label[node])
            continue
        todo.append((node, True))
        r = skel(right[node])
        if r != -1:
            todo.append((r, False))
        l = skel(left[node])
        if l != -1:
            todo.append((l, False))
    return tuple(out)
