"""The clip-sequence map between triangulations and 312-avoiding permutations.

Clipping a triangulation of an N-gon repeatedly deletes (and records) the
degree-2 vertex with the smallest label together with its two incident
edges.  The recorded labels form a 312-avoiding permutation of 1..N-2, the
two vertices N-1 and N are never clipped, and the map is a bijection onto
all 312-avoiding permutations; ``build_triangulation`` is its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from typing import NamedTuple

from .errors import InvariantViolation, LabelOutOfRange, PolygonTooSmall
from .patterns import Permutation, _not_avoiding, as_permutation
from .polygon import Triangle, Triangulation


class ClipStep(NamedTuple):
    label: int
    triangle: Triangle


@dataclass(frozen=True)
class ClipTrace:
    """Ordered record of the N-2 clip steps of one triangulation."""

    n_vertices: int
    steps: tuple[ClipStep, ...]
    _by_label: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_label", {s.label: s.triangle for s in self.steps})


def triangle_of_label(trace: ClipTrace, label: int) -> Triangle:
    """The triangle recorded at the step that clipped ``label``."""
    try:
        return trace._by_label[label]
    except KeyError:
        raise LabelOutOfRange(
            f"label {label} was never clipped (valid range 1..{trace.n_vertices - 2})"
        ) from None


def clip_sequence(t: Triangulation) -> tuple[Permutation, ClipTrace]:
    """Clip a triangulation down to its reference edge, recording each ear.

    The boundary cycle lives in prev/next arrays and each vertex's degree
    starts at 2 plus its incident diagonal count; current ears (degree-2
    vertices) sit in a min-heap, so the whole run is O(N log N).  Clipping
    an ear decrements its two neighbours' degrees, which is correct because
    the edge joining them is always present in the triangulation.

    The facts the mathematics guarantees (labels clipped are exactly
    1..N-2, the surviving edge is {N-1, N}, and at least two ears exist
    while four or more vertices remain) are checked, not assumed; any
    failure raises InvariantViolation.
    """
    n = t.n_vertices
    nxt = list(range(1, n + 2))
    nxt[n] = 1
    prv = list(range(-1, n))
    prv[1] = n
    deg = [2] * (n + 1)
    for a, b in t.diagonals:
        deg[a] += 1
        deg[b] += 1
    heap = [v for v in range(1, n + 1) if deg[v] == 2]
    heapify(heap)
    ears = len(heap)

    order: list[int] = []
    steps: list[ClipStep] = []
    remaining = n
    last_a = last_b = 0
    for _ in range(n - 2):
        if ears < 2 and remaining >= 4:
            raise InvariantViolation(
                f"only {ears} ears with {remaining} vertices remaining on {t}"
            )
        v = heappop(heap)
        if deg[v] != 2:
            raise InvariantViolation(f"popped vertex {v} has degree {deg[v]} on {t}")
        ears -= 1
        a = prv[v]
        b = nxt[v]
        lo, hi = (a, b) if a < b else (b, a)
        if v < lo:
            tri = (v, lo, hi)
        elif v > hi:
            tri = (lo, hi, v)
        else:
            tri = (lo, v, hi)
        order.append(v)
        steps.append(ClipStep(v, tri))
        nxt[a] = b
        prv[b] = a
        da = deg[a] - 1
        deg[a] = da
        if da == 2:
            heappush(heap, a)
            ears += 1
        elif da == 1:
            ears -= 1
        db = deg[b] - 1
        deg[b] = db
        if db == 2:
            heappush(heap, b)
            ears += 1
        elif db == 1:
            ears -= 1
        remaining -= 1
        last_a, last_b = a, b

    if {last_a, last_b} != {n - 1, n}:
        raise InvariantViolation(
            f"surviving edge is {{{last_a}, {last_b}}}, expected {{{n - 1}, {n}}} on {t}"
        )
    if set(order) != set(range(1, n - 1)):
        raise InvariantViolation(f"clipped labels {order} are not 1..{n - 2} on {t}")
    return tuple(order), ClipTrace(n, tuple(steps))


def build_triangulation(sigma) -> Triangulation:
    """Inverse of clip_sequence: the triangulation whose clip sequence is sigma.

    Recursive construction over boundary paths, run with an explicit stack.
    A frame covers the path [a, lo, lo+1, ..., hi, b]; the last entry k of
    its slice of sigma must lie in lo..hi, the triangle (k, b, a) is part
    of the triangulation, and the slice splits into the k-lo entries below
    k (left sub-path [a..k]) and the hi-k entries above k (right sub-path
    [k..b]).  Because sigma has distinct entries and the slice lengths are
    forced, checking k against its frame's range at every node is
    equivalent to checking the full value partition; a failure is exactly
    a 312 occurrence, reported with a witness triple.
    """
    sigma = as_permutation(sigma)
    m = len(sigma)
    if m == 0:
        raise PolygonTooSmall("the empty permutation corresponds to a 2-gon")
    n = m + 2
    diags: list[tuple[int, int]] = []
    # frame: (lo, hi, a, b, i0, i1, is_root); slice is sigma[i0:i1]
    stack = [(1, m, n, m + 1, 0, m, True)]
    while stack:
        lo, hi, a, b, i0, i1, root = stack.pop()
        if i0 == i1:
            continue
        k = sigma[i1 - 1]
        if not lo <= k <= hi:
            raise _not_avoiding(sigma)
        if not root:
            diags.append((a, b) if a < b else (b, a))
        split = i0 + (k - lo)
        stack.append((lo, k - 1, a, k, i0, split, False))
        stack.append((k + 1, hi, k, b, split, i1 - 1, False))
    if len(diags) != n - 3:
        raise InvariantViolation(
            f"construction for {sigma} produced {len(diags)} diagonals, "
            f"expected {n - 3}"
        )
    return Triangulation(n, tuple(sorted(diags)))
