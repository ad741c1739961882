"""Labeled convex polygons with non-crossing diagonal sets.

Vertices are labeled 1..N in counterclockwise order.  Sides are the pairs
(i, i+1) for 1 <= i < N plus (N, 1); everything else joining two vertices
is a diagonal, stored as a normalized pair (a, b) with a < b.  The polygon
itself is purely combinatorial; coordinates only appear in rendering.

``Triangulation`` and ``Dissection`` are immutable and validate all of
their invariants on construction, so any instance you can get your hands
on is structurally sound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CrossingDiagonals,
    InvariantViolation,
    PolygonTooSmall,
    SideAsDiagonal,
    TooManyDiagonals,
    VertexOutOfRange,
    WrongDiagonalCount,
)

Diagonal = tuple[int, int]
Triangle = tuple[int, int, int]
Cell = tuple[int, ...]


def diag(a: int, b: int) -> Diagonal:
    """Normalize an endpoint pair into a diagonal (a < b)."""
    if a > b:
        a, b = b, a
    if a == b:
        raise VertexOutOfRange(f"degenerate diagonal {a}-{b}")
    if a < 1:
        raise VertexOutOfRange(f"vertex {a} out of range (labels start at 1)")
    return (a, b)


def is_side(n_vertices: int, a: int, b: int) -> bool:
    """True iff {a, b} is a side of the n-gon."""
    if a > b:
        a, b = b, a
    return b - a == 1 or (a == 1 and b == n_vertices)


def crossing(d1: Diagonal, d2: Diagonal) -> bool:
    """True iff two normalized diagonals cross in the open interior.

    With d1 = (a, b) and d2 = (c, d), the chords cross exactly when one of
    c, d lies strictly between a and b in cyclic order and the other does
    not: a < c < b < d or c < a < d < b.  Sharing an endpoint never counts.
    """
    a, b = d1
    c, d = d2
    return a < c < b < d or c < a < d < b


def find_crossing(diagonals) -> tuple[Diagonal, Diagonal] | None:
    """Return some crossing pair among normalized diagonals, or None.

    Single sweep over the diagonals sorted by (a, -b), keeping a stack of
    open chords: non-crossing diagonal families are exactly the laminar
    ones, and a crossing always shows up against the innermost open chord.
    O(k log k) for k diagonals, versus the quadratic pairwise test.
    """
    stack: list[Diagonal] = []
    for c, d in sorted(diagonals, key=lambda e: (e[0], -e[1])):
        while stack and stack[-1][1] <= c:
            stack.pop()
        if stack and stack[-1][0] < c and stack[-1][1] < d:
            return (stack[-1], (c, d))
        stack.append((c, d))
    return None


def _normalized_diagonals(n_vertices: int, diagonals) -> tuple[Diagonal, ...]:
    ds = sorted({diag(a, b) for a, b in diagonals})
    for a, b in ds:
        if b > n_vertices:
            raise VertexOutOfRange(f"vertex {b} out of range for a {n_vertices}-gon")
        if b - a < 2 or (a == 1 and b == n_vertices):
            raise SideAsDiagonal(f"{a}-{b} is a side of the {n_vertices}-gon, not a diagonal")
    pair = find_crossing(ds)
    if pair is not None:
        (a, b), (c, d) = pair
        raise CrossingDiagonals(f"diagonals {a}-{b} and {c}-{d} cross")
    return tuple(ds)


@dataclass(frozen=True)
class Dissection:
    """A convex polygon partitioned by 0..N-3 pairwise non-crossing diagonals."""

    n_vertices: int
    diagonals: tuple[Diagonal, ...]

    def __post_init__(self):
        if self.n_vertices < 3:
            raise PolygonTooSmall(f"need at least 3 vertices, got {self.n_vertices}")
        ds = _normalized_diagonals(self.n_vertices, self.diagonals)
        if len(ds) > self.n_vertices - 3:
            raise TooManyDiagonals(
                f"{len(ds)} diagonals exceed the maximum {self.n_vertices - 3} "
                f"for a {self.n_vertices}-gon"
            )
        object.__setattr__(self, "diagonals", ds)


@dataclass(frozen=True)
class Triangulation(Dissection):
    """A maximal dissection: exactly N-3 diagonals, hence N-2 triangles."""

    def __post_init__(self):
        if self.n_vertices < 3:
            raise PolygonTooSmall(f"need at least 3 vertices, got {self.n_vertices}")
        ds = _normalized_diagonals(self.n_vertices, self.diagonals)
        if len(ds) != self.n_vertices - 3:
            raise WrongDiagonalCount(
                f"a {self.n_vertices}-gon triangulation needs "
                f"{self.n_vertices - 3} diagonals, got {len(ds)}"
            )
        object.__setattr__(self, "diagonals", ds)


def validate_triangulation(n_vertices: int, diagonals) -> Triangulation:
    """Validate and canonicalize a raw diagonal collection into a Triangulation."""
    return Triangulation(n_vertices, tuple(diagonals))


def validate_dissection(n_vertices: int, diagonals) -> Dissection:
    """Validate and canonicalize a raw diagonal collection into a Dissection."""
    return Dissection(n_vertices, tuple(diagonals))


def cells_of(d: Dissection) -> list[Cell]:
    """The faces the diagonals cut the polygon into.

    Each cell is given in counterclockwise boundary order starting at its
    smallest label.  A dissection with k diagonals has exactly k+1 cells.
    The list follows the recursive split order: the first diagonal (in
    lexicographic order) separates the polygon, the arc containing the
    smaller labels is emitted first.
    """
    out: list[Cell] = []
    stack: list[tuple[list[int], list[Diagonal]]] = [
        (list(range(1, d.n_vertices + 1)), list(d.diagonals))
    ]
    while stack:
        boundary, diags = stack.pop()
        if not diags:
            i = boundary.index(min(boundary))
            out.append(tuple(boundary[i:] + boundary[:i]))
            continue
        a, b = diags[0]
        ia = boundary.index(a)
        ib = boundary.index(b)
        if ia > ib:
            ia, ib = ib, ia
        part1 = boundary[ia : ib + 1]
        part2 = boundary[ib:] + boundary[: ia + 1]
        inside = set(part1)
        d1: list[Diagonal] = []
        d2: list[Diagonal] = []
        for e in diags[1:]:
            if e[0] in inside and e[1] in inside:
                d1.append(e)
            else:
                d2.append(e)
        stack.append((part2, d2))
        stack.append((part1, d1))
    return out


def triangles_of(t: Triangulation) -> list[Triangle]:
    """The N-2 triangles of a triangulation, each sorted, in ascending order."""
    cells = cells_of(t)
    for c in cells:
        if len(c) != 3:
            raise InvariantViolation(
                f"triangulation of the {t.n_vertices}-gon produced a "
                f"{len(c)}-sided cell {c}"
            )
    return sorted(cells)  # type: ignore[arg-type]
