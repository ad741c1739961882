"""Decent 312-avoiding permutations <-> polygon dissections.

Forward map: a decent 312-avoiding permutation of 1..n with r descending
runs is the clip sequence of a triangulation of the (n+2)-gon.  Within
each run, the triangles of all entries after the first merge into one
cell; the first entry's triangle is removed -- deleting its apex when both
of the apex's edges are polygon sides (an ear), or identifying the two
endpoints of its single polygon side (closing a gap).  Relabeling the
surviving vertex classes 1..n-r+2 yields a dissection of an (n-r+2)-gon by
exactly r-1 diagonals, and the map is a bijection onto those dissections.

The inverse is table-based: all decent avoiders of the derived size are
forward-mapped once, memoized, and optionally persisted through the
textio cache.  Every step of the forward procedure is asserted; a failed
assertion raises InvariantViolation because it would mean the bijection
itself is broken.
"""

from __future__ import annotations

import os
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Literal

from .clip import ClipTrace, build_triangulation, clip_sequence, triangle_of_label
from .enumeration import all_decent_312_avoiders
from .errors import (
    InnerTriangle,
    InvariantViolation,
    LimitExceeded,
    NoPreimage,
    NotDecent,
)
from .patterns import Permutation, as_permutation, descending_runs, is_decent
from .polygon import Cell, Dissection, Triangle, cells_of, is_side
from .textio import cache_read, cache_write, format_permutation, format_polygon, parse_permutation

DEFAULT_LIMIT = 14
LIMIT_ENV = "CLIPSEQ_UNDISSECT_LIMIT"


@dataclass(frozen=True)
class RemovedTriangle:
    """The triangle removed for one run (the run's first entry)."""

    run_index: int
    label: int
    triangle: Triangle
    kind: Literal["ear", "gap"]
    identified: tuple[int, int] | None  # endpoints of the closed side, gaps only


@dataclass(frozen=True)
class RunCell:
    run_index: int
    entries: tuple[int, ...]
    cell: Cell  # in final labels
    removed: RemovedTriangle

    @property
    def cell_size(self) -> int:
        return len(self.cell)


@dataclass(frozen=True)
class CellReport:
    runs: tuple[RunCell, ...]
    relabeling: dict  # surviving original vertex -> final label


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def decent_to_dissection(p) -> tuple[Dissection, CellReport]:
    """Map a decent 312-avoiding permutation to its dissection and report."""
    p = as_permutation(p)
    if not is_decent(p):
        raise NotDecent(f"{p} is not decent (up/down word must be D..D with no UU)")
    n = len(p)
    n0 = n + 2
    t = build_triangulation(p)  # raises NotAvoiding with a witness if needed
    sigma, trace = clip_sequence(t)
    if sigma != p:
        raise InvariantViolation(f"clip(build({p})) returned {sigma}")

    runs = descending_runs(p).runs
    r = len(runs)

    deleted: set[int] = set()
    gap_pairs: list[tuple[int, int]] = []
    removed_records: list[RemovedTriangle] = []
    raw_cells: list[list[int]] = []
    for ti, run in enumerate(runs):
        tris = [triangle_of_label(trace, v) for v in run]
        for x, y in zip(tris, tris[1:]):
            if len(set(x) & set(y)) != 2:
                raise InvariantViolation(
                    f"run {run}: triangles {x} and {y} do not share an edge"
                )
        raw_cells.append(sorted(set(v for tri in tris[1:] for v in tri)))
        label = run[0]
        removed = tris[0]
        u, w = (v for v in removed if v != label)
        if is_side(n0, u, w):
            raise InvariantViolation(
                f"removed triangle {removed} rests on the side ({u}, {w})"
            )
        side_u = is_side(n0, label, u)
        side_w = is_side(n0, label, w)
        if side_u and side_w:
            deleted.add(label)
            removed_records.append(RemovedTriangle(ti, label, removed, "ear", None))
        elif side_u or side_w:
            s = u if side_u else w
            pair = (label, s) if label < s else (s, label)
            gap_pairs.append(pair)
            removed_records.append(RemovedTriangle(ti, label, removed, "gap", pair))
        else:
            raise InnerTriangle(
                f"removed triangle {removed} for run {run} of {p} shares no "
                f"side with the {n0}-gon"
            )

    parent = list(range(n0 + 1))
    for v, s in gap_pairs:
        if v in deleted or s in deleted:
            raise InvariantViolation(f"gap pair ({v}, {s}) touches a deleted vertex")
        parent[_find(parent, s)] = _find(parent, v)

    survivors = [v for v in range(1, n0 + 1) if v not in deleted]
    class_min: dict[int, int] = {}
    for v in survivors:
        root = _find(parent, v)
        class_min[root] = min(class_min.get(root, v), v)
    n_out = n - r + 2
    if len(class_min) != n_out:
        raise InvariantViolation(
            f"{len(class_min)} survivor classes for {p}, expected {n_out}"
        )
    if _find(parent, n0 - 1) == _find(parent, n0):
        raise InvariantViolation(f"reference vertices {n0 - 1} and {n0} merged for {p}")

    final_of_root = {
        root: i + 1
        for i, (_, root) in enumerate(sorted((m, r_) for r_, m in class_min.items()))
    }
    relabel = {v: final_of_root[_find(parent, v)] for v in survivors}
    if relabel[n0 - 1] != n_out - 1 or relabel[n0] != n_out:
        raise InvariantViolation(
            f"reference vertices relabeled to ({relabel[n0 - 1]}, {relabel[n0]}), "
            f"expected ({n_out - 1}, {n_out})"
        )

    walk = [relabel[v] for v in range(1, n0 + 1) if v not in deleted]
    collapsed = [x for i, x in enumerate(walk) if x != walk[i - 1]]
    if collapsed != list(range(1, n_out + 1)):
        raise InvariantViolation(
            f"relabeling does not respect the boundary cycle for {p}: {collapsed}"
        )

    final_cells: list[Cell] = []
    for run, vertices in zip(runs, raw_cells):
        if any(v in deleted for v in vertices):
            raise InvariantViolation(f"cell of run {run} contains a deleted vertex")
        cell = tuple(sorted({relabel[v] for v in vertices}))
        if len(cell) != len(run) + 1:
            raise InvariantViolation(
                f"cell {cell} of run {run} has {len(cell)} vertices, "
                f"expected {len(run) + 1}"
            )
        final_cells.append(cell)

    edge_count: Counter[tuple[int, int]] = Counter()
    for cell in final_cells:
        for a, b in zip(cell, cell[1:] + cell[:1]):
            edge_count[(a, b) if a < b else (b, a)] += 1
    diagonals = []
    for edge, count in edge_count.items():
        if is_side(n_out, *edge):
            if count != 1:
                raise InvariantViolation(f"side {edge} borders {count} cells")
        else:
            if count != 2:
                raise InvariantViolation(f"diagonal {edge} borders {count} cells")
            diagonals.append(edge)
    if len(diagonals) != r - 1:
        raise InvariantViolation(
            f"{len(diagonals)} output diagonals for {p}, expected {r - 1}"
        )
    result = Dissection(n_out, tuple(sorted(diagonals)))
    if sorted(cells_of(result)) != sorted(final_cells):
        raise InvariantViolation(f"cell mismatch for {p}")

    report = CellReport(
        runs=tuple(
            RunCell(i, runs[i], final_cells[i], removed_records[i]) for i in range(r)
        ),
        relabeling=relabel,
    )
    return result, report


# ---------------------------------------------------------------------------
# table-based inverse

_tables: dict[int, dict[str, str]] = {}
_tables_lock = threading.Lock()


def inverse_table(n: int, cache_dir: str | None = None) -> dict[str, str]:
    """Forward-map every decent avoider of size n; memoized and persisted.

    Keys are canonical dissection texts, values canonical permutation
    texts.  A key collision would disprove injectivity of the forward map
    and raises immediately.
    """
    table = _tables.get(n)
    if table is not None:
        return table
    with _tables_lock:
        table = _tables.get(n)
        if table is not None:
            return table
        table = cache_read(n, cache_dir)
        if table is None:
            table = {}
            for p in all_decent_312_avoiders(n, bound=max(n, DEFAULT_LIMIT)):
                d, _ = decent_to_dissection(p)
                key = format_polygon(d)
                if key in table:
                    raise InvariantViolation(
                        f"forward map is not injective: {table[key]} and "
                        f"{format_permutation(p)} both give {key}"
                    )
                table[key] = format_permutation(p)
            cache_write(n, table, cache_dir)
        _tables[n] = table
        return table


def dissection_to_decent(
    d: Dissection, limit: int | None = None, cache_dir: str | None = None
) -> Permutation:
    """The unique decent 312-avoiding preimage of a dissection.

    The preimage length is n = N' + d' - 1 for an N'-gon with d'
    diagonals; n must not exceed ``limit`` (default 14, env
    CLIPSEQ_UNDISSECT_LIMIT) since the lookup table for size n is built by
    exhaustive enumeration.
    """
    if limit is None:
        limit = int(os.environ.get(LIMIT_ENV, DEFAULT_LIMIT))
    n = d.n_vertices + len(d.diagonals) - 1
    if n > limit:
        raise LimitExceeded(
            f"preimage length {n} exceeds the inverse-table limit {limit}"
        )
    table = inverse_table(n, cache_dir)
    key = format_polygon(d)
    value = table.get(key)
    if value is None:
        raise NoPreimage(f"no decent 312-avoiding preimage for {key}")
    return parse_permutation(value)
