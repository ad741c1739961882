"""Triangulation <-> binary tree, rooted at the reference edge (N-1, N).

Every node stands for one triangle.  Its base edge is oriented as
(p_end, q_end); the apex is the triangle's third vertex.  The left child
hangs across the edge (apex, q_end) -- the side whose interior labels are
smaller -- and the right child across (apex, p_end).  With the root based
on (p_end, q_end) = (N-1, N), reading apexes in post-order reproduces the
clip sequence of the triangulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InputError, InvariantViolation, MalformedTree
from .patterns import Permutation
from .polygon import Triangle, Triangulation, is_side, triangles_of


@dataclass(frozen=True)
class TreeNode:
    apex: int
    triangle: Triangle
    p_end: int
    q_end: int
    left: Optional[TreeNode]
    right: Optional[TreeNode]


def to_binary_tree(t: Triangulation) -> TreeNode:
    """Root the triangulation's dual at the triangle on edge (N-1, N)."""
    n = t.n_vertices
    triangles = triangles_of(t)
    by_edge: dict[tuple[int, int], list[int]] = {}
    for idx, (x, y, z) in enumerate(triangles):
        for e in ((x, y), (y, z), (x, z)):
            by_edge.setdefault(e, []).append(idx)

    ref = by_edge.get((n - 1, n))
    if ref is None or len(ref) != 1:
        raise InvariantViolation(f"reference edge ({n - 1}, {n}) not on a unique triangle")

    def neighbor(edge: tuple[int, int], own: int) -> int | None:
        tris = by_edge[edge]
        if len(tris) == 1:
            return None
        return tris[0] if tris[1] == own else tris[1]

    # First pass: resolve each triangle's apex, base orientation and children.
    meta: dict[int, tuple[int, int, int, int | None, int | None]] = {}
    order: list[int] = []
    stack: list[tuple[int, int, int]] = [(ref[0], n - 1, n)]
    while stack:
        idx, p, q = stack.pop()
        tri = triangles[idx]
        apex = next(v for v in tri if v != p and v != q)
        left_edge = (apex, q) if apex < q else (q, apex)
        right_edge = (apex, p) if apex < p else (p, apex)
        left = neighbor(left_edge, idx)
        right = neighbor(right_edge, idx)
        meta[idx] = (apex, p, q, left, right)
        order.append(idx)
        if left is not None:
            stack.append((left, apex, q))  # left child: p_end = apex, q_end = q
        if right is not None:
            stack.append((right, p, apex))  # right child: p_end = p, q_end = apex

    # Second pass: children before parents (reverse of discovery order).
    built: dict[int, TreeNode] = {}
    for idx in reversed(order):
        apex, p, q, left, right = meta[idx]
        built[idx] = TreeNode(
            apex,
            triangles[idx],
            p,
            q,
            built[left] if left is not None else None,
            built[right] if right is not None else None,
        )
    return built[ref[0]]


def post_order(tree: TreeNode) -> Permutation:
    """Apex labels in post-order: left subtree, right subtree, node."""
    out: list[int] = []
    stack: list[tuple[TreeNode, bool]] = [(tree, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node.apex)
            continue
        stack.append((node, True))
        if node.right is not None:
            stack.append((node.right, False))
        if node.left is not None:
            stack.append((node.left, False))
    return tuple(out)


def _walk(tree: TreeNode):
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        if node.right is not None:
            stack.append(node.right)
        if node.left is not None:
            stack.append(node.left)


def from_binary_tree(tree: TreeNode, n_vertices: int) -> Triangulation:
    """Collect the nodes' triangles back into a triangulation.

    Verifies the structural consistency of the tree first: node count,
    base-edge orientation of the root and of every child, triangle/apex
    agreement, and the apex label set.
    """
    n = n_vertices
    if tree.p_end != n - 1 or tree.q_end != n:
        raise MalformedTree(
            f"root base edge is ({tree.p_end}, {tree.q_end}), "
            f"expected ({n - 1}, {n})"
        )
    nodes = list(_walk(tree))
    if len(nodes) != n - 2:
        raise MalformedTree(f"{len(nodes)} nodes for a {n}-gon, expected {n - 2}")
    apexes = set()
    edges: set[tuple[int, int]] = set()
    for node in nodes:
        expected = tuple(sorted((node.apex, node.p_end, node.q_end)))
        if node.triangle != expected:
            raise MalformedTree(
                f"node triangle {node.triangle} does not match apex/base {expected}"
            )
        if node.left is not None and (
            node.left.q_end != node.q_end or node.left.p_end != node.apex
        ):
            raise MalformedTree(f"left child base mismatch under apex {node.apex}")
        if node.right is not None and (
            node.right.q_end != node.apex or node.right.p_end != node.p_end
        ):
            raise MalformedTree(f"right child base mismatch under apex {node.apex}")
        apexes.add(node.apex)
        x, y, z = node.triangle
        edges.update(((x, y), (y, z), (x, z)))
    if apexes != set(range(1, n - 1)):
        raise MalformedTree(f"apex labels {sorted(apexes)} are not 1..{n - 2}")
    diagonals = tuple(e for e in sorted(edges) if not is_side(n, *e))
    try:
        return Triangulation(n, diagonals)
    except InputError as exc:
        raise MalformedTree(f"collected triangles are inconsistent: {exc}") from exc
