"""Text formats, deterministic rendering, and the inverse-table cache.

Polygon grammar: ``N ';' [a '-' b (',' a '-' b)*]``, e.g. ``6; 1-3,1-4,4-6``;
a leading ``{`` switches to the JSON object form with fields ``n_vertices``
and ``diagonals``.  Permutations are whitespace- or comma-separated
integers, or a compact digit string like ``2143`` when every value is a
single digit.

Rendering is byte-deterministic: polygon vertices sit on a circle with
vertex 1 at 90 degrees counterclockwise, all coordinates rounded to three
decimals, all element orders fixed.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from dataclasses import dataclass

from .clip import ClipTrace
from .errors import ParseError, UnsupportedFormat
from .patterns import Permutation, as_permutation
from .polygon import Cell, Dissection, Triangulation, is_side
from .tree import TreeNode

CACHE_ENV = "CLIPSEQ_CACHE"
CACHE_FORMAT = "clipseq-inverse-table"
CACHE_VERSION = 1


# ---------------------------------------------------------------------------
# permutations

def parse_permutation(text: str) -> Permutation:
    s = text.strip()
    if not s:
        raise ParseError("empty permutation text")
    if ("," in s) or any(ch.isspace() for ch in s):
        tokens = s.replace(",", " ").split()
    elif s.isdigit() and len(s) > 1:
        tokens = list(s)  # compact form, single-digit values only
    else:
        tokens = [s]
    try:
        values = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise ParseError(f"cannot parse permutation from {text!r}") from exc
    return as_permutation(values)


def format_permutation(p: Permutation) -> str:
    """Canonical form: space-separated values."""
    return " ".join(str(v) for v in p)


def format_permutation_compact(p: Permutation) -> str:
    """Digit-string form when unambiguous (all values <= 9), else canonical."""
    if p and max(p) <= 9:
        return "".join(str(v) for v in p)
    return format_permutation(p)


# ---------------------------------------------------------------------------
# polygons

def parse_polygon(text: str) -> Triangulation | Dissection:
    """Parse polygon text; returns a Triangulation when the count is N-3."""
    s = text.strip()
    if s.startswith("{"):
        try:
            obj = json.loads(s)
            n = int(obj["n_vertices"])
            pairs = [(int(a), int(b)) for a, b in obj["diagonals"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad polygon JSON: {exc}") from exc
    else:
        head, sep, tail = s.partition(";")
        if not sep:
            raise ParseError(f"missing ';' in polygon text {text!r}")
        try:
            n = int(head.strip())
        except ValueError as exc:
            raise ParseError(f"bad vertex count {head.strip()!r}") from exc
        pairs = []
        tail = tail.strip()
        if tail:
            for item in tail.split(","):
                a, sep2, b = item.partition("-")
                if not sep2:
                    raise ParseError(f"bad diagonal {item.strip()!r}, expected a-b")
                try:
                    pairs.append((int(a.strip()), int(b.strip())))
                except ValueError as exc:
                    raise ParseError(f"bad diagonal {item.strip()!r}") from exc
    normalized = {(a, b) if a < b else (b, a) for a, b in pairs}
    if len(normalized) == n - 3:
        return Triangulation(n, tuple(pairs))
    return Dissection(n, tuple(pairs))


def format_polygon(x: Dissection) -> str:
    if not x.diagonals:
        return f"{x.n_vertices};"
    return f"{x.n_vertices}; " + ",".join(f"{a}-{b}" for a, b in x.diagonals)


def polygon_json(x: Dissection) -> str:
    return json.dumps(
        {"n_vertices": x.n_vertices, "diagonals": [list(d) for d in x.diagonals]},
        sort_keys=True,
        separators=(", ", ": "),
    )


# ---------------------------------------------------------------------------
# rendering

@dataclass(frozen=True)
class RenderOptions:
    size: int = 320
    show_labels: bool = True
    highlight: tuple[Cell, ...] = ()
    format: str | None = None  # None = by object type; "svg" or "dot"

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError(f"render size must be positive, got {self.size}")


def _fmt(x: float) -> str:
    v = round(x, 3)
    if v == 0:
        v = 0.0
    return f"{v:.3f}"


def _vertex_positions(n: int, size: int, x_offset: float = 0.0) -> dict[int, tuple[float, float]]:
    cx = x_offset + size / 2.0
    cy = size / 2.0
    radius = size * 0.42
    pos = {}
    for i in range(1, n + 1):
        angle = math.pi / 2.0 + 2.0 * math.pi * (i - 1) / n
        pos[i] = (cx + radius * math.cos(angle), cy - radius * math.sin(angle))
    return pos


def _panel(
    n: int,
    alive: list[int],
    diagonals,
    opts: RenderOptions,
    x_offset: float,
    caption: str,
    highlight,
) -> list[str]:
    size = opts.size
    pos = _vertex_positions(n, size, x_offset)
    out: list[str] = []
    for cell in highlight:
        pts = " ".join(f"{_fmt(pos[v][0])},{_fmt(pos[v][1])}" for v in cell)
        out.append(f'<polygon points="{pts}" fill="#dbe9f6" stroke="none"/>')
    if len(alive) >= 2:
        pts = " ".join(f"{_fmt(pos[v][0])},{_fmt(pos[v][1])}" for v in alive)
        shape = "polygon" if len(alive) >= 3 else "polyline"
        out.append(f'<{shape} points="{pts}" fill="none" stroke="black" stroke-width="1"/>')
    for a, b in diagonals:
        (x1, y1), (x2, y2) = pos[a], pos[b]
        out.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="black" stroke-width="1"/>'
        )
    cx = x_offset + size / 2.0
    cy = size / 2.0
    for v in alive:
        x, y = pos[v]
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="black"/>')
        if opts.show_labels:
            r = math.hypot(x - cx, y - cy)
            lx = cx + (x - cx) * (r + 16) / r
            ly = cy + (y - cy) * (r + 16) / r
            out.append(
                f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-family="sans-serif" '
                f'font-size="12" text-anchor="middle" dominant-baseline="middle">{v}</text>'
            )
    if caption:
        out.append(
            f'<text x="{_fmt(x_offset + size / 2.0)}" y="{_fmt(size - 6.0)}" '
            f'font-family="sans-serif" font-size="12" text-anchor="middle">{caption}</text>'
        )
    return out


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"])


def _render_polygon_svg(x: Dissection, opts: RenderOptions) -> str:
    body = _panel(
        x.n_vertices,
        list(range(1, x.n_vertices + 1)),
        x.diagonals,
        opts,
        0.0,
        "",
        sorted(tuple(c) for c in opts.highlight),
    )
    return _svg(opts.size, opts.size, body)


def _render_polygon_dot(x: Dissection) -> str:
    n = x.n_vertices
    lines = ["graph polygon {"]
    for v in range(1, n + 1):
        lines.append(f"  {v};")
    for v in range(1, n):
        lines.append(f"  {v} -- {v + 1};")
    lines.append(f"  {n} -- 1;")
    for a, b in x.diagonals:
        lines.append(f'  {a} -- {b} [style="dashed"];')
    lines.append("}")
    return "\n".join(lines)


def _render_clip_steps_svg(trace: ClipTrace, opts: RenderOptions) -> str:
    n = trace.n_vertices
    all_diags = sorted(
        {
            (a, b)
            for step in trace.steps
            for a, b in (
                (step.triangle[0], step.triangle[1]),
                (step.triangle[1], step.triangle[2]),
                (step.triangle[0], step.triangle[2]),
            )
            if not is_side(n, a, b)
        }
    )
    panels = len(trace.steps) + 1
    body: list[str] = []
    alive = list(range(1, n + 1))
    for k in range(panels):
        alive_set = set(alive)
        adjacent = {
            (min(a, b), max(a, b)) for a, b in zip(alive, alive[1:] + alive[:1])
        }
        diags = [
            d
            for d in all_diags
            if d[0] in alive_set and d[1] in alive_set and d not in adjacent
        ]
        if k < len(trace.steps):
            caption = f"clip {trace.steps[k].label}"
            highlight = [trace.steps[k].triangle]
        else:
            caption = "done"
            highlight = []
        body.extend(_panel(n, alive, diags, opts, float(k * opts.size), caption, highlight))
        if k < len(trace.steps):
            alive.remove(trace.steps[k].label)
    return _svg(panels * opts.size, opts.size, body)


def _render_tree_dot(tree: TreeNode) -> str:
    lines = ["digraph clip_tree {", '  node [shape="circle"];']
    counter = 0
    stack: list[tuple[TreeNode, int]] = []

    def new_id() -> int:
        nonlocal counter
        counter += 1
        return counter - 1

    root_id = new_id()
    stack.append((tree, root_id))
    while stack:
        node, nid = stack.pop()
        a, b, c = node.triangle
        lines.append(f'  n{nid} [label="{node.apex} ({a},{b},{c})"];')
        # right pushed first so left gets the smaller id (deterministic)
        children = []
        if node.left is not None:
            children.append((node.left, "l"))
        if node.right is not None:
            children.append((node.right, "r"))
        assigned = [(child, tag, new_id()) for child, tag in children]
        for child, tag, cid in assigned:
            lines.append(f'  n{nid} -> n{cid} [label="{tag}"];')
        for child, tag, cid in reversed(assigned):
            stack.append((child, cid))
    lines.append("}")
    return "\n".join(lines)


def render(x, opts: RenderOptions | None = None) -> str:
    """Deterministic document text for a polygon, clip trace, or tree."""
    opts = opts or RenderOptions()
    if isinstance(x, TreeNode):
        if opts.format not in (None, "dot"):
            raise UnsupportedFormat("trees render as graph descriptions only")
        return _render_tree_dot(x)
    if isinstance(x, ClipTrace):
        if opts.format not in (None, "svg"):
            raise UnsupportedFormat("clip-step panels render as svg only")
        return _render_clip_steps_svg(x, opts)
    if isinstance(x, Dissection):
        if opts.format == "dot":
            return _render_polygon_dot(x)
        return _render_polygon_svg(x, opts)
    raise UnsupportedFormat(f"cannot render a {type(x).__name__}")


# ---------------------------------------------------------------------------
# inverse-table cache

def _cache_dir(cache_dir: str | None) -> str | None:
    return cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV)


def _entries_digest(entries: dict[str, str]) -> str:
    canon = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def cache_path(n: int, cache_dir: str | None = None) -> str | None:
    base = _cache_dir(cache_dir)
    if base is None:
        return None
    return os.path.join(base, f"inverse-{n}.json")


def cache_read(n: int, cache_dir: str | None = None) -> dict[str, str] | None:
    """Load the inverse table for size n; any corruption is a soft miss."""
    path = cache_path(n, cache_dir)
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError):
        return None
    if not isinstance(obj, dict):
        return None
    if obj.get("format") != CACHE_FORMAT or obj.get("version") != CACHE_VERSION:
        return None
    entries = obj.get("entries")
    if obj.get("n") != n or not isinstance(entries, dict):
        return None
    if obj.get("sha256") != _entries_digest(entries):
        return None
    return entries


def cache_write(n: int, table: dict[str, str], cache_dir: str | None = None) -> str | None:
    """Atomically persist the inverse table; no-op when no directory is set."""
    path = cache_path(n, cache_dir)
    if path is None:
        return None
    os.makedirs(os.path.dirname(path), exist_ok=True)
    payload = {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "n": n,
        "entries": table,
        "sha256": _entries_digest(table),
    }
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path
