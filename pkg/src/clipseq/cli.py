"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 internal invariant violation
(the witness is printed), 3 bound or limit exceeded.  Output is one
object per line; --json switches to structured output.  Object arguments
may be given inline, as '-' for standard input, or via --file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .clip import build_triangulation, clip_sequence
from .dissect import decent_to_dissection, dissection_to_decent
from .enumeration import (
    all_312_avoiders,
    all_decent_312_avoiders,
    all_dissections,
    all_triangulations,
)
from .errors import (
    ClipseqError,
    InputError,
    InvariantViolation,
    LimitError,
    ParseError,
    WrongDiagonalCount,
)
from .patterns import has_run_signature, is_312_avoiding, is_decent
from .polygon import Triangulation
from .textio import (
    RenderOptions,
    format_permutation,
    format_permutation_compact,
    format_polygon,
    parse_permutation,
    parse_polygon,
    polygon_json,
    render,
)
from .tree import TreeNode, post_order, to_binary_tree
from .verify import (
    verify_clip_bijection,
    verify_dissection_bijection,
    verify_postorder,
)


def _read_value(args) -> str:
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return fh.read().strip()
    if args.value is None or args.value == "-":
        return sys.stdin.read().strip()
    return args.value


def _parse_triangulation(text: str) -> Triangulation:
    obj = parse_polygon(text)
    if not isinstance(obj, Triangulation):
        raise WrongDiagonalCount(
            f"a full triangulation is required ({obj.n_vertices - 3} diagonals "
            f"for a {obj.n_vertices}-gon), got {len(obj.diagonals)}"
        )
    return obj


def _perm_out(p, as_json: bool) -> str:
    if as_json:
        return json.dumps({"values": list(p)})
    return format_permutation_compact(p)


def _poly_out(d, as_json: bool) -> str:
    return polygon_json(d) if as_json else format_polygon(d)


def _tree_text(node: TreeNode) -> str:
    def rec(nd: TreeNode | None) -> str:
        if nd is None:
            return "-"
        return f"({nd.apex} {rec(nd.left)} {rec(nd.right)})"

    return rec(node)


def _tree_json(node: TreeNode | None):
    if node is None:
        return None
    return {
        "apex": node.apex,
        "triangle": list(node.triangle),
        "base": [node.p_end, node.q_end],
        "left": _tree_json(node.left),
        "right": _tree_json(node.right),
    }


def _cmd_clip(args) -> int:
    t = _parse_triangulation(_read_value(args))
    sigma, trace = clip_sequence(t)
    if args.json:
        obj = {"permutation": list(sigma)}
        if args.trace:
            obj["steps"] = [
                {"label": s.label, "triangle": list(s.triangle)} for s in trace.steps
            ]
        print(json.dumps(obj))
        return 0
    print(format_permutation_compact(sigma))
    if args.trace:
        for s in trace.steps:
            a, b, c = s.triangle
            print(f"{s.label} {a}-{b}-{c}")
    return 0


def _cmd_build(args) -> int:
    sigma = parse_permutation(_read_value(args))
    t = build_triangulation(sigma)
    print(_poly_out(t, args.json))
    return 0


def _cmd_tree(args) -> int:
    t = _parse_triangulation(_read_value(args))
    root = to_binary_tree(t)
    order = post_order(root)
    if args.json:
        print(json.dumps({"tree": _tree_json(root), "post_order": list(order)}))
        return 0
    print(_tree_text(root))
    print(format_permutation_compact(order))
    return 0


def _cmd_check(args) -> int:
    p = parse_permutation(_read_value(args))
    checks: list[tuple[str, bool]] = []
    if args.decent:
        checks.append(("decent", is_decent(p)))
    if args.avoiding:
        checks.append(("avoiding", is_312_avoiding(p)))
    if args.pattern:
        try:
            signature = [int(x) for x in args.pattern.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad signature {args.pattern!r}") from exc
        checks.append((f"pattern {args.pattern}", has_run_signature(p, signature)))
    if not checks:
        checks = [("decent", is_decent(p)), ("avoiding", is_312_avoiding(p))]
    if args.json:
        print(json.dumps({name: value for name, value in checks}))
    else:
        for name, value in checks:
            print(f"{name}: {'true' if value else 'false'}")
    return 0


def _cmd_dissect(args) -> int:
    p = parse_permutation(_read_value(args))
    d, report = decent_to_dissection(p)
    if args.json:
        obj = {
            "dissection": {
                "n_vertices": d.n_vertices,
                "diagonals": [list(x) for x in d.diagonals],
            },
            "runs": [
                {
                    "entries": list(rc.entries),
                    "cell": list(rc.cell),
                    "removed": {
                        "label": rc.removed.label,
                        "triangle": list(rc.removed.triangle),
                        "kind": rc.removed.kind,
                        "identified": list(rc.removed.identified)
                        if rc.removed.identified
                        else None,
                    },
                }
                for rc in report.runs
            ],
            "relabeling": {str(k): v for k, v in sorted(report.relabeling.items())},
        }
        print(json.dumps(obj))
        return 0
    print(format_polygon(d))
    for rc in report.runs:
        a, b, c = rc.removed.triangle
        desc = f"removed {rc.removed.kind} {rc.removed.label} ({a}-{b}-{c})"
        if rc.removed.identified:
            u, v = rc.removed.identified
            desc += f" identify {u}={v}"
        entries = ",".join(map(str, rc.entries))
        cell = "-".join(map(str, rc.cell))
        print(f"run {rc.run_index + 1}: entries {entries}; cell {cell}; {desc}")
    print("relabel " + " ".join(f"{k}->{v}" for k, v in sorted(report.relabeling.items())))
    return 0


def _cmd_undissect(args) -> int:
    d = parse_polygon(_read_value(args))
    p = dissection_to_decent(d, limit=args.limit, cache_dir=args.cache)
    print(_perm_out(p, args.json))
    return 0


def _cmd_enumerate(args) -> int:
    n = args.n
    if args.kind == "triangulations":
        items = all_triangulations(n, bound=args.bound)
        fmt = lambda x: _poly_out(x, args.json)  # noqa: E731
    elif args.kind == "avoiders":
        items = all_312_avoiders(n, bound=args.bound)
        fmt = lambda x: _perm_out(x, args.json)  # noqa: E731
    elif args.kind == "decent":
        items = all_decent_312_avoiders(n, bound=args.bound)
        fmt = lambda x: _perm_out(x, args.json)  # noqa: E731
    else:
        if args.diagonals is None:
            raise ParseError("--diagonals is required for --kind dissections")
        items = all_dissections(n, args.diagonals, bound=args.bound)
        fmt = lambda x: _poly_out(x, args.json)  # noqa: E731
    if args.count_only:
        print(sum(1 for _ in items))
        return 0
    for item in items:
        print(fmt(item))
    return 0


def _cmd_verify(args) -> int:
    suites = [args.suite] if args.suite else ["clip", "tree", "dissect"]
    reports = []
    for suite in suites:
        if suite == "dissect":
            lo = args.min_n if args.min_n is not None else 2
            hi = args.max_n if args.max_n is not None else 11
            runner = verify_dissection_bijection
        else:
            lo = args.min_n if args.min_n is not None else 3
            hi = args.max_n if args.max_n is not None else 12
            runner = verify_clip_bijection if suite == "clip" else verify_postorder
        for size in range(lo, hi + 1):
            report = runner(size)
            reports.append(report)
            print(report.summary())
    if any(not rep.ok for rep in reports):
        return 2
    return 0


def _cmd_render(args) -> int:
    highlight = ()
    if args.highlight:
        cells = []
        for chunk in args.highlight.split(";"):
            try:
                cells.append(tuple(int(x) for x in chunk.split("-")))
            except ValueError as exc:
                raise ParseError(f"bad highlight cell {chunk!r}") from exc
        highlight = tuple(cells)
    opts = RenderOptions(
        size=args.size,
        show_labels=not args.no_labels,
        highlight=highlight,
        format=args.format,
    )
    text = _read_value(args)
    if args.tree:
        obj = to_binary_tree(_parse_triangulation(text))
    elif args.steps:
        _, trace = clip_sequence(_parse_triangulation(text))
        obj = trace
    else:
        obj = parse_polygon(text)
    print(render(obj, opts))
    return 0


def _add_input(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("value", nargs="?", help="inline value, or '-' for stdin")
    sub.add_argument("--file", help="read the value from a file")
    sub.add_argument("--json", action="store_true", help="structured output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clipseq",
        description="Clip sequences of polygon triangulations and their bijections.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("clip", help="triangulation -> its clip sequence")
    _add_input(s)
    s.add_argument("--trace", action="store_true", help="print one line per clip step")
    s.set_defaults(func=_cmd_clip)

    s = subs.add_parser("build", help="312-avoiding permutation -> triangulation")
    _add_input(s)
    s.set_defaults(func=_cmd_build)

    s = subs.add_parser("tree", help="triangulation -> binary tree and post-order")
    _add_input(s)
    s.set_defaults(func=_cmd_tree)

    s = subs.add_parser("check", help="test permutation properties")
    _add_input(s)
    s.add_argument("--decent", action="store_true")
    s.add_argument("--avoiding", action="store_true")
    s.add_argument("--pattern", help="comma-separated descent counts, e.g. 2,2,2")
    s.set_defaults(func=_cmd_check)

    s = subs.add_parser("dissect", help="decent permutation -> dissection + report")
    _add_input(s)
    s.set_defaults(func=_cmd_dissect)

    s = subs.add_parser("undissect", help="dissection -> decent permutation")
    _add_input(s)
    s.add_argument("--limit", type=int, default=None, help="max preimage length")
    s.add_argument("--cache", default=None, help="inverse-table cache directory")
    s.set_defaults(func=_cmd_undissect)

    s = subs.add_parser("enumerate", help="stream all objects of one size")
    s.add_argument(
        "--kind",
        required=True,
        choices=["triangulations", "avoiders", "decent", "dissections"],
    )
    s.add_argument("--n", type=int, required=True, help="polygon size or length")
    s.add_argument("--diagonals", type=int, default=None, help="for dissections")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--bound", type=int, default=None, help="enumeration size bound")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_enumerate)

    s = subs.add_parser("verify", help="run an exhaustive verification suite")
    s.add_argument("--suite", choices=["clip", "tree", "dissect"], default=None)
    s.add_argument("--min-n", type=int, default=None)
    s.add_argument("--max-n", type=int, default=None)
    s.set_defaults(func=_cmd_verify)

    s = subs.add_parser("render", help="deterministic SVG/DOT rendering")
    _add_input(s)
    s.add_argument("--size", type=int, default=320)
    s.add_argument("--no-labels", action="store_true")
    s.add_argument("--format", choices=["svg", "dot"], default=None)
    s.add_argument("--steps", action="store_true", help="clip-step panels")
    s.add_argument("--tree", action="store_true", help="render the binary tree")
    s.add_argument("--highlight", help="cells like 1-2-3;3-4-5")
    s.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2
    except ClipseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
