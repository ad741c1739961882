"""Exhaustive verification suites over all instances of a given size.

Failures are collected as data, not raised: a report with a non-empty
failure list means an instance contradicted one of the claimed bijections,
and the failure string carries the witness.  Report equality and the
printed summary exclude wall time so identical scopes produce identical
output across runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .clip import build_triangulation, clip_sequence
from .dissect import decent_to_dissection
from .enumeration import (
    all_312_avoiders,
    all_decent_312_avoiders,
    all_dissections,
    all_triangulations,
    catalan,
)
from .errors import ClipseqError
from .patterns import descending_runs, is_312_avoiding
from .tree import post_order, to_binary_tree


@dataclass(frozen=True)
class VerificationReport:
    scope: str
    instances: int
    failures: tuple[str, ...]
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"{self.scope}: {self.instances} instances, {len(self.failures)} failures"]
        lines.extend(f"  FAIL: {f}" for f in self.failures)
        return "\n".join(lines)


def verify_clip_bijection(n: int) -> VerificationReport:
    """Round trips both ways and image equality with S_{n-2}(312)."""
    start = time.perf_counter()
    failures: list[str] = []
    instances = 0
    image = set()
    for t in all_triangulations(n):
        instances += 1
        try:
            sigma, _ = clip_sequence(t)
            if not is_312_avoiding(sigma):
                failures.append(f"clip({t}) = {sigma} contains 312")
            if build_triangulation(sigma) != t:
                failures.append(f"build(clip({t})) != {t}")
            image.add(sigma)
        except ClipseqError as exc:
            failures.append(f"{t}: {exc}")
    avoiders = set(all_312_avoiders(n - 2))
    for sigma in sorted(avoiders):
        instances += 1
        try:
            back, _ = clip_sequence(build_triangulation(sigma))
            if back != sigma:
                failures.append(f"clip(build({sigma})) = {back}")
        except ClipseqError as exc:
            failures.append(f"{sigma}: {exc}")
    if image != avoiders:
        failures.append(
            f"image has {len(image)} permutations, avoiders {len(avoiders)}; "
            f"difference {sorted(image ^ avoiders)[:3]}"
        )
    if len(avoiders) != catalan(n - 2):
        failures.append(f"|S_{n - 2}(312)| = {len(avoiders)} != catalan({n - 2})")
    return VerificationReport(
        f"clip-bijection N={n}", instances, tuple(failures), time.perf_counter() - start
    )


def verify_postorder(n: int) -> VerificationReport:
    """post_order(to_binary_tree(T)) = clip_sequence(T) for every T."""
    start = time.perf_counter()
    failures: list[str] = []
    instances = 0
    for t in all_triangulations(n):
        instances += 1
        try:
            sigma, _ = clip_sequence(t)
            read = post_order(to_binary_tree(t))
            if read != sigma:
                failures.append(f"{t}: post-order {read} != clip {sigma}")
        except ClipseqError as exc:
            failures.append(f"{t}: {exc}")
    return VerificationReport(
        f"postorder N={n}", instances, tuple(failures), time.perf_counter() - start
    )


def verify_dissection_bijection(n: int) -> VerificationReport:
    """Injectivity and image equality of the decent-permutation map.

    For each run count r, the images of the decent avoiders of 1..n with r
    runs must be exactly the dissections of the (n-r+2)-gon with r-1
    diagonals, with per-run cell sizes equal to run length + 1.
    """
    start = time.perf_counter()
    failures: list[str] = []
    instances = 0
    images: dict[int, dict] = {}
    for p in all_decent_312_avoiders(n):
        instances += 1
        runs = descending_runs(p).runs
        r = len(runs)
        try:
            d, report = decent_to_dissection(p)
        except ClipseqError as exc:
            failures.append(f"{p}: {exc}")
            continue
        if d.n_vertices != n - r + 2 or len(d.diagonals) != r - 1:
            failures.append(f"{p}: output {d} has wrong size for r={r}")
        for rc in report.runs:
            if rc.cell_size != len(rc.entries) + 1:
                failures.append(f"{p}: run {rc.entries} cell {rc.cell}")
        seen = images.setdefault(r, {})
        if d in seen:
            failures.append(f"{p} and {seen[d]} both map to {d}")
        seen[d] = p
    for r, seen in sorted(images.items()):
        expected = set(all_dissections(n - r + 2, r - 1))
        got = set(seen)
        if got != expected:
            failures.append(
                f"r={r}: image {len(got)} vs all dissections {len(expected)}; "
                f"difference {sorted(map(str, got ^ expected))[:3]}"
            )
    return VerificationReport(
        f"dissection-bijection n={n}", instances, tuple(failures), time.perf_counter() - start
    )
