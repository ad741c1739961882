"""Permutation pattern machinery: 312-avoidance, up/down words, runs.

Permutations are plain tuples of distinct positive integers; a canonical
permutation of length n contains each of 1..n exactly once.  Most
predicates here assume canonical input (the parsing layer enforces it);
the 312 detectors work on any sequence of distinct integers since only
the relative order matters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadValueSets, InvariantViolation, NotAPermutation, NotAvoiding

Permutation = tuple[int, ...]


def as_permutation(values) -> Permutation:
    """Coerce to a tuple and require it to be a permutation of 1..n."""
    p = tuple(values)
    if set(p) != set(range(1, len(p) + 1)):
        raise NotAPermutation(f"{p} is not a permutation of 1..{len(p)}")
    return p


def up_down_pattern(p: Permutation) -> str:
    """The word over {U, D} recording ascents and descents of p."""
    return "".join("D" if p[i] > p[i + 1] else "U" for i in range(len(p) - 1))


def is_decent(p: Permutation) -> bool:
    """True iff the up/down word starts with D, ends with D and has no UU.

    Equivalently: every maximal descending run of p has length >= 2.  The
    length-0 and length-1 permutations are not decent (their word is empty).
    """
    if len(p) < 2:
        return False
    w = up_down_pattern(p)
    return w[0] == "D" and w[-1] == "D" and "UU" not in w


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal strictly-decreasing contiguous blocks, in order."""

    runs: tuple[tuple[int, ...], ...]

    @property
    def run_count(self) -> int:
        return len(self.runs)

    @property
    def descent_counts(self) -> tuple[int, ...]:
        """One entry per run: its length minus one."""
        return tuple(len(r) - 1 for r in self.runs)


def descending_runs(p: Permutation) -> RunDecomposition:
    runs: list[tuple[int, ...]] = []
    i = 0
    n = len(p)
    while i < n:
        j = i + 1
        while j < n and p[j] < p[j - 1]:
            j += 1
        runs.append(p[i:j])
        i = j
    return RunDecomposition(tuple(runs))


def contains_312_naive(p) -> bool:
    """Cubic-time oracle: some i < j < k has p[j] < p[k] < p[i].

    Reference implementation used to validate the fast check; keep it
    independent of everything else.
    """
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if p[j] >= p[i]:
                continue
            for k in range(j + 1, n):
                if p[j] < p[k] < p[i]:
                    return True
    return False


def find_312(p) -> tuple[int, int, int] | None:
    """Locate a 312 pattern; returns 0-based indices (i, j, k) or None.

    Right-to-left scan with a monotone stack, O(n).  When an element
    smaller than the stack top is seen, the popped value becomes a
    candidate middle element; any later (further left) element exceeding
    that candidate closes the pattern.
    """
    stack: list[int] = []
    third = 0  # value of the current middle candidate; 0 = none yet
    third_idx = -1
    small_idx = -1
    for t in range(len(p) - 1, -1, -1):
        v = p[t]
        if third and v > third:
            return (t, small_idx, third_idx)
        while stack and p[stack[-1]] > v:
            third_idx = stack.pop()
            third = p[third_idx]
            small_idx = t
        stack.append(t)
    return None


def is_312_avoiding(p) -> bool:
    return find_312(p) is None


def _not_avoiding(p) -> NotAvoiding:
    w = find_312(p)
    if w is None:
        raise InvariantViolation(f"partition of {p} failed but no 312 witness exists")
    i, j, k = w
    return NotAvoiding(
        f"{p} contains 312: entries {p[i]}, {p[j]}, {p[k]} "
        f"at positions {i + 1} < {j + 1} < {k + 1}",
        witness=w,
    )


def decompose_312(p) -> tuple[int, Permutation, Permutation]:
    """Split a 312-avoiding permutation of 1..m around its last entry k.

    Returns (k, alpha, beta) where alpha is the first k-1 entries (a
    permutation of 1..k-1) and beta is the remaining m-k entries before k
    (using exactly the values k+1..m).  Raises NotAvoiding when the value
    partition fails, which happens precisely when p contains 312.
    """
    p = as_permutation(p)
    if not p:
        raise NotAPermutation("cannot decompose the empty permutation")
    m = len(p)
    k = p[-1]
    alpha = p[: k - 1]
    beta = p[k - 1 : m - 1]
    if set(alpha) != set(range(1, k)) or set(beta) != set(range(k + 1, m + 1)):
        raise _not_avoiding(p)
    return k, alpha, beta


def compose_312(alpha, beta, m: int) -> Permutation:
    """Inverse of decompose_312: assemble alpha . beta . k with k = |alpha|+1."""
    alpha = as_permutation(alpha)
    beta = tuple(beta)
    k = len(alpha) + 1
    if sorted(beta) != list(range(k + 1, m + 1)):
        raise BadValueSets(
            f"beta must use exactly the values {k + 1}..{m}, got {beta}"
        )
    for part in (alpha, beta):
        w = find_312(part)
        if w is not None:
            i, j, kk = w
            raise NotAvoiding(
                f"{part} contains 312 at positions {i + 1} < {j + 1} < {kk + 1}",
                witness=w,
            )
    return alpha + beta + (k,)


def has_run_signature(p: Permutation, signature) -> bool:
    """True iff the descent counts of p's descending runs equal signature."""
    return descending_runs(p).descent_counts == tuple(signature)


def is_uniform_run_avoider(p: Permutation, j: int) -> bool:
    """True iff p is 312-avoiding and every descending run has j descents.

    j = 1 is the alternating case (up/down word DUD...D).  Such a
    permutation of length (j+1)m maps to a dissection all of whose cells
    have j+2 vertices.
    """
    if j < 1:
        raise ValueError(f"run descent count must be >= 1, got {j}")
    if not p:
        return False
    runs = descending_runs(p).runs
    return all(len(r) == j + 1 for r in runs) and is_312_avoiding(p)
