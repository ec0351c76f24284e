"""Recognising HFO_k permutations.

The fast paths (:func:`is_hfo_k`, :func:`min_k`) call the compiled kernels.
:func:`stack_scan` is a slower, instrumented version of the same stack
algorithm that also builds the generating tree; tests use it to cross-check
the kernels and :func:`gentree.perm_to_tree`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import kernels
from .gentree import Internal, Leaf, Node
from .perm import Permutation, enumerate_class, exceptional, is_baxter, patterns_of_length, standardize


@dataclass(frozen=True)
class RangeStackEntry:
    lo: int
    hi: int
    start: int  # zero-based positions covered, half-open
    end: int

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass
class ScanResult:
    accepted: bool
    tree: Node | None
    max_arity: int
    stack: list[RangeStackEntry]
    merges: list[Permutation]


def _check_stack(stack: list[RangeStackEntry]) -> None:
    spans = sorted((e.lo, e.hi) for e in stack)
    for (a, b), (c, _) in zip(spans, spans[1:]):
        assert b < c, "stack ranges overlap"
    for a, b in zip(stack, stack[1:]):
        assert a.end == b.start, "stack positions are not contiguous"
    for e in stack:
        assert e.hi - e.lo == e.end - e.start - 1, "entry is not a contiguous range"


def stack_scan(p: Sequence[int], k: int | None = None) -> ScanResult:
    """Left-to-right least-j merging, optionally capped at ``k`` entries.

    A least-j segment whose pattern is not Baxter stops the scan with a
    rejection. Such a pattern is simple (any proper block in it would have
    given a smaller j), so no later merge can swallow it.
    """
    stack: list[RangeStackEntry] = []
    nodes: list[Node] = []
    merges: list[Permutation] = []
    best = 1
    for i, v in enumerate(p):
        stack.append(RangeStackEntry(v, v, i, i + 1))
        nodes.append(Leaf(i + 1))
        while True:
            limit = len(stack) if k is None else min(k, len(stack))
            mn, mx = stack[-1].lo, stack[-1].hi
            covered = len(stack[-1])
            found = 0
            for j in range(2, limit + 1):
                e = stack[-j]
                mn, mx = min(mn, e.lo), max(mx, e.hi)
                covered += len(e)
                if mx - mn + 1 == covered:
                    found = j
                    break
            if not found:
                break
            top = stack[-found:]
            sigma = standardize([e.lo for e in top])
            if not is_baxter(sigma):
                return ScanResult(False, None, best, stack, merges)
            merges.append(sigma)
            best = max(best, found)
            node = Internal(sigma, tuple(nodes[-found:]))
            del stack[-found:]
            del nodes[-found:]
            stack.append(RangeStackEntry(mn, mx, top[0].start, top[-1].end))
            nodes.append(node)
            _check_stack(stack)
    ok = len(stack) == 1
    return ScanResult(ok, nodes[0] if ok else None, best, stack, merges)


def merge_tree(p: Sequence[int]) -> Node:
    """The generating tree recorded by the unbounded stack scan."""
    res = stack_scan(p)
    if not res.accepted:
        raise ValueError(f"{Permutation(p).compact()} is not Baxter")
    return res.tree


def is_hfo_k(p: Sequence[int], k: int) -> bool:
    """True iff ``p`` labels an HFO_k floorplan. Linear time for fixed ``k``."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if len(p) == 1:
        return True
    return bool(kernels.hfo_scan(p, k))


def min_k(p: Sequence[int]) -> int | None:
    """Smallest k with ``is_hfo_k(p, k)``; None when ``p`` is not Baxter.

    Returns 1 for the single-element permutation.
    """
    if not kernels.is_baxter(p):
        return None
    if len(p) == 1:
        return 1
    best = kernels.min_k_scan(p)
    if best == 0:  # unreachable for Baxter input
        raise AssertionError("Baxter permutation did not reduce to one range")
    return best


@lru_cache(maxsize=None)
def forbidden_patterns(k: int) -> frozenset[Permutation]:
    """Simple patterns of length k+1 plus exceptional ones of length k+2."""
    out = set(enumerate_class(k + 1, "simple"))
    if (k + 2) % 2 == 0 and k + 2 >= 4:
        m = (k + 2) // 2
        out.update(exceptional(m, f) for f in (1, 2, 3, 4))
    return frozenset(out)


def avoids_characterization(p: Sequence[int], k: int) -> bool:
    """Pattern-avoidance oracle for HFO_k membership. Exponential in k."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if not is_baxter(p):
        return False
    bad = forbidden_patterns(k)
    for length in {len(b) for b in bad}:
        if length <= len(p) and patterns_of_length(p, length) & bad:
            return False
    return True


def safe_insertions(p: Sequence[int]) -> list[Permutation]:
    """Insert n+1 before the first entry, before n, after n and after the last.

    Duplicates are removed, keeping the first occurrence in that order.
    """
    if not is_baxter(p):
        raise ValueError(f"{Permutation(p).compact()} is not Baxter")
    vals = list(p)
    n = len(vals)
    at = vals.index(n)
    out: list[Permutation] = []
    for i in (0, at, at + 1, n):
        q = Permutation(vals[:i] + [n + 1] + vals[i:])
        if q not in out:
            out.append(q)
    return out


def iterate_safe_insertions(seed: Sequence[int], n: int) -> set[Permutation]:
    """All permutations of length ``n`` reachable from ``seed`` by safe insertions."""
    level = {Permutation(seed)}
    while level and len(next(iter(level))) < n:
        level = {q for p in level for q in safe_insertions(p)}
    return level
