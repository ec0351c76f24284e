"""Permutations and the structural predicates built on them.

A :class:`Permutation` is an immutable tuple of one-based values. Python
indexing on it is zero-based like any tuple; functions here that take a
*position* argument (``one_point_deletion``, blocks) use one-based positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

from . import kernels


class Permutation(tuple):
    """A bijection on ``{1..n}`` written in one-line notation, ``n >= 1``."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        vals = tuple(int(v) for v in values)
        n = len(vals)
        if n == 0:
            raise ValueError("permutation must have length >= 1")
        seen = [False] * (n + 1)
        for v in vals:
            if v < 1 or v > n:
                raise ValueError(f"value {v} outside 1..{n}: values must be a bijection on 1..n")
            if seen[v]:
                raise ValueError(f"duplicate value {v}: values must be a bijection on 1..n")
            seen[v] = True
        return super().__new__(cls, vals)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse whitespace-separated one-based integers, e.g. ``"4 1 3 5 2"``."""
        parts = text.split()
        if not parts:
            raise ValueError("empty permutation text")
        try:
            vals = [int(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"non-integer token in permutation text {text!r}") from exc
        return cls(vals)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({self.compact()})"

    def compact(self) -> str:
        """Digits run together (``41352``) when n <= 9, comma-separated otherwise."""
        if len(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    @classmethod
    def from_compact(cls, text: str) -> "Permutation":
        if "," in text:
            return cls(int(t) for t in text.split(","))
        return cls(int(c) for c in text)


def standardize(seq: Sequence[int]) -> Permutation:
    """Rank-order distinct integers into a permutation of the same length."""
    order = sorted(seq)
    rank = {v: r for r, v in enumerate(order, 1)}
    return Permutation(rank[v] for v in seq)


def pattern_at(p: Sequence[int], positions: Sequence[int]) -> Permutation:
    """The pattern formed by ``p`` at the given zero-based positions."""
    return standardize([p[i] for i in positions])


def contains_pattern(text: Sequence[int], pattern: Sequence[int]) -> list[int] | None:
    """Return one-based witness positions of ``pattern`` in ``text``, or None.

    Brute force over position subsets; meant for short patterns.
    """
    k = len(pattern)
    target = tuple(pattern)
    for combo in combinations(range(len(text)), k):
        if tuple(standardize([text[i] for i in combo])) == target:
            return [i + 1 for i in combo]
    return None


def patterns_of_length(p: Sequence[int], k: int) -> set[Permutation]:
    """All length-``k`` patterns contained in ``p``."""
    return {pattern_at(p, combo) for combo in combinations(range(len(p)), k)}


def is_baxter(p: Sequence[int]) -> bool:
    """No 3142/2413 occurrence whose first and last values differ by one."""
    return bool(kernels.is_baxter(p))


def is_simple(p: Sequence[int]) -> bool:
    """Only singleton blocks and the whole interval; length 1 and 2 are simple."""
    return bool(kernels.is_simple(p))


def is_separable(p: Sequence[int]) -> bool:
    return contains_pattern(p, (2, 4, 1, 3)) is None and contains_pattern(p, (3, 1, 4, 2)) is None


@dataclass(frozen=True)
class Block:
    """Positions ``start..end`` (one-based, inclusive) mapped onto a value range."""

    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start + 1


def blocks(p: Sequence[int]) -> list[Block]:
    """Every block of ``p`` (including the trivial ones), ordered by (start, end)."""
    n = len(p)
    out = []
    for i in range(n):
        lo = hi = p[i]
        for j in range(i, n):
            lo = min(lo, p[j])
            hi = max(hi, p[j])
            if hi - lo == j - i:
                out.append(Block(i + 1, j + 1))
    return out


def one_point_deletion(p: Sequence[int], index: int) -> Permutation:
    n = len(p)
    if n < 2:
        raise ValueError("one-point deletion needs length >= 2")
    if not 1 <= index <= n:
        raise IndexError(f"index {index} outside 1..{n}")
    return standardize([v for i, v in enumerate(p, 1) if i != index])


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return Permutation(inv)


def reverse(p: Sequence[int]) -> Permutation:
    return Permutation(reversed(p))


def inflate(sigma: Sequence[int], parts: Sequence[Sequence[int]]) -> Permutation:
    """Wreath product ``sigma[parts[0], ..., parts[m-1]]``."""
    if len(parts) != len(sigma):
        raise ValueError(f"arity mismatch: sigma has length {len(sigma)}, got {len(parts)} blocks")
    sizes = [len(a) for a in parts]
    # offset of the block holding value rank r is the total size of lower-ranked blocks
    by_rank = sorted(range(len(sigma)), key=lambda i: sigma[i])
    offset = [0] * len(sigma)
    acc = 0
    for i in by_rank:
        offset[i] = acc
        acc += sizes[i]
    out = []
    for i, alpha in enumerate(parts):
        out.extend(offset[i] + v for v in alpha)
    return Permutation(out)


def _sum_split(seq: Sequence[int], lo: int) -> int:
    """Last cut c (0 < c < n) with seq[:c] holding the lowest c values, else 0."""
    n = len(seq)
    best = 0
    mx = lo - 1
    for c in range(1, n):
        mx = max(mx, seq[c - 1])
        if mx == lo + c - 1:
            best = c
    return best


def _skew_split(seq: Sequence[int], lo: int) -> int:
    n = len(seq)
    hi = lo + n - 1
    best = 0
    mn = hi + 1
    for c in range(1, n):
        mn = min(mn, seq[c - 1])
        if mn == hi - c + 1:
            best = c
    return best


def decompose_spans(seq: Sequence[int]) -> tuple[Permutation, list[tuple[int, int]]]:
    """Skeleton and zero-based half-open block spans of a sequence whose values
    form a contiguous range. For a 12/21 skeleton the split is the last possible
    one, so the right block never splits again with the same skeleton.
    """
    n = len(seq)
    if n < 2:
        raise ValueError("block decomposition needs length >= 2")
    lo = min(seq)
    c = _sum_split(seq, lo)
    if c:
        return Permutation((1, 2)), [(0, c), (c, n)]
    c = _skew_split(seq, lo)
    if c:
        return Permutation((2, 1)), [(0, c), (c, n)]
    # prime skeleton: maximal proper intervals partition the positions
    spans = []
    start = 0
    while start < n:
        end = start + 1
        mn = mx = seq[start]
        for j in range(start + 1, n):
            mn = min(mn, seq[j])
            mx = max(mx, seq[j])
            if mx - mn == j - start and j - start + 1 < n:
                end = j + 1
        spans.append((start, end))
        start = end
    sigma = standardize([min(seq[a:b]) for a, b in spans])
    return sigma, spans


def block_decompose(p: Sequence[int]) -> tuple[Permutation, list[Permutation]]:
    """``p = inflate(sigma, blocks)`` with ``sigma`` simple and non-singleton."""
    sigma, spans = decompose_spans(p)
    return sigma, [standardize(p[a:b]) for a, b in spans]


def exceptional(m: int, family: int) -> Permutation:
    """Member of one of the four exceptionally simple families, length 2m."""
    if m < 2:
        raise ValueError("exceptional permutations need m >= 2")
    if family == 1:
        vals = list(range(2, 2 * m + 1, 2)) + list(range(1, 2 * m, 2))
    elif family == 2:
        vals = list(range(2 * m - 1, 0, -2)) + list(range(2 * m, 0, -2))
    elif family == 3:
        vals = [x for i in range(1, m + 1) for x in (m + i, i)]
    elif family == 4:
        vals = [x for i in range(m, 0, -1) for x in (i, m + i)]
    else:
        raise ValueError(f"family must be 1..4, got {family}")
    return Permutation(vals)


def is_exceptional(p: Sequence[int]) -> bool:
    n = len(p)
    if n < 4 or n % 2:
        return False
    t = tuple(p)
    return any(t == exceptional(n // 2, f) for f in (1, 2, 3, 4))


CLASSES = ("all", "baxter", "simple", "simple_and_baxter", "separable")


def _member(cls: str):
    if cls == "all":
        return lambda p: True
    if cls == "baxter":
        return is_baxter
    if cls == "simple":
        return is_simple
    if cls == "simple_and_baxter":
        return lambda p: is_simple(p) and is_baxter(p)
    if cls == "separable":
        return is_separable
    raise ValueError(f"unknown class {cls!r}; expected one of {', '.join(CLASSES)}")


@lru_cache(maxsize=64)
def enumerate_class(n: int, cls: str = "all") -> tuple[Permutation, ...]:
    """Members of S_n in the class, lexicographic order. Factorial cost."""
    if n < 1:
        raise ValueError("n must be >= 1")
    keep = _member(cls)
    return tuple(Permutation(t) for t in permutations(range(1, n + 1)) if keep(t))
