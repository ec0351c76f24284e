"""Exact counts of HFO_k floorplans, with Baxter and Schröder oracles.

All arithmetic uses Python integers, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .gentree import MAX_CATALOG_LENGTH, UniquelyHfoCatalog, build_catalog
from .perm import enumerate_class


@dataclass(frozen=True)
class CountTable:
    k: int
    t: tuple[int, ...]  # t[0] is t_1

    def __getitem__(self, n: int) -> int:
        if n < 1:
            raise IndexError("counts start at n = 1")
        return self.t[n - 1]

    def __len__(self) -> int:
        return len(self.t)


def count_hfo5_literal(n: int) -> int:
    """Reference: the HFO_5 recurrence with explicit nested loops, O(n^6)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = [0] * (n + 1)
    t[1] = 1
    for m in range(2, n + 1):
        x = sum(t[i] * t[m - i] for i in range(1, m))
        y = 0
        for i in range(1, m):
            for j in range(1, m - i):
                for k in range(1, m - i - j):
                    for l in range(1, m - i - j - k):
                        r = m - i - j - k - l
                        if r >= 1:
                            y += t[i] * t[j] * t[k] * t[l] * t[r]
        z = 0
        for h in range(1, m):
            for i in range(1, m - h):
                for j in range(1, m - h - i):
                    for k in range(1, m - h - i - j):
                        for l in range(1, m - h - i - j - k):
                            r = m - h - i - j - k - l
                            if r >= 1:
                                z += t[h] * t[i] * t[j] * t[k] * t[l] * t[r]
        t[m] = t[m - 1] + x + 2 * y + 2 * z
    return t[n]


def _hfo5_table(n: int) -> list[int]:
    # p[r][m] = sum over compositions of m into r parts of the product of t's
    t = [0] * (n + 1)
    p = [[0] * (n + 1) for _ in range(7)]
    for m in range(1, n + 1):
        for r in range(2, 7):
            p[r][m] = sum(p[r - 1][m - i] * t[i] for i in range(1, m))
        t[m] = 1 if m == 1 else t[m - 1] + p[2][m] + 2 * p[5][m] + 2 * p[6][m]
        p[1][m] = t[m]
    return t[1:]


def count_hfo5(n: int) -> int:
    """Number of HFO_5 floorplans with ``n`` rooms."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _hfo5_table(n)[-1]


def label_multiplicities(k: int, catalog: UniquelyHfoCatalog | None = None) -> dict[int, int]:
    """Number of simple Baxter labels of each length 4..k."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if catalog is None:
        if k > MAX_CATALOG_LENGTH:
            raise ValueError(f"catalog too short: k={k} needs labels up to length {k}, max is {MAX_CATALOG_LENGTH}")
        catalog = build_catalog(max(k, 2))
    if catalog.max_l < k:
        raise ValueError(f"catalog too short: covers lengths up to {catalog.max_l}, k={k} needs {k}")
    return {l: len(catalog.at(l)) for l in range(4, k + 1)}


def count_table(k: int, n: int, catalog: UniquelyHfoCatalog | None = None) -> CountTable:
    """Counts of skewed generating trees of order k with 1..n leaves.

    With ``s_m`` the trees rooted at 12 (equally at 21), a 12-root's right
    child may be anything except another 12-root, so
    ``s_m = sum_i t_{m-i} (t_i - s_i)`` and ``t_m = 2 s_m + sum_l u_l P_l[m]``
    where ``P_l`` convolves ``l`` copies of ``t``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u = label_multiplicities(k, catalog)
    ls = [l for l, c in u.items() if c]
    depth = max(ls, default=1)
    t = [0] * (n + 1)
    s = [0] * (n + 1)
    p = [[0] * (n + 1) for _ in range(depth + 1)]
    for m in range(1, n + 1):
        for r in range(2, depth + 1):
            p[r][m] = sum(p[r - 1][m - i] * t[i] for i in range(1, m))
        if m == 1:
            t[m] = 1
        else:
            s[m] = sum(t[m - i] * (t[i] - s[i]) for i in range(1, m))
            t[m] = 2 * s[m] + sum(u[l] * p[l][m] for l in ls)
        if depth >= 1:
            p[1][m] = t[m]
    return CountTable(k, tuple(t[1:]))


def count_hfo_k(k: int, n: int, catalog: UniquelyHfoCatalog | None = None) -> int:
    return count_table(k, n, catalog)[n]


def baxter_count(n: int) -> int:
    """Closed form of Chung, Graham, Hoggatt and Kleiman."""
    if n < 1:
        raise ValueError("n must be >= 1")
    num = sum(comb(n + 1, j - 1) * comb(n + 1, j) * comb(n + 1, j + 1) for j in range(1, n + 1))
    den = comb(n + 1, 1) * comb(n + 1, 2)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def baxter_count_brute(n: int) -> int:
    return len(enumerate_class(n, "baxter"))


@lru_cache(maxsize=None)
def schroder(m: int) -> int:
    """Large Schröder number, S(0) = 1."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 1
    if m == 1:
        return 2
    return 3 * schroder(m - 1) + sum(schroder(j) * schroder(m - 1 - j) for j in range(1, m - 1))


def lower_bound_check(k: int, n: int, catalog: UniquelyHfoCatalog | None = None) -> bool:
    """Does ``count_hfo_k(k, n) - count_hfo_k(k - 1, n) >= 3**(n - k)`` hold?

    Only meaningful when some simple Baxter label of length k exists; for
    other k (e.g. 3, 4, 6) the difference is 0 and this returns False.
    """
    if n < k:
        raise ValueError("need n >= k")
    if k < 3:
        raise ValueError("k must be >= 3")
    return count_hfo_k(k, n, catalog) - count_hfo_k(k - 1, n, catalog) >= 3 ** (n - k)


def _poly_mul(a: list[int], b: list[int], deg: int) -> list[int]:
    out = [0] * (deg + 1)
    for i, x in enumerate(a[: deg + 1]):
        if x:
            for j, y in enumerate(b[: deg + 1 - i]):
                out[i + j] += x * y
    return out


def gf_residual(n: int, weight: int = 1) -> list[int]:
    """Coefficients of ``w z^5 T^6 + w z^4 T^5 + z T^2 + (z - 1) T + 1``
    through degree ``n - 1``, with ``T = sum t_m z^(m-1)`` built from the
    HFO_5 counts ``t_1..t_n`` and ``w = weight``.

    The recurrence behind :func:`count_hfo5` counts both wheel labels, so
    the series vanishes for ``weight=2``. With ``weight=1`` the residual is
    ``-(z^4 T^5 + z^5 T^6)`` truncated, nonzero from degree 4 on.
    """
    deg = n - 1
    T = _hfo5_table(n)
    powers = {1: T[:]}
    for e in range(2, 7):
        powers[e] = _poly_mul(powers[e - 1], T, deg)
    res = [0] * (deg + 1)

    def add(shift: int, poly: list[int], coef: int = 1) -> None:
        for i, c in enumerate(poly):
            if i + shift <= deg:
                res[i + shift] += coef * c

    add(5, powers[6], weight)
    add(4, powers[5], weight)
    add(1, powers[2])
    add(1, powers[1])
    add(0, powers[1], -1)
    res[0] += 1
    return res
