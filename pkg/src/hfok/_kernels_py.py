"""Pure-Python hot kernels.

Every function takes a sequence of distinct one-based integers and must
agree exactly with the compiled twin in ``_kernels_c.pyx``.
"""

from functools import lru_cache


def is_baxter(values):
    n = len(values)
    pos = [0] * (n + 2)
    for i, v in enumerate(values):
        pos[v] = i
    for a in range(1, n):
        p = pos[a]
        q = pos[a + 1]
        # Entries strictly between a and a+1 are all "high" (> a+1) or "low" (< a);
        # a bad witness exists iff a high/low pair sits in the wrong order, and
        # then some adjacent pair does too.
        if p < q:
            for t in range(p + 1, q - 1):
                if values[t] > a + 1 and values[t + 1] < a:
                    return False
        else:
            for t in range(q + 1, p - 1):
                if values[t] < a and values[t + 1] > a + 1:
                    return False
    return True


def is_simple(values):
    n = len(values)
    for i in range(n):
        lo = hi = values[i]
        for j in range(i + 1, n):
            v = values[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i and (i > 0 or j < n - 1):
                return False
    return True


def _ranks(seq):
    order = sorted(seq)
    rank = {v: r for r, v in enumerate(order, 1)}
    return tuple(rank[v] for v in seq)


@lru_cache(maxsize=None)
def _pattern_is_baxter(pattern):
    return is_baxter(pattern)


def hfo_scan(values, k):
    """Fixed-k stack recognizer; True iff the stack collapses to one range."""
    lo = []
    hi = []
    for v in values:
        lo.append(v)
        hi.append(v)
        while True:
            top = len(lo) - 1
            mn = lo[top]
            mx = hi[top]
            covered = 1 + mx - mn
            found = 0
            for j in range(2, min(k, top + 1) + 1):
                e = top - j + 1
                if lo[e] < mn:
                    mn = lo[e]
                if hi[e] > mx:
                    mx = hi[e]
                covered += hi[e] - lo[e] + 1
                if mx - mn + 1 == covered:
                    found = j
                    break
            if not found:
                break
            start = top - found + 1
            if not _pattern_is_baxter(_ranks(lo[start:])):
                # this segment can never be absorbed later: its pattern is simple
                return False
            del lo[start:]
            del hi[start:]
            lo.append(mn)
            hi.append(mx)
    return len(lo) == 1


def min_k_scan(values):
    """Largest merge arity of the unbounded least-j stack scan (1 if n == 1)."""
    lo = []
    hi = []
    best = 1
    for v in values:
        lo.append(v)
        hi.append(v)
        while True:
            top = len(lo) - 1
            mn = lo[top]
            mx = hi[top]
            covered = 1 + mx - mn
            found = 0
            for j in range(2, top + 2):
                e = top - j + 1
                if lo[e] < mn:
                    mn = lo[e]
                if hi[e] > mx:
                    mx = hi[e]
                covered += hi[e] - lo[e] + 1
                if mx - mn + 1 == covered:
                    found = j
                    break
            if not found:
                break
            if found > best:
                best = found
            start = top - found + 1
            del lo[start:]
            del hi[start:]
            lo.append(mn)
            hi.append(mx)
    if len(lo) != 1:
        return 0
    return best
