# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef int* _to_array(values, Py_ssize_t n) except NULL:
    cdef int* arr = <int*> malloc((n + 1) * sizeof(int))
    cdef Py_ssize_t i
    if arr == NULL:
        raise MemoryError()
    for i in range(n):
        arr[i] = values[i]
    return arr


cdef bint _baxter(const int* v, int n, int* pos) noexcept nogil:
    cdef int i, a, p, q, t
    for i in range(n):
        pos[v[i]] = i
    for a in range(1, n):
        p = pos[a]
        q = pos[a + 1]
        if p < q:
            for t in range(p + 1, q - 1):
                if v[t] > a + 1 and v[t + 1] < a:
                    return False
        else:
            for t in range(q + 1, p - 1):
                if v[t] < a and v[t + 1] > a + 1:
                    return False
    return True


def is_baxter(values):
    cdef Py_ssize_t n = len(values)
    cdef int* v = _to_array(values, n)
    cdef int* pos = <int*> malloc((n + 2) * sizeof(int))
    cdef bint res
    if pos == NULL:
        free(v)
        raise MemoryError()
    with nogil:
        res = _baxter(v, <int> n, pos)
    free(v)
    free(pos)
    return res


def is_simple(values):
    cdef Py_ssize_t n = len(values)
    cdef int* v = _to_array(values, n)
    cdef int i, j, lo, hi, x
    cdef bint res = True
    with nogil:
        for i in range(n):
            lo = v[i]
            hi = v[i]
            for j in range(i + 1, n):
                x = v[j]
                if x < lo:
                    lo = x
                elif x > hi:
                    hi = x
                if hi - lo == j - i and (i > 0 or j < n - 1):
                    res = False
                    break
            if not res:
                break
    free(v)
    return res


cdef bint _pattern_baxter(const int* lo, int start, int j, int* ranks, int* pos) noexcept nogil:
    cdef int a, b, r
    for a in range(j):
        r = 1
        for b in range(j):
            if lo[start + b] < lo[start + a]:
                r += 1
        ranks[a] = r
    return _baxter(ranks, j, pos)


def hfo_scan(values, int k):
    cdef Py_ssize_t n = len(values)
    cdef int* v = _to_array(values, n)
    cdef int* lo = <int*> malloc((n + 1) * sizeof(int))
    cdef int* hi = <int*> malloc((n + 1) * sizeof(int))
    cdef int* ranks = <int*> malloc((k + 2) * sizeof(int))
    cdef int* pos = <int*> malloc((k + 3) * sizeof(int))
    cdef int size = 0
    cdef int i, top, mn, mx, covered, found, j, e, start, lim
    cdef bint ok = True
    if lo == NULL or hi == NULL or ranks == NULL or pos == NULL:
        free(v); free(lo); free(hi); free(ranks); free(pos)
        raise MemoryError()
    with nogil:
        for i in range(n):
            lo[size] = v[i]
            hi[size] = v[i]
            size += 1
            while True:
                top = size - 1
                mn = lo[top]
                mx = hi[top]
                covered = 1 + mx - mn
                found = 0
                lim = k if k < size else size
                for j in range(2, lim + 1):
                    e = top - j + 1
                    if lo[e] < mn:
                        mn = lo[e]
                    if hi[e] > mx:
                        mx = hi[e]
                    covered += hi[e] - lo[e] + 1
                    if mx - mn + 1 == covered:
                        found = j
                        break
                if found == 0:
                    break
                start = top - found + 1
                if not _pattern_baxter(lo, start, found, ranks, pos):
                    ok = False
                    break
                size = start + 1
                lo[start] = mn
                hi[start] = mx
            if not ok:
                break
    free(v); free(lo); free(hi); free(ranks); free(pos)
    return ok and size == 1


def min_k_scan(values):
    cdef Py_ssize_t n = len(values)
    cdef int* v = _to_array(values, n)
    cdef int* lo = <int*> malloc((n + 1) * sizeof(int))
    cdef int* hi = <int*> malloc((n + 1) * sizeof(int))
    cdef int size = 0
    cdef int best = 1
    cdef int i, top, mn, mx, covered, found, j, e, start
    if lo == NULL or hi == NULL:
        free(v); free(lo); free(hi)
        raise MemoryError()
    with nogil:
        for i in range(n):
            lo[size] = v[i]
            hi[size] = v[i]
            size += 1
            while True:
                top = size - 1
                mn = lo[top]
                mx = hi[top]
                covered = 1 + mx - mn
                found = 0
                for j in range(2, size + 1):
                    e = top - j + 1
                    if lo[e] < mn:
                        mn = lo[e]
                    if hi[e] > mx:
                        mx = hi[e]
                    covered += hi[e] - lo[e] + 1
                    if mx - mn + 1 == covered:
                        found = j
                        break
                if found == 0:
                    break
                if found > best:
                    best = found
                start = top - found + 1
                size = start + 1
                lo[start] = mn
                hi[start] = mx
    free(v); free(lo); free(hi)
    if size != 1:
        return 0
    return best
