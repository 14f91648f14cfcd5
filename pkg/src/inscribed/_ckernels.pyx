# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free pivoting.

Same contract as ``_pykernels``.  ``rref`` first tries a 64-bit path with
overflow detection and falls back to Python integers when an entry grows
too large.
"""
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int ovf_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ovf_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int ovf_mul(long long a, long long b, long long *r) nogil
    int ovf_sub(long long a, long long b, long long *r) nogil


def pivot(list rows, Py_ssize_t r, Py_ssize_t c, object det):
    cdef object p = rows[r][c]
    cdef list prow = rows[r]
    cdef list row, out
    cdef object f
    cdef Py_ssize_t i, j, n = len(prow)
    for i in range(len(rows)):
        if i == r:
            continue
        row = rows[i]
        f = row[c]
        if f == 0:
            if p != det:
                out = [None] * n
                for j in range(n):
                    out[j] = (p * row[j]) // det
                rows[i] = out
        else:
            out = [None] * n
            for j in range(n):
                out[j] = (p * row[j] - f * prow[j]) // det
            rows[i] = out
    return p


cdef int _rref64(long long *a, Py_ssize_t m, Py_ssize_t n, long long *det_out,
                 Py_ssize_t *piv, Py_ssize_t *npiv) nogil:
    cdef long long det = 1, p, f, t1, t2, t
    cdef Py_ssize_t k = 0, c, i, j, s
    for c in range(n):
        if k == m:
            break
        s = -1
        for i in range(k, m):
            if a[i * n + c] != 0:
                s = i
                break
        if s < 0:
            continue
        if s != k:
            for j in range(n):
                t = a[s * n + j]
                a[s * n + j] = a[k * n + j]
                a[k * n + j] = t
        p = a[k * n + c]
        for i in range(m):
            if i == k:
                continue
            f = a[i * n + c]
            for j in range(n):
                if ovf_mul(p, a[i * n + j], &t1):
                    return 1
                if ovf_mul(f, a[k * n + j], &t2):
                    return 1
                if ovf_sub(t1, t2, &t):
                    return 1
                a[i * n + j] = t // det
        det = p
        piv[k] = c
        k += 1
    det_out[0] = det
    npiv[0] = k
    return 0


def rref(rows, Py_ssize_t ncols):
    cdef Py_ssize_t m = len(rows), i, j, npiv = 0
    cdef long long det64 = 1
    cdef long long *buf
    cdef Py_ssize_t *piv
    cdef int failed = 1
    cdef list out
    small = m > 0 and ncols > 0 and all(
        -(1 << 30) < x < (1 << 30) for row in rows for x in row)
    if small:
        buf = <long long *> malloc(m * ncols * sizeof(long long))
        piv = <Py_ssize_t *> malloc(min(m, ncols) * sizeof(Py_ssize_t) + 1)
        try:
            for i in range(m):
                row = rows[i]
                for j in range(ncols):
                    buf[i * ncols + j] = row[j]
            with nogil:
                failed = _rref64(buf, m, ncols, &det64, piv, &npiv)
            if not failed:
                out = [[buf[i * ncols + j] for j in range(ncols)] for i in range(m)]
                return out, [piv[i] for i in range(npiv)], det64
        finally:
            free(buf)
            free(piv)
    return _rref_object([list(row) for row in rows], ncols)


def _rref_object(list rows, Py_ssize_t ncols):
    cdef object det = 1
    cdef list pivots = []
    cdef Py_ssize_t k = 0, m = len(rows), c, i, s
    for c in range(ncols):
        if k == m:
            break
        s = -1
        for i in range(k, m):
            if rows[i][c] != 0:
                s = i
                break
        if s < 0:
            continue
        if s != k:
            rows[s], rows[k] = rows[k], rows[s]
        det = pivot(rows, k, c, det)
        pivots.append(c)
        k += 1
    return rows, pivots, det


def dots(list rows, vec):
    cdef list v = list(vec)
    cdef Py_ssize_t n = len(v), j
    cdef list out = []
    cdef object acc
    for row in rows:
        acc = 0
        for j in range(n):
            acc = acc + row[j] * v[j]
        out.append(acc)
    return out
