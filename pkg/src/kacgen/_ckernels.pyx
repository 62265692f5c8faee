# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 kernels with overflow detection."""

from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    static inline int kg_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int kg_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    static inline int kg_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int kg_mul(long long a, long long b, long long *r) nogil
    int kg_add(long long a, long long b, long long *r) nogil
    int kg_sub(long long a, long long b, long long *r) nogil


cdef int _berkowitz(long long *a, Py_ssize_t n, long long *vec) nogil:
    """Fill vec[0..n] with det(tI - A) coefficients, highest first. Returns 1 on overflow."""
    cdef Py_ssize_t s, size, i, j, k, top
    cdef long long acc, t
    cdef long long *diags = <long long *> malloc((n + 1) * sizeof(long long))
    cdef long long *d = <long long *> malloc(n * sizeof(long long))
    cdef long long *nd = <long long *> malloc(n * sizeof(long long))
    cdef long long *nv = <long long *> malloc((n + 1) * sizeof(long long))
    cdef long long *swap
    cdef int bad = 0
    if diags == NULL or d == NULL or nd == NULL or nv == NULL:
        bad = 2
    else:
        vec[0] = 1
        if kg_sub(0, a[(n - 1) * n + n - 1], &vec[1]):
            bad = 1
        s = n - 2
        while s >= 0 and not bad:
            size = n - s
            for i in range(size - 1):
                d[i] = a[(s + 1 + i) * n + s]
            diags[0] = 1
            if kg_sub(0, a[s * n + s], &diags[1]):
                bad = 1
                break
            for k in range(size - 1):
                acc = 0
                for j in range(size - 1):
                    if kg_mul(a[s * n + s + 1 + j], d[j], &t) or kg_add(acc, t, &acc):
                        bad = 1
                        break
                if bad or kg_sub(0, acc, &diags[k + 2]):
                    bad = 1
                    break
                if k < size - 2:
                    for i in range(size - 1):
                        acc = 0
                        for j in range(size - 1):
                            if kg_mul(a[(s + 1 + i) * n + s + 1 + j], d[j], &t) or kg_add(acc, t, &acc):
                                bad = 1
                                break
                        if bad:
                            break
                        nd[i] = acc
                    if bad:
                        break
                    swap = d
                    d = nd
                    nd = swap
            if bad:
                break
            for i in range(size + 1):
                acc = 0
                top = i if i < size - 1 else size - 1
                for j in range(top + 1):
                    if kg_mul(diags[i - j], vec[j], &t) or kg_add(acc, t, &acc):
                        bad = 1
                        break
                if bad:
                    break
                nv[i] = acc
            for i in range(size + 1):
                vec[i] = nv[i]
            s -= 1
    free(diags)
    free(d)
    free(nd)
    free(nv)
    return bad


def berkowitz_int64(rows):
    """Integer characteristic polynomial, highest degree first.

    Raises OverflowError when an entry or an intermediate value leaves int64.
    """
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j
    cdef long long *a
    cdef long long *vec
    cdef int status
    if n == 0:
        return [1]
    a = <long long *> malloc(n * n * sizeof(long long))
    vec = <long long *> malloc((n + 1) * sizeof(long long))
    if a == NULL or vec == NULL:
        free(a)
        free(vec)
        raise MemoryError()
    try:
        for i in range(n):
            row = rows[i]
            if len(row) != n:
                raise ValueError("matrix must be square")
            for j in range(n):
                a[i * n + j] = row[j]
        with nogil:
            status = _berkowitz(a, n, vec)
        if status == 2:
            raise MemoryError()
        if status:
            raise OverflowError("int64 overflow in characteristic polynomial")
        return [vec[i] for i in range(n + 1)]
    finally:
        free(a)
        free(vec)
