# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of ``_pykernels``; int64 arithmetic.

Callers (``abcmod.kernels``) check magnitude guards before dispatching here,
so no operation in this module can overflow.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64* _pack(M, Py_ssize_t m, Py_ssize_t n) except NULL:
    cdef i64* buf = <i64*> malloc(max(m * n, 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(m):
        row = M[i]
        for j in range(n):
            buf[i * n + j] = row[j]
    return buf


cdef i64 _det(i64* a, Py_ssize_t n) nogil:
    # Bareiss on an n x n scratch buffer (destroyed).
    cdef Py_ssize_t i, j, k, r
    cdef i64 prev = 1, akk, aik, tmp
    cdef int sign = 1
    if n == 0:
        return 1
    for k in range(n - 1):
        if a[k * n + k] == 0:
            r = -1
            for i in range(k + 1, n):
                if a[i * n + k] != 0:
                    r = i
                    break
            if r < 0:
                return 0
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[r * n + j]
                a[r * n + j] = tmp
            sign = -sign
        akk = a[k * n + k]
        for i in range(k + 1, n):
            aik = a[i * n + k]
            for j in range(k + 1, n):
                a[i * n + j] = (a[i * n + j] * akk - aik * a[k * n + j]) // prev
        prev = akk
    return sign * a[(n - 1) * n + (n - 1)]


cdef bint _next_comb(Py_ssize_t* c, Py_ssize_t k, Py_ssize_t m) nogil:
    cdef Py_ssize_t i = k - 1, j
    while i >= 0 and c[i] == m - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for j in range(i + 1, k):
        c[j] = c[j - 1] + 1
    return True


def bareiss_det(M):
    cdef Py_ssize_t n = len(M)
    if n == 0:
        return 1
    cdef i64* a = _pack(M, n, n)
    cdef i64 d
    try:
        d = _det(a, n)
    finally:
        free(a)
    return d


def minor_abs_values(M, Py_ssize_t n):
    cdef Py_ssize_t m = len(M)
    found = {}
    if n > m:
        return found
    cdef i64* src = _pack(M, m, n)
    cdef i64* scratch = <i64*> malloc(max(n * n, 1) * sizeof(i64))
    cdef Py_ssize_t* c = <Py_ssize_t*> malloc(max(n, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t i, j
    cdef i64 v
    try:
        for i in range(n):
            c[i] = i
        while True:
            for i in range(n):
                for j in range(n):
                    scratch[i * n + j] = src[c[i] * n + j]
            v = _det(scratch, n)
            if v < 0:
                v = -v
            if v not in found:
                found[v] = tuple([c[i] for i in range(n)])
            if not _next_comb(c, n, m):
                break
    finally:
        free(src)
        free(scratch)
        free(c)
    return found


cdef bint _subset_signable(i64* a, Py_ssize_t ncols, Py_ssize_t* rows, Py_ssize_t k, i64* sums) nogil:
    # rows[0] is fixed to +1; try all 2^(k-1) signings of the rest.
    cdef unsigned long long mask, limit = (<unsigned long long> 1) << (k - 1)
    cdef Py_ssize_t t, j
    cdef i64 s
    cdef bint good
    for mask in range(limit):
        good = True
        for j in range(ncols):
            s = a[rows[0] * ncols + j]
            for t in range(1, k):
                if (mask >> (t - 1)) & 1:
                    s -= a[rows[t] * ncols + j]
                else:
                    s += a[rows[t] * ncols + j]
            if s > 1 or s < -1:
                good = False
                break
        if good:
            return True
    return False


def ghouila_houri(M):
    cdef Py_ssize_t m = len(M)
    if m == 0:
        return True
    cdef Py_ssize_t ncols = len(M[0])
    cdef i64* a = _pack(M, m, ncols)
    cdef Py_ssize_t* c = <Py_ssize_t*> malloc(m * sizeof(Py_ssize_t))
    cdef Py_ssize_t k, i
    cdef bint ok = True
    try:
        for k in range(1, m + 1):
            for i in range(k):
                c[i] = i
            while True:
                if not _subset_signable(a, ncols, c, k, NULL):
                    ok = False
                    break
                if not _next_comb(c, k, m):
                    break
            if not ok:
                break
    finally:
        free(a)
        free(c)
    return ok


def first_bad_minor(M, i64 bound):
    cdef Py_ssize_t m = len(M)
    if m == 0:
        return None
    cdef Py_ssize_t ncols = len(M[0])
    cdef Py_ssize_t kmax = min(m, ncols)
    if kmax == 0:
        return None
    cdef i64* a = _pack(M, m, ncols)
    cdef i64* scratch = <i64*> malloc(kmax * kmax * sizeof(i64))
    cdef Py_ssize_t* r = <Py_ssize_t*> malloc(kmax * sizeof(Py_ssize_t))
    cdef Py_ssize_t* c = <Py_ssize_t*> malloc(kmax * sizeof(Py_ssize_t))
    cdef Py_ssize_t k, i, j
    cdef i64 d
    result = None
    try:
        for k in range(1, kmax + 1):
            for i in range(k):
                r[i] = i
            while True:
                for i in range(k):
                    c[i] = i
                while True:
                    for i in range(k):
                        for j in range(k):
                            scratch[i * k + j] = a[r[i] * ncols + c[j]]
                    d = _det(scratch, k)
                    if d > bound or d < -bound:
                        result = (tuple([r[i] for i in range(k)]), tuple([c[i] for i in range(k)]), d)
                        return result
                    if not _next_comb(c, k, ncols):
                        break
                if not _next_comb(r, k, m):
                    break
    finally:
        free(a)
        free(scratch)
        free(r)
        free(c)
    return result


def box_argmax(C, g, w, lo, hi):
    cdef Py_ssize_t m = len(C)
    cdef Py_ssize_t n = len(lo)
    cdef i64* a = _pack(C, m, n) if m else <i64*> malloc(sizeof(i64))
    cdef i64* gv = <i64*> malloc(max(m, 1) * sizeof(i64))
    cdef i64* wv = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef i64* lov = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef i64* hiv = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef i64* y = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef i64* best = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef Py_ssize_t i, j
    cdef i64 s, val, best_val = 0
    cdef bint have = False, feasible
    try:
        for i in range(m):
            gv[i] = g[i]
        for j in range(n):
            wv[j] = w[j]
            lov[j] = lo[j]
            hiv[j] = hi[j]
            y[j] = lo[j]
            if lo[j] > hi[j]:
                return None
        while True:
            feasible = True
            for i in range(m):
                s = 0
                for j in range(n):
                    s += a[i * n + j] * y[j]
                if s > gv[i]:
                    feasible = False
                    break
            if feasible:
                val = 0
                for j in range(n):
                    val += wv[j] * y[j]
                if not have or val > best_val:
                    have = True
                    best_val = val
                    for j in range(n):
                        best[j] = y[j]
            # odometer, last coordinate fastest (matches itertools.product)
            j = n - 1
            while j >= 0:
                if y[j] < hiv[j]:
                    y[j] += 1
                    break
                y[j] = lov[j]
                j -= 1
            if j < 0:
                break
        if not have:
            return None
        return tuple([best[j] for j in range(n)]), best_val
    finally:
        free(a)
        free(gv)
        free(wv)
        free(lov)
        free(hiv)
        free(y)
        free(best)
