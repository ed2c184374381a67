"""Pure-Python implementations of the exponential inner loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same (deterministic) result.  Inputs are lists of lists of ints.
"""

from itertools import combinations, product


def bareiss_det(M):
    """Fraction-free determinant of a square list-of-lists; M is copied."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def minor_abs_values(M, n):
    """Map each |det| of an n-row submatrix of M to its first row witness."""
    found = {}
    for rows in combinations(range(len(M)), n):
        v = abs(bareiss_det([M[i] for i in rows]))
        if v not in found:
            found[v] = rows
    return found


def ghouila_houri(M):
    """True iff every row subset of M admits a signing with column sums in {0, +-1}."""
    m = len(M)
    if m == 0:
        return True
    ncols = len(M[0])
    for k in range(1, m + 1):
        for subset in combinations(range(m), k):
            first = M[subset[0]]
            rest = subset[1:]
            ok = False
            for signs in product((1, -1), repeat=k - 1):
                good = True
                for j in range(ncols):
                    s = first[j]
                    for sg, i in zip(signs, rest):
                        s += sg * M[i][j]
                    if s > 1 or s < -1:
                        good = False
                        break
                if good:
                    ok = True
                    break
            if not ok:
                return False
    return True


def first_bad_minor(M, bound):
    """First square submatrix (by size, then row then column combination) with |det| > bound."""
    m = len(M)
    ncols = len(M[0]) if m else 0
    for k in range(1, min(m, ncols) + 1):
        for rows in combinations(range(m), k):
            sub_rows = [M[i] for i in rows]
            for cols in combinations(range(ncols), k):
                d = bareiss_det([[r[j] for j in cols] for r in sub_rows])
                if d > bound or d < -bound:
                    return rows, cols, d
    return None


def box_argmax(C, g, w, lo, hi):
    """Lexicographically smallest maximiser of w.y over box points with C y <= g."""
    best = None
    best_val = None
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    for y in product(*ranges):
        feasible = True
        for row, gi in zip(C, g):
            s = 0
            for a, yj in zip(row, y):
                s += a * yj
            if s > gi:
                feasible = False
                break
        if not feasible:
            continue
        val = 0
        for a, yj in zip(w, y):
            val += a * yj
        if best_val is None or val > best_val:
            best_val = val
            best = y
    if best is None:
        return None
    return tuple(best), best_val
