"""Exact integer and rational linear algebra.

Everything runs on Python integers and ``fractions.Fraction``; there is no
floating-point path.  Column-style Hermite forms and Smith forms are returned
together with the unimodular transforms that produce them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from . import kernels
from .matrix import DimensionError, IntMatrix, as_matrix


class RankDeficientError(ValueError):
    """The matrix does not have full column rank (so D(A) = {0})."""


class SingularMatrixError(ValueError):
    pass


def xgcd(x, y):
    """Return (g, s, t) with s*x + t*y = g = gcd(x, y) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    a, b = x, y
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def determinant(M) -> int:
    M = as_matrix(M)
    if not M.is_square():
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    return kernels.bareiss_det(M.tolist())


def minor(A, rows, cols=None) -> int:
    A = as_matrix(A)
    cols = range(A.cols) if cols is None else cols
    return determinant(A.submatrix(rows, cols))


def _echelon_rank(rows):
    """Rank of a list of integer rows via fraction-free elimination."""
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank]
        for i in range(rank + 1, len(work)):
            f = work[i][c]
            if f:
                work[i] = [x * p[c] - f * y for x, y in zip(work[i], p)]
        rank += 1
    return rank


def rank(A) -> int:
    A = as_matrix(A)
    if A.rows == 0 or A.cols == 0:
        return 0
    return _echelon_rank(A.tolist())


def greedy_row_basis(A, modulus=None) -> list[int]:
    """Leftmost rows that are linearly independent, up to rank many.

    Rows are scanned top to bottom and kept when they increase the rank.
    With ``modulus`` (a prime) independence is tested over GF(modulus).
    """
    A = as_matrix(A)
    n = A.cols
    basis = []
    reduced = []  # (pivot column, row) in echelon form
    for i in range(A.rows):
        if modulus is None:
            v = [Fraction(x) for x in A[i]]
        else:
            v = [x % modulus for x in A[i]]
        for c, r in reduced:
            f = v[c]
            if f:
                if modulus is None:
                    v = [x - f * y for x, y in zip(v, r)]
                else:
                    v = [(x - f * y) % modulus for x, y in zip(v, r)]
        piv = next((c for c in range(n) if v[c]), None)
        if piv is None:
            continue
        if modulus is None:
            inv = 1 / v[piv]
            v = [x * inv for x in v]
        else:
            inv = pow(v[piv], -1, modulus)
            v = [(x * inv) % modulus for x in v]
        reduced.append((piv, v))
        basis.append(i)
        if len(basis) == n:
            break
    return basis


def full_column_rank_basis(A) -> list[int]:
    A = as_matrix(A)
    basis = greedy_row_basis(A)
    if len(basis) < A.cols:
        raise RankDeficientError(f"rank {len(basis)} < {A.cols} columns")
    return basis


def solve_rational(M, rhs) -> tuple[Fraction, ...]:
    """Solve M x = rhs exactly for square nonsingular M."""
    M = as_matrix(M)
    if not M.is_square():
        raise DimensionError("solve_rational needs a square matrix")
    n = M.rows
    if len(rhs) != n:
        raise DimensionError("right-hand side length mismatch")
    aug = [[Fraction(x) for x in M[i]] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(aug[i][n] for i in range(n))


def inverse_rational(M) -> list[list[Fraction]]:
    M = as_matrix(M)
    if not M.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = M.rows
    aug = [[Fraction(x) for x in M[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def unimodular_inverse(U) -> IntMatrix:
    U = as_matrix(U)
    if abs(determinant(U)) != 1:
        raise ValueError("matrix is not unimodular")
    inv = inverse_rational(U)
    return IntMatrix([[int(x) for x in r] for r in inv], cols=U.cols)


def is_unimodular(U) -> bool:
    U = as_matrix(U)
    return U.is_square() and abs(determinant(U)) == 1


# -- Hermite normal form ---------------------------------------------------

def _col_op_2x2(H, U, i, j, a, b, c, d):
    """Replace (col_i, col_j) by (a col_i + c col_j, b col_i + d col_j) in H and U."""
    for M in (H, U):
        for r in M:
            x, y = r[i], r[j]
            r[i] = a * x + c * y
            r[j] = b * x + d * y


def _col_axpy(H, U, dst, src, q):
    """col_dst -= q * col_src."""
    if q:
        for M in (H, U):
            for r in M:
                r[dst] -= q * r[src]


def column_hnf(B):
    """Lower-triangular column HNF of a square nonsingular matrix.

    Returns (H, U) with B U = H, U unimodular, H lower triangular with a
    positive diagonal and 0 <= H[i][j] < H[i][i] for j < i.
    """
    B = as_matrix(B)
    n = B.rows
    if not B.is_square():
        raise DimensionError("column_hnf needs a square matrix")
    H = B.tolist()
    U = IntMatrix.identity(n).tolist()
    for i in range(n):
        for j in range(i + 1, n):
            y = H[i][j]
            if y == 0:
                continue
            x = H[i][i]
            g, s, t = xgcd(x, y)
            _col_op_2x2(H, U, i, j, s, -(y // g), t, x // g)
        if H[i][i] == 0:
            raise SingularMatrixError("basis submatrix is singular")
        if H[i][i] < 0:
            for M in (H, U):
                for r in M:
                    r[i] = -r[i]
        for j in range(i):
            _col_axpy(H, U, j, i, H[i][j] // H[i][i])
    return IntMatrix(H, cols=n), IntMatrix(U, cols=n)


@dataclass(frozen=True)
class HnfProfile:
    """Matrix in the adapted Hermite layout.

    ``permuted[k] == sign_flips[k] * (A[row_perm[k]] @ col_transform)``.  The
    top n rows form a lower-triangular block whose leading n-l-1 rows are unit
    vectors, followed by rows with diagonal entries ``deltas`` (all >= 2) and
    finally the corner entry.  The last column is entrywise nonnegative.
    """

    permuted: IntMatrix
    row_perm: tuple[int, ...]
    sign_flips: tuple[int, ...]
    col_transform: IntMatrix
    deltas: tuple[int, ...]
    corner: int

    @property
    def l(self):
        return len(self.deltas)

    @property
    def basis_rows(self):
        return self.row_perm[: self.permuted.cols]

    @property
    def basis_det(self):
        return prod(self.deltas) * self.corner

    def reconstruct(self, A):
        A = as_matrix(A)
        AU = A @ self.col_transform
        return IntMatrix(
            [[s * x for x in AU[r]] for r, s in zip(self.row_perm, self.sign_flips)],
            cols=A.cols,
        )


def adapted_hnf(A, basis_rows=None) -> HnfProfile:
    A = as_matrix(A)
    m, n = A.shape
    if basis_rows is None:
        basis = full_column_rank_basis(A)
    else:
        basis = sorted(basis_rows)
        if len(basis) != n or len(set(basis)) != n:
            raise DimensionError(f"basis must name {n} distinct rows")
        if determinant(A.submatrix(basis)) == 0:
            raise SingularMatrixError("chosen basis rows are singular")
    H, U = column_hnf(A.submatrix(basis))
    unit = [i for i in range(n) if H[i, i] == 1]
    big = [i for i in range(n) if H[i, i] != 1]
    order = unit + big
    perm_cols = IntMatrix([[1 if order[t] == r else 0 for t in range(n)] for r in range(n)], cols=n)
    col_transform = U @ perm_cols
    diag = [H[i, i] for i in order]
    if big:
        deltas, corner = tuple(diag[n - len(big):n - 1]), diag[n - 1]
    else:
        deltas, corner = (), 1
    in_basis = set(basis)
    row_perm = [basis[i] for i in order] + [r for r in range(m) if r not in in_basis]
    AU = A @ col_transform
    signs = []
    rows = []
    for r in row_perm:
        s = -1 if AU[r, n - 1] < 0 else 1
        signs.append(s)
        rows.append([s * x for x in AU[r]])
    return HnfProfile(
        permuted=IntMatrix(rows, cols=n),
        row_perm=tuple(row_perm),
        sign_flips=tuple(signs),
        col_transform=col_transform,
        deltas=deltas,
        corner=corner,
    )


# -- Smith normal form -----------------------------------------------------

def smith_decomposition(A):
    """Return (P, D, Q) with P A Q = D diagonal, P and Q unimodular.

    Works for any shape.  Pivot: smallest absolute nonzero entry of the
    trailing submatrix, ties broken by lowest (row, col).  Diagonal entries
    are nonnegative and satisfy the divisibility chain.
    """
    A = as_matrix(A)
    m, n = A.shape
    D = A.tolist()
    P = IntMatrix.identity(m).tolist()
    Q = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        if i != j:
            for M in (D, Q):
                for r in M:
                    r[i], r[j] = r[j], r[i]

    def row_axpy(dst, src, q):
        if q:
            for M in (D, P):
                M[dst] = [x - q * y for x, y in zip(M[dst], M[src])]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_axpy(i, t, D[i][t] // p)
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    _col_axpy(D, Q, j, t, D[t][j] // p)
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_axpy(t, bad[0], -1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            P[t] = [-x for x in P[t]]
    return IntMatrix(P, cols=m), IntMatrix(D, cols=n), IntMatrix(Q, cols=n)


@dataclass(frozen=True)
class SnfResult:
    """``P @ A @ Q == [S; 0]`` with S square diagonal."""

    P: IntMatrix
    S: IntMatrix
    Q: IntMatrix

    @property
    def diagonal(self):
        return tuple(self.S[i, i] for i in range(self.S.rows))


def snf_with_transforms(A) -> SnfResult:
    A = as_matrix(A)
    m, n = A.shape
    if m < n:
        raise DimensionError(f"expected at least as many rows as columns, got {m}x{n}")
    P, D, Q = smith_decomposition(A)
    S = D.submatrix(range(n), range(n))
    return SnfResult(P=P, S=S, Q=Q)


def gcd_of_maximal_minors(A) -> int:
    """gcd of all n x n minors (0 when rank-deficient), via the Smith form."""
    A = as_matrix(A)
    if A.rows < A.cols:
        return 0
    return prod(snf_with_transforms(A).diagonal)


def gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def smallest_prime_factor(k: int) -> int:
    k = abs(k)
    if k < 2:
        raise ValueError("no prime factor")
    if k % 2 == 0:
        return 2
    p = 3
    while p * p <= k:
        if k % p == 0:
            return p
        p += 2
    return k
