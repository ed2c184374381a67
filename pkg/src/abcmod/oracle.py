"""Brute-force ground truth: exhaustive minor sets and box-bounded IP enumeration.

Nothing here prunes.  Work beyond the configured budget raises
``BudgetExceeded`` instead of returning a partial answer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, prod

from . import kernels
from .detset import DetSet
from .exact_linalg import determinant, greedy_row_basis, inverse_rational
from .matrix import DimensionError, as_matrix

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


def default_budget():
    env = os.environ.get("ABCMOD_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Box:
    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionError("box bounds differ in length")
        for a, b in zip(self.lo, self.hi):
            if a > b:
                raise ValueError(f"empty box coordinate [{a}, {b}]")

    @classmethod
    def uniform(cls, n, lo, hi):
        return cls((lo,) * n, (hi,) * n)

    @property
    def dim(self):
        return len(self.lo)

    def volume(self):
        return prod(b - a + 1 for a, b in zip(self.lo, self.hi))

    def contains(self, y):
        return all(a <= v <= b for a, v, b in zip(self.lo, y, self.hi))

    def enlarged(self, k=1):
        return Box(tuple(a - k for a in self.lo), tuple(b + k for b in self.hi))

    def to_json(self):
        return {"lo": list(self.lo), "hi": list(self.hi)}


@dataclass(frozen=True)
class BruteOptimal:
    point: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class BruteInfeasible:
    """No lattice point of the box satisfies the constraints."""


def det_set_bruteforce(A, budget=None) -> DetSet:
    A = as_matrix(A)
    m, n = A.shape
    if m < n:
        raise DimensionError(f"need m >= n, got {m}x{n}")
    budget = default_budget() if budget is None else budget
    if comb(m, n) > budget:
        raise BudgetExceeded(f"{comb(m, n)} minors exceed budget {budget}")
    return DetSet.from_witnesses(kernels.minor_abs_values(A.tolist(), n))


def is_tu_bruteforce(M) -> bool:
    """Total unimodularity by enumerating every square minor."""
    M = as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return True
    return kernels.first_bad_minor(M.tolist(), 1) is None


def ip_bruteforce(C, g, w, box: Box, budget=None):
    """max w.y over lattice points y of ``box`` with C y <= g.

    Ties go to the lexicographically smallest point.
    """
    C = as_matrix(C)
    if box.dim != C.cols or len(w) != C.cols or len(g) != C.rows:
        raise DimensionError("instance and box dimensions disagree")
    budget = default_budget() if budget is None else budget
    if box.volume() > budget:
        raise BudgetExceeded(f"box volume {box.volume()} exceeds budget {budget}")
    res = kernels.box_argmax(C.tolist(), list(g), list(w), list(box.lo), list(box.hi))
    if res is None:
        return BruteInfeasible()
    return BruteOptimal(tuple(res[0]), res[1])


def standard_ip_bruteforce(B, b, c, box: Box, budget=None):
    """max c.x over x in box, x >= 0 integral, B x = b (B of full row rank).

    A basis of B's columns is chosen preferring wide box coordinates; the
    remaining coordinates are enumerated and the basic ones solved exactly,
    so every feasible point of the box is visited exactly once.
    """
    B = as_matrix(B)
    m, n = B.shape
    if box.dim != n or len(c) != n or len(b) != m:
        raise DimensionError("instance and box dimensions disagree")
    order = sorted(range(n), key=lambda j: (-(box.hi[j] - box.lo[j]), j))
    picked = greedy_row_basis(B.T.submatrix(order))
    if len(picked) < m:
        raise DimensionError("B must have full row rank")
    basic = sorted(order[k] for k in picked)
    nonbasic = [j for j in range(n) if j not in set(basic)]
    budget = default_budget() if budget is None else budget
    volume = prod(box.hi[j] - box.lo[j] + 1 for j in nonbasic)
    if volume > budget:
        raise BudgetExceeded(f"{volume} nonbasic assignments exceed budget {budget}")
    BB = B.submatrix(None, basic)
    det = determinant(BB)
    adj = [[int(x * det) for x in r] for r in inverse_rational(BB)]
    best = None
    for xn in product(*(range(box.lo[j], box.hi[j] + 1) for j in nonbasic)):
        r = [b[i] - sum(B[i, j] * v for j, v in zip(nonbasic, xn)) for i in range(m)]
        x = [0] * n
        ok = True
        for k, j in enumerate(basic):
            num = sum(a * ri for a, ri in zip(adj[k], r))
            q, rem = divmod(num, det)
            if rem or not box.lo[j] <= q <= box.hi[j] or q < 0:
                ok = False
                break
            x[j] = q
        if not ok:
            continue
        for j, v in zip(nonbasic, xn):
            if v < 0:
                ok = False
            x[j] = v
        if not ok:
            continue
        val = sum(ci * xi for ci, xi in zip(c, x))
        key = (val, [-v for v in x])
        if best is None or key > best[0]:
            best = (key, tuple(x), val)
    if best is None:
        return BruteInfeasible()
    return BruteOptimal(best[1], best[2])


def brute_value(result):
    return Fraction(result.value) if isinstance(result, BruteOptimal) else None
