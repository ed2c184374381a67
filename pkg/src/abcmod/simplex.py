"""Exact two-phase simplex over the rationals for max{w.y : C y <= g}, y free.

The free variables are split as y = y+ - y-, every row gets a slack, rows
with negative right-hand side get an artificial.  Bland's rule guarantees
termination.  A list of objectives is optimised lexicographically: later
objectives only move along columns whose reduced cost is zero for every
earlier one.  The final point is pushed to a vertex of {C y <= g}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LpError(ValueError):
    pass


@dataclass(frozen=True)
class TightSet:
    vertex: tuple
    rows: tuple[int, ...]


@dataclass(frozen=True)
class VertexOptimal:
    tight: TightSet
    value: Fraction

    @property
    def vertex(self):
        return self.tight.vertex


@dataclass(frozen=True)
class LpUnbounded:
    point: tuple
    ray: tuple


@dataclass(frozen=True)
class LpInfeasible:
    pass


class _Tableau:
    def __init__(self, C, g):
        m = len(C)
        k = len(C[0]) if m else 0
        self.m, self.k = m, k
        neg = [i for i in range(m) if g[i] < 0]
        self.nart = len(neg)
        self.ncols = 2 * k + m + self.nart
        self.rows = []
        self.rhs = []
        self.basis = []
        art = 2 * k + m
        for i in range(m):
            row = [Fraction(0)] * self.ncols
            sign = -1 if g[i] < 0 else 1
            for j in range(k):
                row[j] = Fraction(sign * C[i][j])
                row[k + j] = Fraction(-sign * C[i][j])
            row[2 * k + i] = Fraction(sign)
            if sign < 0:
                row[art] = Fraction(1)
                self.basis.append(art)
                art += 1
            else:
                self.basis.append(2 * k + i)
            self.rows.append(row)
            self.rhs.append(Fraction(sign * g[i]))
        self.allowed = [True] * self.ncols

    def reduced(self, cost):
        out = list(cost)
        for r, b in zip(self.rows, self.basis):
            cb = cost[b]
            if cb:
                for j, x in enumerate(r):
                    if x:
                        out[j] -= cb * x
        return out

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        if p != 1:
            row[:] = [x / p for x in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[j]
                if f:
                    other[:] = [x - f * y for x, y in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = j

    def optimize(self, cost, allowed):
        """Maximise cost.x over the current face; returns None or an unbounded column."""
        while True:
            red = self.reduced(cost)
            enter = next((j for j in range(self.ncols) if allowed[j] and red[j] > 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)

    def values(self):
        x = [Fraction(0)] * self.ncols
        for r, b in zip(self.rhs, self.basis):
            x[b] = r
        return x


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _rank(rows, k):
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(k):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c] / p[c]
                work[i] = [x - f * y for x, y in zip(work[i], p)]
        rank += 1
    return rank


def _null_vector(rows, k):
    """A nonzero d with rows . d = 0, or None when the rows have rank k."""
    work = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(k):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank][c]
        work[rank] = [x / p for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        pivots.append(c)
        rank += 1
    free = next((c for c in range(k) if c not in pivots), None)
    if free is None:
        return None
    d = [Fraction(0)] * k
    d[free] = Fraction(1)
    for r, c in enumerate(pivots):
        d[c] = -work[r][free]
    return d


def lp_solve_exact(C, g, objectives):
    """Lexicographically maximise ``objectives`` over {y : C y <= g}.

    ``objectives`` is one vector or a list of vectors; the first decides
    boundedness.  C must have full column rank.  Returns ``VertexOptimal``
    (value of the first objective), ``LpUnbounded`` or ``LpInfeasible``.
    """
    C = [list(r) for r in C]
    g = list(g)
    k = len(C[0]) if C else 0
    if objectives and not isinstance(objectives[0], (list, tuple)):
        objectives = [objectives]
    objectives = [list(w) for w in objectives]
    if _rank(C, k) < k:
        raise LpError("constraint matrix must have full column rank")
    if k == 0:
        if any(x < 0 for x in g):
            return LpInfeasible()
        return VertexOptimal(TightSet((), tuple(i for i, x in enumerate(g) if x == 0)), Fraction(0))

    tab = _Tableau(C, g)
    n2 = 2 * k + tab.m
    if tab.nart:
        cost = [Fraction(0)] * tab.ncols
        for j in range(n2, tab.ncols):
            cost[j] = Fraction(-1)
        tab.optimize(cost, tab.allowed)
        x = tab.values()
        if any(x[j] for j in range(n2, tab.ncols)):
            return LpInfeasible()
        for r in range(len(tab.rows)):
            if tab.basis[r] >= n2:
                j = next((j for j in range(n2) if tab.rows[r][j]), None)
                if j is not None:
                    tab.pivot(r, j)
        keep = [r for r in range(len(tab.rows)) if tab.basis[r] < n2]
        tab.rows = [tab.rows[r] for r in keep]
        tab.rhs = [tab.rhs[r] for r in keep]
        tab.basis = [tab.basis[r] for r in keep]
        for j in range(n2, tab.ncols):
            tab.allowed[j] = False

    allowed = list(tab.allowed)
    for stage, w in enumerate(objectives):
        cost = [Fraction(v) for v in w] + [Fraction(-v) for v in w] + [Fraction(0)] * (tab.ncols - 2 * k)
        col = tab.optimize(cost, allowed)
        if col is not None:
            if stage:
                raise LpError("tie-break objective is unbounded on the optimal face")
            x = tab.values()
            point = tuple(x[j] - x[k + j] for j in range(k))
            d = [Fraction(0)] * tab.ncols
            d[col] = Fraction(1)
            for r, b in enumerate(tab.basis):
                d[b] = -tab.rows[r][col]
            ray = tuple(d[j] - d[k + j] for j in range(k))
            return LpUnbounded(point, ray)
        red = tab.reduced(cost)
        allowed = [a and red[j] == 0 for j, a in enumerate(allowed)]

    x = tab.values()
    y = [x[j] - x[k + j] for j in range(k)]
    y = _to_vertex(C, g, y, objectives)
    tight = tuple(i for i in range(len(C)) if _dot(C[i], y) == g[i])
    return VertexOptimal(TightSet(tuple(y), tight), _dot(objectives[0], y) if objectives else Fraction(0))


def _to_vertex(C, g, y, objectives):
    k = len(y)
    before = [_dot(w, y) for w in objectives]
    while True:
        tight = [C[i] for i in range(len(C)) if _dot(C[i], y) == g[i]]
        d = _null_vector(tight, k)
        if d is None:
            break
        if not any(_dot(r, d) > 0 for r in C):
            d = [-v for v in d]
        step = min(
            (g[i] - _dot(C[i], y)) / _dot(C[i], d) for i in range(len(C)) if _dot(C[i], d) > 0
        )
        y = [a + step * b for a, b in zip(y, d)]
    if [_dot(w, y) for w in objectives] != before:
        raise LpError("crossover changed the objective")
    return y
