"""Integer programs whose transposed constraint matrix has few distinct minors.

``solve_standard`` handles max{c.x : B x = b, x >= 0 integral}.  It rewrites
the problem as max{h.y : C y <= g, y integral}, recognises D(C) and then
either runs a mixed-integer LP with one integer variable on a TU split of C,
solves over the tight cone of an LP vertex, or falls back to exact
branch and bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, isqrt

from . import recognition as rec
from .exact_linalg import (
    RankDeficientError,
    determinant,
    greedy_row_basis,
    inverse_rational,
    rank,
    smallest_prime_factor,
    smith_decomposition,
    snf_with_transforms,
)
from .matrix import DimensionError, IntMatrix, as_matrix
from .simplex import LpInfeasible, LpUnbounded, VertexOptimal, lp_solve_exact
from .tu import test_tu


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _is_integral(v):
    return all(Fraction(x).denominator == 1 for x in v)


# -- problem records --------------------------------------------------------

@dataclass(frozen=True)
class StandardIP:
    B: IntMatrix
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        B = as_matrix(self.B)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.b) != B.rows or len(self.c) != B.cols:
            raise DimensionError("b and c must match the shape of B")

    def feasible(self, x):
        return all(v >= 0 for v in x) and self.B @ list(x) == self.b

    def objective(self, x):
        return _dot(self.c, x)


@dataclass(frozen=True)
class InequalityIP:
    """max offset + h.y subject to C y <= g; ``back_map`` returns g - C y."""

    C: IntMatrix
    g: tuple[int, ...]
    h: tuple[int, ...]
    objective_offset: Fraction = Fraction(0)
    source: StandardIP | None = None

    def __post_init__(self):
        C = as_matrix(self.C)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "h", tuple(self.h))
        object.__setattr__(self, "objective_offset", Fraction(self.objective_offset))
        if len(self.g) != C.rows or len(self.h) != C.cols:
            raise DimensionError("g and h must match the shape of C")

    def back_map(self, y):
        Cy = self.C @ list(y) if self.C.cols else (0,) * self.C.rows
        return tuple(gi - v for gi, v in zip(self.g, Cy))

    def feasible(self, y):
        if self.C.cols == 0:
            return all(v >= 0 for v in self.g)
        return all(v <= gi for v, gi in zip(self.C @ list(y), self.g))

    def objective(self, y):
        return self.objective_offset + _dot(self.h, y)


@dataclass(frozen=True)
class StandardInfeasible:
    reason: str


@dataclass(frozen=True)
class TuSplit:
    """C U = [T | d] with T totally unimodular."""

    U: IntMatrix
    T: IntMatrix
    d_col: tuple[int, ...]


# -- outcomes ---------------------------------------------------------------

@dataclass(frozen=True)
class Optimal:
    x: tuple
    value: Fraction
    fallback: bool = False
    path: str = ""

    def to_json(self):
        return {
            "status": "optimal",
            "x": [int(v) for v in self.x],
            "value": str(Fraction(self.value)),
            "fallback": self.fallback,
            "path": self.path,
        }


@dataclass(frozen=True)
class Infeasible:
    reason: str = ""
    fallback: bool = False

    def to_json(self):
        return {"status": "infeasible", "fallback": self.fallback, "reason": self.reason}


@dataclass(frozen=True)
class Unbounded:
    x: tuple = ()
    ray: tuple = ()
    fallback: bool = False

    def to_json(self):
        return {
            "status": "unbounded",
            "x": [int(v) for v in self.x],
            "ray": [str(Fraction(v)) for v in self.ray],
            "fallback": self.fallback,
        }


@dataclass(frozen=True)
class AtLeastFour:
    certificate: dict = field(default_factory=dict)

    def to_json(self):
        return {"status": "at_least_four", "fallback": False, "certificate": self.certificate}


# -- reduction to inequality form --------------------------------------------

def standard_to_inequality(ip: StandardIP):
    """Rewrite B x = b, x >= 0 as C y <= g over y in Z^(n-m).

    With P B Q = [S | 0] (Smith form) and b' = S^-1 P b, every integral
    solution is x = Q[:, :m] b' + Q[:, m:] y.  Returns ``InequalityIP`` or
    ``StandardInfeasible`` when b' is not integral.
    """
    B = ip.B
    m, n = B.shape
    if rank(B) < m:
        raise RankDeficientError(f"B has rank < {m}")
    P, D, Q = smith_decomposition(B)
    Pb = P @ list(ip.b)
    bp = []
    for i in range(m):
        q, r = divmod(Pb[i], D[i, i])
        if r:
            return StandardInfeasible(f"row {i + 1} of the Smith system is not integral")
        bp.append(q)
    g = tuple(_dot(Q[i][:m], bp) for i in range(n))
    C = IntMatrix([[-Q[i, j] for j in range(m, n)] for i in range(n)], cols=n - m)
    h = tuple(_dot(ip.c, Q.col(j)) for j in range(m, n))
    offset = Fraction(_dot(ip.c, g))
    return InequalityIP(C, g, h, offset, source=ip)


def jacobi_check(Q, I, J) -> bool:
    """det Q[I,J] = det Q * (-1)^(sum I + sum J) * det Q^-1[~J,~I] (1-based sums)."""
    Q = as_matrix(Q)
    n = Q.rows
    if not Q.is_square():
        raise DimensionError("Q must be square")
    dQ = determinant(Q)
    if abs(dQ) != 1:
        raise ValueError("Q must be unimodular")
    I, J = sorted(I), sorted(J)
    if len(I) != len(J):
        raise DimensionError("index sets differ in size")
    inv = inverse_rational(Q)
    Ic = [i for i in range(n) if i not in I]
    Jc = [j for j in range(n) if j not in J]
    lhs = determinant(Q.submatrix(I, J)) if I else 1
    sign = -1 if (sum(I) + sum(J) + 2 * len(I)) % 2 else 1
    if Jc:
        sub = IntMatrix([[int(inv[j][i]) for i in Ic] for j in Jc], cols=len(Ic))
        rhs = dQ * sign * determinant(sub)
    else:
        rhs = dQ * sign
    return lhs == rhs


# -- integer solvers -----------------------------------------------------------

@dataclass(frozen=True)
class IpOptimal:
    point: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class IpInfeasible:
    pass


@dataclass(frozen=True)
class IpUnbounded:
    point: tuple[int, ...]
    ray: tuple


def subdeterminant_bound(C) -> int:
    """Hadamard bound on every square subdeterminant of C."""
    rows = [list(r) for r in C]
    k = len(rows[0]) if rows else 0
    norms = sorted((max(1, _dot(r, r)) for r in rows), reverse=True)
    prod = 1
    for v in norms[:k]:
        prod *= v
    return isqrt(prod) + 1


def bip_solve(C, g, w, tiebreak=()):
    """max w.y over integral y with C y <= g, by exact branch and bound.

    Ties are broken by ``tiebreak`` objectives and then by the
    lexicographically smallest point within the search box.  The search box
    is the LP optimum widened by k times a bound on the subdeterminants, which
    always contains an integral optimum when one exists.
    """
    C = [list(r) for r in C]
    g = list(g)
    k = len(C[0]) if C else 0
    objs = [list(w)] + [list(t) for t in tiebreak]
    root = lp_solve_exact(C, g, objs)
    if isinstance(root, LpInfeasible):
        return IpInfeasible()
    if isinstance(root, LpUnbounded):
        aux = bip_solve(C, g, C[0])
        if isinstance(aux, IpOptimal):
            return IpUnbounded(aux.point, root.ray)
        return IpInfeasible()
    if k == 0:
        return IpOptimal((), 0)

    reach = k * subdeterminant_bound(C)
    lo0 = [floor(x) - reach for x in root.vertex]
    hi0 = [ceil(x) + reach for x in root.vertex]
    order = objs + [[-int(i == j) for j in range(k)] for i in range(k)]
    best = None
    stack = [(lo0, hi0)]
    eye = [[int(i == j) for j in range(k)] for i in range(k)]
    while stack:
        lo, hi = stack.pop()
        rows = C + eye + [[-x for x in r] for r in eye]
        rhs = g + hi + [-v for v in lo]
        lp = lp_solve_exact(rows, rhs, order)
        if not isinstance(lp, VertexOptimal):
            continue
        y = lp.vertex
        vec = [_dot(o, y) for o in order]
        if best is not None and (floor(vec[0]) < best[0][0] or vec <= best[0]):
            continue
        frac = next((j for j in range(k) if y[j].denominator != 1), None)
        if frac is None:
            best = (vec, tuple(int(v) for v in y))
            continue
        down_hi = list(hi)
        down_hi[frac] = floor(y[frac])
        up_lo = list(lo)
        up_lo[frac] = ceil(y[frac])
        stack.append((lo, down_hi))
        stack.append((up_lo, hi))
    if best is None:
        return IpInfeasible()
    point = best[1]
    return IpOptimal(point, _dot(w, point))


@dataclass(frozen=True)
class MilpOptimal:
    point: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class MilpInfeasible:
    pass


@dataclass(frozen=True)
class MilpUnbounded:
    point: tuple[int, ...]
    ray: tuple


def _fixed_last(T, d, g, w, t):
    """Vertex of max w'.z' s.t. T z' <= g - d t, lexicographically smallest on ties."""
    k = T.cols
    rhs = [gi - di * t for gi, di in zip(g, d)]
    objs = [list(w[:k])] + [[-int(i == j) for j in range(k)] for i in range(k)]
    res = lp_solve_exact(T.tolist() if k else [[] for _ in range(T.rows)], rhs, objs)
    if not isinstance(res, VertexOptimal):
        return res
    z = res.vertex
    if not _is_integral(z):
        raise AssertionError("vertex of a TU system with integral data is fractional")
    return tuple(int(v) for v in z) + (t,)


def milp_single_integer(split: TuSplit, g, w):
    """max w.z subject to [T | d] z <= g with only the last coordinate integral.

    The optimal value as a function of the last coordinate is concave, so the
    best integer is the floor or ceiling of the LP optimum (clamped to the
    feasible range).  Fixing it leaves an LP over a TU matrix whose vertices
    are integral, so the returned point is integral.
    """
    T = as_matrix(split.T)
    d = list(split.d_col)
    g = list(g)
    w = list(w)
    k = T.cols + 1
    M = [list(T[i]) + [d[i]] for i in range(T.rows)]
    last = [int(j == k - 1) for j in range(k)]
    rel = lp_solve_exact(M, g, [w])
    if isinstance(rel, LpInfeasible):
        return MilpInfeasible()
    up = lp_solve_exact(M, g, [last])
    down = lp_solve_exact(M, g, [[-x for x in last]])
    hi = floor(up.value) if isinstance(up, VertexOptimal) else None
    lo = ceil(-down.value) if isinstance(down, VertexOptimal) else None
    if lo is not None and hi is not None and lo > hi:
        return MilpInfeasible()

    def clamp(t):
        if lo is not None and t < lo:
            t = lo
        if hi is not None and t > hi:
            t = hi
        return t

    if isinstance(rel, LpUnbounded):
        t = clamp(0)
        point = _fixed_last(T, d, g, w, t)
        return MilpUnbounded(point, rel.ray)

    zl = rel.vertex[-1]
    best = None
    for t in sorted({clamp(floor(zl)), clamp(ceil(zl))}):
        point = _fixed_last(T, d, g, w, t)
        if not isinstance(point, tuple):
            continue
        val = _dot(w, point)
        if best is None or val > best[1]:
            best = (point, val)
    if best is None:
        raise AssertionError("no feasible integer for the last coordinate in its range")
    return MilpOptimal(best[0], Fraction(best[1]))


# -- the case analysis -------------------------------------------------------

def tu_split(C, dec: rec.Decomposition) -> TuSplit:
    C = as_matrix(C)
    CU = C @ dec.col_transform
    k = CU.cols
    T = CU.submatrix(None, range(k - 1))
    split = TuSplit(dec.col_transform, T, tuple(CU[i, k - 1] for i in range(CU.rows)))
    if not test_tu(T).is_tu:
        raise AssertionError("decomposition produced a non-TU split")
    return split


def _rows_json(witnesses, rows_map=None):
    out = {}
    for v, rows in sorted(witnesses.items()):
        rows = [rows_map[r] for r in rows] if rows_map else list(rows)
        out[str(v)] = [r + 1 for r in sorted(rows)]
    return out


def _four(reason, witnesses, **extra):
    cert = {"reason": reason, "values": sorted(witnesses), "witnesses": _rows_json(witnesses)}
    cert.update(extra)
    return AtLeastFour(cert)


def _fallback(C, g, h):
    res = bip_solve(C, g, h)
    if isinstance(res, IpOptimal):
        return Optimal(res.point, Fraction(res.value), True, "branch_and_bound")
    if isinstance(res, IpUnbounded):
        return Unbounded(res.point, res.ray, True)
    return Infeasible("no integral point", True)


def _zero_rows(C):
    probe = rec.nondegenerate_probe(C)
    if isinstance(probe, rec.ZeroMinor):
        return probe.rows
    if hasattr(probe, "witnesses") and 0 in probe.witnesses:
        return probe.witnesses[0]
    return None


def _duplicative_case(C, g, h, k, wit):
    """Case of a duplicative pair k, 2k in D(C), with gcd(D(C)) = 1."""
    Cl = C.tolist()
    if k > 1:
        p = smallest_prime_factor(k)
        rows = tuple(greedy_row_basis(C, modulus=p))
        v = rec.absdet(C, rows)
        known = {k: wit[k], 2 * k: wit[2 * k], v: rows}
        zero = _zero_rows(C)
        if zero is not None:
            known[0] = zero
        return _four("duplicative pair k, 2k with k > 1 and gcd 1", known)

    rel = lp_solve_exact(Cl, g, [list(h)])
    if isinstance(rel, LpInfeasible):
        return Infeasible("linear relaxation is empty")
    if isinstance(rel, LpUnbounded):
        aux = _duplicative_case(C, g, list(Cl[0]), k, wit)
        if isinstance(aux, Optimal):
            return Unbounded(aux.x, rel.ray)
        return aux

    v = rel.vertex
    if _is_integral(v):
        return Optimal(tuple(int(x) for x in v), rel.value, False, "lp_vertex")
    I = list(rel.tight.rows)
    CI = C.submatrix(I)
    gI = [g[i] for i in I]
    base = {1: wit[1], 2: wit[2]}
    sub = rec.recognize(CI)
    if isinstance(sub, rec.AtLeastFour):
        mapped = {val: tuple(I[r] for r in rows) for val, rows in sub.witnesses.items()}
        return _four("tight rows have at least four values", mapped)
    if isinstance(sub, rec.Duplicative):
        extra = {sub.k1: tuple(I[r] for r in sub.witnesses[sub.k1]),
                 sub.k2: tuple(I[r] for r in sub.witnesses[sub.k2])}
        return _four("tight rows carry a second duplicative pair", {**base, **extra})
    odd = sorted(x for x in sub.values if x not in (0, 2))
    if odd:
        t = odd[0]
        if t == 1:
            raise AssertionError("unit minor among the tight rows of a fractional vertex")
        rows = tuple(I[r] for r in sub.detset.witnesses[t])
        return _four("tight rows have a minor outside {2, 0}", {**base, t: rows})

    s = [sum(Cl[i][j] for i in I) for j in range(C.cols)]
    cone = bip_solve(CI.tolist(), gI, h, tiebreak=[s])
    if isinstance(cone, IpInfeasible):
        return Infeasible("tight cone has no integral point")
    if isinstance(cone, IpUnbounded):
        raise AssertionError("tight cone problem is unbounded at an optimal vertex")
    y = cone.point
    Cy = C @ list(y)
    bad = next((i for i in range(C.rows) if Cy[i] > g[i]), None)
    if bad is None:
        return Optimal(y, Fraction(cone.value), False, "tight_cone")
    return AtLeastFour({
        "reason": "tight cone optimum violates the full system",
        "values": [0, 1, 2],
        "witnesses": _rows_json(base),
        "y": list(y),
        "violated_row": bad + 1,
    })


def _solve_y(C, g, h, allow_structure=True):
    """Solve max h.y, C y <= g over integers; C has full column rank."""
    C = as_matrix(C)
    g = list(g)
    h = list(h)
    if C.cols == 0:
        if all(v >= 0 for v in g):
            return Optimal((), Fraction(0), False, "trivial")
        return Infeasible("fixed point violates nonnegativity")
    if not allow_structure:
        return _fallback(C.tolist(), g, h)

    out = rec.recognize(C)
    if isinstance(out, rec.AtLeastFour):
        return _four("recognition found four values", dict(out.witnesses))
    if isinstance(out, rec.Duplicative):
        return _duplicative_case(C, g, h, out.k1, out.witnesses)

    D = out.values
    if 0 not in D or D == frozenset({1, 0}):
        return _fallback(C.tolist(), g, h)
    dup = sorted(v for v in D if v and 2 * v in D)
    if dup:
        k = dup[0]
        wit = {k: out.detset.witnesses[k], 2 * k: out.detset.witnesses[2 * k]}
        return _duplicative_case(C, g, h, k, wit)
    a, b = sorted((v for v in D if v), reverse=True)
    dec = rec.decompose_ab0(C, a, b)
    if not isinstance(dec, rec.Decomposition):
        raise AssertionError(f"confirmed {{a, b, 0}} matrix did not decompose: {dec!r}")
    split = tu_split(C, dec)
    U = split.U
    w = [_dot(h, U.col(j)) for j in range(U.cols)]
    res = milp_single_integer(split, g, w)
    if isinstance(res, MilpInfeasible):
        return Infeasible("mixed-integer relaxation is infeasible")
    y = U @ list(res.point)
    if isinstance(res, MilpUnbounded):
        ray = tuple(_dot(U[i], res.ray) for i in range(U.rows))
        return Unbounded(y, ray)
    return Optimal(y, Fraction(_dot(h, y)), False, "milp")


def solve_inequality(C, g, h, offset=0):
    """Solve max offset + h.y subject to C y <= g, y integral (C full column rank).

    The structured case analysis needs gcd(D(C)) = 1; other inputs are
    solved by branch and bound and flagged as fallback.
    """
    C = as_matrix(C)
    if rank(C) < C.cols:
        raise RankDeficientError("C must have full column rank")
    structured = True
    if C.cols:
        diag = snf_with_transforms(C).diagonal
        structured = all(s == 1 for s in diag)
    res = _solve_y(C, g, h, structured)
    if isinstance(res, Optimal):
        return Optimal(res.x, res.value + Fraction(offset), res.fallback, res.path)
    return res


def solve_standard(ip: StandardIP):
    """Solve max c.x, B x = b, x >= 0 integral, or report |D(B^T)| >= 4."""
    red = standard_to_inequality(ip)
    if isinstance(red, StandardInfeasible):
        return Infeasible(red.reason)
    res = _solve_y(red.C, red.g, red.h)
    if isinstance(res, Optimal):
        x = red.back_map(res.x)
        if not ip.feasible(x):
            raise AssertionError("back-mapped point is infeasible")
        return Optimal(x, Fraction(ip.objective(x)), res.fallback, res.path)
    if isinstance(res, Unbounded):
        x = red.back_map(res.x)
        ray = tuple(-_dot(red.C[i], res.ray) for i in range(red.C.rows))
        return Unbounded(x, ray, res.fallback)
    return res
