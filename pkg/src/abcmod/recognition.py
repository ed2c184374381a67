"""Recognition of {a,b,c}-modular matrices and the {a,b,0} block decomposition.

All row indices in results are 0-based indices into the caller's matrix.
Every negative answer carries row sets whose maximal minor can be recomputed
directly on the input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from . import kernels
from .detset import DetSet
from .exact_linalg import (
    adapted_hnf,
    determinant,
    full_column_rank_basis,
    gcd_all,
    gcd_of_maximal_minors,
    greedy_row_basis,
    smallest_prime_factor,
    snf_with_transforms,
)
from .matrix import IntMatrix, as_matrix
from .tu import test_tu

PROBE_D = 3


class ContractError(ValueError):
    """Inputs outside an operation's stated preconditions."""


def absdet(A, rows) -> int:
    A = as_matrix(A)
    return abs(determinant(A.submatrix(sorted(rows))))


def _wjson(witnesses):
    return {str(v): [i + 1 for i in witnesses[v]] for v in sorted(witnesses)}


# -- probe results ----------------------------------------------------------

@dataclass(frozen=True)
class ManyValues:
    """More than d distinct values of D(A), each with a witness."""

    witnesses: dict

    @property
    def values(self):
        return frozenset(self.witnesses)


@dataclass(frozen=True)
class ZeroMinor:
    rows: tuple[int, ...]


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class ExtraElement:
    value: int
    rows: tuple[int, ...]

    def to_json(self):
        return {"variant": "extra_element", "value": self.value, "rows": [i + 1 for i in self.rows]}


@dataclass(frozen=True)
class GcdMismatch:
    gcd: int
    expected: int

    def to_json(self):
        return {"variant": "gcd_mismatch", "gcd": self.gcd, "expected": self.expected}


@dataclass(frozen=True)
class StrictSubset:
    detset: DetSet

    def to_json(self):
        return self.detset.to_json("strict_subset")


@dataclass(frozen=True)
class Confirmed:
    detset: DetSet
    via: str

    def to_json(self):
        out = self.detset.to_json("confirmed")
        out["via"] = self.via
        return out


@dataclass(frozen=True)
class ReducedMatrix:
    matrix: IntMatrix
    Q: IntMatrix
    gamma: int


# -- recognition outcomes ---------------------------------------------------

@dataclass(frozen=True)
class Computed:
    detset: DetSet

    @property
    def values(self):
        return self.detset.values

    def to_json(self):
        return self.detset.to_json("computed")


@dataclass(frozen=True)
class AtLeastFour:
    witnesses: dict

    @property
    def values(self):
        return frozenset(self.witnesses)

    def to_json(self):
        return {"variant": "at_least_four", "values": sorted(self.witnesses), "witnesses": _wjson(self.witnesses)}


@dataclass(frozen=True)
class Duplicative:
    k1: int
    k2: int
    witnesses: dict = field(compare=False)

    def to_json(self):
        return {"variant": "duplicative", "values": [self.k1, self.k2], "witnesses": _wjson(self.witnesses)}


# -- nondegeneracy probe ----------------------------------------------------

def probe_row_bound(n, d=PROBE_D):
    return (n - 1) + d * (2 * d + 1)


def nondegenerate_probe(A, d=PROBE_D):
    """Compute D(A), or find d+1 distinct values of it, or a zero maximal minor.

    A zero minor of the form theta (two rows below the leading block of the
    adapted Hermite layout, columns n-1 and n) is searched first; only when
    none exists does the routine enumerate (few rows) or use the binning
    argument on the last column (many rows).
    """
    A = as_matrix(A)
    m, n = A.shape
    full_column_rank_basis(A)
    if n == 1:
        seen = {}
        for i in range(m):
            seen.setdefault(abs(A[i, 0]), (i,))
            if len(seen) > d:
                return ManyValues(seen)
        return DetSet.from_witnesses(seen)

    prof = adapted_hnf(A)
    H = prof.permuted
    orig = prof.row_perm
    top = [orig[k] for k in range(n - 2)]
    tail = sorted(range(n - 2, m), key=lambda p: orig[p])

    def theta(p, q):
        return H[p, n - 2] * H[q, n - 1] - H[q, n - 2] * H[p, n - 1]

    for p, q in combinations(tail, 2):
        if theta(p, q) == 0:
            rows = tuple(sorted(top + [orig[p], orig[q]]))
            return ZeroMinor(rows)

    if m <= probe_row_bound(n, d):
        found = kernels.minor_abs_values(A.tolist(), n)
        if len(found) > d:
            picked = dict(sorted(found.items())[: d + 1])
            return ManyValues(picked)
        return DetSet.from_witnesses(found)

    # Too many rows for a nondegenerate matrix with |D| <= d.
    pivot = n - 2
    bins = {}
    for p in range(n - 1, m):
        bins.setdefault(H[p, n - 1], []).append(p)
    out = {}
    if len(bins) > d:
        for value in sorted(bins)[: d + 1]:
            p = min(bins[value], key=lambda r: orig[r])
            rows = tuple(sorted(top + [orig[pivot], orig[p]]))
            out[absdet(A, rows)] = rows
    else:
        big = next(b for _, b in sorted(bins.items()) if len(b) > 2 * d + 1)
        big = sorted(big, key=lambda r: orig[r])
        head = big[0]
        for p in big[1:]:
            rows = tuple(sorted(top + [orig[head], orig[p]]))
            out.setdefault(absdet(A, rows), rows)
            if len(out) > d:
                break
    if len(out) <= d:
        raise AssertionError("binning argument failed to separate values")
    return ManyValues(out)


# -- gcd reduction ----------------------------------------------------------

def _divide_out_gcd(A):
    """Return (A Q S^-1, Q, gcd D(A)) from the Smith form P A Q = [S; 0]."""
    snf = snf_with_transforms(A)
    diag = snf.diagonal
    g = 1
    for s in diag:
        g *= s
    rows = []
    for r in A @ snf.Q:
        new = []
        for j, x in enumerate(r):
            q, rem = divmod(x, diag[j])
            if rem:
                raise AssertionError("A Q S^-1 is not integral")
            new.append(q)
        rows.append(new)
    return IntMatrix(rows, cols=A.cols), snf.Q, g


def gcd_reduce(A, a, b):
    """Rescale A so that the gcd of its maximal minors becomes 1.

    Returns ``ReducedMatrix`` with D(A') = D(A)/gamma, gamma = gcd(a, b), or
    ``GcdMismatch`` when gcd(D(A)) differs from gamma.
    """
    A = as_matrix(A)
    full_column_rank_basis(A)
    gamma = gcd(a, b)
    Ar, Q, g = _divide_out_gcd(A)
    if g != gamma:
        return GcdMismatch(g, gamma)
    return ReducedMatrix(Ar, Q, gamma)


# -- the {a,b,0} decomposition ----------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Rows and columns rearranged into the 1-sum layout

        [ L  0  a/0 ]
        [ 0  R  b/0 ]

    ``arranged[k] == sign_flips[k] * (A[row_perm[k]] @ col_transform)``.
    """

    row_perm: tuple[int, ...]
    sign_flips: tuple[int, ...]
    col_transform: IntMatrix
    split: tuple[int, int, int, int]
    L: IntMatrix
    R: IntMatrix
    last_col: tuple[int, ...]
    index_partition: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    a: int
    b: int

    def arranged(self):
        m1, n1, m2, n2 = self.split
        rows = []
        for k in range(m1 + m2):
            if k < m1:
                left = list(self.L[k]) + [0] * n2
            else:
                left = [0] * n1 + list(self.R[k - m1])
            rows.append(left + [self.last_col[k]])
        return IntMatrix(rows, cols=n1 + n2 + 1)

    def reconstruct(self, A):
        AU = as_matrix(A) @ self.col_transform
        return IntMatrix(
            [[s * x for x in AU[r]] for r, s in zip(self.row_perm, self.sign_flips)],
            cols=AU.cols,
        )

    def to_json(self):
        I_a, I_b, I_0 = self.index_partition
        one = lambda rows: [i + 1 for i in rows]
        return {
            "variant": "decomposition",
            "a": self.a,
            "b": self.b,
            "row_perm": one(self.row_perm),
            "sign_flips": list(self.sign_flips),
            "col_transform": self.col_transform.tolist(),
            "split": list(self.split),
            "L": self.L.tolist(),
            "R": self.R.tolist(),
            "last_col": list(self.last_col),
            "I_a": one(I_a),
            "I_b": one(I_b),
            "I_0": one(I_0),
        }


class _Stop(Exception):
    def __init__(self, cert):
        self.cert = cert


def _extra(A, rows, allowed):
    rows = tuple(sorted(rows))
    v = absdet(A, rows)
    if v in allowed:
        return None
    return ExtraElement(v, rows)


def _zero_witness_for_tu(H, orig, n):
    """Rows realising a zero minor of a TU matrix whose top n rows are I."""
    m = H.rows
    for p in range(n, m):
        for k in range(n):
            if H[p, k] == 0:
                return [orig[t] for t in range(n) if t != k] + [orig[p]]
    if n >= 2 and m >= n + 2:
        p, q = n, n + 1
        return [orig[t] for t in range(2, n)] + [orig[p], orig[q]]
    return None


def _check_ab(a, b):
    if not (a >= b > 0):
        raise ContractError(f"need a >= b > 0, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise ContractError(f"need gcd(a, b) = 1, got ({a}, {b})")
    if (a, b) == (2, 1):
        raise ContractError("(a, b) = (2, 1) is not covered")


def decompose_ab0(A, a, b):
    """Bring A into the 1-sum layout, or explain why D(A) != {a, b, 0}.

    Returns a ``Decomposition`` or one of ``ExtraElement``, ``GcdMismatch``,
    ``StrictSubset``.  A returned decomposition has TU blocks L and R but does
    not by itself confirm D(A) = {a, b, 0}; see ``test_ab0_modular``.
    """
    A = as_matrix(A)
    _check_ab(a, b)
    try:
        return _decompose(A, a, b)
    except _Stop as stop:
        return stop.cert


def _decompose(A, a, b):
    m, n = A.shape
    allowed = {a, b, 0}
    prof = adapted_hnf(A)

    if prof.corner == 1:
        verdict = test_tu(prof.permuted)
        if verdict.is_tu:
            return _tu_case(A, prof, a, b)
        cert = verdict.certificate
        pos = list(cert.rows) + [c for c in range(n) if c not in cert.cols]
        rows = sorted(prof.row_perm[p] for p in pos)
        bad = _extra(A, rows, allowed)
        if bad is not None:
            raise _Stop(bad)
        prof = adapted_hnf(A, basis_rows=rows)

    H = prof.permuted
    orig = list(prof.row_perm)
    signs = list(prof.sign_flips)
    W = H.tolist()
    U = prof.col_transform.tolist()
    last = n - 1

    if gcd_all(r[last] for r in W) > 1:
        raise _Stop(GcdMismatch(gcd_of_maximal_minors(A), 1))

    if prof.l >= 1:
        k = next(p for p in range(n, m) if W[p][last] not in (0, prof.corner))
        base = orig[:n]
        other = orig[: n - 1] + [orig[k]]
        for rows in (base, other):
            bad = _extra(A, rows, allowed)
            if bad is not None:
                raise _Stop(bad)
        raise AssertionError("two distinct multiples of the deltas both allowed")

    units = orig[: n - 1]
    for p in range(n - 1, m):
        if W[p][last] not in allowed:
            raise _Stop(ExtraElement(W[p][last], tuple(sorted(units + [orig[p]]))))

    I_a = [p for p in range(m) if W[p][last] == a]
    I_b = [p for p in range(m) if W[p][last] == b]
    key = lambda p: orig[p]
    p0 = min(I_a, key=key)
    q0 = min(I_b, key=key)

    def theta_rows(h, r1, r2):
        return [orig[t] for t in range(n - 1) if t != h] + [orig[r1], orig[r2]]

    # Claim 1: reduce the first n-1 columns to {0, +-1}.
    for h in range(n - 1):
        x, y = W[p0][h], W[q0][h]
        k = None
        if x % a == 0 and abs(y - (x // a) * b) == 1:
            k = x // a
        elif y % b == 0 and abs(x - (y // b) * a) == 1:
            k = y // b
        elif x % a == 0 and y == (x // a) * b:
            k = x // a
        if k is None:
            raise _Stop(ExtraElement(absdet(A, theta_rows(h, p0, q0)), tuple(sorted(theta_rows(h, p0, q0)))))
        if k:
            for M in (W, U):
                for r in M:
                    r[h] -= k * r[last]
        for r in range(m):
            if abs(W[r][h]) < 2:
                continue
            for r1, r2 in ((p0, r), (r, q0), (p0, q0)):
                if r1 == r2:
                    continue
                bad = _extra(A, theta_rows(h, r1, r2), allowed)
                if bad is not None:
                    raise _Stop(bad)
            raise AssertionError("no theta witness for a large entry")

    # Claim 2: connected components of the nonzero pattern.
    aside_a, aside_b, aside_0, active = [], [], [], []
    for p in range(m):
        if any(W[p][h] for h in range(n - 1)):
            active.append(p)
        elif W[p][last] == a:
            aside_a.append(p)
        elif W[p][last] == b:
            aside_b.append(p)
        else:
            aside_0.append(p)

    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in active:
        parent[("r", p)] = ("r", p)
    for h in range(n - 1):
        parent[("c", h)] = ("c", h)
    for p in active:
        for h in range(n - 1):
            if W[p][h]:
                ra, rb = find(("r", p)), find(("c", h))
                if ra != rb:
                    parent[ra] = rb
    comps = {}
    for node in parent:
        comps.setdefault(find(node), []).append(node)
    groups = []
    for nodes in comps.values():
        rows = sorted((p for kind, p in nodes if kind == "r"), key=key)
        cols = sorted(h for kind, h in nodes if kind == "c")
        groups.append((rows, cols))

    set_a, set_b = set(I_a), set(I_b)
    for rows, cols in groups:
        if any(p in set_a for p in rows) and any(p in set_b for p in rows):
            raise _Stop(_chain_witness(A, W, orig, rows, set_a, set_b, n, allowed))

    def first_row(g):
        return min(orig[p] for p in g[0])

    touch_a = sorted((g for g in groups if any(p in set_a for p in g[0])), key=first_row)
    rest = sorted((g for g in groups if not any(p in set_a for p in g[0])), key=first_row)
    block1 = [p for g in touch_a for p in g[0]] + sorted(aside_a, key=key) + sorted(aside_0, key=key)
    block2 = [p for g in rest for p in g[0]] + sorted(aside_b, key=key)
    cols1 = [h for g in touch_a for h in g[1]]
    cols2 = [h for g in rest for h in g[1]]

    L = IntMatrix([[W[p][h] for h in cols1] for p in block1], cols=len(cols1))
    R = IntMatrix([[W[p][h] for h in cols2] for p in block2], cols=len(cols2))
    for block, rows_pos, cols, other_row in ((L, block1, cols1, q0), (R, block2, cols2, p0)):
        verdict = test_tu(block)
        if verdict.is_tu:
            continue
        # a +-2 minor of the block, bordered by a row from the other side
        cert = verdict.certificate
        picked = [rows_pos[i] for i in cert.rows] + [other_row]
        used = {cols[j] for j in cert.cols}
        pad = [t for t in range(n - 1) if t not in used]
        rows = sorted([orig[p] for p in picked] + [orig[t] for t in pad])
        bad = _extra(A, rows, allowed)
        if bad is None:
            raise AssertionError("TU failure did not extend to a forbidden minor")
        raise _Stop(bad)

    order = block1 + block2
    col_order = cols1 + cols2 + [last]
    perm = [[1 if col_order[t] == r else 0 for t in range(n)] for r in range(n)]
    col_transform = IntMatrix(U, cols=n) @ IntMatrix(perm, cols=n)
    return Decomposition(
        row_perm=tuple(orig[p] for p in order),
        sign_flips=tuple(signs[p] for p in order),
        col_transform=col_transform,
        split=(len(block1), len(cols1), len(block2), len(cols2)),
        L=L,
        R=R,
        last_col=tuple(W[p][last] for p in order),
        index_partition=(
            tuple(sorted(orig[p] for p in I_a)),
            tuple(sorted(orig[p] for p in I_b)),
            tuple(sorted(orig[p] for p in range(m) if W[p][last] == 0)),
        ),
        a=a,
        b=b,
    )


def _chain_witness(A, W, orig, comp_rows, set_a, set_b, n, allowed):
    """Shortest row/column path from an I_a row to an I_b row; its minor is +-a+-b."""
    comp = set(comp_rows)
    starts = sorted((p for p in comp_rows if p in set_a), key=lambda p: orig[p])
    prev = {("r", p): None for p in starts}
    queue = deque(("r", p) for p in starts)
    end = None
    while queue:
        node = queue.popleft()
        kind, x = node
        if kind == "r" and x in set_b:
            end = node
            break
        if kind == "r":
            nxt = [("c", h) for h in range(n - 1) if W[x][h]]
        else:
            nxt = [("r", p) for p in sorted(comp, key=lambda p: orig[p]) if W[p][x]]
        for v in nxt:
            if v not in prev:
                prev[v] = node
                queue.append(v)
    path = []
    while end is not None:
        path.append(end)
        end = prev[end]
    rows = [x for kind, x in path if kind == "r"]
    cols = {x for kind, x in path if kind == "c"}
    full = sorted([orig[p] for p in rows] + [orig[t] for t in range(n - 1) if t not in cols])
    bad = _extra(A, full, allowed)
    if bad is None:
        raise AssertionError("chain minor lies in {a, b, 0}")
    return bad


def _tu_case(A, prof, a, b):
    """The adapted layout has an identity on top and the whole matrix is TU."""
    m, n = A.shape
    H = prof.permuted
    orig = prof.row_perm
    basis = tuple(sorted(orig[:n]))
    if (a, b) == (1, 1):
        last = tuple(H[p, n - 1] for p in range(m))
        return Decomposition(
            row_perm=tuple(orig),
            sign_flips=tuple(prof.sign_flips),
            col_transform=prof.col_transform,
            split=(m, n - 1, 0, 0),
            L=H.submatrix(None, range(n - 1)),
            R=IntMatrix([], cols=0),
            last_col=last,
            index_partition=(
                tuple(sorted(orig[p] for p in range(m) if last[p])),
                (),
                tuple(sorted(orig[p] for p in range(m) if not last[p])),
            ),
            a=a,
            b=b,
        )
    if b != 1:
        raise _Stop(ExtraElement(1, basis))
    witnesses = {1: basis}
    zero = _zero_witness_for_tu(H, orig, n)
    if zero is not None:
        witnesses[0] = tuple(sorted(zero))
    return StrictSubset(DetSet.from_witnesses(witnesses))


# -- {a,b,0} test -----------------------------------------------------------

def _scale_cert(A, cert, gamma):
    if isinstance(cert, ExtraElement):
        return ExtraElement(absdet(A, cert.rows), cert.rows)
    if isinstance(cert, GcdMismatch):
        return GcdMismatch(cert.gcd * gamma, cert.expected * gamma)
    if isinstance(cert, StrictSubset):
        return StrictSubset(DetSet.from_witnesses({absdet(A, r): r for r in cert.detset.witnesses.values()}))
    return cert


def _from_detset(D, allowed):
    extra = sorted(v for v in D.values if v not in allowed)
    if extra:
        return ExtraElement(extra[0], D.witnesses[extra[0]])
    if D.values == frozenset(allowed):
        return Confirmed(D, "enumeration")
    return StrictSubset(D)


def test_ab0_modular(A, a, b):
    """Decide whether D(A) = {a, b, 0}; a >= b > 0 and 2b != a.

    Returns ``Confirmed`` or a certificate (``ExtraElement``, ``GcdMismatch``,
    ``StrictSubset``).
    """
    A = as_matrix(A)
    if not (a >= b > 0):
        raise ContractError(f"need a >= b > 0, got ({a}, {b})")
    if 2 * b == a:
        raise ContractError(f"duplicative pair ({a}, {b}) is not covered")
    allowed = {a, b, 0}
    n = A.cols

    probe = nondegenerate_probe(A, PROBE_D)
    if isinstance(probe, DetSet):
        return _from_detset(probe, allowed)
    if isinstance(probe, ManyValues):
        v = min(x for x in probe.witnesses if x not in allowed)
        return ExtraElement(v, probe.witnesses[v])
    zero_rows = probe.rows

    red = gcd_reduce(A, a, b)
    if isinstance(red, GcdMismatch):
        return red
    gamma = red.gamma
    Ar = red.matrix
    ar, br = a // gamma, b // gamma

    if ar == br:
        prof = adapted_hnf(Ar)
        basis = tuple(sorted(prof.basis_rows))
        if prof.corner != 1 or prof.l:
            return ExtraElement(absdet(A, basis), basis)
        verdict = test_tu(prof.permuted)
        if not verdict.is_tu:
            cert = verdict.certificate
            pos = list(cert.rows) + [c for c in range(n) if c not in cert.cols]
            rows = tuple(sorted(prof.row_perm[p] for p in pos))
            return ExtraElement(absdet(A, rows), rows)
        D = DetSet.from_witnesses({a: basis, 0: zero_rows})
        return Confirmed(D, "hnf+tu")

    dec = decompose_ab0(Ar, ar, br)
    if not isinstance(dec, Decomposition):
        return _scale_cert(A, dec, gamma)

    M = dec.arranged()
    m = M.rows
    pos_of = {r: k for k, r in enumerate(dec.row_perm)}
    unit_pos = {}
    for k in range(m):
        row = M[k]
        if row[n - 1] == 0:
            nz = [h for h in range(n - 1) if row[h]]
            if len(nz) == 1 and abs(row[nz[0]]) == 1:
                unit_pos.setdefault(nz[0], k)
    for value, part in ((ar, dec.index_partition[0]), (br, dec.index_partition[1])):
        keep = sorted({pos_of[r] for r in part} | {k for k in range(m) if M[k, n - 1] == 0})
        sub = IntMatrix(
            [list(M[k])[: n - 1] + [M[k, n - 1] // value] for k in keep], cols=n
        )
        verdict = test_tu(sub)
        if verdict.is_tu:
            continue
        cert = verdict.certificate
        pos = [keep[i] for i in cert.rows] + [unit_pos[h] for h in range(n - 1) if h not in cert.cols]
        rows = tuple(sorted(dec.row_perm[k] for k in pos))
        return ExtraElement(absdet(A, rows), rows)

    p = min(dec.index_partition[0])
    q = min(dec.index_partition[1])
    units = [dec.row_perm[unit_pos[h]] for h in range(n - 1)]
    D = DetSet.from_witnesses({
        a: tuple(sorted(units + [p])),
        b: tuple(sorted(units + [q])),
        0: zero_rows,
    })
    return Confirmed(D, "decomposition")


test_ab0_modular.__test__ = False


# -- full recognition -------------------------------------------------------

def _second_value(A, k1):
    """An element of D(A) other than 0 and k1, given |D(A)| >= 3."""
    m, n = A.shape
    Ar, _, _ = _divide_out_gcd(A)
    prof = adapted_hnf(Ar)
    H = prof.permuted
    orig = prof.row_perm
    nz = sorted((orig[p], p) for p in range(m) if H[p, n - 1])
    best = None
    for (i, p), (j, q) in combinations(nz, 2):
        if H[p, n - 1] != H[q, n - 1]:
            best = (p, q)
            break
    candidates = []
    if best is not None:
        head = [orig[t] for t in range(n - 1)]
        for p in best:
            candidates.append(tuple(sorted(head + [orig[p]])))
    else:
        verdict = test_tu(H)
        if verdict.is_tu:
            raise AssertionError("gcd-reduced matrix with |D| >= 3 is TU")
        cert = verdict.certificate
        pos = list(cert.rows) + [c for c in range(n) if c not in cert.cols]
        candidates.append(tuple(sorted(orig[p] for p in pos)))
        candidates.append(tuple(sorted(orig[:n])))
    for rows in candidates:
        v = absdet(A, rows)
        if v not in (0, k1):
            return v, rows
    raise AssertionError("no second nonzero value found")


def recognize(A):
    """Compute D(A), certify |D(A)| >= 4, or return a duplicative pair."""
    A = as_matrix(A)
    probe = nondegenerate_probe(A, PROBE_D)
    if isinstance(probe, DetSet):
        return Computed(probe)
    if isinstance(probe, ManyValues):
        return AtLeastFour(dict(probe.witnesses))
    zero = probe.rows

    basis = tuple(full_column_rank_basis(A))
    k1 = absdet(A, basis)
    first = test_ab0_modular(A, k1, k1)
    if isinstance(first, Confirmed):
        return Computed(DetSet.from_witnesses({k1: basis, 0: zero}))

    k2, rows2 = _second_value(A, k1)
    wit = {k1: basis, k2: rows2}
    hi, lo = max(k1, k2), min(k1, k2)
    if 2 * lo == hi:
        return Duplicative(lo, hi, wit)

    res = test_ab0_modular(A, hi, lo)
    if isinstance(res, Confirmed):
        return Computed(DetSet.from_witnesses({**wit, 0: zero}))
    if isinstance(res, ExtraElement):
        return AtLeastFour({**wit, 0: zero, res.value: res.rows})
    if isinstance(res, GcdMismatch):
        v, rows = _coprime_minor(A, gcd(hi, lo))
        return AtLeastFour({**wit, 0: zero, v: rows})
    raise AssertionError(f"unexpected certificate {res!r} with {{k1, k2, 0}} in D(A)")


def _coprime_minor(A, G):
    """A nonzero minor whose value differs from every multiple of G in D(A)."""
    Ar, _, g = _divide_out_gcd(A)
    p = smallest_prime_factor(G // g)
    rows = tuple(greedy_row_basis(Ar, modulus=p))
    v = absdet(A, rows)
    if len(rows) != A.cols or v == 0 or v % (g * p) == 0:
        raise AssertionError("modular basis search failed")
    return v, rows


def outcome_json(outcome):
    return outcome.to_json()
