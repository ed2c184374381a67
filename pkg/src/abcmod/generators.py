"""Seeded desk-scale instances whose constraint matrices have at most the
values a, b, 0 among their maximal minors.

network_flow   max s-t flow with gain a/b on the arcs entering a hub v
               (standard form; the hub's conservation row is scaled by b)
d_matching     perfect d-matching on two bipartite graphs coupled by
               +-a f(e1) +-b f(e2) = g (standard form)
vertex_cover   edge-weighted vertex cover on two bipartite graphs, where a
               shared integer z enters the edge constraints as +-a z / +-b z
               (inequality form)

Arcs and edges are listed in lexicographic order of their endpoint labels.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from math import ceil

from .exact_linalg import rank
from .matrix import IntMatrix, format_instance
from .oracle import Box
from .optimize import InequalityIP, StandardIP

FAMILIES = ("network_flow", "d_matching", "vertex_cover")
MAX_TRIES = 200


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    a: int
    b: int
    seed: int = 0
    size: int = 2

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GenerationError(f"unknown family {self.family!r}")
        if not (self.a >= self.b >= 1):
            raise GenerationError(f"need a >= b >= 1, got ({self.a}, {self.b})")
        if self.size < 1:
            raise GenerationError("size must be positive")


@dataclass(frozen=True)
class Generated:
    spec: GenSpec
    ip: StandardIP | InequalityIP
    box: Box
    claimed: frozenset

    @property
    def kind(self):
        return "standard" if isinstance(self.ip, StandardIP) else "inequality"

    def constraint_matrix(self):
        """The matrix whose maximal minors the family claims to control."""
        return self.ip.B.T if self.kind == "standard" else self.ip.C

    def instance_text(self):
        if self.kind == "standard":
            return format_instance(self.ip.B, self.ip.b, self.ip.c, "standard")
        return format_instance(self.ip.C, self.ip.g, self.ip.h, "inequality")

    def sidecar(self):
        return {
            "family": self.spec.family,
            "a": self.spec.a,
            "b": self.spec.b,
            "seed": self.spec.seed,
            "size": self.spec.size,
            "kind": self.kind,
            "claimed_D": sorted(self.claimed),
            "box": self.box.to_json(),
        }

    def sidecar_text(self):
        return json.dumps(self.sidecar(), indent=2) + "\n"


def generate(spec: GenSpec) -> Generated:
    rng = random.Random(f"{spec.family}:{spec.a}:{spec.b}:{spec.seed}:{spec.size}")
    build = {"network_flow": _flow, "d_matching": _matching, "vertex_cover": _cover}[spec.family]
    for _ in range(MAX_TRIES):
        out = build(spec, rng)
        if out is not None:
            return out
    raise GenerationError(f"no valid {spec.family} instance after {MAX_TRIES} attempts")


def _flow(spec, rng):
    ns = nt = spec.size
    S = list(range(ns))
    v = ns
    T = list(range(ns + 1, ns + 1 + nt))
    s, t = S[0], T[-1]
    arcs = {(S[i], S[i + 1]) for i in range(ns - 1)}
    arcs |= {(S[-1], v), (v, T[0])}
    arcs |= {(T[i], T[i + 1]) for i in range(nt - 1)}
    extra = [(x, y) for x in S for y in S if x != y]
    extra += [(x, v) for x in S] + [(v, y) for y in T] + [(y, v) for y in T]
    extra += [(x, y) for x in T for y in T if x != y]
    for arc in extra:
        if rng.random() < 0.3:
            arcs.add(arc)
    arcs = sorted(arc for arc in arcs if arc[1] != s and arc[0] != t)
    E = len(arcs)
    inner = [x for x in range(ns + 1 + nt) if x not in (s, t)]
    b = spec.b
    N = []
    for x in inner:
        row = []
        for tail, head in arcs:
            if x == v:
                coef = (spec.a if tail in S else b) if head == v else (-b if tail == v else 0)
            else:
                coef = 1 if head == x else (-1 if tail == x else 0)
            row.append(coef)
        N.append(row)
    if rank(N) < len(N):
        return None
    u = [rng.randint(1, 5) for _ in range(E)]
    B = [r + [0] * E for r in N] + [[int(i == j) for j in range(E)] * 2 for i in range(E)]
    rhs = [0] * len(N) + u
    c = [1 if head == t else 0 for _, head in arcs] + [0] * E
    box = Box(tuple([0] * (2 * E)), tuple(u + u))
    return Generated(spec, StandardIP(B, rhs, c), box, frozenset({spec.a, spec.b, 0}))


def _bipartite(rng, left, right, offset, density=0.6):
    L = [offset + i for i in range(left)]
    R = [offset + left + j for j in range(right)]
    edges = {(x, y) for x in L for y in R if rng.random() < density}
    for x in L:
        if not any(e[0] == x for e in edges):
            edges.add((x, rng.choice(R)))
    for y in R:
        if not any(e[1] == y for e in edges):
            edges.add((rng.choice(L), y))
    return L + R, sorted(edges)


def _components(vertices, edges):
    parent = {x: x for x in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in edges:
        parent[find(x)] = find(y)
    groups = {}
    for x in vertices:
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def _matching(spec, rng):
    k = spec.size
    V1, E1 = _bipartite(rng, k, k, 0, 0.8)
    V2, E2 = _bipartite(rng, k, k, 2 * k, 0.8)
    V, E = V1 + V2, E1 + E2
    f0 = [rng.randint(1, 3) for _ in E]
    d = {x: sum(f for e, f in zip(E, f0) if x in e) for x in V}
    drop = {min(comp) for comp in _components(V, E)}
    rows = [[int(x in e) for e in E] for x in V if x not in drop]
    rhs = [d[x] for x in V if x not in drop]
    i1 = rng.randrange(len(E1))
    i2 = len(E1) + rng.randrange(len(E2))
    s1, s2 = rng.choice((1, -1)), rng.choice((1, -1))
    coupling = [0] * len(E)
    coupling[i1] = s1 * spec.a
    coupling[i2] = s2 * spec.b
    rows.append(coupling)
    rhs.append(s1 * spec.a * f0[i1] + s2 * spec.b * f0[i2])
    if len(rows) >= len(E) or rank(rows) < len(rows):
        return None
    c = [rng.randint(1, 5) for _ in E]
    hi = tuple(min(d[x], d[y]) for x, y in E)
    box = Box(tuple([0] * len(E)), hi)
    return Generated(spec, StandardIP(rows, rhs, c), box, frozenset({spec.a, spec.b, 0}))


def _cover(spec, rng):
    k = spec.size
    V1, E1 = _bipartite(rng, 1, k, 0)
    V2, E2 = _bipartite(rng, 1, k, 1 + k)
    V = V1 + V2
    nv = len(V)
    s1, s2 = rng.choice((1, -1)), rng.choice((1, -1))
    w = [rng.randint(1, 5) for _ in E1 + E2]
    cost = [rng.randint(1, 5) for _ in V]
    rows, rhs = [], []
    for (x, y), wt, coef in zip(E1 + E2, w, [s1 * spec.a] * len(E1) + [s2 * spec.b] * len(E2)):
        row = [-int(z in (x, y)) for z in V] + [-coef]
        rows.append(row)
        rhs.append(-wt)
    for i in range(nv):
        rows.append([-int(i == j) for j in range(nv)] + [0])
        rhs.append(0)
    h = [-c for c in cost] + [0]
    W = max(w)
    Z = ceil(W / spec.b)
    F = W + spec.a * Z
    box = Box(tuple([0] * nv + [-Z]), tuple([F] * nv + [Z]))
    C = IntMatrix(rows)
    return Generated(spec, InequalityIP(C, rhs, h), box, frozenset({spec.a, spec.b, 0}))
