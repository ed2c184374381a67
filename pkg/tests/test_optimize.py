import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from abcmod.exact_linalg import gcd_all
from abcmod.generators import GenSpec, generate
from abcmod.matrix import IntMatrix
from abcmod.optimize import (
    AtLeastFour,
    Infeasible,
    InequalityIP,
    IpInfeasible,
    IpOptimal,
    IpUnbounded,
    MilpInfeasible,
    MilpOptimal,
    Optimal,
    StandardInfeasible,
    StandardIP,
    TuSplit,
    Unbounded,
    bip_solve,
    jacobi_check,
    milp_single_integer,
    solve_inequality,
    solve_standard,
    standard_to_inequality,
)
from abcmod.oracle import (
    Box,
    BruteInfeasible,
    BruteOptimal,
    det_set_bruteforce,
    ip_bruteforce,
    standard_ip_bruteforce,
)

from _support import interval_matrix, random_standard_ip, random_unimodular


# -- reduction -----------------------------------------------------------------------

def test_reduction_of_reduced_shape():
    ip = StandardIP([[1, 0, 0, 2], [0, 1, 0, -1], [0, 0, 1, 1]], [3, 1, 2], [1, 1, 1, 1])
    red = standard_to_inequality(ip)
    assert isinstance(red, InequalityIP) and red.C.cols == 1
    for y in range(-3, 4):
        x = red.back_map([y])
        assert ip.B @ list(x) == ip.b
        assert red.feasible([y]) == all(v >= 0 for v in x)
        assert red.objective([y]) == ip.objective(x)


def test_reduction_parity_infeasible():
    assert isinstance(standard_to_inequality(StandardIP([[2, 2]], [3], [1, 1])), StandardInfeasible)


@given(st.integers(0, 10**6))
def test_reduction_is_a_bijection_on_lattice_points(seed):
    rng = random.Random(seed)
    B, b, c, box = random_standard_ip(rng, infeasible_rate=0)
    ip = StandardIP(B, b, c)
    red = standard_to_inequality(ip)
    if isinstance(red, StandardInfeasible):
        assert standard_ip_bruteforce(B, b, c, box) == BruteInfeasible()
        return
    k = red.C.cols
    seen = set()
    for y in itertools.product(range(-2, 3), repeat=k):
        x = red.back_map(y)
        assert ip.B @ list(x) == ip.b
        assert red.objective(y) == ip.objective(x)
        seen.add(x)
    assert len(seen) == 5 ** k


# -- Jacobi ------------------------------------------------------------------------------

def test_jacobi_identity_matrix():
    assert jacobi_check(IntMatrix.identity(3), [0, 2], [0, 2])


def test_jacobi_rotation():
    assert jacobi_check([[0, 1], [-1, 0]], [0], [1])


@given(st.integers(0, 10**6))
def test_jacobi_random(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    Q = random_unimodular(rng, n, steps=rng.randint(1, 6))
    k = rng.randint(0, n)
    I = rng.sample(range(n), k)
    J = rng.sample(range(n), k)
    assert jacobi_check(Q, I, J)


def test_jacobi_needs_unimodular():
    with pytest.raises(ValueError):
        jacobi_check([[2, 0], [0, 1]], [0], [0])


# -- B&B and the single-integer MILP -------------------------------------------------

def test_bip_unit_square():
    C = [[1, 0], [0, 1], [-1, 0], [0, -1]]
    assert bip_solve(C, [1, 1, 0, 0], [1, 1]) == IpOptimal((1, 1), 2)


def test_bip_triangle():
    res = bip_solve([[2, 1], [-1, 0], [0, -1]], [3, 0, 0], [1, 1])
    assert res == IpOptimal((0, 3), 3)


def test_bip_cone_matches_box_enumeration():
    C = [[2, 1], [1, 2]]
    w = [1, 1]
    res = bip_solve(C, [1, 1], w)
    brute = ip_bruteforce(C, [1, 1], w, Box.uniform(2, -3, 3))
    # the cone is unbounded below but bounded in direction w
    assert isinstance(res, IpOptimal) and res.value == brute.value == 0


def test_bip_unbounded_and_infeasible():
    assert isinstance(bip_solve([[-1, 0], [0, -1]], [0, 0], [1, 1]), IpUnbounded)
    assert isinstance(bip_solve([[2], [-2]], [1, -1], [1]), IpInfeasible)


@given(st.integers(0, 10**6))
def test_bip_matches_bruteforce(seed):
    rng = random.Random(seed)
    k = rng.choice([1, 2, 3])
    C = [[int(i == j) for j in range(k)] for i in range(k)]
    C += [[-int(i == j) for j in range(k)] for i in range(k)]
    C += [[rng.randint(-3, 3) for _ in range(k)] for _ in range(rng.randint(1, 3))]
    g = [3] * (2 * k) + [rng.randint(-3, 5) for _ in range(len(C) - 2 * k)]
    w = [rng.randint(-3, 3) for _ in range(k)]
    res = bip_solve(C, g, w)
    brute = ip_bruteforce(C, g, w, Box.uniform(k, -3, 3))
    if isinstance(brute, BruteInfeasible):
        assert isinstance(res, IpInfeasible)
    else:
        # ties may resolve to a different optimal point than the oracle's
        assert isinstance(res, IpOptimal) and res.value == brute.value
        assert all(sum(a * b for a, b in zip(r, res.point)) <= gi for r, gi in zip(C, g))


def test_milp_single_variable():
    split = TuSplit(IntMatrix.identity(1), IntMatrix([[], []], cols=0), (1, -1))
    res = milp_single_integer(split, [5, 0], [1])
    assert res == MilpOptimal((5,), Fraction(5))


def test_milp_infeasible():
    split = TuSplit(IntMatrix.identity(1), IntMatrix([[], []], cols=0), (2, -2))
    assert isinstance(milp_single_integer(split, [1, -1], [1]), MilpInfeasible)


@given(st.integers(0, 10**6))
def test_milp_matches_bruteforce(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    T = interval_matrix(rng, rng.randint(1, 3), k)
    T += [[int(i == j) for j in range(k)] for i in range(k)]
    T += [[-int(i == j) for j in range(k)] for i in range(k)]
    d = [rng.choice([0, 3, -3, 2]) for _ in range(len(T) - 2 * k)] + [0] * (2 * k)
    T += [[0] * k, [0] * k]
    d += [1, -1]
    g = [rng.randint(-2, 4) for _ in range(len(T) - 2 * k - 2)] + [2] * (2 * k) + [2, 2]
    w = [rng.randint(-3, 3) for _ in range(k + 1)]
    split = TuSplit(IntMatrix.identity(k + 1), IntMatrix(T), tuple(d))
    res = milp_single_integer(split, g, w)
    M = [list(r) + [di] for r, di in zip(T, d)]
    brute = ip_bruteforce(M, g, w, Box.uniform(k + 1, -2, 2))
    if isinstance(brute, BruteInfeasible):
        assert isinstance(res, MilpInfeasible)
    else:
        assert isinstance(res, MilpOptimal) and res.value == brute.value
        assert all(sum(a * b for a, b in zip(r, res.point)) <= gi for r, gi in zip(M, g))


# -- full solver -----------------------------------------------------------------------

def test_solve_simple():
    res = solve_standard(StandardIP([[1, 1]], [2], [1, 0]))
    assert isinstance(res, Optimal) and res.x == (2, 0) and res.value == 2


def test_solve_parity():
    res = solve_standard(StandardIP([[2, 2]], [3], [1, 1]))
    assert isinstance(res, Infeasible)
    assert res.to_json()["status"] == "infeasible"


def test_solve_transportation():
    # supplies s1, s2 = 1, demands t1, t2 = 1; edges s1t1, s1t2, s2t1, s2t2
    B = [[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0]]
    b = [1, 1, 1]
    c = [4, 1, 2, 3]
    res = solve_standard(StandardIP(B, b, c))
    brute = standard_ip_bruteforce(B, b, c, Box.uniform(4, 0, 1))
    assert isinstance(res, Optimal) and res.value == brute.value == 7


def test_solve_unbounded():
    res = solve_standard(StandardIP([[1, -1]], [0], [1, 0]))
    assert isinstance(res, Unbounded)
    assert StandardIP([[1, -1]], [0], [1, 0]).feasible(res.x)


def test_solve_generator_instance():
    gen = generate(GenSpec("network_flow", 3, 1, seed=4))
    res = solve_standard(gen.ip)
    brute = standard_ip_bruteforce(gen.ip.B, gen.ip.b, gen.ip.c, gen.box)
    assert isinstance(res, Optimal) and res.value == brute.value


def test_solve_inequality_offset():
    res = solve_inequality([[1], [-1]], [3, 0], [2], offset=5)
    assert isinstance(res, Optimal) and res.x == (3,) and res.value == 11


def test_optimal_json():
    res = solve_standard(StandardIP([[1, 1]], [2], [1, 0]))
    out = res.to_json()
    assert out["status"] == "optimal" and out["x"] == [2, 0] and out["value"] == "2"


@given(st.integers(0, 10**6))
def test_solve_standard_matches_bruteforce(seed):
    rng = random.Random(seed)
    B, b, c, box = random_standard_ip(rng)
    res = solve_standard(StandardIP(B, b, c))
    brute = standard_ip_bruteforce(B, b, c, box)
    if isinstance(res, Optimal):
        assert isinstance(brute, BruteOptimal) and res.value == brute.value
        assert StandardIP(B, b, c).feasible(res.x)
    elif isinstance(res, Infeasible):
        assert isinstance(brute, BruteInfeasible)
    else:
        assert isinstance(res, AtLeastFour)
        Bt = [list(col) for col in zip(*B)]
        D = det_set_bruteforce(Bt).values
        g = gcd_all(D)
        assert len({v // g for v in D}) >= 4
