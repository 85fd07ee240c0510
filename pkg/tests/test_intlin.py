from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2cert import intlin


def test_prime_stream_yields_distinct_primes():
    ps = intlin.prime_stream()
    first = [next(ps) for _ in range(5)]
    assert len(set(first)) == 5
    assert all(p < 1 << 31 for p in first)


def test_prime_stream_avoid():
    p = next(intlin.prime_stream(avoid=(1 << 30) + 7))
    assert ((1 << 30) + 7) % p != 0


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_crt_pair_reconstructs(a, b):
    m1, m2 = 1000003, 999983
    x, m = intlin.crt_pair(a % m1, m1, b % m2, m2)
    assert m == m1 * m2
    assert x % m1 == a % m1 and x % m2 == b % m2


@given(st.integers(-500, 500))
def test_symmetric_lift_roundtrip(x):
    m = 1009
    assert intlin.symmetric_lift(x % m, m) == x if abs(x) <= m // 2 else True


@given(st.fractions(min_value=-10**4, max_value=10**4, max_denominator=100))
@settings(max_examples=200)
def test_rational_reconstruct_recovers(fr):
    m = (1 << 61) - 1    # prime, far larger than 2*num*den
    if fr.denominator % m == 0:
        return
    a = fr.numerator * pow(fr.denominator, -1, m) % m
    assert intlin.rational_reconstruct(a, m) == fr


def test_det_mod_p_matches_numpy():
    rng = np.random.default_rng(0)
    p = 1000003
    for _ in range(5):
        mat = rng.integers(-9, 10, size=(6, 6))
        want = round(np.linalg.det(mat.astype(float)))
        assert intlin.det_mod_p(mat, p) == want % p


def test_det_crt_exact():
    rng = np.random.default_rng(1)
    mat = rng.integers(-50, 50, size=(12, 12))
    det, primes, bound = intlin.det_crt(mat)
    # float64 det would lose the low digits here; sympy is exact
    assert det == sympy.Matrix(mat.tolist()).det()
    assert abs(det) <= bound
    assert len(primes) >= 1


def test_det_crt_singular():
    mat = np.ones((4, 4), dtype=np.int64)
    det, _, _ = intlin.det_crt(mat)
    assert det == 0


def test_hadamard_bound_is_a_bound():
    rng = np.random.default_rng(2)
    for _ in range(5):
        mat = rng.integers(-20, 20, size=(8, 8))
        det = round(np.linalg.det(mat.astype(float)))
        assert abs(det) <= intlin.hadamard_bound(mat)


def test_rank_and_rref():
    mat = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    p = 101
    assert intlin.rank_mod_p(mat, p) == 2
    _, pivots = intlin.rref_mod_p(mat, p)
    assert len(pivots) == 2


def test_solve_square_mod_p():
    a = np.array([[2, 1], [1, 1]])
    b = np.array([3, 2])
    p = 97
    x = intlin.solve_square_mod_p(a, b, p)
    assert ((a @ x) % p == b % p).all()


def test_dixon_solve_rational_system():
    # columns of [[2,0],[1,3]] against b = (1, 0): x = (1/2, -1/6)
    cols = [{0: 2, 1: 1}, {1: 3}]
    sol = intlin.dixon_solve(cols, 2, {0: 1}, 1000003)
    assert sol == [Fraction(1, 2), Fraction(-1, 6)]


def test_dixon_solve_singular_returns_none():
    cols = [{0: 1, 1: 1}, {0: 2, 1: 2}]
    assert intlin.dixon_solve(cols, 2, {0: 1}, 1000003) is None


@pytest.mark.parametrize("mat,want", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[1, 0], [0, 1]], [1, 1]),
    ([[2, 4], [6, 8]], [2, 4]),
])
def test_smith_normal_form_small(mat, want):
    rows = {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(mat)}
    assert intlin.smith_normal_form(rows, 2, 2) == want


def test_smith_divisibility_chain():
    rng = np.random.default_rng(3)
    mat = rng.integers(-6, 7, size=(7, 9))
    rows = {i: {j: int(v) for j, v in enumerate(r) if v}
            for i, r in enumerate(mat)}
    factors = intlin.smith_normal_form(rows, 7, 9)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
