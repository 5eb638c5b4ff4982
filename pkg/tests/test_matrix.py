"""Exact matrix kernel tests: frozen examples, oracle cross-checks, properties."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nforge.matrix import (
    det,
    hnf,
    hnf_basis,
    identity,
    kernel_basis,
    lll_reduce,
    mat_eq,
    mat_mul,
    rational_inverse,
    snf,
    snf_diagonal,
    transpose,
)
from oracles import oracle_smith_invariants

A2 = [[2, -1], [-1, 2]]

E8 = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
]


def small_int_matrices(max_dim=4, lo=-9, hi=9):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.integers(1, max_dim).flatmap(
            lambda m: st.lists(
                st.lists(st.integers(lo, hi), min_size=m, max_size=m),
                min_size=n,
                max_size=n,
            )
        )
    )


# --- hnf -------------------------------------------------------------------

def test_hnf_frozen_example():
    h, u = hnf([[2, 6], [4, 8]])
    assert h == [[2, 2], [0, 4]]
    assert mat_eq(mat_mul(u, [[2, 6], [4, 8]]), h)
    assert abs(det(u)) == 1


def test_hnf_identity_fixed_point():
    h, u = hnf(identity(5))
    assert h == identity(5)
    assert abs(det(u)) == 1


def _check_hnf_shape(h):
    """Echelon, positive pivots, above-pivot entries reduced."""
    last = -1
    seen_zero_row = False
    for row in h:
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            seen_zero_row = True
            continue
        assert not seen_zero_row, "nonzero row below a zero row"
        assert piv > last
        last = piv
        assert row[piv] > 0
    # above-pivot reduction
    pivots = []
    for i, row in enumerate(h):
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is not None:
            pivots.append((i, piv))
    for i, piv in pivots:
        for k in range(i):
            assert 0 <= h[k][piv] < h[i][piv]


@given(small_int_matrices())
@settings(max_examples=150, deadline=None)
def test_hnf_properties(m):
    h, u = hnf(m)
    assert abs(det(u)) == 1
    assert mat_eq(mat_mul(u, m), h)
    _check_hnf_shape(h)


def test_hnf_uniqueness_under_row_scramble():
    # the span determines the HNF: scrambling rows by a unimodular map
    # cannot change the nonzero rows
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(2, 5)
        m = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
        u = identity(n)
        for _ in range(6):
            i, j = rng.sample(range(n), 2)
            q = rng.randrange(-3, 4)
            u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        assert hnf_basis(m) == hnf_basis(mat_mul(u, m))


def test_kernel_basis():
    m = [[1, 2], [2, 4], [3, 6]]
    ker = kernel_basis(m)
    assert len(ker) == 2
    for row in ker:
        assert all(x == 0 for x in (row[0] * 1 + row[1] * 2 + row[2] * 3,
                                    row[0] * 2 + row[1] * 4 + row[2] * 6))


# --- snf -------------------------------------------------------------------

def test_snf_frozen_examples():
    d, u, v = snf(A2)
    assert [d[0][0], d[1][1]] == [1, 3]
    assert mat_eq(mat_mul(mat_mul(u, A2), v), d)
    d8, _, _ = snf(E8)
    assert [d8[i][i] for i in range(8)] == [1] * 8


@given(small_int_matrices())
@settings(max_examples=120, deadline=None)
def test_snf_matches_minor_gcd_oracle(m):
    d, u, v = snf(m)
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    assert mat_eq(mat_mul(mat_mul(u, m), v), d)
    diag = snf_diagonal(m)
    assert diag == oracle_smith_invariants(m)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0


# --- det / inverse ---------------------------------------------------------

def test_det_known_values():
    assert det(A2) == 3
    assert det(E8) == 1
    assert det([[2]]) == 2
    assert det([]) == 1


@given(small_int_matrices(max_dim=4, lo=-6, hi=6).filter(
    lambda m: len(m) == len(m[0])))
@settings(max_examples=100, deadline=None)
def test_det_multiplicative(m):
    n = len(m)
    other = [[(i * 7 + j * 3) % 5 - 2 for j in range(n)] for i in range(n)]
    assert det(mat_mul(m, other)) == det(m) * det(other)


def test_rational_inverse_roundtrip():
    inv = rational_inverse(A2)
    assert mat_eq(mat_mul(A2, inv), [[Fraction(1), Fraction(0)],
                                     [Fraction(0), Fraction(1)]])
    with pytest.raises(ValueError):
        rational_inverse([[1, 2], [2, 4]])


# --- lll -------------------------------------------------------------------

def _random_posdef_gram(rng, n):
    # B = random unimodular-ish integer matrix with clean determinant; then
    # G = B B^T is positive definite
    while True:
        b = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
        if det(b) != 0:
            return mat_mul(b, transpose(b))


def test_lll_transform_consistency():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randrange(1, 6)
        g = _random_posdef_gram(rng, n)
        g2, t = lll_reduce(g)
        assert abs(det(t)) == 1
        assert mat_eq(mat_mul(mat_mul(t, g), transpose(t)), g2)
        assert det(g2) == det(g)


def test_lll_shrinks_diagonal_of_skewed_basis():
    # a long skewed vector must get reduced: gram of basis (e1, e1 + 10 e2)
    g = [[1, 10], [10, 101]]
    g2, _ = lll_reduce(g)
    assert max(g2[i][i] for i in range(2)) <= 2
