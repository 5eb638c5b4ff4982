"""Enumeration engine tests: frozen counts, oracle cross-checks, budgets."""

import random
from fractions import Fraction

import pytest

from nforge.errors import BudgetExceeded
from nforge.matrix import mat_mul, rational_solve, transpose
from nforge.shortvec import (
    cholesky,
    coset_min_norm,
    coset_norm_counts,
    short_vectors,
)
from oracles import oracle_coset_min_norm, oracle_short_vectors

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


def tridiag(n, k=1):
    """Gram of the chain root lattice at scale k (2k on the diagonal)."""
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2 * k
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -k
    return g


def d_basis_rows(n):
    """Rows e_i - e_{i+1} (i < n-1) and e_{n-2} + e_{n-1} in R^n."""
    rows = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        rows.append(r)
    r = [0] * n
    r[n - 2], r[n - 1] = 1, 1
    rows.append(r)
    return rows


def test_cholesky_reconstructs_norm():
    a, m = cholesky(A2)
    assert a == [Fraction(2), Fraction(3, 2)]
    # q(x, y) = 2 (x - y/2)^2 + (3/2) y^2 must equal 2x^2 - 2xy + 2y^2
    for x in range(-3, 4):
        for y in range(-3, 4):
            lhs = a[0] * (x + m[0][1] * y) ** 2 + a[1] * y * y
            assert lhs == 2 * x * x - 2 * x * y + 2 * y * y


def test_cholesky_rejects_indefinite():
    with pytest.raises(ValueError):
        cholesky([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        cholesky([[2, 3], [3, 2]])


def test_root_counts_frozen():
    assert len(short_vectors(A2, 2)) == 6
    assert len(short_vectors(A2, 2, half=True)) == 3
    assert short_vectors(A2, 0) == []
    assert len(short_vectors(E8, 2)) == 240
    assert len(short_vectors(E8, 2, half=True)) == 120


def test_e8_second_shell():
    # shells of the unimodular rank-8 lattice: 240 at norm 2, 2160 at norm 4
    vs = short_vectors(E8, 4)
    assert sum(1 for norm, _ in vs if norm == 2) == 240
    assert sum(1 for norm, _ in vs if norm == 4) == 2160


def test_short_vectors_match_oracle_random():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randrange(1, 4)
        while True:
            b = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)]
            g = mat_mul(b, transpose(b))
            if all(g[i][i] for i in range(n)):
                from nforge.matrix import det
                if det(g) > 0:
                    break
        bound = rng.randrange(1, 8)
        got = {(norm, tuple(v)) for norm, v in short_vectors(g, bound)}
        want = {(norm, v) for norm, v in oracle_short_vectors(g, bound)}
        assert got == want


def test_coset_min_norm_chain_lattice():
    # chain lattice of rank 24: glue class 5 has minimum 5*(25-5)/25 * 2 ... = 4
    n, j = 24, 5
    g = tridiag(n)
    glue1 = [Fraction(n - i, n + 1) for i in range(n)]
    shift = [j * x for x in glue1]
    assert coset_min_norm(g, shift) == 4


def test_coset_min_norm_checkerboard_spinor():
    # rank-24 checkerboard lattice, half-sum coset: minimum norm 24/4 = 6
    n = 24
    B = d_basis_rows(n)
    g = mat_mul(B, transpose(B))
    target = [Fraction(1, 2)] * n
    shift = rational_solve(transpose(B), target)
    assert coset_min_norm(g, shift) == 6


def test_coset_min_norm_integral_shift_is_zero():
    assert coset_min_norm(A2, [3, -7]) == 0


def test_coset_min_norm_matches_oracle_random():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randrange(1, 4)
        from nforge.matrix import det
        while True:
            b = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)]
            g = mat_mul(b, transpose(b))
            if det(g) > 0:
                break
        den = rng.choice([2, 3, 4, 5])
        shift = [Fraction(rng.randrange(-den, den + 1), den) for _ in range(n)]
        got = coset_min_norm(g, shift)
        want = oracle_coset_min_norm(g, shift, max_bound=4096)
        assert got == want


def test_coset_norm_counts_rank_one():
    assert coset_norm_counts([[2]], [0], 2) == {0: 1, 2: 2}
    assert coset_norm_counts([[2]], [Fraction(1, 2)], 2) == {Fraction(1, 2): 2}


def test_coset_norm_counts_quaternary():
    # rank-4 checkerboard: 24 roots; its half-sum coset has 8 vectors of norm 1
    B = d_basis_rows(4)
    g = mat_mul(B, transpose(B))
    assert coset_norm_counts(g, [0] * 4, 2)[2] == 24
    shift = rational_solve(transpose(B), [Fraction(1, 2)] * 4)
    counts = coset_norm_counts(g, shift, 3)
    assert counts[1] == 8
    assert min(counts) == 1


def test_counts_match_short_vectors():
    counts = coset_norm_counts(E8, [0] * 8, 4)
    assert counts[2] == 240 and counts[4] == 2160 and counts[0] == 1


def test_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        short_vectors(E8, 8, budget=50)
