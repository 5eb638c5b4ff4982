"""Lattice layer: discriminant forms, overlattices, coset geometry."""

from fractions import Fraction

import pytest

from nforge.errors import NonIntegralPairing, NonIsotropicGlue, OddLattice
from nforge.lattice import (
    Lattice,
    coset_min_norm,
    direct_sum,
    discriminant_space,
    overlattice,
    rescale,
    theta_coset,
)
from nforge.matrix import mat_mul, rational_solve, transpose
from oracles import oracle_discriminant_orders

from test_shortvec import E8, d_basis_rows, tridiag


def chain_lattice(n, k=1, label=""):
    return Lattice(tridiag(n, k), label=label)


def checkerboard(n, label=""):
    B = d_basis_rows(n)
    return Lattice(mat_mul(B, transpose(B)), label=label)


def checker_coords(n, target):
    """Coordinates of a Euclidean vector in the checkerboard basis."""
    B = d_basis_rows(n)
    return rational_solve(transpose(B), [Fraction(x) for x in target])


# -- basics ------------------------------------------------------------------

def test_roundtrip_json():
    l = Lattice([[2, -1], [-1, 2]], label="chain2")
    l2 = Lattice.from_json(l.to_json())
    assert l2.gram == l.gram and l2.label == "chain2"


def test_json_rank_mismatch():
    with pytest.raises(ValueError):
        Lattice.from_json('{"label": "x", "rank": 3, "gram": [[2]]}')


def test_even_and_det():
    assert Lattice(E8).is_even
    assert Lattice(E8).determinant() == 1
    assert Lattice([[1]]).is_even is False
    assert chain_lattice(2).determinant() == 3


# -- discriminant forms ------------------------------------------------------

def test_discriminant_rank_one():
    space, lift = discriminant_space(Lattice([[2]]))
    assert space.orders == (2,)
    assert space.qs == (Fraction(1, 2),)
    assert lift == [[Fraction(1, 2)]]


def test_discriminant_unimodular_trivial():
    space, lift = discriminant_space(Lattice(E8))
    assert space.is_trivial and lift == []


def test_discriminant_quaternary_checkerboard():
    space, lift = discriminant_space(checkerboard(4))
    assert space.orders == (2, 2)
    assert sorted(space.qs) == [1, 1]
    # the two generators pair to 1/2
    assert space.bs[0][1] == Fraction(1, 2)


def test_discriminant_chain_orders_match_oracle():
    for n, k in ((2, 1), (3, 1), (2, 2), (4, 1)):
        lat = chain_lattice(n, k)
        space, lift = discriminant_space(lat)
        assert list(space.orders) == oracle_discriminant_orders(lat.gram)
        # each lift really has the stated order and q-value
        for gen, order, qv in zip(lift, space.orders, space.qs):
            assert lat.norm(gen) % 2 == qv
            scaled = [order * x for x in gen]
            assert all(x.denominator == 1 for x in scaled)


def test_discriminant_rejects_odd():
    with pytest.raises(OddLattice):
        discriminant_space(Lattice([[1]]))


# -- overlattice -------------------------------------------------------------

def test_overlattice_checkerboard_to_unimodular():
    # rank-8 checkerboard + half-sum glue = the even unimodular rank-8 lattice
    lat = checkerboard(8)
    s = checker_coords(8, [Fraction(1, 2)] * 8)
    out, rows = overlattice(lat, [s])
    assert out.determinant() == 1
    assert out.is_even
    assert out.root_count() == 240


def test_overlattice_rejects_non_isotropic():
    lat = Lattice([[2]])
    with pytest.raises(NonIsotropicGlue):
        overlattice(lat, [[Fraction(1, 2)]])


def test_overlattice_rejects_non_integral_pairing():
    lat = direct_sum([Lattice([[2]]), Lattice([[2]])])
    with pytest.raises(NonIntegralPairing):
        overlattice(lat, [[Fraction(1, 3), Fraction(1, 3)]])


def test_overlattice_trivial_glue_is_identity():
    lat = chain_lattice(3)
    out, rows = overlattice(lat, [])
    assert out.gram == lat.gram


def test_overlattice_index_determinant():
    # gluing an index-m cyclic subgroup divides the determinant by m^2:
    # chain rank 7 (det 8), dual class 4 has norm 4*4/8 = 2, order 2
    lat = chain_lattice(7)
    glue1 = [Fraction(7 - i, 8) for i in range(7)]
    out, _ = overlattice(lat, [[4 * x for x in glue1]])
    assert out.determinant() == lat.determinant() // 4
    assert out.is_even


# -- sums, rescale -----------------------------------------------------------

def test_direct_sum_and_rescale():
    a = Lattice([[2]], label="a1")
    s = direct_sum([a, a, a])
    assert s.rank == 3 and s.determinant() == 8
    r = rescale(a, 3)
    assert r.gram == [[6]]
    with pytest.raises(ValueError):
        rescale(a, 0)


# -- coset geometry ----------------------------------------------------------

def test_coset_min_norm_chain24():
    lat = chain_lattice(24)
    glue1 = [Fraction(24 - i, 25) for i in range(24)]
    assert coset_min_norm(lat, [5 * x for x in glue1]) == 4


def test_coset_min_norm_checkerboard24():
    lat = checkerboard(24)
    s = checker_coords(24, [Fraction(1, 2)] * 24)
    assert coset_min_norm(lat, s) == 6


def test_coset_min_norm_blocks_add():
    # direct sum of three scaled rank-1 lattices: minima add per block
    lat = direct_sum([Lattice([[2]]), Lattice([[4]]), Lattice([[8]])])
    v = [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]
    assert coset_min_norm(lat, v) == Fraction(1, 2) + 1 + 2


def test_theta_coset_rank_one():
    lat = Lattice([[2]])
    assert theta_coset(lat, [0], 1) == [(0, 1), (1, 2)]
    assert theta_coset(lat, [Fraction(1, 2)], 1) == [(Fraction(1, 4), 2)]


def test_theta_coset_direct_sum_convolves():
    a = Lattice([[2]])
    s = direct_sum([a, a])
    # norms 0 (1 vector), 2 (4 vectors: ±e1, ±e2), 4 (4 vectors: ±e1±e2)
    assert theta_coset(s, [0, 0], 2) == [(0, 1), (1, 4), (2, 4)]


def test_theta_coset_checkerboard24_empty_below_spinor_min():
    # nothing in the half-sum coset below norm 6: exponents < 3 are absent
    lat = checkerboard(24)
    s = checker_coords(24, [Fraction(1, 2)] * 24)
    assert theta_coset(lat, s, 2) == []
    assert coset_min_norm(lat, s) == 6  # so the minimal exponent is 3


@pytest.mark.slow
def test_theta_coset_checkerboard24_spinor_shell_count():
    lat = checkerboard(24)
    s = checker_coords(24, [Fraction(1, 2)] * 24)
    assert theta_coset(lat, s, 3) == [(3, 2 ** 23)]
