"""Discriminant-form machinery: symmetries, isotropic subgroups, cosets."""

from fractions import Fraction

from nforge.lattice import Lattice, discriminant_space
from nforge.quadspace import (
    FiniteQuadraticSpace,
    anti_isometries,
    apply_images,
    double_coset_count,
    isotropic_subgroups,
    orthogonal_group,
)


def space_z3(q):
    return FiniteQuadraticSpace((3,), (Fraction(q),), ((Fraction(q) / 2,),))


def checkerboard(n, k=1):
    rows = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        rows.append(r)
    r = [0] * n
    r[n - 2], r[n - 1] = 1, 1
    rows.append(r)
    gram = [[k * sum(a * b for a, b in zip(r1, r2)) for r2 in rows]
            for r1 in rows]
    return Lattice(gram)


def test_q_and_b_values():
    sp = space_z3(Fraction(2, 3))
    assert sp.q((0,)) == 0
    assert sp.q((1,)) == Fraction(2, 3)
    assert sp.q((2,)) == Fraction(2, 3)  # 4*(2/3) mod 2
    assert sp.b((1,), (1,)) == Fraction(1, 3)
    assert len(sp) == 3


def test_orthogonal_group_z3():
    sp = space_z3(Fraction(2, 3))
    auts = orthogonal_group(sp)
    assert len(auts) == 2
    images = sorted(a[0] for a in auts)
    assert images == [(1,), (2,)]


def test_orthogonal_group_trivial_space():
    sp = FiniteQuadraticSpace((), (), ())
    assert sp.is_trivial
    assert orthogonal_group(sp) == [tuple()]


def test_anti_isometries_z3():
    a = space_z3(Fraction(2, 3))
    b = space_z3(Fraction(4, 3))
    maps = anti_isometries(a, b)
    assert len(maps) == 2
    # and none in the other orientation with itself
    assert anti_isometries(a, a) == []


def test_anti_isometry_needs_matching_orders():
    a = space_z3(Fraction(2, 3))
    c = FiniteQuadraticSpace((2,), (Fraction(1, 2),), ((Fraction(1, 4),),))
    assert anti_isometries(a, c) == []


def test_checkerboard8_isotropic_subgroups():
    sp, _ = discriminant_space(checkerboard(8))
    assert sorted(sp.orders) == [2, 2]
    qs = sorted(sp.q(x) for x in sp.elements())
    assert qs == [0, 0, 0, 1]  # 0, s, c isotropic; v has q = 1
    subs = isotropic_subgroups(sp)
    assert [len(s) for s in subs] == [1, 2, 2]


def test_checkerboard8_orthogonal_group():
    sp, _ = discriminant_space(checkerboard(8))
    auts = orthogonal_group(sp)
    # the q=1 element is fixed; the two nonzero isotropic elements can swap
    assert len(auts) == 2


def test_a2_discriminant_group_order_two():
    gram = [[2, -1], [-1, 2]]
    sp, _ = discriminant_space(Lattice(gram))
    assert sp.orders == (3,)
    assert len(orthogonal_group(sp)) == 2


def test_chain3_orthogonal_group():
    gram = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    sp, _ = discriminant_space(Lattice(gram))
    assert sp.orders == (4,)
    assert sp.q((1,)) in (Fraction(3, 4), Fraction(5, 4))
    assert len(orthogonal_group(sp)) == 2


def test_apply_images_is_group_action():
    sp, _ = discriminant_space(checkerboard(8))
    auts = orthogonal_group(sp)
    for f in auts:
        seen = {apply_images(sp, f, x) for x in sp.elements()}
        assert len(seen) == len(sp)
        for x in sp.elements():
            assert sp.q(apply_images(sp, f, x)) == sp.q(x)


def test_double_coset_counts():
    sp, _ = discriminant_space(checkerboard(8))
    full = orthogonal_group(sp)
    assert double_coset_count(sp, _trivial(sp), _trivial(sp)) == len(full)
    assert double_coset_count(sp, full, full) == 1
    assert double_coset_count(sp, _trivial(sp), full) == 1


def _gens(sp):
    k = len(sp.orders)
    return [tuple(int(i == j) for j in range(k)) for i in range(k)]


def _identity(sp):
    return tuple(_gens(sp))


def _trivial(sp):
    return [_identity(sp)]
