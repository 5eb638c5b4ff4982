"""Finite quadratic spaces (discriminant forms) and their symmetry groups.

A finite quadratic space here is a finite abelian group A = ⊕ Z/d_i with a
quadratic form q : A -> Q/2Z and the associated bilinear form
b(x, y) = (q(x+y) - q(x) - q(y))/2 : A -> Q/Z.  These arise as L*/L for an
even lattice L, with q the self-pairing mod 2.

The group operations here are deliberately elementary — explicit element
enumeration with caps — because the spaces in scope are tiny (orders up to
a few thousand).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

__all__ = [
    "FiniteQuadraticSpace",
    "orthogonal_group",
    "isotropic_subgroups",
    "anti_isometries",
    "double_coset_count",
]


class FiniteQuadraticSpace:
    """⊕ Z/d_i with q mod 2Z (values as Fractions in [0,2)) and b mod 1Z.

    ``orders`` are the invariant factors (each > 1, d_i | d_{i+1}); ``qs``
    the q-values of the generators; ``bs`` the full symmetric matrix of
    generator pairings mod 1.  Elements are int tuples mod the orders.
    """

    __slots__ = ("orders", "qs", "bs")

    def __init__(self, orders, qs, bs):
        self.orders = tuple(int(d) for d in orders)
        self.qs = tuple(Fraction(x) % 2 for x in qs)
        self.bs = tuple(tuple(Fraction(x) % 1 for x in row) for row in bs)
        k = len(self.orders)
        if len(self.qs) != k or len(self.bs) != k:
            raise ValueError("inconsistent generator data")
        for row in self.bs:
            if len(row) != k:
                raise ValueError("bilinear matrix not square")

    # -- basic structure ----------------------------------------------------

    def __len__(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def is_trivial(self):
        return not self.orders

    def elements(self):
        return itertools.product(*[range(d) for d in self.orders])

    def normalize(self, x):
        return tuple(int(a) % d for a, d in zip(x, self.orders))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def smul(self, c, x):
        return tuple((c * a) % d for a, d in zip(x, self.orders))

    def element_order(self, x):
        from math import gcd
        o = 1
        for a, d in zip(x, self.orders):
            da = d // gcd(a, d)
            o = o * da // gcd(o, da)
        return o

    def q(self, x):
        """Quadratic value of an element, in Q/2Z represented in [0, 2)."""
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            total += x[i] * x[i] * self.qs[i]
            for j in range(i + 1, k):
                total += 2 * x[i] * x[j] * self.bs[i][j]
        return total % 2

    def b(self, x, y):
        """Bilinear value, in Q/Z represented in [0, 1)."""
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            for j in range(k):
                total += x[i] * y[j] * self.bs[i][j]
        return total % 1

    def __repr__(self):
        body = ", ".join(f"Z/{d}" for d in self.orders) or "0"
        return f"FiniteQuadraticSpace({body})"


def _generators(space):
    k = len(space.orders)
    return [tuple(int(i == j) for j in range(k)) for i in range(k)]


def _images_valid(space, images):
    """Do generator images preserve q, b, and the orders?"""
    gens = _generators(space)
    for g, img in zip(gens, images):
        if space.q(g) != space.q(img):
            return False
        if space.element_order(img) != space.element_order(g):
            # order can only divide; equality needed for bijectivity later,
            # cheap early filter
            return False
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if space.b(gens[i], gens[j]) != space.b(images[i], images[j]):
                return False
    return True


def _hom_is_bijective(space, images):
    seen = set()
    for x in space.elements():
        img = tuple(
            sum(x[i] * images[i][t] for i in range(len(images))) % d
            for t, d in enumerate(space.orders))
        if img in seen:
            return False
        seen.add(img)
    return True


def orthogonal_group(space, cap=20000):
    """All q-preserving group automorphisms, as generator-image tuples.

    Exhausts candidate images of each generator (elements of the right
    order and q-value) and keeps the assignments that preserve b and are
    bijective.  Raises RuntimeError past ``cap`` automorphisms.
    """
    if space.is_trivial:
        return [tuple()]
    gens = _generators(space)
    cands = []
    for g in gens:
        qs = space.q(g)
        og = space.element_order(g)
        cands.append([x for x in space.elements()
                      if space.element_order(x) == og and space.q(x) == qs])
    out = []
    for images in itertools.product(*cands):
        if not _images_valid(space, images):
            continue
        if not _hom_is_bijective(space, images):
            continue
        out.append(tuple(images))
        if len(out) > cap:
            raise RuntimeError("orthogonal_group: cap exceeded")
    return out


def apply_images(space, images, x):
    """Image of element x under the automorphism given by generator images."""
    k = len(space.orders)
    return tuple(
        sum(x[i] * images[i][t] for i in range(k)) % d
        for t, d in enumerate(space.orders))


def isotropic_subgroups(space):
    """All subgroups on which q vanishes identically, as frozensets."""
    all_elems = list(space.elements())
    iso = [x for x in all_elems if space.q(x) == 0]
    zero = tuple(0 for _ in space.orders)
    found = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for sub in frontier:
            for x in iso:
                if x in sub:
                    continue
                # closure of sub + x; all elements must stay isotropic
                new = set(sub)
                queue = [x]
                ok = True
                while queue:
                    y = queue.pop()
                    if y in new:
                        continue
                    if space.q(y) != 0:
                        ok = False
                        break
                    new.add(y)
                    for z in list(new):
                        queue.append(space.add(y, z))
                if not ok:
                    continue
                fs = frozenset(new)
                if fs not in found:
                    found.add(fs)
                    nxt.append(fs)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def anti_isometries(a, b_space):
    """Group isomorphisms f : a -> b with q_b(f(x)) = -q_a(x) for all x."""
    if tuple(a.orders) != tuple(b_space.orders):
        return []
    gens = _generators(a)
    cands = []
    for g in gens:
        qa = (-a.q(g)) % 2
        og = a.element_order(g)
        cands.append([x for x in b_space.elements()
                      if b_space.element_order(x) == og and b_space.q(x) == qa])
    out = []
    for images in itertools.product(*cands):
        ok = True
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if (b_space.b(images[i], images[j])
                        != (-a.b(gens[i], gens[j])) % 1):
                    ok = False
                    break
            if not ok:
                break
        if ok and _hom_is_bijective(b_space, images):
            out.append(tuple(images))
    return out


def double_coset_count(space, left, right, cap=10 ** 6):
    """Number of double cosets left \\ O(space) / right.

    ``left`` and ``right`` are collections of automorphisms (generator-image
    tuples).  Plain orbit counting; refuses spaces past ``cap`` elements of
    the full orthogonal group.
    """
    full = orthogonal_group(space)
    if len(full) > cap:
        raise RuntimeError("double_coset_count: cap exceeded")
    full_set = {tuple(f) for f in full}
    left = [tuple(f) for f in left]
    right = [tuple(f) for f in right]
    for f in left + right:
        if f not in full_set:
            raise ValueError("coset factor is not in the orthogonal group")
    seen = set()
    classes = 0
    compose_cache = {}

    def compose(f, g):
        # (f ∘ g): apply g then f, both as generator images
        key = (f, g)
        if key in compose_cache:
            return compose_cache[key]
        out = tuple(apply_images(space, f, img) for img in g)
        compose_cache[key] = out
        return out

    for f in full:
        if f in seen:
            continue
        classes += 1
        orbit = {f}
        frontier = [f]
        while frontier:
            g = frontier.pop()
            for l in left:
                for r in right:
                    h = compose(compose(l, g), r)
                    if h not in orbit:
                        orbit.add(h)
                        frontier.append(h)
        seen |= orbit
    return classes
