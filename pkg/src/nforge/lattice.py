"""Integral lattices given by Gram matrices.

A lattice is a free Z-module with an integral symmetric bilinear form,
carried around as its Gram matrix.  Vectors are coordinate rows in the
lattice basis; dual vectors are the same rows with rational entries.

Main operations:

  * ``discriminant_space(L)`` — the finite quadratic space L*/L plus a lift
    of its generators to rational coordinates
  * ``overlattice(L, glue)``  — the even overlattice generated by L and a
    family of isotropic glue vectors
  * ``direct_sum`` / ``rescale``
  * ``coset_min_norm(L, v)``  — exact minimum of the coset v + L
  * ``theta_coset(L, v, prec)`` — coset theta series coefficients up to
    q-exponent ``prec`` (exponent = norm/2)

The norm computations split the Gram matrix into connected blocks first, so
direct sums cost the sum of their parts, not the product.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import NonIntegralPairing, NonIsotropicGlue, OddLattice
from .matrix import (
    det,
    hnf,
    is_symmetric,
    mat_mul,
    rational_inverse,
    snf,
    transpose,
)
from .quadspace import FiniteQuadraticSpace
from . import shortvec

__all__ = [
    "Lattice",
    "discriminant_space",
    "overlattice",
    "direct_sum",
    "rescale",
    "coset_min_norm",
    "theta_coset",
]


class Lattice:
    """An integral lattice presented by a Gram matrix (list of row lists)."""

    __slots__ = ("gram", "label")

    def __init__(self, gram, label=""):
        gram = [[int(x) for x in row] for row in gram]
        if not is_symmetric(gram):
            raise ValueError("Lattice: Gram matrix must be symmetric")
        self.gram = gram
        self.label = label

    # -- structure ----------------------------------------------------------

    @property
    def rank(self):
        return len(self.gram)

    def determinant(self):
        return det(self.gram)

    @property
    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def norm(self, v):
        g = self.gram
        n = self.rank
        return sum(g[i][j] * v[i] * v[j] for i in range(n) for j in range(n))

    def pairing(self, u, v):
        g = self.gram
        n = self.rank
        return sum(g[i][j] * u[i] * v[j] for i in range(n) for j in range(n))

    def min_nonzero(self):
        """Minimum norm of a nonzero vector."""
        bound = min(self.gram[i][i] for i in range(self.rank))
        vs = shortvec.short_vectors(self.gram, bound, half=True)
        return vs[0][0] if vs else bound

    def root_count(self, norm=2):
        """Number of vectors of the given norm (both signs)."""
        return 2 * sum(1 for nv, _ in
                       shortvec.short_vectors(self.gram, norm, half=True)
                       if nv == norm)

    # -- serialization (the file format used by the command line) -----------

    def to_json(self):
        return json.dumps(
            {"label": self.label, "rank": self.rank, "gram": self.gram},
            indent=2)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        gram = data["gram"]
        if data.get("rank") not in (None, len(gram)):
            raise ValueError("lattice file: rank does not match Gram size")
        return cls(gram, label=data.get("label", ""))

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"<Lattice{tag} rank={self.rank} det={self.determinant()}>"


# ---------------------------------------------------------------------------
# discriminant form
# ---------------------------------------------------------------------------

def discriminant_space(lat):
    """The finite quadratic space L*/L of an even lattice.

    Returns ``(space, lift)`` where ``lift`` is a list of rational coordinate
    rows, one per generator of the space, such that generator i of the group
    is represented by the dual vector ``lift[i]``.

    Raises OddLattice when some basis vector has odd self-pairing.
    """
    if not lat.is_even:
        raise OddLattice("discriminant form needs an even lattice")
    g = lat.gram
    n = lat.rank
    if n == 0:
        return FiniteQuadraticSpace([], [], []), []
    d, u, v = snf(g)
    # x -> x G^{-1} maps Z^n onto L* (coords in the lattice basis); with
    # u G v = D the quotient L*/L is generated by rows u[i]/d_i of order d_i
    diag = [d[i][i] for i in range(n)]
    gens = []
    orders = []
    for i in range(n):
        if diag[i] > 1:
            orders.append(diag[i])
            gens.append([Fraction(x, diag[i]) for x in u[i]])
    qs = [lat.norm(x) % 2 for x in gens]
    bs = [[lat.pairing(x, y) % 1 for y in gens] for x in gens]
    return FiniteQuadraticSpace(orders, qs, bs), gens


# ---------------------------------------------------------------------------
# overlattices and sums
# ---------------------------------------------------------------------------

def overlattice(lat, glue, label=""):
    """Even overlattice spanned by L and the given rational glue vectors.

    Every glue vector must pair integrally with the lattice and with each
    other, and must have even self-pairing (isotropic in L*/L); otherwise
    NonIntegralPairing / NonIsotropicGlue is raised.  Returns ``(L2, rows)``
    where ``rows`` expresses the new basis in the old coordinates.
    """
    n = lat.rank
    glue = [[Fraction(x) for x in row] for row in glue]
    for w in glue:
        pair_row = [sum(lat.gram[i][j] * w[j] for j in range(n))
                    for i in range(n)]
        if any(x.denominator != 1 for x in pair_row):
            raise NonIntegralPairing(
                "glue vector does not pair integrally with the lattice")
    for i, w in enumerate(glue):
        if lat.norm(w) % 2 != 0:
            raise NonIsotropicGlue("glue vector has odd self-pairing")
        for w2 in glue[i + 1:]:
            if lat.pairing(w, w2).denominator != 1:
                raise NonIntegralPairing(
                    "glue vectors do not pair integrally with each other")
    if not glue:
        return Lattice(lat.gram, label=label or lat.label), identity_rows(n)
    den = 1
    for w in glue:
        for x in w:
            den = _lcm(den, x.denominator)
    stacked = [[x * den for x in row] for row in identity_rows(n)]
    for w in glue:
        stacked.append([int(x * den) for x in w])
    h, _ = hnf(stacked)
    rows = [[Fraction(x, den) for x in h[i]] for i in range(n)]
    prod = mat_mul(mat_mul(rows, lat.gram), transpose(rows))
    gram2 = [[_to_int(x) for x in row] for row in prod]
    out = Lattice(gram2, label=label or lat.label)
    if not out.is_even:
        raise NonIsotropicGlue("overlattice came out odd")
    return out, rows


def identity_rows(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _to_int(fr):
    fr = Fraction(fr)
    if fr.denominator != 1:
        raise NonIntegralPairing("overlattice Gram entry not integral")
    return int(fr)


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def direct_sum(lats, label=""):
    """Orthogonal direct sum, block-diagonal Gram."""
    n = sum(l.rank for l in lats)
    gram = [[0] * n for _ in range(n)]
    ofs = 0
    for l in lats:
        r = l.rank
        for i in range(r):
            for j in range(r):
                gram[ofs + i][ofs + j] = l.gram[i][j]
        ofs += r
    return Lattice(gram, label=label or "+".join(l.label for l in lats if l.label))


def rescale(lat, k, label=""):
    """The same module with the form multiplied by k (k a positive integer)."""
    if k <= 0:
        raise ValueError("rescale: positive integer scale required")
    return Lattice([[k * x for x in row] for row in lat.gram],
                   label=label or (f"{lat.label}({k})" if lat.label else ""))


# ---------------------------------------------------------------------------
# coset geometry (block-split + enumeration engine)
# ---------------------------------------------------------------------------

def _blocks(gram):
    """Connected components of the Gram support graph, as index lists."""
    n = len(gram)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and gram[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def coset_min_norm(lat, v, *, budget=None):
    """Exact minimum norm over the coset v + L, certified by enumeration.

    ``v`` is a rational coordinate row.  The Gram matrix is split into
    connected blocks and the minima add up; each block minimum starts from a
    rounded representative and the bound is only ever lowered.
    """
    v = [Fraction(x) for x in v]
    total = 0
    for comp in _blocks(lat.gram):
        sub = [[lat.gram[i][j] for j in comp] for i in comp]
        shift = [v[i] for i in comp]
        total += shortvec.coset_min_norm(sub, shift, budget=budget)
    return total


def theta_coset(lat, v, prec, *, budget=None):
    """Coset theta coefficients [(exponent, count), ...] up to exponent prec.

    Exponents are norms divided by 2 (rational for non-integral cosets).
    Blocks convolve: the theta series of a direct sum is the product of the
    block series, truncated at the requested precision.
    """
    v = [Fraction(x) for x in v]
    bound = 2 * Fraction(prec)
    series = {Fraction(0): 1}
    for comp in _blocks(lat.gram):
        sub = [[lat.gram[i][j] for j in comp] for i in comp]
        shift = [v[i] for i in comp]
        counts = shortvec.coset_norm_counts(sub, shift, bound, budget=budget)
        series = _convolve(series, counts, bound)
        if not series:
            return []
    out = []
    for norm in sorted(series):
        ex = Fraction(norm) / 2
        out.append((int(ex) if ex.denominator == 1 else ex, series[norm]))
    return out


def _convolve(a, b, bound):
    out = {}
    for na, ca in a.items():
        for nb, cb in b.items():
            s = Fraction(na) + Fraction(nb)
            if s <= bound:
                out[s] = out.get(s, 0) + ca * cb
    return out
