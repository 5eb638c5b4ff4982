"""Root-system components: realizations, glue labels, and the quotient map.

A component is a tuple ``(family, rank, level)`` with family one of
'A' 'B' 'C' 'D' 'E' 'F' 'G'.  The E family carries rank 6, 7 or 8; F is
rank 4; G is rank 2.  ``level`` scales the bilinear form.

Families and their data (lattice, discriminant labels, glue vectors):

  family  lattice          glue labels        glue group
  A_n(k)  chain, k*C_n     0..n               Z/(n+1)
  B_n(k)  checkerboard(k)  0, 1 (=v)          Z/2
  C_n(k)  cubic, 2k*I_n    0, 1 (=half-sum)   Z/2
  D_n(k)  checkerboard(k)  0, s, v, c         Z/2 x Z/2 (n even), Z/4 (n odd)
  E_6(k)                   0, 1, 2            Z/3
  E_7(k)                   0, 1               Z/2
  E_8(k), F_4(k), G_2(k)   0                  trivial

Internally D-labels are the ints 0, 1, 2, 3 for 0, s, v, c; label addition
is XOR for even rank and mod-4 for odd rank (with s a generator of order 4
and v = 2s).

``orbit_component(comp, d)`` is the per-component quotient map: given the
glue label d of an automorphism generator it returns the surviving
component (family and rank only — the caller assigns levels), the
frame-shape factor, and the label projection for the induced glue.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .lattice import Lattice, discriminant_space
from .matrix import rational_solve, transpose

__all__ = [
    "families",
    "validate_component",
    "realize",
    "weyl_order",
    "lie_dim",
    "outer_order",
    "glue_labels",
    "label_add",
    "label_neg",
    "label_order",
    "glue_vector",
    "component_coset_min_norm",
    "canonical_label",
    "diagram_automorphisms",
    "orbit_component",
    "format_component",
    "parse_component",
]

families = ("A", "B", "C", "D", "E", "F", "G")

_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


def validate_component(comp, *, allow_b1=False):
    fam, n, k = comp
    if fam not in families:
        raise ValueError(f"unknown family {fam!r}")
    if fam in _FIXED_RANKS:
        if n not in _FIXED_RANKS[fam]:
            raise ValueError(f"{fam} has no rank-{n} member")
    else:
        floor = _MIN_RANK[fam]
        if fam == "B" and allow_b1:
            floor = 1
        if n < floor:
            raise ValueError(f"{fam} rank must be >= {floor}, got {n}")
    if k < 1:
        raise ValueError("level must be a positive integer")
    return comp


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------

def _chain_gram(n, k):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2 * k
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -k
    return g


def _checkerboard_rows(n):
    rows = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        rows.append(r)
    r = [0] * n
    r[n - 2], r[n - 1] = 1, 1
    rows.append(r)
    return rows


@lru_cache(maxsize=None)
def _checkerboard_gram(n):
    rows = _checkerboard_rows(n)
    return tuple(tuple(sum(a * b for a, b in zip(r1, r2)) for r2 in rows)
                 for r1 in rows)


_E8_GRAM = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, 0, -1, 0, 0, 2),
)

# E7 and E6: chains glued to the E8 branch point, standard Gram matrices
_E7_GRAM = tuple(tuple(row[:7]) for row in (
    (2, -1, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, -1, 0, 0, 2),
))

_E6_GRAM = (
    (2, -1, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0),
    (0, -1, 2, -1, 0, -1),
    (0, 0, -1, 2, -1, 0),
    (0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 2),
)


def realize(comp):
    """The lattice of a component, as a Lattice with a readable label."""
    fam, n, k = validate_component(comp, allow_b1=True)
    if fam == "A":
        gram = _chain_gram(n, k)
    elif fam in ("B", "D"):
        if fam == "B" and n == 1:
            # degenerate rank-1 member, identical to A_1 at the same level
            # (pinned by the rank-1 orbit lattices of determinant 4)
            gram = [[2 * k]]
        elif n == 2:
            gram = [[2 * k, 0], [0, 2 * k]]
        else:
            gram = [[k * x for x in row] for row in _checkerboard_gram(n)]
    elif fam == "C":
        gram = [[2 * k if i == j else 0 for j in range(n)] for i in range(n)]
    elif fam == "E":
        base = {6: _E6_GRAM, 7: _E7_GRAM, 8: _E8_GRAM}[n]
        gram = [[k * x for x in row] for row in base]
    elif fam == "F":
        gram = [[k * x for x in row] for row in _checkerboard_gram(4)]
    else:  # G
        gram = _chain_gram(2, k)
    return Lattice(gram, label=format_component(comp))


_FACTORIALS = [1]
for _i in range(1, 30):
    _FACTORIALS.append(_FACTORIALS[-1] * _i)


def weyl_order(comp):
    fam, n, k = comp
    if fam == "A":
        return _FACTORIALS[n + 1]
    if fam in ("B", "C"):
        return 2 ** n * _FACTORIALS[n]
    if fam == "D":
        return 2 ** (n - 1) * _FACTORIALS[n]
    if fam == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if fam == "F":
        return 1152
    return 12  # G_2


def lie_dim(comp):
    fam, n, k = comp
    if fam == "A":
        return n * (n + 2)
    if fam in ("B", "C"):
        return n * (2 * n + 1)
    if fam == "D":
        return n * (2 * n - 1)
    if fam == "E":
        return {6: 78, 7: 133, 8: 248}[n]
    if fam == "F":
        return 52
    return 14


def outer_order(comp):
    """Order of the diagram automorphism group."""
    fam, n, k = comp
    if fam == "A":
        return 1 if n == 1 else 2
    if fam == "D":
        return 6 if n == 4 else 2
    if fam == "E" and n == 6:
        return 2
    return 1


# ---------------------------------------------------------------------------
# glue labels
# ---------------------------------------------------------------------------

def glue_labels(comp):
    fam, n, k = comp
    if fam == "A":
        return tuple(range(n + 1))
    if fam in ("B", "C"):
        return (0, 1)
    if fam == "D":
        return (0, 1, 2, 3)  # 0, s, v, c
    if fam == "E":
        return {6: (0, 1, 2), 7: (0, 1), 8: (0,)}[n]
    return (0,)


def label_add(comp, a, b):
    fam, n, k = comp
    if fam == "A":
        return (a + b) % (n + 1)
    if fam in ("B", "C"):
        return (a + b) % 2
    if fam == "D":
        if n % 2 == 0:
            return a ^ b
        return _z4_to_label((_label_to_z4(a) + _label_to_z4(b)) % 4)
    if fam == "E":
        mod = {6: 3, 7: 2, 8: 1}[n]
        return (a + b) % mod
    return 0


def _label_to_z4(label):
    # (0, s, v, c) = (0, 1, 2, 3) -> Z/4 elements (0, 1, 2, 3): s generates,
    # v = 2s, c = 3s, which is exactly the identity map
    return label


def _z4_to_label(x):
    return x


def label_neg(comp, a):
    fam, n, k = comp
    if fam == "A":
        return (-a) % (n + 1)
    if fam == "D" and n % 2 == 1:
        return _z4_to_label((-_label_to_z4(a)) % 4)
    if fam == "E" and n == 6:
        return (-a) % 3
    return a  # 2-torsion elsewhere


def label_order(comp, a):
    fam, n, k = comp
    if a == 0:
        return 1
    if fam == "A":
        from math import gcd
        return (n + 1) // gcd(a, n + 1)
    if fam == "D" and n % 2 == 1:
        return 4 if a in (1, 3) else 2
    if fam == "E" and n == 6:
        return 3
    return 2


D_LABEL_NAMES = {0: "0", 1: "s", 2: "v", 3: "c"}
D_LABEL_BY_NAME = {"0": 0, "s": 1, "v": 2, "c": 3}


@lru_cache(maxsize=None)
def _glue_basis(key):
    """Cached rational glue-vector rows for a component archetype."""
    fam, n = key
    if fam == "A":
        return {1: tuple(Fraction(n + 1 - i, n + 1) for i in range(1, n + 1))}
    if fam in ("B", "D"):
        if n == 1:
            # rank-1 B: half the generator of the [2] form
            return {1: (Fraction(1, 2),)}
        if n == 2:
            # coordinates in the diag(2,2) basis; e_1 = (b1 + b2)/2
            vecs = {2: (Fraction(1, 2), Fraction(1, 2)),
                    1: (Fraction(1, 2), Fraction(0)),
                    3: (Fraction(0), Fraction(1, 2))}
        else:
            rows = _checkerboard_rows(n)
            tr = [[Fraction(x) for x in row] for row in transpose(rows)]
            e1 = rational_solve(tr, [1] + [0] * (n - 1))
            s = rational_solve(tr, [Fraction(1, 2)] * n)
            c = rational_solve(tr, [Fraction(1, 2)] * (n - 1)
                               + [Fraction(-1, 2)])
            vecs = {2: tuple(e1), 1: tuple(s), 3: tuple(c)}
        if fam == "B":
            return {1: vecs[2]}  # B glue 1 is the vector class
        return vecs
    if fam == "C":
        return {1: tuple(Fraction(1, 2) for _ in range(n))}
    if fam == "E" and n in (6, 7):
        lat = realize((fam, n, 1))
        space, lift = discriminant_space(lat)
        gen = tuple(lift[0])
        out = {1: gen}
        if n == 6:
            out[2] = tuple(2 * x for x in gen)
        return out
    return {}


def glue_vector(comp, label):
    """Rational coordinate row of a glue label in realize(comp) coordinates."""
    fam, n, k = comp
    if label == 0:
        return [Fraction(0)] * realize(comp).rank
    basis = _glue_basis((fam, n))
    if fam == "A":
        return [label * x for x in basis[1]]
    if label not in basis:
        raise ValueError(f"component {format_component(comp)} has no label {label}")
    return list(basis[label])


def component_coset_min_norm(comp, label):
    """Closed-form minimum norm of the glue coset of a component."""
    fam, n, k = validate_component(comp, allow_b1=True)
    if label == 0:
        return 0
    if fam == "A":
        j = label % (n + 1)
        return Fraction(j * (n + 1 - j) * k, n + 1)
    if fam == "B":
        if n == 1:
            return Fraction(k, 2)  # the A_1 coset under the alias
        return k  # the short-vector class
    if fam == "C":
        return Fraction(n * k, 2)
    if fam == "D":
        if label == 2:  # v
            return k
        return Fraction(n * k, 4)  # s and c
    if fam == "E" and n == 6:
        return Fraction(4 * k, 3)
    if fam == "E" and n == 7:
        return Fraction(3 * k, 2)
    raise ValueError(f"component {format_component(comp)} has no label {label}")


# ---------------------------------------------------------------------------
# diagram automorphisms and canonical labels
# ---------------------------------------------------------------------------

def diagram_automorphisms(comp):
    """Label permutations induced by diagram automorphisms, as dicts."""
    fam, n, k = comp
    labels = glue_labels(comp)
    ident = {l: l for l in labels}
    if fam == "A" and n >= 2:
        return [ident, {j: (n + 1 - j) % (n + 1) for j in labels}]
    if fam == "D":
        if n == 4:
            perms = []
            import itertools
            for p in itertools.permutations((1, 2, 3)):
                perms.append({0: 0, 1: p[0], 2: p[1], 3: p[2]})
            return perms
        return [ident, {0: 0, 1: 3, 2: 2, 3: 1}]  # swap s <-> c
    if fam == "E" and n == 6:
        return [ident, {0: 0, 1: 2, 2: 1}]
    return [ident]


def canonical_label(comp, label):
    """Smallest image of the label under the diagram automorphisms."""
    return min(p[label] for p in diagram_automorphisms(comp))


# ---------------------------------------------------------------------------
# the per-component quotient map
# ---------------------------------------------------------------------------

def orbit_component(comp, d):
    """Quotient data of a component under the glue label d of a generator.

    Returns ``(survivor, fshape, proj)``:

      survivor  (family, rank) of the fixed sublattice component, or None
                when nothing survives (the caller assigns the level)
      fshape    frame-shape factor, tuple of (cycle_length, exponent)
      proj      dict mapping the component's glue labels onto the survivor's
                labels (the induced glue); None when the survivor is gone

    Raw (non-canonical) labels are accepted: the c label of an even D
    component uses its own half-spin pairing, and every nonzero label of a
    rank-4 D yields the rank-2 B quotient with the pairing that matches
    the label.  Survivor and frame shape depend only on the label's
    canonical class; the projection keeps the label-specific kernel, which
    is what the induced glue code needs.
    """
    fam, n, k = comp
    if fam not in ("A", "D", "E"):
        raise ValueError("orbit map applies to A, D and E components only")
    labels = glue_labels(comp)
    if d == 0:
        return ((fam, n), ((1, n),), {l: l for l in labels})
    if fam == "A":
        m = label_order(comp, d)
        i = (n + 1) // m
        fshape = ((1, -1), (m, i)) if m > 1 else ((1, n),)
        if i == 1:
            return (None, fshape, None)
        return (("A", i - 1), fshape, {l: l % i for l in labels})
    if fam == "D":
        half = n // 2
        if n % 2 == 0:
            if d == 1:  # s: half-spin quotient
                return (("B", half), ((2, half),),
                        {0: 0, 1: 0, 2: 1, 3: 1})
            if d == 3:  # c: the other half-spin quotient
                return (("B", half), ((2, half),),
                        {0: 0, 3: 0, 2: 1, 1: 1})
            # d == v; at rank 4 the result coincides with the rank-2 B
            # lattice (and triality makes it equivalent to the s quotient)
            if n == 4:
                return (("B", 2), ((2, 2),), {0: 0, 2: 0, 1: 1, 3: 1})
            return (("C", n - 2), ((1, n - 4), (2, 2)),
                    {0: 0, 2: 0, 1: 1, 3: 1})
        else:
            if d in (1, 3):  # s or c
                surv = ("B", half - 1) if half - 1 >= 1 else None
                proj = {l: 0 for l in labels} if surv else None
                return (surv, ((1, -1), (2, half - 1), (4, 1)), proj)
            # d == v
            return (("C", n - 2), ((1, n - 4), (2, 2)),
                    {0: 0, 2: 0, 1: 1, 3: 1})
    # E family
    if n == 6:
        return (("G", 2), ((3, 2),), {l: 0 for l in labels})
    if n == 7:
        return (("F", 4), ((1, 1), (2, 3)), {l: 0 for l in labels})
    raise ValueError("rank-8 E has no nonzero glue")


# ---------------------------------------------------------------------------
# names
# ---------------------------------------------------------------------------

def format_component(comp, exponent=1):
    fam, n, k = comp
    body = f"{fam}_{{{n},{k}}}" if k != 0 else f"{fam}_{n}"
    if exponent != 1:
        body += f"^{exponent}" if exponent < 10 else f"^{{{exponent}}}"
    return body


def parse_component(text):
    """Parse 'A_{4,2}' (or 'A_4,2', 'A4,2') into ('A', 4, 2)."""
    t = text.strip().replace("{", "").replace("}", "")
    fam = t[0]
    rest = t[1:].lstrip("_")
    parts = rest.split(",")
    if len(parts) == 1:
        n, k = int(parts[0]), 1
    else:
        n, k = int(parts[0]), int(parts[1])
    return validate_component((fam, n, k), allow_b1=True)
