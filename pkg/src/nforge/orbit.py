"""Fixed-sublattice data for code symmetries of the glued rank-24 lattices.

A classified cyclic subgroup Z of a glue code C determines an isometry
class of automorphisms w·σ of the ambient lattice N; this module computes
the invariant ("orbit") lattice N(Z) and its bookkeeping:

  * the level scale ``alpha`` read off the coset norm profile of Z
    (largest norm 0 or 4 -> 1, largest norm 6 -> 2, anything larger is
    undetermined and the levels are reported as stars),
  * the surviving components with levels k_i = (l / m_i) * alpha, where
    l = |Z| and m_i is the order of the generator's label on component i,
  * the induced glue code C(Z): the image of the full code under the
    per-component label projections, restricted to surviving components,
  * the frame shape (product of per-component cycle factors, merged),
  * dim g = sum of Lie-algebra dimensions of the survivors,
  * the lattice N(Z) itself, built exactly and validated against
    det N(Z) = det R(Z) / |C(Z)|^2.

Rows with no survivors yield the rank-0 lattice.  Rows whose alpha is
undetermined but which keep survivors get level None ("*" in display) and
no lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import niemeier as nm
from . import rootdata as rd
from .errors import NForgeError
from .lattice import Lattice, direct_sum, overlattice

__all__ = [
    "OrbitRow",
    "alpha_from_norms",
    "orbit_row",
    "orbit_rows",
    "all_rows",
    "orbit_lattice",
    "rows_tsv",
]


def alpha_from_norms(norms):
    """Level scale from the coset-norm profile; None when undetermined."""
    top = max(norms)
    if top in (0, 4):
        return 1
    if top == 6:
        return 2
    return None


@dataclass(frozen=True)
class OrbitRow:
    parent: str
    generator: tuple
    order: int
    norms: tuple
    size: int                 # number of subgroups in the class
    alpha: int | None
    survivors: tuple          # ((family, rank, level-or-None), ...) parent order
    code_size: int            # |C(Z)|
    frame: tuple              # ((cycle, exponent), ...) ascending cycles
    dim_g: int

    @property
    def rank(self):
        return sum(n for _, n, _ in self.survivors)

    @property
    def positive(self):
        return all(e > 0 for _, e in self.frame)

    @property
    def frame_degree(self):
        return sum(c * e for c, e in self.frame)

    def components_text(self):
        """Canonical display: family, then rank and level descending.

        Equal components merge into an exponent; B_1 is shown as A_1 (the
        two coincide at every level).
        """
        if not self.survivors:
            return "-"
        shown = []
        for fam, n, k in self.survivors:
            if fam == "B" and n == 1:
                fam = "A"
            shown.append((fam, n, k))
        shown.sort(key=lambda c: (c[0], -c[1], -(c[2] or 0)))
        parts = []
        i = 0
        while i < len(shown):
            j = i
            while j < len(shown) and shown[j] == shown[i]:
                j += 1
            fam, n, k = shown[i]
            level = "*" if k is None else k
            body = f"{fam}_{{{n},{level}}}"
            if j - i > 1:
                e = j - i
                body += f"^{e}" if e < 10 else f"^{{{e}}}"
            parts.append(body)
            i = j
        return "".join(parts)

    def frame_text(self):
        pos = [(c, e) for c, e in self.frame if e > 0]
        neg = [(c, -e) for c, e in self.frame if e < 0]

        def side(factors):
            return " ".join(
                f"{c}" if e == 1 else f"{c}^{e}" if e < 10 else f"{c}^{{{e}}}"
                for c, e in factors)

        if not neg:
            return side(pos)
        return f"[{side(pos)}/{side(neg)}]"


def _merge_frame(factors):
    acc = {}
    for cycle, exp in factors:
        acc[cycle] = acc.get(cycle, 0) + exp
    return tuple(sorted((c, e) for c, e in acc.items() if e != 0))


@lru_cache(maxsize=None)
def orbit_rows(parent):
    """All OrbitRows of one glued lattice, in classification order."""
    sp = nm.spec(parent)
    out = []
    for cls in nm.cyclic_subgroup_classes(parent):
        out.append(_row_for_class(sp, cls))
    return tuple(out)


def orbit_row(parent, index):
    rows = orbit_rows(parent)
    if not 0 <= index < len(rows):
        raise NForgeError(
            f"{parent}: class index {index} out of range 0..{len(rows) - 1}")
    return rows[index]


def _row_for_class(sp, cls):
    alpha = alpha_from_norms(cls.norms)
    ell = cls.order
    quotients = [rd.orbit_component(c, d)
                 for c, d in zip(sp.components, cls.generator)]

    survivors = []
    keep = []          # indices of surviving components
    frame_factors = []
    dim_g = 0
    for i, ((c, d), (surv, fshape, proj)) in enumerate(
            zip(zip(sp.components, cls.generator), quotients)):
        frame_factors.extend(fshape)
        if surv is None:
            continue
        fam, n = surv
        m = rd.label_order(c, d)
        assert ell % m == 0
        level = (ell // m) * alpha if alpha is not None else None
        survivors.append((fam, n, level))
        keep.append(i)
        dim_g += rd.lie_dim((fam, n, 1))

    code = nm._code_elements(sp.name)
    projs = [q[2] for q in quotients]
    image = {tuple(projs[i][x[i]] for i in keep) for x in code}

    frame = _merge_frame(frame_factors)
    row = OrbitRow(
        parent=sp.name,
        generator=cls.generator,
        order=cls.order,
        norms=cls.norms,
        size=cls.size,
        alpha=alpha,
        survivors=tuple(survivors),
        code_size=len(image),
        frame=frame,
        dim_g=dim_g,
    )
    if row.frame_degree != 24:
        raise NForgeError(
            f"{sp.name} {cls.generator}: frame degree {row.frame_degree}")
    if row.rank != sum(e for _, e in row.frame):
        raise NForgeError(
            f"{sp.name} {cls.generator}: rank/frame mismatch")
    return row


def all_rows():
    """Every classified row of every glued lattice (23 parents)."""
    out = []
    for name in nm.names():
        out.extend(orbit_rows(name))
    return tuple(out)


@lru_cache(maxsize=None)
def orbit_lattice(parent, index):
    """The invariant lattice N(Z) for one classified row, or None.

    Returns the exact lattice: survivors realized at their levels and glued
    by the induced code C(Z).  Rows with undetermined alpha and at least
    one survivor have no determined lattice and return None.  Rows with no
    survivors return the rank-0 lattice.
    """
    row = orbit_row(parent, index)
    if not row.survivors:
        return Lattice((), label=f"{parent}#{index}")
    if row.alpha is None:
        return None

    sp = nm.spec(parent)
    cls = nm.cyclic_subgroup_classes(parent)[index]
    quotients = [rd.orbit_component(c, d)
                 for c, d in zip(sp.components, cls.generator)]
    keep = [i for i, q in enumerate(quotients) if q[0] is not None]
    projs = [q[2] for q in quotients]
    comps = [rd.validate_component(c, allow_b1=True) for c in row.survivors]

    base = direct_sum([rd.realize(c) for c in comps],
                      label=f"{parent}#{index}")
    code = nm._code_elements(parent)
    image = sorted({tuple(projs[i][x[i]] for i in keep) for x in code})

    def add(a, b):
        return tuple(rd.label_add(c, x, y)
                     for c, x, y in zip(comps, a, b))

    zero = tuple(0 for _ in comps)
    gens, closure = [], {zero}
    for w in image:
        if w not in closure:
            gens.append(w)
            frontier = [w]
            while frontier:
                cur = frontier.pop()
                for known in list(closure):
                    s = add(cur, known)
                    if s not in closure:
                        closure.add(s)
                        frontier.append(s)
    assert len(closure) == len(image) == row.code_size

    rows = []
    for g in gens:
        vec = []
        for c, a in zip(comps, g):
            vec.extend(rd.glue_vector(c, a))
        rows.append(vec)
    lat, _ = overlattice(base, rows, label=f"{parent}#{index}")

    want = base.determinant()
    if lat.determinant() * row.code_size ** 2 != want:
        raise NForgeError(
            f"{parent}#{index}: det {lat.determinant()} != "
            f"{want}/{row.code_size}^2")
    if not lat.is_even:
        raise NForgeError(f"{parent}#{index}: orbit lattice is not even")
    return lat


def rows_tsv(rows=None):
    """Tab-separated dump of classified rows (one line per class)."""
    if rows is None:
        rows = all_rows()
    header = "\t".join([
        "parent", "generator", "order", "norms", "components",
        "code_size", "dim_g", "frame",
    ])
    lines = [header]
    for r in rows:
        lines.append("\t".join([
            r.parent,
            "(" + ",".join(str(x) for x in r.generator) + ")",
            str(r.order),
            ",".join(str(n) for n in r.norms),
            r.components_text(),
            str(r.code_size),
            str(r.dim_g),
            r.frame_text(),
        ]))
    return "\n".join(lines) + "\n"
