"""The 23 even unimodular rank-24 lattices with roots.

Each is a root lattice R (direct sum of simply-laced components at level 1)
extended by its glue code C, a self-dual isotropic subgroup of the
discriminant group of R with |C|² = det(R).  The component/generator data
lives in ``data/niemeier.json``; ``load_specs`` validates it on first use.

Cyclic subgroups of C are classified up to code automorphisms by an
invariant signature (see ``cyclic_subgroup_classes``); the class counts are
certified downstream against the classification fixture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import lcm

from . import rootdata as rd
from .errors import NForgeError
from .lattice import Lattice, direct_sum, overlattice

__all__ = [
    "UnknownName",
    "NiemeierSpec",
    "CyclicClass",
    "load_specs",
    "spec",
    "names",
    "build",
    "enumerate_glue",
    "cyclic_subgroup_classes",
]


class UnknownName(NForgeError):
    pass


@dataclass(frozen=True)
class NiemeierSpec:
    name: str
    components: tuple  # of (family, rank, 1)
    glue_print: str
    glue_gens: tuple  # of label tuples (ints)

    @property
    def rank(self):
        return sum(c[1] for c in self.components)


@dataclass(frozen=True)
class CyclicClass:
    generator: tuple
    order: int
    norms: tuple  # multiset of coset minimum norms over Z, ascending
    signature: tuple
    size: int  # number of cyclic subgroups in the class

    @property
    def norm_set(self):
        out = []
        for x in self.norms:
            if x not in out:
                out.append(x)
        return tuple(out)


def _decode_label(family, raw):
    if family == "D":
        if isinstance(raw, str):
            return rd.D_LABEL_BY_NAME[raw]
        raise ValueError(f"D labels must be strings, got {raw!r}")
    return int(raw)


@lru_cache(maxsize=1)
def load_specs():
    text = resources.files("nforge.data").joinpath("niemeier.json").read_text()
    data = json.loads(text)
    out = {}
    for entry in data["lattices"]:
        comps = tuple((fam, n, 1) for fam, n in entry["components"])
        for c in comps:
            rd.validate_component(c)
            if c[0] not in ("A", "D", "E"):
                raise ValueError(f"{entry['name']}: bad family {c[0]}")
        gens = tuple(
            tuple(_decode_label(c[0], raw) for c, raw in zip(comps, g))
            for g in entry["glue_gens"])
        for g in gens:
            if len(g) != len(comps):
                raise ValueError(f"{entry['name']}: generator arity")
        sp = NiemeierSpec(entry["name"], comps, entry["glue_print"], gens)
        if sp.rank != 24:
            raise ValueError(f"{sp.name}: ranks sum to {sp.rank}")
        out[sp.name] = sp
    if len(out) != 23:
        raise ValueError(f"expected 23 lattices, got {len(out)}")
    return out


def names():
    return sorted(load_specs())


def spec(name):
    specs = load_specs()
    if name not in specs:
        raise UnknownName(f"no Niemeier lattice named {name!r}")
    return specs[name]


# ---------------------------------------------------------------------------
# glue-code arithmetic
# ---------------------------------------------------------------------------

def glue_add(sp, x, y):
    return tuple(rd.label_add(c, a, b)
                 for c, a, b in zip(sp.components, x, y))


def glue_order(sp, x):
    return lcm(*(rd.label_order(c, a) for c, a in zip(sp.components, x)))


def glue_zero(sp):
    return (0,) * len(sp.components)


def enumerate_glue(sp):
    """All elements of the glue code, by closure of the fixture generators."""
    zero = glue_zero(sp)
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in sp.glue_gens:
            y = glue_add(sp, x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)


@lru_cache(maxsize=None)
def _code_elements(name):
    return tuple(enumerate_glue(spec(name)))


def coset_min_norm_of(sp, x):
    """Minimum norm of the coset of glue element x, by closed form."""
    total = sum(rd.component_coset_min_norm(c, a)
                for c, a in zip(sp.components, x))
    f = Fraction(total)
    return int(f) if f.denominator == 1 else f


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def root_lattice(sp):
    return direct_sum([rd.realize(c) for c in sp.components], label=sp.name)


def glue_row(sp, x):
    row = []
    for c, a in zip(sp.components, x):
        row.extend(rd.glue_vector(c, a))
    return row


@lru_cache(maxsize=None)
def build(name):
    """The Niemeier lattice: root lattice extended by its glue code.

    Validates |C|² = det(R), unimodularity, evenness, and that the glue
    adds no roots (the root count equals the root-system count).
    """
    sp = spec(name)
    base = root_lattice(sp)
    det_r = base.determinant()
    code = _code_elements(name)
    if len(code) ** 2 != det_r:
        raise NForgeError(
            f"{name}: |C|^2 = {len(code) ** 2} != det R = {det_r}")
    rows = [glue_row(sp, g) for g in sp.glue_gens]
    lat, _ = overlattice(base, rows, label=name)
    if lat.determinant() != 1:
        raise NForgeError(f"{name}: determinant {lat.determinant()} != 1")
    want_roots = sum(_component_roots(c) for c in sp.components)
    have_roots = lat.root_count()
    if have_roots != want_roots:
        raise NForgeError(
            f"{name}: {have_roots} roots, expected {want_roots}")
    return lat


def _component_roots(comp):
    fam, n, k = comp
    if fam == "A":
        return n * (n + 1)
    if fam == "D":
        return 2 * n * (n - 1)
    return {6: 72, 7: 126, 8: 240}[n]


# ---------------------------------------------------------------------------
# classification of cyclic subgroups
# ---------------------------------------------------------------------------

def _signature_of_element(sp, x):
    parts = [
        (c[0], c[1], rd.canonical_label(c, a),
         rd.component_coset_min_norm(c, a))
        for c, a in zip(sp.components, x)
    ]
    return tuple(sorted(parts))


def _subgroup_elements(sp, gen):
    out = [glue_zero(sp)]
    x = gen
    while x != out[0]:
        out.append(x)
        x = glue_add(sp, x, gen)
    return out


def cyclic_subgroup_classes(sp):
    """Classes of cyclic subgroups of C under the invariant signature.

    The signature of a subgroup Z is the multiset over z in Z of the
    multiset over components of (family, rank, canonical label, coset
    minimum norm).  One lexicographically minimal generator is reported
    per class, ordered by (order, norms, generator).
    """
    if isinstance(sp, str):
        return _classes_by_name(sp)
    return _classes_by_name(sp.name)


@lru_cache(maxsize=None)
def _classes_by_name(name):
    sp = spec(name)
    code = _code_elements(sp.name)
    subgroups = {}
    for x in code:
        elems = _subgroup_elements(sp, x)
        key = frozenset(elems)
        if key not in subgroups:
            subgroups[key] = elems
    classes = {}
    for elems in subgroups.values():
        order = len(elems)
        sig = tuple(sorted(_signature_of_element(sp, z) for z in elems))
        gens = [z for z in elems if glue_order(sp, z) == order]
        best = min(gens) if gens else glue_zero(sp)
        norms = tuple(sorted(coset_min_norm_of(sp, z) for z in elems))
        entry = classes.get(sig)
        if entry is None:
            classes[sig] = [best, order, norms, 1]
        else:
            entry[0] = min(entry[0], best)
            entry[3] += 1
            assert entry[1] == order and entry[2] == norms
    out = [CyclicClass(tuple(gen), order, norms, sig, size)
           for sig, (gen, order, norms, size) in classes.items()]
    out.sort(key=lambda c: (c.order, c.norms, c.generator))
    return tuple(out)
