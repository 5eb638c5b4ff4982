"""p-adic genus symbols of integral lattices, with canonical 2-adic form.

For each prime p dividing 2·det, the Gram matrix is split into a p-adic
Jordan decomposition ⊥_i p^i f_i with each f_i p-adically unimodular.
The symbol records, per scale p^i:

  odd p:  (dimension, sign) with sign the Legendre character of det f_i,
  p = 2:  (dimension, sign, parity, oddity): sign is + iff det f_i ≡ ±1
          (mod 8), parity is II when f_i has even diagonal (no odd square
          represented), oddity is the trace of the odd diagonal part mod 8.

Raw 2-adic symbols are not unique: equivalent lattices can differ by
oddity fusion inside compartments (maximal runs of odd scales) and by
sign walking along trains (runs of scales linked through odd neighbours).
``canonicalize`` normalizes both, making symbol equality a true genus
invariant for positive-definite lattices of equal rank; that is what
``genus_equal`` compares.

The display format follows the customary abbreviation: scale-0 blocks are
suppressed, an even block prints as q_II^{±n}, an odd block as q_t^{±n}
with t its oddity, and a lattice with trivial symbol prints as "1".
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import NForgeError
from .matrix import det as _det

__all__ = [
    "Block",
    "GenusSymbol",
    "jordan_blocks",
    "genus_symbol",
    "genus_equal",
    "format_symbol",
]


def _vp(x, p):
    """p-adic valuation of a nonzero Fraction."""
    x = Fraction(x)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _unit_mod(x, p, modulus):
    """The p-adic unit part of Fraction x, reduced mod `modulus`."""
    v = _vp(x, p)
    num, den = x.numerator, x.denominator
    if v > 0:
        num //= p ** v
    elif v < 0:
        den //= p ** (-v)
    return num * pow(den, -1, modulus) % modulus


def jordan_blocks(gram, p):
    """p-adic Jordan decomposition of a nondegenerate symmetric matrix.

    Returns a list of (scale, block) pairs where block is a 1x1 or 2x2
    matrix of Fractions that is p-adically unimodular after division by
    p^scale.  2x2 blocks occur only for p = 2 (even forms).
    """
    n = len(gram)
    m = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    active = list(range(n))
    out = []

    def val(x):
        return _vp(x, p) if x != 0 else None

    while active:
        best = None
        for ai, a in enumerate(active):
            for bi, b in enumerate(active):
                if bi < ai:
                    continue
                v = val(m[a][b])
                if v is not None and (best is None or v < best[0]):
                    best = (v, a, b)
        if best is None:
            raise NForgeError("degenerate form in Jordan decomposition")
        nu, a, b = best

        diag = None
        for a2 in active:
            v = val(m[a2][a2])
            if v == nu:
                diag = a2
                break

        if diag is None and p != 2:
            # make a diagonal entry of valuation nu: row/col b += a
            for j in range(n):
                m[b][j] += m[a][j]
            for i in range(n):
                m[i][b] += m[i][a]
            diag = b

        if diag is not None:
            a = diag
            pivot = m[a][a]
            for r in active:
                if r == a:
                    continue
                c = m[r][a] / pivot
                if c:
                    for j in range(n):
                        m[r][j] -= c * m[a][j]
                    for i in range(n):
                        m[i][r] -= c * m[i][a]
            out.append((nu, ((pivot,),)))
            active.remove(a)
            continue

        # p = 2, minimal valuation only off-diagonal: 2x2 block on (a, b)
        A, B, C = m[a][a], m[a][b], m[b][b]
        det2 = A * C - B * B
        for r in list(active):
            if r in (a, b):
                continue
            ra, rb = m[r][a], m[r][b]
            if ra == 0 and rb == 0:
                continue
            ca = (ra * C - rb * B) / det2
            cb = (rb * A - ra * B) / det2
            for j in range(n):
                m[r][j] -= ca * m[a][j] + cb * m[b][j]
            for i in range(n):
                m[i][r] -= ca * m[i][a] + cb * m[i][b]
        out.append((nu, ((A, B), (B, C))))
        active.remove(a)
        active.remove(b)

    return out


@dataclass(frozen=True)
class Block:
    """One scale of a p-adic symbol."""
    scale: int
    dim: int
    sign: int            # +1 or -1
    odd: bool = False    # p = 2 only: type I (odd diagonal present)
    oddity: int = 0      # p = 2 only: trace of odd part mod 8

    def key(self):
        return (self.scale, self.dim, self.sign, self.odd, self.oddity)


def _legendre(u, p):
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _blocks_at(gram, p):
    """Aggregate Jordan constituents into per-scale Block records."""
    pieces = {}
    for nu, blk in jordan_blocks(gram, p):
        dim = len(blk)
        rec = pieces.setdefault(nu, {"dim": 0, "det": Fraction(1),
                                     "odd": False, "oddity": 0})
        rec["dim"] += dim
        if dim == 1:
            rec["det"] *= blk[0][0] / Fraction(p) ** nu
            if p == 2:
                rec["odd"] = True
                rec["oddity"] = (rec["oddity"]
                                 + _unit_mod(blk[0][0], 2, 8)) % 8
        else:
            d = (blk[0][0] * blk[1][1] - blk[0][1] ** 2)
            rec["det"] *= d / Fraction(p) ** (2 * nu)
    out = []
    for nu in sorted(pieces):
        rec = pieces[nu]
        if p == 2:
            u = _unit_mod(rec["det"], 2, 8)
            sign = 1 if u in (1, 7) else -1
        else:
            sign = _legendre(_unit_mod(rec["det"], p, p), p)
        out.append(Block(scale=nu, dim=rec["dim"], sign=sign,
                         odd=rec["odd"], oddity=rec["oddity"] % 8))
    return tuple(out)


# ---------------------------------------------------------------------------
# canonicalization of the 2-adic symbol
# ---------------------------------------------------------------------------

def _with_zero_scales(blocks):
    """Insert explicit dim-0 blocks so scales run consecutively."""
    if not blocks:
        return ()
    lo = min(b.scale for b in blocks)
    hi = max(b.scale for b in blocks)
    lo = min(lo, 0)
    by = {b.scale: b for b in blocks}
    full = []
    for s in range(lo, hi + 1):
        full.append(by.get(s, Block(scale=s, dim=0, sign=1)))
    return tuple(full)


def _compartments(full):
    """Maximal runs of consecutive odd (type I) scales, as index lists."""
    runs, cur = [], []
    for i, b in enumerate(full):
        if b.dim > 0 and b.odd:
            cur.append(i)
        else:
            if cur:
                runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def _trains(full):
    """Maximal runs of consecutive scales linked through odd forms.

    Adjacent scales i, i+1 are linked when at least one of the two forms
    is odd; zero-dimensional forms are even, so a train may pass through
    an empty scale only next to an odd form.  Trains that hold no nonzero
    form are dropped.
    """
    runs, cur = [], [0]
    for i in range(1, len(full)):
        if full[i - 1].odd or full[i].odd:
            cur.append(i)
        else:
            runs.append(cur)
            cur = [i]
    runs.append(cur)
    return [r for r in runs if any(full[i].dim for i in r)]


def _canonical_2(blocks):
    """Canonical 2-adic symbol: oddity fusion plus sign walking.

    Within each compartment the individual oddities are fused into the
    compartment total, carried on its first scale.  Sign walking flips
    the signs of two forms in a common train and adds 4 to the oddity of
    every compartment containing exactly one of the two scales; the net
    oddity effect of a composite of walks depends only on the set of
    flipped scales, so the canonical form (at most one minus per train,
    parked on the train's first nonzero scale) is well defined.
    """
    full = list(_with_zero_scales(blocks))
    comps = _compartments(full)

    # oddity fusion
    for comp in comps:
        total = sum(full[i].oddity for i in comp) % 8
        for j, i in enumerate(comp):
            full[i] = replace(full[i], oddity=total if j == 0 else 0)

    # sign walking
    for train in _trains(full):
        minus = [i for i in train if full[i].dim > 0 and full[i].sign == -1]
        if not minus:
            continue
        flipped = set(minus)
        for i in minus:
            full[i] = replace(full[i], sign=1)
        if len(minus) % 2:
            target = next(i for i in train if full[i].dim > 0)
            full[target] = replace(full[target], sign=-1)
            flipped ^= {target}
        for comp in comps:
            if len(flipped & set(comp)) % 2:
                j = comp[0]
                full[j] = replace(full[j], oddity=(full[j].oddity + 4) % 8)

    return tuple(b for b in full if b.dim > 0)


@dataclass(frozen=True)
class GenusSymbol:
    rank: int
    det: int
    local: tuple      # ((p, (Block, ...)), ...) ascending primes

    def key(self):
        return (self.rank, self.det,
                tuple((p, tuple(b.key() for b in bs)) for p, bs in self.local))


def _primes_of(det):
    ps = set([2])
    d = abs(det)
    f = 2
    while f * f <= d:
        while d % f == 0:
            ps.add(f)
            d //= f
        f += 1
    if d > 1:
        ps.add(d)
    return sorted(ps)


def genus_symbol(lat):
    """Canonical genus symbol of a positive-definite integral lattice."""
    gram = lat.gram if hasattr(lat, "gram") else tuple(map(tuple, lat))
    n = len(gram)
    if n == 0:
        return GenusSymbol(rank=0, det=1, local=())
    det = _det(gram)
    if det <= 0:
        raise NForgeError("genus symbols need positive-definite input")
    parts = []
    for p in _primes_of(2 * det):
        blocks = _blocks_at(gram, p)
        if p == 2:
            blocks = _canonical_2(blocks)
        else:
            blocks = tuple(b for b in blocks if b.dim > 0)
        parts.append((p, blocks))
    return GenusSymbol(rank=n, det=det, local=tuple(parts))


def genus_equal(a, b):
    """Whether two positive-definite lattices lie in the same genus."""
    return genus_symbol(a).key() == genus_symbol(b).key()


def format_symbol(sym, hide_unimodular=True):
    """Paper-style print: scale-0 parts suppressed, '1' when nothing left."""
    chunks = []
    for p, blocks in sym.local:
        for b in blocks:
            if hide_unimodular and b.scale == 0:
                continue
            q = p ** b.scale
            s = "+" if b.sign == 1 else "-"
            if p == 2:
                sub = "II" if not b.odd else str(b.oddity)
                chunks.append(f"{q}_{sub}^{{{s}{b.dim}}}")
            else:
                chunks.append(f"{q}^{{{s}{b.dim}}}")
    return "".join(chunks) or "1"
