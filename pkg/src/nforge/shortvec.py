"""Short-vector enumeration for positive-definite Gram matrices.

The engine is a shifted Fincke–Pohst traversal over the completed-square
(Cholesky) form of the Gram matrix.  Setup happens in exact rationals; the
traversal runs in scaled integers.  With

    d    = a common denominator of the shift vector,
    q    = a common denominator of the Gram–Schmidt coefficients M[i][j],
    denA = a common denominator of the diagonal terms A[i],

positions (x_k + shift_k) live at scale d, the running inner sums
sum_k M[j][k] (x_k + shift_k) at scale q*d, and norms at scale
S = denA*(q*d)^2 — every quantity in the hot loop is a plain integer, and
level windows come from exact integer square roots (for nonnegative
integers, floor(sqrt(a/b)) == isqrt(a//b)).

Three consumers share the engine:

  * ``short_vectors``     — all lattice vectors with 0 < norm <= bound
  * ``coset_min_norm``    — exact minimum over the coset x + shift; the
                            initial bound comes from a Babai-rounded
                            representative and is never raised.  For a dual
                            shift (integral pairing with the lattice) the
                            norms in one coset agree mod 2 (even Gram) or
                            mod 1 (odd), so one exhaustive empty search a
                            full step below the best norm is a certificate.
  * ``coset_norm_counts`` — (norm, count) table up to a bound; the deepest
                            level runs in a local loop, not one recursion
                            per vector

Every consumer takes a node budget; running out raises BudgetExceeded
carrying the best bound gathered so far.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import BudgetExceeded
from .matrix import lll_reduce, rational_solve

__all__ = [
    "cholesky",
    "short_vectors",
    "coset_min_norm",
    "coset_norm_counts",
]


def cholesky(gram):
    """Completed-square data: q(x) = sum_i A[i] * (x_i + sum_{j>i} M[i][j] x_j)^2.

    Returns (A, M).  Raises ValueError if the form is not positive definite.
    """
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    a = []
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("cholesky: form is not positive definite")
        saved = q[i][:]
        for j in range(i + 1, n):
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= saved[k] * q[i][l]
        a.append(q[i][i])
    m = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return a, m


def _lcm2(a, b):
    return a * b // gcd(a, b)


def _round_frac(fr):
    fr = Fraction(fr)
    q, r = divmod(fr.numerator, fr.denominator)
    if 2 * r >= fr.denominator:
        q += 1
    return q


def _as_int(fr):
    fr = Fraction(fr)
    return int(fr) if fr.denominator == 1 else fr


class _StopWalk(Exception):
    pass


class _Engine:
    """Scaled-integer shifted-FP walker; see the module docstring for scales."""

    __slots__ = ("n", "A2", "M2", "P0", "d", "q", "QD", "S", "budget", "nodes")

    def __init__(self, gram, shift=None, budget=None):
        n = len(gram)
        self.n = n
        a, m = cholesky(gram)
        shift = ([Fraction(s) for s in shift]
                 if shift is not None else [Fraction(0)] * n)
        d = 1
        for s in shift:
            d = _lcm2(d, s.denominator)
        qden = 1
        for row in m:
            for entry in row:
                qden = _lcm2(qden, entry.denominator)
        den_a = 1
        for entry in a:
            den_a = _lcm2(den_a, entry.denominator)
        self.d = d
        self.q = qden
        self.QD = qden * d
        self.S = den_a * self.QD * self.QD
        self.A2 = [int(entry * den_a) for entry in a]
        self.M2 = [[int(entry * qden) for entry in row] for row in m]
        self.P0 = [int(s * d) for s in shift]
        self.budget = budget
        self.nodes = 0

    def _center(self, i, csum):
        """c_i at scale QD given csum at scale QD."""
        return self.P0[i] * self.q + csum[i]

    def babai(self):
        """Norm (Fraction) of the Babai nearest-plane coset representative."""
        n = self.n
        if n == 0:
            return Fraction(0)
        A2, M2, P0, d, q, QD, S = (self.A2, self.M2, self.P0,
                                   self.d, self.q, self.QD, self.S)
        csum = [0] * n
        rest = 0
        for i in range(n - 1, -1, -1):
            ci = P0[i] * q + csum[i]
            xi = -_round_frac(Fraction(ci, QD))
            t = xi * QD + ci
            rest += A2[i] * t * t
            p = xi * d + P0[i]
            for j in range(i):
                csum[j] += M2[j][i] * p
        return Fraction(rest, S)

    def walk(self, bound, *, on_vector=None, count_by_norm=None, best_hint=None):
        """Visit all x in Z^n with q(x + shift) <= bound.

        ``on_vector(norm, x)`` may return True to stop early; with
        ``count_by_norm`` (a dict: scaled-int norm -> count, divide keys by
        self.S) vectors are tallied, never materialized.  Returns True iff a
        callback stopped the walk.
        """
        n = self.n
        if n == 0:
            return False
        bound_s = Fraction(bound) * self.S
        if bound_s < 0:
            return False
        cap = bound_s.numerator // bound_s.denominator  # norms at scale S are ints
        A2, M2, P0, d, q, QD, S = (self.A2, self.M2, self.P0,
                                   self.d, self.q, self.QD, self.S)
        x = [0] * n
        budget = self.budget

        def rec(i, rest, csum):
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise BudgetExceeded("enumeration node budget exhausted",
                                     best=best_hint)
            ai = A2[i]
            ci = P0[i] * q + csum[i]
            room = cap - rest
            if room < 0:
                return
            T = isqrt(room // ai)
            lo = -((T + ci) // QD)
            hi = (T - ci) // QD
            if lo > hi:
                return
            if i == 0:
                if count_by_norm is not None:
                    for x0 in range(lo, hi + 1):
                        t = x0 * QD + ci
                        norm = rest + ai * t * t
                        count_by_norm[norm] = count_by_norm.get(norm, 0) + 1
                    return
                for x0 in range(lo, hi + 1):
                    x[0] = x0
                    t = x0 * QD + ci
                    norm = rest + ai * t * t
                    if on_vector is not None and on_vector(
                            Fraction(norm, S), x[:]):
                        raise _StopWalk
                return
            mi = [M2[j][i] for j in range(i)]
            pi0 = P0[i]
            for xi in range(lo, hi + 1):
                x[i] = xi
                t = xi * QD + ci
                nrest = rest + ai * t * t
                if nrest > cap:
                    continue
                p = xi * d + pi0
                sub = [csum[j] + mi[j] * p for j in range(i)]
                rec(i - 1, nrest, sub)

        try:
            rec(n - 1, 0, [0] * n)
        except _StopWalk:
            return True
        return False


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def short_vectors(gram, bound, *, half=False, budget=None, reduce_first=True):
    """All lattice vectors with 0 < x^T G x <= bound, sorted by (norm, x).

    Returns ``[(norm, x), ...]``; both of ±x appear unless ``half=True``,
    which keeps one representative per pair.
    """
    n = len(gram)
    if n == 0 or bound <= 0:
        return []
    if reduce_first and n > 1:
        g2, t = lll_reduce(gram)
    else:
        g2, t = gram, None
    eng = _Engine(g2, budget=budget)
    found = []

    def emit(norm, x):
        if norm > 0 and any(x):
            found.append((norm, x))
        return False

    eng.walk(bound, on_vector=emit)
    out = []
    for norm, x in found:
        if half:
            keep = False
            for c in reversed(x):
                if c:
                    keep = c > 0
                    break
            if not keep:
                continue
        if t is not None:
            x = [sum(x[i] * t[i][j] for i in range(n)) for j in range(n)]
        out.append((_as_int(norm), [int(v) for v in x]))
    out.sort(key=lambda p: (p[0], p[1]))
    return out


def coset_min_norm(gram, shift, *, budget=None, reduce_first=True):
    """Exact minimum norm over {x + shift : x in Z^n}, certified.

    ``gram`` must be integral.  Dual shifts (integral pairing with every
    basis vector) get the residue-class certificate: coset norms agree mod 2
    for an even Gram, mod 1 for an odd one, so an empty search one step
    below the best norm proves minimality.  A non-dual rational shift falls
    back to a full sweep at the initial bound.
    """
    n = len(gram)
    shift = [Fraction(s) for s in shift]
    if n == 0:
        return 0
    if all(s.denominator == 1 for s in shift):
        return 0
    pair_integral = all(
        sum(gram[i][j] * shift[j] for j in range(n)).denominator == 1
        for i in range(n))
    even = all(gram[i][i] % 2 == 0 for i in range(n))
    step = 2 if (pair_integral and even) else (1 if pair_integral else None)

    if reduce_first and n > 1:
        g2, t = lll_reduce(gram)
        # engine works in y-coordinates, original v = y @ t
        shift2 = rational_solve(
            [[Fraction(t[j][i]) for j in range(n)] for i in range(n)], shift)
    else:
        g2, shift2 = gram, shift
    eng = _Engine(g2, shift=shift2, budget=budget)
    best = eng.babai()

    if step is None:
        state = {"best": best}

        def track(norm, _x):
            if norm < state["best"]:
                state["best"] = norm
            return False

        try:
            eng.walk(best, on_vector=track, best_hint=best)
        except BudgetExceeded:
            raise BudgetExceeded("coset_min_norm: sweep budget exhausted",
                                 best=state["best"])
        return _as_int(state["best"])

    while best > 0:
        probe = best - step
        if probe < 0:
            break
        hits = []

        def grab(norm, _x):
            hits.append(norm)
            return True

        try:
            stopped = eng.walk(probe, on_vector=grab, best_hint=best)
        except BudgetExceeded:
            raise BudgetExceeded(
                "coset_min_norm: certification budget exhausted", best=best)
        if stopped and hits:
            best = hits[0]
            continue
        break
    return _as_int(best)


def coset_norm_counts(gram, shift, bound, *, budget=None, reduce_first=True):
    """{norm: count} for coset vectors with norm <= bound, exact counts.

    A zero shift tallies the lattice itself, zero vector included.
    """
    n = len(gram)
    shift = [Fraction(s) for s in shift]
    if n == 0:
        return {0: 1} if bound >= 0 else {}
    if reduce_first and n > 1:
        g2, t = lll_reduce(gram)
        shift2 = rational_solve(
            [[Fraction(t[j][i]) for j in range(n)] for i in range(n)], shift)
    else:
        g2, shift2 = gram, shift
    eng = _Engine(g2, shift=shift2, budget=budget)
    raw = {}
    eng.walk(Fraction(bound), count_by_norm=raw)
    return {_as_int(Fraction(k, eng.S)): v for k, v in sorted(raw.items())}
