"""Exact integer/rational matrix kernels.

Everything in this module works over Z or Q with no floating point at all.
Matrices are plain lists of lists (rows); vectors are plain lists.  The
functions that matter downstream are

    hnf(m)          row-style Hermite normal form with transform
    snf(m)          Smith normal form with both transforms
    lll_reduce(g)   exact LLL (delta = 3/4) on a Gram matrix
    det(m)          Bareiss fraction-free determinant
    rational_inverse / rational_solve

Conventions
-----------
* ``hnf`` returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``; ``h``
  is upper echelon, pivots positive, entries above a pivot reduced into
  ``[0, pivot)``, zero rows at the bottom.
* ``snf`` returns ``(d, u, v)`` with ``u @ m @ v == d`` diagonal,
  ``d[i][i] > 0`` dividing ``d[i+1][i+1]``, trailing zeros last.
* ``lll_reduce`` works on the Gram matrix only (no embedding needed) and
  returns ``(g2, t)`` with ``g2 == t @ g @ t^T`` and ``t`` unimodular.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------

def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(m):
    return [row[:] for row in m]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a, b):
    """a @ b for list-of-list matrices (int or Fraction entries)."""
    if not a or not b:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m, v):
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def vec_mat(v, m):
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


def mat_eq(a, b):
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def is_symmetric(m):
    n = len(m)
    return all(len(r) == n for r in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def gram_apply(g, u, v):
    """Bilinear form value u^T g v."""
    return dot(mat_vec(g, v), u)


def gram_norm(g, v):
    return gram_apply(g, v, v)


def scalar_mat(c, m):
    return [[c * x for x in row] for row in m]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


# ---------------------------------------------------------------------------
# determinant (Bareiss, fraction-free) and rational elimination
# ---------------------------------------------------------------------------

def det(m):
    """Determinant of a square integer matrix via Bareiss elimination.

    Stays in integers throughout; all divisions are exact.  Rational input
    falls back to plain fraction Gauss (still exact).
    """
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("det: matrix is not square")
    if any(not isinstance(x, int) for row in m for x in row):
        return _det_rational(m)
    a = mat_copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            # pivot search; a zero column means det 0
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_rational(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    out = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        out *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return sign * out


def rational_inverse(m):
    """Exact inverse of a square matrix, entries become Fraction."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ValueError("rational_inverse: singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def rational_solve(m, rhs):
    """Solve m @ x = rhs exactly (m square nonsingular)."""
    inv = rational_inverse(m)
    return mat_vec(inv, [Fraction(x) for x in rhs])


# ---------------------------------------------------------------------------
# Hermite normal form (row style, with transform)
# ---------------------------------------------------------------------------

def hnf(m):
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular over Z and ``u @ m == h``.
    ``h`` is in upper echelon form: pivot entries positive, entries above a
    pivot reduced into ``[0, pivot)``, zero rows collected at the bottom.

    >>> hnf([[2, 6], [4, 8]])[0]
    [[2, 2], [0, 4]]
    """
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    if any(len(r) != cols for r in m):
        raise ValueError("hnf: ragged matrix")
    if any(not isinstance(x, int) for row in m for x in row):
        raise TypeError("hnf: integer entries required")
    h = mat_copy(m)
    u = identity(rows)
    r = 0  # current pivot row
    for c in range(cols):
        if r == rows:
            break
        # clear column c below row r using extended gcd row ops
        piv = None
        for i in range(r, rows):
            if h[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, rows):
            while h[i][c] != 0:
                q = h[r][c] // h[i][c]
                h[r] = [x - q * y for x, y in zip(h[r], h[i])]
                u[r] = [x - q * y for x, y in zip(u[r], u[i])]
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        # reduce entries above the pivot
        p = h[r][c]
        for i in range(r):
            q = h[i][c] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def hnf_basis(m):
    """Nonzero rows of the HNF of ``m`` — a canonical basis of the row span."""
    h, _ = hnf(m)
    return [row for row in h if any(row)]


def row_span_index(outer, inner):
    """Index [outer : inner] of integer row spans (inner ⊆ outer required)."""
    ho = hnf_basis(outer)
    hi = hnf_basis(inner)
    if len(ho) != len(hi):
        raise ValueError("row_span_index: ranks differ")
    do = det([r[:len(ho)] for r in _square_part(ho)])
    di = det([r[:len(hi)] for r in _square_part(hi)])
    if do == 0 or di % do:
        raise ValueError("row_span_index: inner not a finite-index sublattice")
    return abs(di // do)


def _square_part(rows):
    """Select pivot columns so echelon rows become a square invertible block."""
    cols = []
    for r in rows:
        for j, x in enumerate(r):
            if x:
                cols.append(j)
                break
    return [[r[j] for j in cols] for r in rows]


def kernel_basis(m):
    """Basis of the integer (left-)null space {x : x @ m == 0} via HNF."""
    h, u = hnf(m)
    return [u[i] for i in range(len(h)) if not any(h[i])]


# ---------------------------------------------------------------------------
# Smith normal form (with transforms)
# ---------------------------------------------------------------------------

def snf(m):
    """Smith normal form: ``(d, u, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are unimodular; ``d`` is diagonal with positive entries
    each dividing the next, trailing zeros last.
    """
    if not m:
        return [], [], []
    rows, cols = len(m), len(m[0])
    a = mat_copy(m)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the trailing block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        # kill row/column t; restarts are needed because clearing the row can
        # refill the column and vice versa, but the pivot |a[t][t]| strictly
        # shrinks at every restart so this terminates
        while True:
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(i, t)
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(j, t)
            if any(a[t][j] for j in range(t + 1, cols)):
                continue
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            # divisibility sweep: pivot must divide every later entry
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            addmul_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def snf_diagonal(m):
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


# ---------------------------------------------------------------------------
# exact LLL on a Gram matrix (delta = 3/4)
# ---------------------------------------------------------------------------

def lll_reduce(gram, delta=Fraction(3, 4)):
    """Exact LLL reduction of a positive-definite Gram matrix.

    Returns ``(g2, t)`` with ``t`` unimodular and ``g2 == t @ gram @ t^T``.
    Operates purely on Gram data, so it applies to lattices given without an
    embedding.  The Gram–Schmidt data is kept as exact fractions; with
    ``delta = 3/4`` the usual size-reduction/swap loop terminates.
    """
    n = len(gram)
    if n == 0:
        return [], []
    g = [[Fraction(x) for x in row] for row in gram]
    t = identity(n)

    # mu[i][j] (j < i) Gram–Schmidt coefficients, b2[i] = |b_i*|^2
    mu = [[Fraction(0)] * n for _ in range(n)]
    b2 = [Fraction(0)] * n

    def refresh(upto):
        """Recompute GS data for rows 0..upto (inclusive) from g."""
        for i in range(upto + 1):
            for j in range(i):
                s = g[i][j]
                for k in range(j):
                    s -= mu[i][k] * mu[j][k] * b2[k]
                mu[i][j] = s / b2[j] if b2[j] else Fraction(0)
            s = g[i][i]
            for k in range(i):
                s -= mu[i][k] * mu[i][k] * b2[k]
            b2[i] = s

    def row_op(i, j, q):
        """b_i := b_i - q b_j, mirrored on g (rows and columns) and t."""
        t[i] = [x - q * y for x, y in zip(t[i], t[j])]
        for k in range(n):
            g[i][k] -= q * g[j][k]
        for k in range(n):
            g[k][i] -= q * g[k][j]

    def swap(i):
        t[i], t[i - 1] = t[i - 1], t[i]
        g[i], g[i - 1] = g[i - 1], g[i]
        for row in g:
            row[i], row[i - 1] = row[i - 1], row[i]

    refresh(n - 1)
    k = 1
    while k < n:
        # size-reduce b_k against b_{k-1} .. b_0
        for j in range(k - 1, -1, -1):
            q = _round_half_even(mu[k][j])
            if q:
                row_op(k, j, q)
                refresh(k)
        if b2[k] >= (delta - mu[k][k - 1] ** 2) * b2[k - 1]:
            k += 1
        else:
            swap(k)
            refresh(k)
            k = max(k - 1, 1)
    g_out = [[x if isinstance(x, int) else _as_int_if_possible(x)
              for x in row] for row in g]
    return g_out, t


def _round_half_even(x):
    """Nearest integer to a Fraction (ties to even, any tie rule works)."""
    f = Fraction(x)
    q, r = divmod(f.numerator, f.denominator)
    if 2 * r > f.denominator or (2 * r == f.denominator and q % 2):
        q += 1
    return q


def _as_int_if_possible(x):
    return int(x) if isinstance(x, Fraction) and x.denominator == 1 else x


# ---------------------------------------------------------------------------
# misc number-theory helpers used across modules
# ---------------------------------------------------------------------------

def gcd_list(xs):
    out = 0
    for x in xs:
        out = gcd(out, x)
    return out


def lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0


def lcm_list(xs):
    out = 1
    for x in xs:
        out = lcm(out, x)
    return out
