"""Exact integer and rational linear algebra.

Everything here works on Python ints / Fractions; no floating point.
Matrices are lists of lists (or tuples of tuples) of integers unless noted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def det_bareiss(mat) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_minor(mat, rows) -> int:
    """Determinant of the principal submatrix on the given index tuple."""
    sub = [[mat[i][j] for j in rows] for i in rows]
    return det_bareiss(sub)


def is_positive_definite(mat) -> bool:
    """Sylvester test: all leading principal minors positive."""
    n = len(mat)
    for k in range(1, n + 1):
        if det_minor(mat, tuple(range(k))) <= 0:
            return False
    return True


def is_psd_rational_pivot(mat) -> bool:
    """PSD test for a symmetric integer matrix by exact rational pivoting.

    Repeatedly eliminates on a positive diagonal pivot; a negative diagonal
    entry, or a zero diagonal with nonzero row, certifies "not PSD".
    """
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] for i in range(n)]
    active = list(range(n))
    while active:
        pivot_idx = None
        for i in active:
            if a[i][i] < 0:
                return False
            if a[i][i] > 0 and pivot_idx is None:
                pivot_idx = i
        if pivot_idx is None:
            # all active diagonal entries are zero: rows must vanish
            for i in active:
                for j in active:
                    if a[i][j] != 0:
                        return False
            return True
        p = pivot_idx
        d = a[p][p]
        active.remove(p)
        for i in active:
            if a[i][p] == 0:
                continue
            f = a[i][p] / d
            for j in active:
                a[i][j] -= f * a[p][j]
            a[i][p] = Fraction(0)
    return True


def is_psd_minors(mat) -> bool:
    """Oracle PSD test: every principal minor is nonnegative (use for small n)."""
    n = len(mat)
    idx = list(range(n))
    for size in range(1, n + 1):
        for rows in _combinations(idx, size):
            if det_minor(mat, rows) < 0:
                return False
    return True


def _combinations(pool, r):
    n = len(pool)
    if r > n:
        return
    indices = list(range(r))
    yield tuple(pool[i] for i in indices)
    while True:
        for i in reversed(range(r)):
            if indices[i] != i + n - r:
                break
        else:
            return
        indices[i] += 1
        for j in range(i + 1, r):
            indices[j] = indices[j - 1] + 1
        yield tuple(pool[i] for i in indices)


def _xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_rows(mat):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows: pivot columns strictly increasing, pivots
    positive, entries above each pivot reduced into [0, pivot).
    """
    rows = [list(map(int, r)) for r in mat]
    if not rows:
        return []
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        # clear column `col` below pivot_row using gcd row ops
        nz = [i for i in range(pivot_row, len(rows)) if rows[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        rows[pivot_row], rows[i0] = rows[i0], rows[pivot_row]
        for i in range(pivot_row + 1, len(rows)):
            if rows[i][col] == 0:
                continue
            a, b = rows[pivot_row][col], rows[i][col]
            g, x, y = _xgcd(a, b)
            pa, pb = a // g, b // g
            r_new = [x * rows[pivot_row][j] + y * rows[i][j] for j in range(ncols)]
            rows[i] = [pa * rows[i][j] - pb * rows[pivot_row][j] for j in range(ncols)]
            rows[pivot_row] = r_new
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-v for v in rows[pivot_row]]
        p = rows[pivot_row][col]
        for i in range(pivot_row):
            q = rows[i][col] // p
            if q:
                rows[i] = [rows[i][j] - q * rows[pivot_row][j] for j in range(ncols)]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return [r for r in rows[:pivot_row]]


def gram_of_rows(rows, scale=1):
    """Gram matrix rows @ rows^T divided by `scale`, verified integral.

    Entries are Fractions reduced to ints; raises ValueError if not integral.
    """
    m = len(rows)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1):
            v = sum(rows[i][k] * rows[j][k] for k in range(len(rows[i])))
            if scale != 1:
                if v % scale:
                    raise ValueError("gram entry not integral under scale")
                v //= scale
            out[i][j] = out[j][i] = v
    return out


def ldl_gram(gram):
    """Exact LDL^T of a positive definite integer Gram matrix.

    Returns (diag, lower) with diag[i] Fractions > 0 and lower unit
    lower-triangular Fractions, so gram = L D L^T.
    """
    n = len(gram)
    d = [Fraction(0)] * n
    low = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        low[i][i] = Fraction(1)
    for j in range(n):
        s = Fraction(gram[j][j])
        for k in range(j):
            s -= low[j][k] * low[j][k] * d[k]
        if s <= 0:
            raise ValueError("matrix not positive definite")
        d[j] = s
        for i in range(j + 1, n):
            t = Fraction(gram[i][j])
            for k in range(j):
                t -= low[i][k] * low[j][k] * d[k]
            low[i][j] = t / d[j]
    return d, low


def lll_gram(gram, delta=Fraction(3, 4)):
    """Exact LLL reduction working on the Gram matrix alone.

    Returns (u, reduced) with u integer unimodular and
    reduced = u * gram * u^T.  Classic exact algorithm with incremental
    rational GSO updates; input must be positive definite.
    """
    n = len(gram)
    g0 = [[int(x) for x in row] for row in gram]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    # initial GSO from the integer gram
    mu = [[Fraction(0)] * n for _ in range(n)]
    bs = [Fraction(0)] * n
    cbuf = [[Fraction(0)] * n for _ in range(n)]  # c[i][j] = <b_i, b*_j>
    for i in range(n):
        for j in range(i):
            s = Fraction(g0[i][j])
            for t in range(j):
                s -= mu[j][t] * cbuf[i][t]
            cbuf[i][j] = s
            mu[i][j] = s / bs[j]
        s = Fraction(g0[i][i])
        for t in range(i):
            s -= mu[i][t] * cbuf[i][t]
        bs[i] = s
        if s <= 0:
            raise ValueError("lll_gram needs a positive definite gram")

    def red(k, l):
        if 2 * abs(mu[k][l]) <= 1:
            return
        q = _round_half_even(mu[k][l])
        for t in range(n):
            u[k][t] -= q * u[l][t]
        mu[k][l] -= q
        for j in range(l):
            mu[k][j] -= q * mu[l][j]

    k = 1
    while k < n:
        red(k, k - 1)
        if bs[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1]:
            # swap rows k-1, k with local GSO updates
            mub = mu[k][k - 1]
            bbar = bs[k] + mub * mub * bs[k - 1]
            mu_new = mub * bs[k - 1] / bbar
            bs[k] = bs[k - 1] * bs[k] / bbar
            bs[k - 1] = bbar
            u[k], u[k - 1] = u[k - 1], u[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            mu[k][k - 1] = mu_new
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - mub * t
                mu[i][k - 1] = t + mu_new * mu[i][k]
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1

    reduced = [[0] * n for _ in range(n)]
    for i in range(n):
        gu = [sum(u[i][a] * g0[a][b] for a in range(n)) for b in range(n)]
        for j in range(i + 1):
            v = sum(gu[b] * u[j][b] for b in range(n))
            reduced[i][j] = reduced[j][i] = v
    return u, reduced


def _round_half_even(x: Fraction) -> int:
    """Nearest integer to a Fraction (ties to even)."""
    p, q = x.numerator, x.denominator
    fl, rem = divmod(p, q)
    twice = 2 * rem
    if twice > q or (twice == q and fl % 2 == 1):
        return fl + 1
    return fl


def isqrt_floor_ratio(num: int, den: int) -> int:
    """floor(sqrt(num/den)) for nonnegative num, positive den, exactly."""
    if num < 0:
        raise ValueError("negative radicand")
    return isqrt(num // den) if den == 1 else _isqrt_ratio(num, den)


def _isqrt_ratio(num: int, den: int) -> int:
    r = isqrt(num // den)
    # correct possible off-by-one from the floor division
    while (r + 1) * (r + 1) * den <= num:
        r += 1
    while r * r * den > num:
        r -= 1
    return r


def triangular_solve_batch(basis_rows, vectors):
    """Solve x @ B = v exactly for many integer v, B in HNF (row) form.

    basis_rows: HNF rows (pivot columns increasing, pivots positive).
    vectors: numpy int array (k x ncols).  Returns numpy int64 (k x nrows).
    Raises ValueError if any solution is non-integral or inconsistent.
    """
    import numpy as np

    b = np.asarray(basis_rows, dtype=np.int64)
    v = np.asarray(vectors, dtype=np.int64)
    nrows, ncols = b.shape
    pivots = []
    for i in range(nrows):
        nz = np.nonzero(b[i])[0]
        pivots.append(int(nz[0]))
    x = np.zeros((v.shape[0], nrows), dtype=np.int64)
    rem = v.copy()
    # forward substitution: at step i every remaining row j > i has a later
    # pivot column, so column pivots[i] isolates x_i
    for i in range(nrows):
        p = pivots[i]
        col = rem[:, p]
        if np.any(col % b[i, p]):
            raise ValueError("non-integral coordinate")
        xi = col // b[i, p]
        x[:, i] = xi
        rem -= xi[:, None] * b[i][None, :]
    if np.any(rem):
        raise ValueError("vectors not in row span")
    return x


def common_denominator(fracs):
    """lcm of denominators of an iterable of Fractions."""
    den = 1
    for f in fracs:
        q = f.denominator
        den = den * q // gcd(den, q)
    return den
