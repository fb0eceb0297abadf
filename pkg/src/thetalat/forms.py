"""Half-integral symmetric matrices T and their canonical keys.

T is stored as (diag, off) with diag = (t_11..t_nn) integers and
off = doubled off-diagonals g_ij = 2*t_ij in row-major order
(1,2),(1,3),...,(1,n),(2,3),...  The associated even matrix is 2T.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import isqrt

from . import exact
from .errors import ThetalatError


class NotPositiveSemidefinite(ThetalatError):
    """Decoded or supplied T is not positive semidefinite."""


def _off_positions(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class HalfIntMat:
    """Half-integral symmetric matrix: integer diagonal, integer doubled off-diagonal."""

    diag: tuple
    off: tuple

    def __post_init__(self):
        n = len(self.diag)
        if len(self.off) != n * (n - 1) // 2:
            raise ValueError("off-diagonal length mismatch")
        object.__setattr__(self, "diag", tuple(int(x) for x in self.diag))
        object.__setattr__(self, "off", tuple(int(x) for x in self.off))

    @property
    def n(self) -> int:
        return len(self.diag)

    def two_t(self):
        """The even integer matrix 2T as a list of lists."""
        n = self.n
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 2 * self.diag[i]
        for (i, j), g in zip(_off_positions(n), self.off):
            m[i][j] = m[j][i] = g
        return m

    def det2t(self) -> int:
        return exact.det_bareiss(self.two_t())

    def is_psd(self) -> bool:
        return exact.is_psd_rational_pivot(self.two_t())

    def transform(self, perm, signs) -> "HalfIntMat":
        """T' with T'_ij = s_i s_j T_{perm(i) perm(j)} (signed permutation)."""
        n = self.n
        m = self.two_t()
        diag = tuple(m[perm[i]][perm[i]] // 2 for i in range(n))
        off = tuple(
            signs[i] * signs[j] * m[perm[i]][perm[j]] for i, j in _off_positions(n)
        )
        return HalfIntMat(diag, off)

    def canonical(self) -> "HalfIntMat":
        """Minimal representative under signed permutations, diagonal descending."""
        n = self.n
        best = None
        for perm in permutations(range(n)):
            d = tuple(self.diag[perm[i]] for i in range(n))
            if tuple(sorted(d, reverse=True)) != d:
                continue
            for signs in product((1, -1), repeat=n - 1):
                s = (1,) + signs  # global sign acts trivially on g_ij
                cand = self.transform(perm, s)
                key = (cand.diag, cand.off)
                if best is None or key < best:
                    best = key
        return HalfIntMat(*best)

    def key(self) -> str:
        d, o = self.diag, self.off
        return ",".join(map(str, d)) + "|" + ",".join(map(str, o))

    def __str__(self):
        return self.key()


def parse_key(s: str) -> HalfIntMat:
    dpart, _, opart = s.partition("|")
    diag = tuple(int(x) for x in dpart.split(",") if x != "")
    off = tuple(int(x) for x in opart.split(",") if x != "")
    return HalfIntMat(diag, off)


# -- spec'd operation names ------------------------------------------------

def det_exact(mat) -> int:
    """Exact determinant of a square integer matrix."""
    return exact.det_bareiss(mat)


def discriminant(t: HalfIntMat) -> int:
    """d_T := det(2T)."""
    return t.det2t()


def is_positive_semidefinite(t: HalfIntMat) -> bool:
    return t.is_psd()


def decode_binary(a: int, b: int, c: int) -> HalfIntMat:
    """Classical binary form [a,b,c] = a x^2 + b xy + c y^2."""
    return HalfIntMat((a, c), (b,))


def decode_ternary(a, b, c, d, e, f) -> HalfIntMat:
    """Ternary tuple [a,b,c;d,e,f]: diag (a,b,c), (g23, g13, g12) = (d, e, f)."""
    return HalfIntMat((a, b, c), (f, e, d))


def decode_ozeki4(t11, t22, t33, t44, u12, u13, u23, u14, u24, u34) -> HalfIntMat:
    """Degree-4 ten-tuple; u_ij are the doubled off-diagonals g_ij.

    Listed order (12),(13),(23),(14),(24),(34); internal order is row-major.
    Rejects tuples whose decoded T is not psd.
    """
    for t in (t11, t22, t33, t44):
        if t not in (0, 1, 2):
            raise ValueError("diagonal entries must lie in {0,1,2}")
    t = HalfIntMat((t11, t22, t33, t44), (u12, u13, u14, u23, u24, u34))
    if not t.is_psd():
        raise NotPositiveSemidefinite(f"decoded tuple is not psd: {t.key()}")
    return t


def canonical_key(t: HalfIntMat) -> str:
    return t.canonical().key()


# -- box enumeration -------------------------------------------------------

def _descending_diags(n, bound):
    out = []

    def rec(prefix, lo):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(min(lo, bound), -1, -1):
            rec(prefix + [v], v)

    rec([], bound)
    return out


def _stabilizer_actions(diag):
    """Signed permutations preserving `diag`, as (src index, sign) maps on off positions.

    Deduplicated; global sign flips are quotiented out.
    """
    n = len(diag)
    pos = _off_positions(n)
    pos_index = {p: k for k, p in enumerate(pos)}
    seen = set()
    actions = []
    for perm in permutations(range(n)):
        if any(diag[perm[i]] != diag[i] for i in range(n)):
            continue
        for signs in product((1, -1), repeat=n - 1):
            s = (1,) + signs
            src = []
            sgn = []
            for (i, j) in pos:
                a, b = perm[i], perm[j]
                if a > b:
                    a, b = b, a
                src.append(pos_index[(a, b)])
                sgn.append(s[perm[i]] * s[perm[j]])
            fp = (tuple(src), tuple(sgn))
            if fp not in seen:
                seen.add(fp)
                actions.append(fp)
    return actions


def _off_ranges(diag):
    return [isqrt(4 * diag[i] * diag[j]) for i, j in _off_positions(len(diag))]


def box_classes(n: int, bound: int, with_sizes: bool = False):
    """All canonical psd classes with 0 <= t_ii <= bound.

    Returns a list of HalfIntMat (canonical, key-sorted), or (list, sizes)
    where sizes[key] counts raw off-diagonal tuples in the class per diagonal.
    """
    import numpy as np

    classes = []
    sizes = {}
    for diag in _descending_diags(n, bound):
        m = n * (n - 1) // 2
        if m == 0:
            t = HalfIntMat(diag, ())
            classes.append(t)
            sizes[t.key()] = 1
            continue
        ranges = _off_ranges(diag)
        grids = np.meshgrid(*[np.arange(-r, r + 1, dtype=np.int64) for r in ranges],
                            indexing="ij")
        arr = np.stack([g.ravel() for g in grids], axis=1)  # (N, m)
        weights = np.array([9 ** (m - 1 - k) for k in range(m)], dtype=np.int64)
        base = int((weights * 4).sum())
        keys = arr @ weights  # canonical key = min over actions of (arr@coef)+base
        best = keys.copy()
        for src, sgn in _stabilizer_actions(diag):
            coef = np.zeros(m, dtype=np.int64)
            for tgt in range(m):
                coef[src[tgt]] += sgn[tgt] * int(weights[tgt])
            np.minimum(best, arr @ coef, out=best)
        uniq, counts = np.unique(best, return_counts=True)
        for key_val, cnt in zip(uniq.tolist(), counts.tolist()):
            digits = []
            v = key_val + base
            for _ in range(m):
                digits.append(v % 9 - 4)
                v //= 9
            off = tuple(reversed(digits))
            t = HalfIntMat(diag, off)
            if not t.is_psd():
                continue
            classes.append(t)
            sizes[t.key()] = cnt
    classes.sort(key=lambda t: t.key())
    if with_sizes:
        return classes, sizes
    return classes
