"""Exact short-vector enumeration (Fincke-Pohst) and its on-disk cache.

All pruning bounds are computed with integer square roots on
cross-multiplied inequalities; no floating-point square roots anywhere.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import exact
from .errors import BudgetExceeded, CacheMiss, CorruptCache, NotPositiveDefinite

DEFAULT_VECTOR_BUDGET = 10_000_000


def gram_hash(gram) -> str:
    text = ";".join(",".join(str(int(x)) for x in row) for row in gram)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class VectorList:
    """Shells of lattice vectors, coordinates in the lattice basis, lex-sorted."""

    label: str
    gram_hash: str
    bound: int
    shells: dict  # norm -> np.ndarray (k, rank) int64

    @property
    def counts(self):
        return {n: int(v.shape[0]) for n, v in sorted(self.shells.items())}

    def shell(self, norm):
        if norm > self.bound:
            from .errors import ShellMissing

            raise ShellMissing(
                f"shell {norm} beyond cached bound {self.bound} for {self.label}"
            )
        rank = next(iter(self.shells.values())).shape[1] if self.shells else 0
        return self.shells.get(norm, np.zeros((0, rank), dtype=np.int64))

    def restrict(self, bound):
        if bound > self.bound:
            raise CacheMiss(f"requested bound {bound} > stored {self.bound}")
        return VectorList(
            self.label,
            self.gram_hash,
            bound,
            {n: v for n, v in self.shells.items() if n <= bound},
        )


def cholesky_rational(gram):
    """Exact L·D·L^T of a positive definite integer Gram matrix."""
    try:
        d, low = exact.ldl_gram(gram)
    except ValueError as e:
        raise NotPositiveDefinite(str(e)) from None
    return d, low


def enumerate_short(lat, bound: int, budget: int = DEFAULT_VECTOR_BUDGET) -> VectorList:
    """All vectors with norm <= bound, exact, deterministic, lex-sorted shells.

    `lat` may be a Lattice or a raw Gram matrix (list of rows).
    """
    gram = lat.gram if hasattr(lat, "gram") else [list(r) for r in lat]
    label = getattr(lat, "label", "adhoc")
    n = len(gram)
    if bound < 0:
        raise ValueError("bound must be >= 0")

    # LLL first: enumeration runs in the reduced basis, output mapped back.
    u, gred = exact.lll_gram(gram)
    d, low = cholesky_rational(gred)
    # Q(x) = sum_j d[j] * (x_j + c_j)^2 with c_j = sum_{i>j} x_i * low[i][j]
    dnum = [f.numerator for f in d]
    dden = [f.denominator for f in d]
    lowcol = [[low[i][j] for i in range(n)] for j in range(n)]  # column j

    found = []  # (norm:int, coords tuple) in reduced basis
    budget_left = [budget]

    xs = [0] * n

    def rec(j, rem: Fraction, nonzero_seen: bool):
        # rem = bound - sum of completed levels > j
        if j < 0:
            norm = bound - rem
            assert norm.denominator == 1
            found.append((int(norm), tuple(xs)))
            budget_left[0] -= 1
            if budget_left[0] < 0:
                raise BudgetExceeded(
                    f"vector budget {budget} exhausted enumerating {label}@{bound}"
                )
            return
        c = Fraction(0)
        col = lowcol[j]
        for i in range(j + 1, n):
            if xs[i]:
                c += xs[i] * col[i]
        p, q = c.numerator, c.denominator
        a, b = dnum[j], dden[j]
        tn, td = rem.numerator, rem.denominator
        # a/b * (x + p/q)^2 <= tn/td  <=>  (q x + p)^2 <= tn*b*q^2 / (a*td)
        mm = (tn * b * q * q) // (a * td)
        r = isqrt(mm)
        # ceil((-r - p)/q) and floor((r - p)/q) with q > 0
        lo = -((r + p) // q)
        hi = (r - p) // q
        if not nonzero_seen and lo < 0:
            lo = 0
        for x in range(lo, hi + 1):
            xs[j] = x
            t = q * x + p
            used = Fraction(a * t * t, b * q * q)
            rec(j - 1, rem - used, nonzero_seen or x != 0)
        xs[j] = 0

    rec(n - 1, Fraction(bound), False)

    by_norm = {}
    for norm, coords in found:
        by_norm.setdefault(norm, []).append(coords)
    u_arr = np.array(u, dtype=np.int64)
    shells = {}
    for norm, vecs in by_norm.items():
        arr = np.array(vecs, dtype=np.int64) @ u_arr  # back to lattice basis
        if norm > 0:
            arr = np.vstack([arr, -arr])
        order = np.lexsort(arr.T[::-1])
        shells[norm] = np.ascontiguousarray(arr[order])
    if 0 not in shells:
        shells[0] = np.zeros((1, n), dtype=np.int64)
    vl = VectorList(label, gram_hash(gram), bound, shells)
    _verify_norms(vl, gram)
    return vl


def _verify_norms(vl: VectorList, gram):
    g = np.array(gram, dtype=np.int64)
    for norm, arr in vl.shells.items():
        if arr.shape[0] == 0:
            continue
        vals = np.einsum("ij,jk,ik->i", arr, g, arr)
        if not np.all(vals == norm):
            raise CorruptCache(f"shell {norm} norm check failed for {vl.label}")


# -- cache -----------------------------------------------------------------

def _cache_path(cache_dir, label, ghash, bound):
    return os.path.join(cache_dir, f"sv_{label}_{ghash}_{bound}.txt")


def cache_store(vl: VectorList, cache_dir: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, vl.label, vl.gram_hash, vl.bound)
    norms = sorted(vl.shells)
    shell_summary = ",".join(f"{n}:{vl.shells[n].shape[0]}" for n in norms)
    lines = [
        f"svcache;format=1;label={vl.label};gramhash={vl.gram_hash};"
        f"bound={vl.bound};shells={shell_summary}"
    ]
    for n in norms:
        arr = vl.shells[n]
        lines.append(f"shell {n} {arr.shape[0]}")
        for row in arr:
            lines.append(",".join(str(int(x)) for x in row))
    tmp = path + ".tmp"
    with open(tmp, "w") as f:
        f.write("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return path


def cache_load(label: str, bound: int, gram, cache_dir: str) -> VectorList:
    """Load shells for `label` at >= bound, verifying Gram hash and counts."""
    ghash = gram_hash(gram)
    path = _cache_path(cache_dir, label, ghash, bound)
    if not os.path.exists(path):
        candidates = []
        if os.path.isdir(cache_dir):
            prefix = f"sv_{label}_{ghash}_"
            for name in os.listdir(cache_dir):
                if name.startswith(prefix) and name.endswith(".txt"):
                    try:
                        b = int(name[len(prefix):-4])
                    except ValueError:
                        continue
                    if b >= bound:
                        candidates.append((b, name))
        if not candidates:
            raise CacheMiss(f"no cache for {label}@{bound} ({ghash})")
        candidates.sort()
        path = os.path.join(cache_dir, candidates[0][1])
    with open(path) as f:
        header = f.readline().strip()
        fields = dict(
            kv.split("=", 1) for kv in header.split(";")[2:] if "=" in kv
        )
        if not header.startswith("svcache;format=1;"):
            raise CorruptCache(f"bad header in {path}")
        if fields.get("gramhash") != ghash:
            raise CorruptCache(f"gram hash mismatch in {path}")
        stored_bound = int(fields["bound"])
        declared = {}
        if fields.get("shells"):
            for part in fields["shells"].split(","):
                nn, cc = part.split(":")
                declared[int(nn)] = int(cc)
        shells = {}
        rank = len(gram)
        while True:
            line = f.readline()
            if not line:
                break
            line = line.strip()
            if not line:
                continue
            if not line.startswith("shell "):
                raise CorruptCache(f"unexpected line in {path}: {line[:40]}")
            _, norm_s, count_s = line.split()
            norm, count = int(norm_s), int(count_s)
            rows = np.empty((count, rank), dtype=np.int64)
            for i in range(count):
                rows[i] = [int(x) for x in f.readline().split(",")]
            shells[norm] = rows
    for n, c in declared.items():
        if n not in shells or shells[n].shape[0] != c:
            raise CorruptCache(f"shell count mismatch for norm {n} in {path}")
    vl = VectorList(label, ghash, stored_bound, shells)
    _verify_norms(vl, gram)
    return vl.restrict(bound) if bound < stored_bound else vl


def load_or_enumerate(lat, bound, cache_dir=None, budget=DEFAULT_VECTOR_BUDGET):
    if cache_dir:
        try:
            return cache_load(lat.label, bound, lat.gram, cache_dir)
        except CacheMiss:
            pass
    vl = enumerate_short(lat, bound, budget=budget)
    if cache_dir:
        cache_store(vl, cache_dir)
    return vl
