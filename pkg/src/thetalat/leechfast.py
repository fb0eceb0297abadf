"""Fast exact Leech-lattice paths: the 196560 minimal vectors by coordinate
shape, orbit statistics for pairs/triples/quadruples, and a tabulated reader
for degree <= 4 theta coefficients on the diagonal box t_ii <= 2.

The minimal vectors in the mod-8 frame are exactly the integer points of
square length 32 in the three shapes (+-4^2), (+-2^8 on an octad, evenly
many minus signs), and (+-3, +-1^23 with Golay sign pattern); this is forced
by the congruence x = m*(1,..,1) mod 2 together with (x - m)/2 mod 2 lying
in the Golay code and sum(x) = 4m mod 8.

Counting formulas factor through transitivity of the automorphism group on
minimal vectors and on ordered pairs with fixed inner product. Those
transitivity facts are configuration here, not derived group theory; they
are cross-validated by resampling (histograms recomputed from other base
points must agree) and by a direct no-transitivity count on the d_T = 121
class.
"""

from __future__ import annotations

import json
import os

import numpy as np

from . import codes, exact, shortvec
from .errors import AssertionUnverified, CacheMiss, CorruptCache

TABLE_FORMAT = 1
N_MIN = 196560
# digit weights for the flat key of (g13, g23, g14, g24, g34), base 9
KEY_WEIGHTS = (6561, 729, 81, 9, 1)
KEY_SPACE = 59049
PAIR_DOTS = (0, 1, 2)  # representative inner products needing tables


# -- minimal vectors ----------------------------------------------------------

def _ambient_minimal_rows():
    """All 196560 ambient rows of square length 32 in the mod-8 frame."""
    golay = codes.golay_code("binary24")
    words = np.array(golay.words, dtype=np.int64)  # (4096, 24) in {0,1}

    rows = []
    # shape (+-4, +-4): 4 sign pairs on each unordered coordinate pair
    for i in range(24):
        for j in range(i + 1, 24):
            for si in (4, -4):
                for sj in (4, -4):
                    r = np.zeros(24, dtype=np.int64)
                    r[i], r[j] = si, sj
                    rows.append(r)
    shape_a = np.array(rows)

    # shape (+-2^8): supports are the 759 octads, evenly many minus signs
    octads = words[words.sum(axis=1) == 8]
    masks = np.arange(256, dtype=np.uint32)
    popcount = np.array([bin(m).count("1") for m in masks])
    even_masks = masks[popcount % 2 == 0]  # 128 patterns
    signs = 1 - 2 * ((even_masks[:, None] >> np.arange(8)) & 1).astype(np.int64)
    blocks = []
    for oct_row in octads:
        support = np.nonzero(oct_row)[0]
        block = np.zeros((128, 24), dtype=np.int64)
        block[:, support] = 2 * signs
        blocks.append(block)
    shape_b = np.concatenate(blocks)

    # shape (+-3, +-1^23): base 1-2c, the +-3 slot k flips to 3*(2c_k - 1)
    base = 1 - 2 * words  # (4096, 24) in {+-1}
    blocks = []
    for k in range(24):
        block = base.copy()
        block[:, k] = -3 * base[:, k]
        blocks.append(block)
    shape_c = np.concatenate(blocks)

    if not (len(shape_a) == 1104 and len(shape_b) == 97152 and len(shape_c) == 98304):
        raise AssertionUnverified("leech shape counts off")
    return np.concatenate([shape_a, shape_b, shape_c])


def minimal_vector_list(lat) -> shortvec.VectorList:
    """VectorList (bound 4) for the Leech lattice, built from the shapes.

    Coordinates are w.r.t. the lattice basis; shells are lex-sorted, the
    norm-2 shell is empty, and every vector's norm is re-verified exactly.
    """
    if lat.label != "omega":
        raise ValueError("minimal_vector_list is Leech-only")
    basis = lat.construction["basis_rows"]
    amb = _ambient_minimal_rows()
    if not np.all((amb * amb).sum(axis=1) == 32):
        raise AssertionUnverified("ambient square lengths off")
    coords = exact.triangular_solve_batch(basis, amb)
    if np.unique(coords, axis=0).shape[0] != N_MIN:
        raise AssertionUnverified("duplicate minimal vectors")
    order = np.lexsort(coords.T[::-1])
    coords = coords[order]
    gram = np.array(lat.gram, dtype=np.int64)
    norms = np.einsum("ij,jk,ik->i", coords, gram, coords)
    if not np.all(norms == 4):
        raise AssertionUnverified("minimal vector norms off")
    zero = np.zeros((1, 24), dtype=np.int64)
    return shortvec.VectorList(
        label=lat.label, gram_hash=lat.gram_hash, bound=4,
        shells={0: zero, 4: coords},
    )


def minimal_vectors_cached(lat, cache_dir=None) -> shortvec.VectorList:
    """Load the Leech bound-4 VectorList from cache, else build and store."""
    if cache_dir:
        try:
            return shortvec.cache_load(lat.label, 4, lat.gram, cache_dir)
        except (CacheMiss, CorruptCache):
            pass
    vl = minimal_vector_list(lat)
    if cache_dir:
        shortvec.cache_store(vl, cache_dir)
    return vl


def _half_split(v: np.ndarray):
    """Negation-paired split: v[i] == -v[n-1-i], first half returned."""
    n = v.shape[0]
    if n % 2 or not np.array_equal(v, -v[::-1]):
        raise AssertionUnverified("shell not negation-symmetric under lex order")
    return v[: n // 2]


# -- orbit statistics ---------------------------------------------------------

def dot_histogram(v: np.ndarray, gram: np.ndarray, base: np.ndarray) -> np.ndarray:
    """Counts of v_i . base over the 9 dot values -4..4."""
    dots = v @ (gram @ base)
    if dots.min() < -4 or dots.max() > 4:
        raise AssertionUnverified("minimal pair dot out of range")
    return np.bincount(dots + 4, minlength=9)


def pair_histogram(v, gram, g12) -> np.ndarray:
    """9x9 histogram of (x . v0, x . x2) for a representative pair v0, x2."""
    v0, x2 = representative_pair(v, gram, g12)
    d0 = v @ (gram @ v0)
    d2 = v @ (gram @ x2)
    return np.bincount(9 * (d0 + 4) + (d2 + 4), minlength=81).reshape(9, 9)


def representative_pair(v, gram, g12):
    """(v0, x2): the lex-first minimal vector and the first with dot g12."""
    v0 = v[0]
    d0 = v @ (gram @ v0)
    idx = np.nonzero(d0 == g12)[0]
    idx = idx[idx != 0]
    if idx.size == 0:
        raise AssertionUnverified(f"no pair with inner product {g12}")
    return v0, v[idx[0]]


def joint_histogram4(v, gram, g12, *, pair=None, block=128, progress=None) -> np.ndarray:
    """Flat 9^5 histogram over ordered (x3, x4) in shell^2 of the dot tuple
    (x3.v0, x3.x2, x4.v0, x4.x2, x3.x4), for the representative pair of g12.

    Runs on the negation-paired half shell with a 4-fold sign expansion; the
    cross-dot GEMM is float32 with a checked exactness bound. An explicit
    (v0, x2) pair overrides the representative, for resampling validation.
    """
    v0, x2 = representative_pair(v, gram, g12) if pair is None else pair
    if int(v0 @ gram @ x2) != g12:
        raise ValueError("supplied pair has the wrong inner product")
    vp = _half_split(v)
    d0 = vp @ (gram @ v0)
    d2 = vp @ (gram @ x2)
    cell = (9 * (d0 + 4) + (d2 + 4)).astype(np.int64)  # 0..80 per half vector
    w = vp @ gram
    bound = 24 * int(np.abs(vp).max()) * int(np.abs(w).max())
    use_f32 = bound < 2**24
    wt = w.astype(np.float32).T if use_f32 else w.T
    half = np.zeros(KEY_SPACE, dtype=np.int64)
    row_base = (729 * cell).astype(np.int32)
    col_part = (9 * cell).astype(np.int32)
    nrows = vp.shape[0]
    for lo in range(0, nrows, block):
        hi = min(lo + block, nrows)
        if use_f32:
            p = vp[lo:hi].astype(np.float32) @ wt
            dots = p.astype(np.int32)
        else:
            dots = (vp[lo:hi] @ wt).astype(np.int32)
        keys = dots + (4 + row_base[lo:hi, None] + col_part[None, :])
        half += np.bincount(keys.ravel(), minlength=KEY_SPACE)
        if progress and (lo // block) % 64 == 0:
            progress(f"jh4 g12={g12}: rows {hi}/{nrows}")
    return _expand_signs(half)


def _expand_signs(half_hist: np.ndarray) -> np.ndarray:
    """Lift the half-shell histogram to the full shell: (e3 x3, e4 x4)."""
    digits = (np.arange(KEY_SPACE)[:, None] // np.array(KEY_WEIGHTS)) % 9 - 4
    full = np.zeros(KEY_SPACE, dtype=np.int64)
    for e3 in (1, -1):
        for e4 in (1, -1):
            signs = np.array([e3, e3, e4, e4, e3 * e4])
            flipped = digits * signs + 4
            keys = flipped @ np.array(KEY_WEIGHTS)
            np.add.at(full, keys, half_hist)
    return full


def flat_key(g13, g23, g14, g24, g34) -> int:
    digits = (g13, g23, g14, g24, g34)
    if any(abs(d) > 4 for d in digits):
        raise ValueError("dot out of range")
    return sum((d + 4) * w for d, w in zip(digits, KEY_WEIGHTS))


# -- tables -------------------------------------------------------------------

class LeechTables:
    """hist1, hist2 and the degree-4 joint histograms, JSON-persistable."""

    def __init__(self, gram_hash, hist1, hist2, jh4):
        self.gram_hash = gram_hash
        self.hist1 = hist1  # dict dot -> count
        self.hist2 = hist2  # dict g12 -> (9,9) int64 array
        self.jh4 = jh4  # dict g12 -> flat (9^5,) int64 array

    def to_json(self) -> str:
        payload = {
            "format": TABLE_FORMAT,
            "label": "omega",
            "gram_hash": self.gram_hash,
            "n_min": N_MIN,
            "hist1": {str(k): int(c) for k, c in sorted(self.hist1.items())},
            "hist2": {
                str(g): [[int(x) for x in row] for row in h]
                for g, h in sorted(self.hist2.items())
            },
            "jh4": {
                str(g): {
                    str(i): int(c)
                    for i, c in enumerate(arr) if c
                }
                for g, arr in sorted(self.jh4.items())
            },
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "LeechTables":
        payload = json.loads(text)
        if payload.get("format") != TABLE_FORMAT:
            raise CorruptCache(f"table format {payload.get('format')!r}")
        hist1 = {int(k): int(v) for k, v in payload["hist1"].items()}
        hist2 = {
            int(g): np.array(h, dtype=np.int64)
            for g, h in payload["hist2"].items()
        }
        jh4 = {}
        for g, entries in payload["jh4"].items():
            arr = np.zeros(KEY_SPACE, dtype=np.int64)
            for i, c in entries.items():
                arr[int(i)] = int(c)
            jh4[int(g)] = arr
        return cls(payload["gram_hash"], hist1, hist2, jh4)

    def verify(self):
        """Internal sum rules; raises AssertionUnverified on any failure."""
        if sum(self.hist1.values()) != N_MIN:
            raise AssertionUnverified("hist1 does not sum to the shell size")
        for d in (3, -3):
            if self.hist1.get(d, 0):
                raise AssertionUnverified("hist1 has |dot| = 3 entries")
        for g in PAIR_DOTS:
            if g not in self.hist2 or g not in self.jh4:
                raise AssertionUnverified(f"tables missing g12 = {g}")
            h2 = self.hist2[g]
            if int(h2.sum()) != N_MIN:
                raise AssertionUnverified(f"hist2[{g}] does not sum to shell size")
            arr = self.jh4[g]
            if int(arr.sum()) != N_MIN * N_MIN:
                raise AssertionUnverified(f"jh4[{g}] does not sum to shell size^2")
            digits = (np.arange(KEY_SPACE)[:, None] // np.array(KEY_WEIGHTS)) % 9 - 4
            bad = np.abs(digits) == 3
            if int(arr[bad.any(axis=1)].sum()):
                raise AssertionUnverified(f"jh4[{g}] touches |dot| = 3")
            # marginal over the x4 digits must reproduce N * hist2
            marg = arr.reshape(9, 9, 9, 9, 9).sum(axis=(2, 3, 4))
            if not np.array_equal(marg, N_MIN * h2):
                raise AssertionUnverified(f"jh4[{g}] marginal != N * hist2[{g}]")
        return True


def tables_path(cache_dir: str, ghash: str) -> str:
    return os.path.join(cache_dir, f"leech_tables_{ghash}.json")


def _leech():
    from . import lattices

    return lattices.build_leech()


def tables_available(cache_dir) -> bool:
    if not cache_dir:
        return False
    return os.path.exists(tables_path(cache_dir, _leech().gram_hash))


_TABLE_MEMO = {}


def ensure_tables(cache_dir=None, compute=False, progress=None) -> LeechTables:
    """Load the Leech tables, optionally computing missing pieces.

    Computation is resumable: the JSON is rewritten after every finished
    g12 slice, so an interrupted run restarts where it stopped.
    """
    lat = _leech()
    ghash = lat.gram_hash
    if ghash in _TABLE_MEMO:
        return _TABLE_MEMO[ghash]
    path = tables_path(cache_dir, ghash) if cache_dir else None
    tables = None
    if path and os.path.exists(path):
        with open(path) as fh:
            tables = LeechTables.from_json(fh.read())
        if tables.gram_hash != ghash:
            raise CorruptCache("leech tables belong to a different Gram")
        if set(tables.jh4) >= set(PAIR_DOTS):
            tables.verify()
            _TABLE_MEMO[ghash] = tables
            return tables
        if not compute:
            raise CacheMiss("leech tables incomplete")
    if not compute:
        raise CacheMiss("leech tables not cached; pass compute=True")
    vl = minimal_vectors_cached(lat, cache_dir)
    v = vl.shell(4)
    gram = np.array(lat.gram, dtype=np.int64)
    if tables is None:
        hist1 = {
            d - 4: int(c)
            for d, c in enumerate(dot_histogram(v, gram, v[0]))
            if c
        }
        tables = LeechTables(ghash, hist1, {}, {})
    for g in PAIR_DOTS:
        if g in tables.jh4:
            continue
        if progress:
            progress(f"computing hist2/jh4 for g12={g}")
        tables.hist2[g] = pair_histogram(v, gram, g)
        tables.jh4[g] = joint_histogram4(v, gram, g, progress=progress)
        if path:
            os.makedirs(cache_dir, exist_ok=True)
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                fh.write(tables.to_json())
            os.replace(tmp, path)
    tables.verify()
    _TABLE_MEMO[ghash] = tables
    return tables


# -- resampling validation ----------------------------------------------------

def validate_transitivity_samples(v, gram, *, samples=5, seed=11, deep=False):
    """Re-derive hist1/hist2 from random base points; all must agree.

    With deep=True one alternate jh4 slice is recomputed from a different
    representative pair (minutes); otherwise only hist1/hist2 are resampled.
    """
    rng = np.random.default_rng(seed)
    ref1 = dot_histogram(v, gram, v[0])
    for i in rng.integers(0, v.shape[0], size=samples):
        if not np.array_equal(dot_histogram(v, gram, v[int(i)]), ref1):
            raise AssertionUnverified(f"hist1 differs at base {int(i)}")
    for g in PAIR_DOTS:
        ref2 = pair_histogram(v, gram, g)
        for i in rng.integers(0, v.shape[0], size=samples):
            base = v[int(i)]
            da = v @ (gram @ base)
            idxs = np.nonzero(da == g)[0]
            idxs = idxs[idxs != int(i)]
            if idxs.size == 0:
                raise AssertionUnverified(f"no partner with dot {g} at base {int(i)}")
            pick = int(idxs[int(rng.integers(0, idxs.size))])
            db = v @ (gram @ v[pick])
            h = np.bincount(9 * (da + 4) + (db + 4), minlength=81).reshape(9, 9)
            if not np.array_equal(h, ref2):
                raise AssertionUnverified(
                    f"hist2[{g}] differs at pair ({int(i)}, {pick})"
                )
    if deep:
        validate_jh4_resample(v, gram, seed=seed)
    return True


def validate_jh4_resample(v, gram, g12=2, seed=11, progress=None):
    """Recompute a full jh4 slice from a different ordered pair; must match."""
    rng = np.random.default_rng(seed)
    ref = joint_histogram4(v, gram, g12, progress=progress)
    v0 = v[int(rng.integers(1, v.shape[0]))]
    dots = v @ (gram @ v0)
    idxs = np.nonzero(dots == g12)[0]
    alt2 = v[int(idxs[int(rng.integers(0, idxs.size))])]
    alt = joint_histogram4(v, gram, g12, pair=(v0, alt2), progress=progress)
    if not np.array_equal(ref, alt):
        raise AssertionUnverified(f"jh4[{g12}] differs between ordered pairs")
    return True


# -- direct validation (no pair transitivity) ----------------------------------

def direct_degree4_count(lat, two_t, *, cache_dir=None, progress=None,
                         checkpoint_path=None, chunk=100) -> int:
    """a(theta_omega^(4); T) summed directly over all (x2, x3) pairs.

    Pins only x1 (vertex transitivity, resample-validated); everything else
    is exhaustive GEMM + histogram work, so this is a slow independent check
    of the tabulated path. Checkpoints partial sums every `chunk` x2 values.
    """
    two_t = np.array(two_t, dtype=np.int64)
    n = two_t.shape[0]
    if n != 4 or set(np.diag(two_t).tolist()) != {4}:
        raise ValueError("direct_degree4_count expects an all-diag-4 2T")
    vl = minimal_vectors_cached(lat, cache_dir)
    v = vl.shell(4)
    gram = np.array(lat.gram, dtype=np.int64)
    v0 = v[0]
    d0 = v @ (gram @ v0)
    g12, g13, g14 = int(two_t[0, 1]), int(two_t[0, 2]), int(two_t[0, 3])
    g23, g24, g34 = int(two_t[1, 2]), int(two_t[1, 3]), int(two_t[2, 3])
    x2_idx = np.nonzero(d0 == g12)[0]
    start, partial = 0, 0
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path) as fh:
            state = json.load(fh)
        if state.get("key") == _direct_key(lat, two_t):
            start, partial = state["done"], int(state["partial"])
    w = v @ gram  # (N, 24)
    use_f32 = 24 * int(np.abs(v).max()) * int(np.abs(w).max()) < 2**24
    a_mask0 = d0 == g13
    b_mask0 = d0 == g14
    for pos in range(start, x2_idx.size, chunk):
        for i in x2_idx[pos : pos + chunk]:
            d2 = v @ (gram @ v[int(i)])
            a = v[a_mask0 & (d2 == g23)]
            b_rows = np.nonzero(b_mask0 & (d2 == g24))[0]
            if a.shape[0] == 0 or b_rows.size == 0:
                continue
            if use_f32:
                p = a.astype(np.float32) @ w[b_rows].T.astype(np.float32)
            else:
                p = a @ w[b_rows].T
            partial += int((p == g34).sum())
        done = min(pos + chunk, x2_idx.size)
        if checkpoint_path:
            tmp = checkpoint_path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(
                    {"key": _direct_key(lat, two_t), "done": done,
                     "partial": int(partial)}, fh)
            os.replace(tmp, checkpoint_path)
        if progress:
            progress(f"direct d_T count: x2 {done}/{x2_idx.size}")
    return int(v.shape[0]) * partial


def _direct_key(lat, two_t):
    return f"{lat.gram_hash}:" + ",".join(str(int(x)) for x in np.ravel(two_t))


# -- coefficient reader ---------------------------------------------------------

def reader_supports(t) -> bool:
    return len(t.diag) <= 4 and max(t.diag) <= 2 and min(t.diag) >= 0


def leech_coefficient(lat, t, cache_dir=None, tables=None) -> int:
    """a(theta_omega^(n); T) for n <= 4, t_ii <= 2, via the cached tables."""
    if not reader_supports(t):
        raise ValueError(f"reader does not cover {t.key()}")
    two_t = [list(r) for r in t.two_t()]
    n = len(two_t)
    # zero columns force the zero vector
    live = []
    for j in range(n):
        if two_t[j][j] == 0:
            if any(two_t[j][k] != 0 for k in range(n)):
                return 0
        else:
            live.append(j)
    if any(two_t[j][j] == 2 for j in live):
        return 0  # no roots in the Leech lattice
    g = [[two_t[a][b] for b in live] for a in live]
    # |g| = 4 pins equal (up to sign) columns; reduce with consistency checks
    changed = True
    while changed:
        changed = False
        m = len(g)
        for i in range(m):
            for j in range(i + 1, m):
                if abs(g[i][j]) == 4:
                    s = g[i][j] // 4
                    for k in range(m):
                        if k in (i, j):
                            continue
                        if g[j][k] != s * g[i][k]:
                            return 0
                    g = [
                        [g[a][b] for b in range(m) if b != j]
                        for a in range(m) if a != j
                    ]
                    changed = True
                    break
            if changed:
                break
    m = len(g)
    if any(abs(g[i][j]) == 3 for i in range(m) for j in range(i + 1, m)):
        return 0
    if m == 0:
        return 1
    if m == 1:
        return N_MIN
    if tables is None:
        tables = ensure_tables(cache_dir, compute=False)
    if g[0][1] < 0:  # flip the second column's sign
        for k in range(m):
            g[1][k] = -g[1][k]
            g[k][1] = -g[k][1]
    g12 = g[0][1]
    pairs = N_MIN * tables.hist1.get(g12, 0)
    if m == 2:
        return pairs
    if m == 3:
        return pairs * int(tables.hist2[g12][g[0][2] + 4, g[1][2] + 4])
    return pairs * int(
        tables.jh4[g12][flat_key(g[0][2], g[1][2], g[0][3], g[1][3], g[2][3])]
    )
