"""Representation-number engine: count integer matrices X with X^T S X = 2T.

Counting is constraint backtracking over the columns of X. Candidate columns
for position j live in the shell of norm (2T)_jj; partial assignments prune
the remaining candidate lists through exact integer dot products. Column
order is chosen dynamically, most constrained first.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import shortvec
from .errors import BudgetExceeded, ShellMissing
from .forms import HalfIntMat

DEFAULT_NODE_BUDGET = 200_000_000

# Largest norm whose shell is a single orbit under the automorphism group,
# per lattice label. These are configuration, not derivations: each entry is
# validated by tests comparing orbit-factored counts against direct counts.
TRANSITIVE_SHELLS = {
    "alpha": 2, "delta": 2, "epsilon": 2, "iota": 2, "kappa": 2,
    "chi": 2, "psi": 2, "omega": 4, "S1": 2, "S2": 2, "S3": 4,
}


class ShellStore:
    """Short-vector shells for one lattice, grown on demand and cached."""

    def __init__(self, lat, cache_dir=None, vector_budget=shortvec.DEFAULT_VECTOR_BUDGET):
        self.lattice = lat
        self.cache_dir = cache_dir
        self.vector_budget = vector_budget
        self.gram_np = np.array(lat.gram, dtype=np.int64)
        self._vl = None

    def ensure(self, bound: int):
        if self._vl is None or self._vl.bound < bound:
            if self.lattice.label == "omega" and bound <= 4:
                # shape-built shell; equivalent to enumeration but immediate
                from . import leechfast

                self._vl = leechfast.minimal_vectors_cached(
                    self.lattice, self.cache_dir
                )
            else:
                self._vl = shortvec.load_or_enumerate(
                    self.lattice, bound, cache_dir=self.cache_dir,
                    budget=self.vector_budget,
                )
        return self._vl

    def shell(self, norm: int) -> np.ndarray:
        self.ensure(norm)
        return self._vl.shell(norm)

    def shell_size(self, norm: int) -> int:
        return int(self.shell(norm).shape[0])


def _strip_zero_columns(two_t):
    """Columns with (2T)_jj = 0 force the zero vector; drop or refute them.

    Returns the index list of surviving columns, or None if the count is 0.
    """
    n = len(two_t)
    keep = [j for j in range(n) if two_t[j][j] != 0]
    for j in range(n):
        if two_t[j][j] == 0:
            if any(two_t[j][k] != 0 for k in range(n)):
                return None
    return keep


def _count_backtrack(shells, sgram, two_t, budget, pinned=None):
    """Count column assignments by most-constrained-first backtracking.

    shells: per-column candidate arrays (k_j, m) int64, already norm-filtered.
    pinned: optional (col, vector) fixing one column before the search.
    nodes are counted per explored candidate; BudgetExceeded carries the tally.
    """
    n = len(two_t)
    cols = list(range(n))
    cand = {j: np.arange(shells[j].shape[0], dtype=np.int64) for j in cols}
    nodes = 0

    def rec(rem, cand_map):
        nonlocal nodes
        if not rem:
            return 1
        j = min(rem, key=lambda c: cand_map[c].shape[0])
        cj = cand_map[j]
        if cj.shape[0] == 0:
            return 0
        rest = [c for c in rem if c != j]
        if not rest:
            return int(cj.shape[0])
        total = 0
        vs = shells[j][cj]
        svs = vs @ sgram.T
        for idx in range(vs.shape[0]):
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(f"node budget {budget} exceeded", checkpoint=nodes)
            sv = svs[idx]
            new_map = {}
            dead = False
            for c in rest:
                cc = cand_map[c]
                dots = shells[c][cc] @ sv
                kept = cc[dots == two_t[j][c]]
                if kept.shape[0] == 0:
                    dead = True
                    break
                new_map[c] = kept
            if dead:
                continue
            total += rec(rest, new_map)
        return total

    if pinned is not None:
        pj, pvec = pinned
        if int(pvec @ sgram @ pvec) != two_t[pj][pj]:
            raise ValueError("pinned vector norm mismatch")
        sv = sgram @ pvec
        cand_map = {}
        for c in cols:
            if c == pj:
                continue
            cc = cand[c]
            dots = shells[c][cc] @ sv
            cand_map[c] = cc[dots == two_t[pj][c]]
        count = rec([c for c in cols if c != pj], cand_map)
    else:
        count = rec(cols, cand)
    return count, nodes


def _chunk_counts(args):
    shells, sgram, two_t, budget, j0, idxs = args
    total = 0
    nodes = 0
    for i in idxs:
        c, k = _count_backtrack(
            shells, sgram, two_t, budget, pinned=(j0, shells[j0][i])
        )
        total += c
        nodes += k
    return total, nodes


def representation_count(lat, t: HalfIntMat, *, store=None, budget=DEFAULT_NODE_BUDGET,
                         workers=1, cache_dir=None):
    """#{X integral : X^T S X = 2T} for the lattice's Gram S."""
    result = _rep_count_detail(
        lat, t, store=store, budget=budget, workers=workers, cache_dir=cache_dir
    )
    return result["count"]


def _prepare(lat, t, store, cache_dir):
    two_t_full = [list(r) for r in t.two_t()]
    keep = _strip_zero_columns(two_t_full)
    if keep is None:
        return None, None, None
    two_t = [[two_t_full[a][b] for b in keep] for a in keep]
    if store is None:
        store = ShellStore(lat, cache_dir=cache_dir)
    return store, two_t, keep


def _rep_count_detail(lat, t, *, store=None, budget=DEFAULT_NODE_BUDGET,
                      workers=1, cache_dir=None):
    store, two_t, keep = _prepare(lat, t, store, cache_dir)
    if two_t is None:
        return {"count": 0, "nodes": 0, "method": "refuted-zero-column"}
    if not two_t:
        return {"count": 1, "nodes": 0, "method": "empty"}
    shells = [store.shell(two_t[j][j]) for j in range(len(two_t))]
    sgram = store.gram_np
    if workers > 1 and len(two_t) > 1 and shells[0].shape[0] >= workers:
        from multiprocessing import get_context

        j0 = min(range(len(two_t)), key=lambda j: shells[j].shape[0])
        idxs = np.arange(shells[j0].shape[0])
        chunks = [
            (shells, sgram, two_t, budget, j0, idxs[w::workers])
            for w in range(workers)
        ]
        with get_context("fork").Pool(workers) as pool:
            parts = pool.map(_chunk_counts, chunks)
        count = sum(p[0] for p in parts)
        nodes = sum(p[1] for p in parts) + len(idxs)
        return {"count": count, "nodes": nodes, "method": "direct",
                "partitions": workers}
    count, nodes = _count_backtrack(shells, sgram, two_t, budget)
    return {"count": count, "nodes": nodes, "method": "direct", "partitions": 1}


def orbit_factored_count(lat, t: HalfIntMat, *, store=None, budget=DEFAULT_NODE_BUDGET,
                         cache_dir=None):
    """a(T) = |shell| * #{X : column j0 pinned to one shell vector}.

    Valid when the automorphism group is transitive on the pinned shell;
    the pinned norm must be listed in TRANSITIVE_SHELLS for the lattice.
    """
    store, two_t, keep = _prepare(lat, t, store, cache_dir)
    if two_t is None:
        return {"count": 0, "nodes": 0, "method": "refuted-zero-column"}
    if not two_t:
        return {"count": 1, "nodes": 0, "method": "empty"}
    limit = TRANSITIVE_SHELLS.get(lat.label)
    pin = None
    for j in range(len(two_t)):
        if limit is not None and two_t[j][j] <= limit:
            if pin is None or two_t[j][j] > two_t[pin][pin]:
                pin = j
    if pin is None:
        raise ValueError(
            f"no column of {t.key()} lies in a shell known transitive for {lat.label}"
        )
    shells = [store.shell(two_t[j][j]) for j in range(len(two_t))]
    size = shells[pin].shape[0]
    if size == 0:
        return {"count": 0, "nodes": 0, "method": "orbit-empty-shell"}
    count, nodes = _count_backtrack(
        shells, store.gram_np, two_t, budget, pinned=(pin, shells[pin][0])
    )
    return {
        "count": int(size) * count,
        "nodes": nodes,
        "method": f"orbit-pinned-{two_t[pin][pin]}",
    }


def aut_order(lat, *, budget=DEFAULT_NODE_BUDGET, cache_dir=None) -> int:
    """|Aut(L)| = #{X : X^T S X = S}, practical for small rank."""
    g = lat.gram
    n = len(g)
    diag = tuple(g[i][i] // 2 for i in range(n))
    off = tuple(g[i][j] for i in range(n) for j in range(i + 1, n))
    t = HalfIntMat(diag, off)
    return representation_count(lat, t, budget=budget, cache_dir=cache_dir)


def theta_coefficient(lat, t: HalfIntMat, *, store=None, budget=DEFAULT_NODE_BUDGET,
                      workers=1, cache_dir=None, method="auto"):
    """One Fourier coefficient of the degree-n theta series, with provenance.

    method: 'auto' routes to the fastest exact path; 'direct' and 'orbit'
    force the generic engine; 'leech-tables' forces the tabulated path.
    """
    label = lat.label
    if method == "auto":
        if label == "omega" and _leech_tables_ok(lat, t, cache_dir):
            method = "leech-tables"
        else:
            limit = TRANSITIVE_SHELLS.get(label)
            two_t = t.two_t()
            n = len(two_t)
            usable = any(
                0 < two_t[j][j] <= (limit or 0) for j in range(n)
            )
            method = "orbit" if usable and n > 1 else "direct"
    t0 = time.monotonic()
    if method == "leech-tables":
        from . import leechfast

        count = leechfast.leech_coefficient(lat, t, cache_dir=cache_dir)
        detail = {"count": count, "nodes": 0, "method": "leech-tables"}
    elif method == "orbit":
        detail = orbit_factored_count(
            lat, t, store=store, budget=budget, cache_dir=cache_dir
        )
    else:
        detail = _rep_count_detail(
            lat, t, store=store, budget=budget, workers=workers, cache_dir=cache_dir
        )
    detail["wall_time"] = round(time.monotonic() - t0, 6)
    detail["label"] = label
    detail["degree"] = len(t.diag)
    detail["key"] = t.key()
    return detail


def _leech_tables_ok(lat, t, cache_dir):
    from . import leechfast

    if not leechfast.reader_supports(t):
        return False
    if leechfast.tables_available(cache_dir):
        return True
    # building the tables once (minutes) beats the generic engine (hours)
    # for any degree-4 box work, so auto mode pays the cost up front
    if cache_dir is not None and len(t.diag) >= 3:
        leechfast.ensure_tables(cache_dir, compute=True)
        return True
    return False


def theta_block(lat, degree, bound, *, store=None, cache_dir=None, ledger=None,
                workers=1, budget=DEFAULT_NODE_BUDGET, method="auto",
                progress=None):
    """QExpansion of theta_L^(degree) over the box t_ii <= bound.

    Ledger-idempotent: classes already recorded are read back, not recounted.
    """
    from . import qexp

    if store is None:
        store = ShellStore(lat, cache_dir=cache_dir)
    coeffs = {}
    classes = forms_box(degree, bound)
    for i, t in enumerate(classes):
        key = t.key()
        if ledger is not None:
            prev = ledger.lookup(lat.label, key)
            if prev is not None:
                coeffs[key] = int(prev["coeff"])
                continue
        detail = theta_coefficient(
            lat, t, store=store, budget=budget, workers=workers,
            cache_dir=cache_dir, method=method,
        )
        coeffs[key] = detail["count"]
        if ledger is not None:
            ledger.record(ledger_record(detail))
        if progress and (i + 1) % 200 == 0:
            progress(f"{lat.label} deg{degree}: {i + 1}/{len(classes)} classes")
    return qexp.QExpansion(degree, bound, lat.label, coeffs)


def forms_box(degree, bound):
    from . import forms

    return forms.box_classes(degree, bound)


# -- ledger ------------------------------------------------------------------

LEDGER_NAME = "counts.jsonl"


def ledger_record(detail: dict) -> dict:
    """Ledger schema: lattice, key, coeff, d_T, wall_time, method, partitions."""
    from .forms import parse_key

    return {
        "lattice": detail["label"],
        "key": detail["key"],
        "coeff": int(detail["count"]),
        "d_T": parse_key(detail["key"]).det2t(),
        "wall_time": detail.get("wall_time", 0.0),
        "method": detail.get("method", "direct"),
        "partitions": detail.get("partitions", 1),
    }


def canonical_record(rec: dict) -> dict:
    """Ledger identity: everything except wall time and partition count."""
    return {k: rec[k] for k in ("lattice", "key", "coeff", "d_T") if k in rec}


@dataclass
class Ledger:
    path: str
    records: list = field(default_factory=list)
    _index: dict = field(default_factory=dict)

    @classmethod
    def open(cls, directory: str):
        path = os.path.join(directory, LEDGER_NAME)
        led = cls(path=path)
        if os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        rec = json.loads(line)
                        led.records.append(rec)
                        led._index[(rec.get("lattice"), rec.get("key"))] = rec
        return led

    def lookup(self, lattice: str, key: str):
        return self._index.get((lattice, key))

    def record(self, rec: dict):
        """Append if new; verify against any existing entry (idempotent)."""
        prev = self.lookup(rec["lattice"], rec["key"])
        if prev is not None:
            if canonical_record(prev) != canonical_record(rec):
                raise ValueError(
                    f"ledger conflict for {rec['lattice']} {rec['key']}: "
                    f"{canonical_record(prev)} vs {canonical_record(rec)}"
                )
            return False
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self.records.append(rec)
        self._index[(rec["lattice"], rec["key"])] = rec
        return True
