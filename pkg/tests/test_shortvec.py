from __future__ import annotations

import random
from itertools import product

import numpy as np
import pytest

from thetalat import errors, lattices, shortvec


def _toy_lattice(gram, label="toy"):
    """Bare carrier for enumerate_short: only gram/label/rank are used."""
    class Toy:
        pass

    toy = Toy()
    toy.gram = tuple(tuple(r) for r in gram)
    toy.label = label
    toy.rank = len(gram)
    toy.gram_hash = shortvec.gram_hash(toy.gram)
    return toy


def _brute_shells(gram, bound, radius=6):
    g = np.array(gram)
    n = g.shape[0]
    shells = {}
    for x in product(range(-radius, radius + 1), repeat=n):
        v = np.array(x)
        q = int(v @ g @ v)
        if 0 < q <= bound:
            shells.setdefault(q, []).append(x)
    return {k: sorted(v) for k, v in shells.items()}


def test_enumerate_short_matches_brute_force_on_random_grams():
    rng = random.Random(31)
    trials = 0
    while trials < 12:
        n = rng.randint(2, 4)
        b = np.array([[rng.randint(-2, 2) for _ in range(n)]
                      for _ in range(n)])
        if round(np.linalg.det(b)) == 0:
            continue
        gram = (b @ b.T).tolist()
        trials += 1
        lat = _toy_lattice(gram, label=f"rnd{trials}")
        bound = rng.choice((2, 4, 6))
        vl = shortvec.enumerate_short(lat, bound)
        brute = _brute_shells(gram, bound, radius=8)
        for q in range(1, bound + 1):
            got = sorted(map(tuple, vl.shell(q).tolist())) \
                if q in vl.shells else []
            assert got == brute.get(q, []), (gram, q)


def test_enumerate_short_on_s1_matches_table_root_count():
    lat = lattices.build_lattice("S1")
    vl = shortvec.enumerate_short(lat, 2)
    assert vl.shell(2).shape[0] == 4


def test_shell_missing_beyond_bound():
    lat = lattices.build_lattice("S1")
    vl = shortvec.enumerate_short(lat, 2)
    with pytest.raises(errors.ShellMissing):
        vl.shell(4)


def test_cache_round_trip_is_identical(tmp_path):
    lat = lattices.build_lattice("S2")
    vl = shortvec.enumerate_short(lat, 4)
    shortvec.cache_store(vl, str(tmp_path))
    back = shortvec.cache_load(lat.label, 4, lat.gram, str(tmp_path))
    assert back is not None
    assert back.bound == vl.bound
    assert back.gram_hash == vl.gram_hash
    assert sorted(back.shells) == sorted(vl.shells)
    for q in vl.shells:
        assert np.array_equal(back.shell(q), vl.shell(q))


def test_cache_load_rejects_wrong_gram(tmp_path):
    lat = lattices.build_lattice("S2")
    vl = shortvec.enumerate_short(lat, 2)
    shortvec.cache_store(vl, str(tmp_path))
    other = lattices.build_lattice("S3")
    with pytest.raises(errors.CacheMiss):
        shortvec.cache_load("S2", 2, other.gram, str(tmp_path))


def test_enumeration_budget_raises():
    lat = lattices.build_lattice("alpha")
    with pytest.raises(errors.BudgetExceeded):
        shortvec.enumerate_short(lat, 4, budget=50)


def test_load_or_enumerate_uses_cache(tmp_path):
    lat = lattices.build_lattice("S1")
    first = shortvec.load_or_enumerate(lat, 2, cache_dir=str(tmp_path))
    second = shortvec.load_or_enumerate(lat, 2, cache_dir=str(tmp_path))
    for q in first.shells:
        assert np.array_equal(first.shell(q), second.shell(q))


def test_norms_are_verified_on_every_shell():
    lat = lattices.build_lattice("S3")
    vl = shortvec.enumerate_short(lat, 8)
    g = np.array(lat.gram)
    for q, arr in vl.shells.items():
        if arr.size:
            assert (np.einsum("ij,jk,ik->i", arr, g, arr) == q).all()
