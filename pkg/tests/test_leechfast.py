from __future__ import annotations

import numpy as np
import pytest

from thetalat import engine, forms, leechfast, refdata
from thetalat.errors import AssertionUnverified

HIST1_LOCKED = {-4: 1, -2: 4600, -1: 47104, 0: 93150, 1: 47104, 2: 4600, 4: 1}


@pytest.fixture(scope="module")
def tables(repo_cache):
    return leechfast.ensure_tables(repo_cache, compute=False)


def test_shell_size_and_no_roots(leech_shell):
    _, vl = leech_shell
    assert vl.shell(4).shape[0] == leechfast.N_MIN == 196560
    assert vl.shell(2).shape[0] == 0


def test_ambient_shape_family_sizes():
    rows = leechfast._ambient_minimal_rows()
    norms = (rows * rows).sum(axis=1)
    assert rows.shape == (196560, 24)
    assert set(norms.tolist()) == {32}


def test_hist1_matches_locked_distribution(leech_shell, tables):
    lat, vl = leech_shell
    v = vl.shell(4)
    gram = np.array(lat.gram)
    hist = leechfast.dot_histogram(v, gram, v[0])
    assert {d - 4: int(c) for d, c in enumerate(hist) if c} == HIST1_LOCKED
    assert tables.hist1 == HIST1_LOCKED


def test_transitivity_resampling(leech_shell):
    lat, vl = leech_shell
    leechfast.validate_transitivity_samples(
        vl.shell(4), np.array(lat.gram), samples=3, seed=7
    )


def test_jh4_product_rule_and_swap_symmetry(tables):
    n = leechfast.N_MIN
    for g in (0, 1, 2):
        arr = tables.jh4[g].reshape(9, 9, 9, 9, 9)
        h2 = tables.hist2[g].astype(object)
        marg = arr.sum(axis=4).astype(object)
        # x3 and x4 range independently once their v0/v2 dots are fixed
        assert np.array_equal(marg, h2[:, :, None, None] * h2[None, None, :, :])
        assert np.array_equal(arr, arr.transpose(2, 3, 0, 1, 4))
        assert int(tables.hist2[g].sum()) == n
        assert int(tables.jh4[g].sum()) == n * n


def test_tables_json_round_trip(tables):
    back = leechfast.LeechTables.from_json(tables.to_json())
    back.verify()
    assert back.hist1 == tables.hist1
    for g in (0, 1, 2):
        assert np.array_equal(back.hist2[g], tables.hist2[g])
        assert np.array_equal(back.jh4[g], tables.jh4[g])


def test_verify_catches_a_flipped_bucket(tables):
    mangled = leechfast.LeechTables.from_json(tables.to_json())
    jh = mangled.jh4[2].copy()
    src = int(np.nonzero(jh)[0][0])
    jh[src] -= 1
    jh[leechfast.flat_key(0, 0, 0, 0, 0)] += 1
    mangled.jh4[2] = jh
    with pytest.raises(AssertionUnverified):
        mangled.verify()


def test_reader_agrees_with_engine_on_degree2(repo_cache):
    from thetalat import lattices

    lat = lattices.build_lattice("omega")
    for g in (0, 1, 2):
        t = forms.HalfIntMat((2, 2), (g,))
        reader = leechfast.leech_coefficient(lat, t, cache_dir=repo_cache)
        orbit = engine.theta_coefficient(lat, t, method="orbit",
                                         cache_dir=repo_cache)
        assert reader == orbit["count"], g


def test_reader_agrees_with_engine_on_degree3(repo_cache):
    from thetalat import lattices

    lat = lattices.build_lattice("omega")
    t = forms.HalfIntMat((2, 2, 2), (2, 2, 2))
    reader = leechfast.leech_coefficient(lat, t, cache_dir=repo_cache)
    orbit = engine.theta_coefficient(lat, t, method="orbit",
                                     cache_dir=repo_cache)
    assert reader == orbit["count"]


def test_reader_reductions(repo_cache):
    from thetalat import lattices

    lat = lattices.build_lattice("omega")
    # degree-1 shell identity
    assert leechfast.leech_coefficient(
        lat, forms.HalfIntMat((2,), ()), cache_dir=repo_cache) == 196560
    # zero column is free
    padded = forms.HalfIntMat((2, 0), (0,))
    assert leechfast.leech_coefficient(
        lat, padded, cache_dir=repo_cache) == 196560
    # any unit diagonal kills the count (no roots)
    t1 = forms.HalfIntMat((2, 1), (0,))
    assert leechfast.leech_coefficient(lat, t1, cache_dir=repo_cache) == 0


def test_reader_reproduces_all_unambiguous_ozeki_rows(repo_cache):
    from thetalat import lattices

    lat = lattices.build_lattice("omega")
    for row in refdata.all_ozeki_rows():
        if row.anomaly:
            continue
        got = leechfast.leech_coefficient(lat, row.half_int(),
                                          cache_dir=repo_cache)
        assert got == row.value, row.row_id


def test_d160_pair_reader_values_are_the_printed_pair_swapped(repo_cache):
    # the two printed d_T=160 rows carry each other's values; both
    # computed numbers are still the printed numbers, as a set
    from thetalat import lattices

    lat = lattices.build_lattice("omega")
    a = refdata.ozeki_row("d160a")
    b = refdata.ozeki_row("d160b")
    got_a = leechfast.leech_coefficient(lat, a.half_int(),
                                        cache_dir=repo_cache)
    got_b = leechfast.leech_coefficient(lat, b.half_int(),
                                        cache_dir=repo_cache)
    assert got_a == b.value
    assert got_b == a.value
