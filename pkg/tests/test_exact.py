from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from thetalat import exact


def _fraction_det(m):
    """Gaussian elimination over Fractions, the independent det oracle."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    assert det.denominator == 1
    return int(det)


def test_det_bareiss_matches_fraction_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 6)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert exact.det_bareiss(m) == _fraction_det(m)


def test_det_bareiss_singular_and_identity():
    assert exact.det_bareiss([[1, 2], [2, 4]]) == 0
    assert exact.det_bareiss([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1


def _pivots(h):
    return [next(c for c, x in enumerate(row) if x) for row in h]


def test_hnf_rows_is_staircase_with_reduced_entries():
    rng = random.Random(11)
    for _ in range(25):
        n, m = rng.randint(1, 5), rng.randint(1, 6)
        rows = [[rng.randint(-6, 6) for _ in range(m)] for _ in range(n)]
        h = exact.hnf_rows(rows)
        if not h:
            assert all(all(x == 0 for x in r) for r in rows)
            continue
        piv = _pivots(h)
        assert piv == sorted(piv) and len(set(piv)) == len(piv)
        for i, p in enumerate(piv):
            assert h[i][p] > 0
            for r in range(i):
                assert 0 <= h[r][p] < h[i][p]
        # input rows lie in the integer span of the HNF rows
        exact.triangular_solve_batch(h, [r for r in rows])


def test_triangular_solve_batch_handles_entries_above_pivot():
    # reduced entries above the pivot broke a backward solve once
    basis = [[1, 5], [0, 7]]
    got = exact.triangular_solve_batch(basis, [[1, 5], [2, 17], [1, 12]])
    assert got.tolist() == [[1, 0], [2, 1], [1, 1]]


def test_triangular_solve_batch_rejects_non_lattice_vector():
    with pytest.raises(ValueError):
        exact.triangular_solve_batch([[2, 0], [0, 2]], [[1, 0]])


def test_triangular_solve_random_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        rows = []
        while not rows:
            cand = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            if exact.det_bareiss(cand) != 0:
                rows = cand
        h = exact.hnf_rows(rows)
        coeffs = np.array(
            [[rng.randint(-5, 5) for _ in range(n)] for _ in range(6)]
        )
        vecs = coeffs @ np.array(h)
        got = exact.triangular_solve_batch(h, vecs)
        assert got.tolist() == coeffs.tolist()


def test_gram_of_rows_scale_division_is_verified():
    assert exact.gram_of_rows([[1, 1], [0, 1]]) == [[2, 1], [1, 1]]
    assert exact.gram_of_rows([[2, 0], [0, 2]], scale=4) == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        exact.gram_of_rows([[1, 1], [0, 1]], scale=4)


def test_is_positive_definite_matches_full_rank_gram():
    rng = random.Random(19)
    for _ in range(30):
        n = rng.randint(1, 5)
        b = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        g = [[sum(b[r][k] * b[s][k] for k in range(n)) for s in range(n)]
             for r in range(n)]
        want = exact.det_bareiss(b) != 0
        assert exact.is_positive_definite(g) == want


def test_psd_checkers_agree_on_random_grams():
    rng = random.Random(29)
    for _ in range(30):
        n = rng.randint(1, 4)
        k = rng.randint(0, n)
        b = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        g = [[sum(b[r][t] * b[s][t] for t in range(n)) for s in range(k)]
             for r in range(k)]
        if not g:
            continue
        assert exact.is_psd_rational_pivot(g)
        assert exact.is_psd_minors(g)
        # breaking one diagonal makes it indefinite
        g[0][0] -= 50
        assert not exact.is_psd_rational_pivot(g)


def test_ldl_gram_reconstructs():
    g = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    diag, lower = exact.ldl_gram(g)
    n = len(g)
    ell = [
        [Fraction(1) if i == j else (lower[i][j] if j < i else Fraction(0))
         for j in range(n)]
        for i in range(n)
    ]
    rebuilt = [
        [sum(ell[r][k] * diag[k] * ell[s][k] for k in range(n))
         for s in range(n)]
        for r in range(n)
    ]
    assert rebuilt == [[Fraction(x) for x in row] for row in g]


def test_lll_gram_preserves_determinant():
    g = [[4, 1, 1], [1, 6, 2], [1, 2, 8]]
    u, reduced = exact.lll_gram(g)
    assert exact.det_bareiss(reduced) == exact.det_bareiss(g)
    assert abs(exact.det_bareiss(u)) == 1
    assert reduced[0][0] <= g[0][0]


def test_isqrt_floor_ratio_is_exact_floor():
    rng = random.Random(23)
    for _ in range(200):
        num, den = rng.randint(0, 10**6), rng.randint(1, 1000)
        got = exact.isqrt_floor_ratio(num, den)
        assert got * got * den <= num < (got + 1) * (got + 1) * den


def test_common_denominator():
    fracs = [Fraction(1, 2), Fraction(2, 3), Fraction(5, 6)]
    assert exact.common_denominator(fracs) == 6
