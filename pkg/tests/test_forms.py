from __future__ import annotations

import random
from itertools import product

import numpy as np
import pytest

from thetalat import forms


def _random_psd(rng, n):
    k = rng.randint(1, n)
    b = np.array([[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)])
    two_t = b.T @ b * 2
    diag = tuple(int(two_t[i, i]) // 2 for i in range(n))
    off = tuple(int(two_t[i, j]) for i in range(n) for j in range(i + 1, n))
    order = forms.HalfIntMat(diag, _reorder(n, off))
    return order


def _reorder(n, rowmajor_off):
    # row-major (i<j) order happens to match the class's storage order
    return rowmajor_off


def test_det2t_matches_numpy():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        t = _random_psd(rng, n)
        got = t.det2t()
        want = round(np.linalg.det(np.array(t.two_t(), dtype=float)))
        assert got == want


def test_two_t_is_symmetric_with_integer_diag_doubled():
    t = forms.HalfIntMat((1, 2), (1,))
    assert [list(r) for r in t.two_t()] == [[2, 1], [1, 4]]


def test_is_psd_agrees_with_eigenvalues():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 4)
        diag = tuple(rng.randint(0, 2) for _ in range(n))
        off = tuple(rng.randint(-2, 2) for _ in range(n * (n - 1) // 2))
        t = forms.HalfIntMat(diag, off)
        eigs = np.linalg.eigvalsh(np.array(t.two_t(), dtype=float))
        assert t.is_psd() == bool(eigs.min() > -1e-9)


def test_canonical_is_invariant_under_signed_permutations():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(2, 4)
        t = _random_psd(rng, n)
        two = np.array(t.two_t())
        perm = list(range(n))
        rng.shuffle(perm)
        signs = [rng.choice((-1, 1)) for _ in range(n)]
        u = np.zeros((n, n), dtype=int)
        for i, p in enumerate(perm):
            u[i, p] = signs[i]
        moved = u @ two @ u.T
        diag = tuple(int(moved[i, i]) // 2 for i in range(n))
        off = tuple(int(moved[i, j]) for i in range(n)
                    for j in range(i + 1, n))
        t2 = forms.HalfIntMat(diag, off)
        assert t.canonical().key() == t2.canonical().key()


def test_parse_key_inverts_key():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 4)
        t = _random_psd(rng, n)
        assert forms.parse_key(t.key()).key() == t.key()


def test_decode_binary_layout():
    t = forms.decode_binary(1, 0, 1)
    assert t.diag == (1, 1)
    assert t.off == (0,)
    assert t.det2t() == 4


def test_decode_ternary_layout():
    # bracket [a,b,c;d,e,f]: diag (a,b,c), off pairs f=(1,2), e=(1,3), d=(2,3)
    t = forms.decode_ternary(1, 1, 1, 0, 0, 1)
    assert t.diag == (1, 1, 1)
    assert [list(r) for r in t.two_t()] == [[2, 1, 0], [1, 2, 0], [0, 0, 2]]


def test_decode_ozeki4_pins_down_s3_at_d121():
    t = forms.decode_ozeki4(2, 2, 2, 2, 2, 1, 0, 1, 1, 2)
    assert [list(r) for r in t.two_t()] == [
        [4, 2, 1, 1], [2, 4, 0, 1], [1, 0, 4, 2], [1, 1, 2, 4]]
    assert t.det2t() == 121


def test_decode_ozeki4_rejects_bad_diagonal_and_non_psd():
    with pytest.raises(ValueError):
        forms.decode_ozeki4(3, 2, 2, 2, 0, 0, 0, 0, 0, 0)
    with pytest.raises(forms.NotPositiveSemidefinite):
        forms.decode_ozeki4(2, 2, 2, 2, 5, 0, 0, 0, 0, 0)


def test_box_classes_complete_against_brute_force():
    for n, bound in ((1, 2), (2, 1), (2, 2), (3, 1)):
        classes = forms.box_classes(n, bound)
        keys = {t.key() for t in classes}
        assert len(keys) == len(classes)
        m = n * (n - 1) // 2
        seen = set()
        for diag in product(range(bound + 1), repeat=n):
            for off in product(range(-2 * bound, 2 * bound + 1), repeat=m):
                t = forms.HalfIntMat(diag, off)
                if not t.is_psd():
                    continue
                ck = t.canonical().key()
                assert ck in keys
                seen.add(ck)
        assert seen == keys


def test_box_classes_sizes_partition_raw_tuples():
    classes, sizes = forms.box_classes(2, 1, with_sizes=True)
    total = sum(sizes.values())
    # sizes count raw off-tuples per non-increasing diagonal
    raw = 0
    for d1 in range(2):
        for d2 in range(d1 + 1):
            for off in range(-2, 3):
                if forms.HalfIntMat((d1, d2), (off,)).is_psd():
                    raw += 1
    assert total == raw
