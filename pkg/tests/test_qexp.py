from __future__ import annotations

import pytest

from thetalat import forms, qexp
from thetalat.errors import BoxUnderflow


def _block(degree, bound, label, fill):
    coeffs = {}
    for t in forms.box_classes(degree, bound):
        coeffs[t.key()] = fill(t)
    return qexp.QExpansion(degree, bound, label, coeffs)


def test_text_round_trip(tmp_path):
    blk = _block(2, 1, "demo", lambda t: t.det2t() * 7 + 1)
    path = tmp_path / "blk.txt"
    qexp.save(blk, str(path))
    back = qexp.load(str(path))
    assert back.degree == blk.degree
    assert back.box == blk.box
    assert back.label == blk.label
    assert back.coeffs == blk.coeffs


def test_coefficient_raises_outside_box():
    blk = _block(2, 1, "demo", lambda t: 1)
    with pytest.raises(BoxUnderflow):
        blk.coefficient("2,2|0")


def test_congruent_blocks_pass_and_perturbation_is_localized():
    a = _block(2, 1, "a", lambda t: t.det2t() * 11)
    b = _block(2, 1, "b", lambda t: t.det2t() * 22 + 11)
    assert qexp.qexp_congruent(a, b, 11) == []
    key = sorted(a.coeffs)[2]
    bumped = dict(a.coeffs)
    bumped[key] += 1  # fault injection: one class off by one
    a2 = qexp.QExpansion(a.degree, a.box, "a2", bumped)
    assert qexp.qexp_congruent(a2, b, 11) == [key]
    # shifting by the modulus is invisible
    bumped[key] += 10
    a3 = qexp.QExpansion(a.degree, a.box, "a3", bumped)
    assert qexp.qexp_congruent(a3, b, 11) == []


def test_congruent_requires_same_degree():
    a = _block(2, 1, "a", lambda t: 0)
    b = _block(3, 1, "b", lambda t: 0)
    with pytest.raises(BoxUnderflow):
        qexp.qexp_congruent(a, b, 11)


def test_congruent_uses_smaller_box():
    small = _block(2, 1, "s", lambda t: 0)
    large = _block(2, 2, "l", lambda t: 0 if max(t.diag) <= 1 else 5)
    # the out-of-box classes of `large` never enter the comparison
    assert qexp.qexp_congruent(small, large, 11) == []


def test_map_values_relabels_and_transforms():
    blk = _block(2, 1, "x", lambda t: 3)
    doubled = blk.map_values(lambda key, v: 2 * v, label="x2")
    assert doubled.label == "x2"
    assert all(v == 6 for v in doubled.coeffs.values())


def test_from_text_rejects_malformed_keys(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("degree=2;box=1;label=bad;format=1\nnot-a-key;5\n")
    with pytest.raises(Exception):
        qexp.load(str(path))
