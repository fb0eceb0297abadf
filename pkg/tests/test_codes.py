from __future__ import annotations

from collections import Counter

from thetalat import codes


def test_binary_golay_weight_enumerator():
    code = codes.golay_code("binary24")
    assert code.cardinality == 4096
    weights = Counter(sum(1 for x in w if x) for w in code.words)
    assert weights == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_binary_golay_is_self_dual():
    code = codes.golay_code("binary24")
    gens = code.generators
    for a in gens:
        for b in gens:
            assert sum(x * y for x, y in zip(a, b)) % 2 == 0


def test_ternary_golay_weight_enumerator():
    code = codes.golay_code("ternary12")
    assert code.cardinality == 729
    weights = Counter(sum(1 for x in w if x) for w in code.words)
    # self-dual [12,6,6] ternary code: weights 0,6,9,12
    assert weights == {0: 1, 6: 264, 9: 440, 12: 24}


def test_ternary_golay_is_self_dual():
    code = codes.golay_code("ternary12")
    for a in code.generators:
        for b in code.generators:
            assert sum(x * y for x, y in zip(a, b)) % 3 == 0


def test_expand_group_closure_and_identity():
    words = codes.expand_group([(1, 2), (0, 3)], (2, 6))
    assert (0, 0) in words
    for a in words:
        for b in words:
            s = tuple((x + y) % m for x, y, m in zip(a, b, (2, 6)))
            assert s in words


def test_glue_code_is_closed():
    code = codes.golay_code("binary24")
    assert code.is_closed()
