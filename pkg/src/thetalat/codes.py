"""Binary [24,12,8] and ternary [12,6,6] extended Golay codes.

Standard generator matrices [I | B]; the weight distributions are verified
at construction time, so any transcription error fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstructionFailure

# bordered reverse-circulant block of the binary Golay generator
_B24 = [
    [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0],
    [1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1],
    [1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1],
    [1, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0],
    [1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1],
    [1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1],
    [1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    [1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0],
    [1, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0],
    [1, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0],
    [1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1],
]

# right block of the ternary Golay generator (self-dual over GF(3))
_C12 = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 2, 1],
    [1, 1, 0, 1, 2, 2],
    [1, 2, 1, 0, 1, 2],
    [1, 2, 2, 1, 0, 1],
    [1, 1, 2, 2, 1, 0],
]

_BINARY_WEIGHTS = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
_TERNARY_WEIGHTS = {0: 1, 6: 264, 9: 440, 12: 24}


@dataclass(frozen=True)
class GlueCode:
    """A closed set of glue words over per-component class groups."""

    moduli: tuple  # either ints (Z_m per coordinate) or the string 'klein'
    words: tuple  # tuple of word tuples
    generators: tuple

    @property
    def cardinality(self):
        return len(self.words)

    def is_closed(self) -> bool:
        wordset = set(self.words)
        for a in self.words:
            for b in self.generators:
                if _add_words(a, b, self.moduli) not in wordset:
                    return False
        return True


def _add_words(a, b, moduli):
    out = []
    for x, y, m in zip(a, b, moduli):
        if m == "klein":
            out.append(x ^ y)
        else:
            out.append((x + y) % m)
    return tuple(out)


def expand_group(generators, moduli) -> tuple:
    """Closure of generator words under the componentwise group law."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for w in frontier:
            for g in generators:
                s = _add_words(w, g, moduli)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return tuple(sorted(seen))


def generator_matrix(kind: str):
    if kind == "binary24":
        ident = np.eye(12, dtype=np.int64)
        return np.hstack([ident, np.array(_B24, dtype=np.int64)])
    if kind == "ternary12":
        ident = np.eye(6, dtype=np.int64)
        return np.hstack([ident, np.array(_C12, dtype=np.int64)])
    raise ValueError(f"unknown code kind {kind!r}")


def golay_code(kind: str) -> GlueCode:
    """Expand the named Golay code and verify its weight distribution."""
    gen = generator_matrix(kind)
    k, length = gen.shape
    if kind == "binary24":
        q, expected = 2, _BINARY_WEIGHTS
    else:
        q, expected = 3, _TERNARY_WEIGHTS
    coeffs = np.array(
        [[(m // q**i) % q for i in range(k)] for m in range(q**k)], dtype=np.int64
    )
    words = (coeffs @ gen) % q
    weights = (words != 0).sum(axis=1)
    dist = {int(w): int(c) for w, c in zip(*np.unique(weights, return_counts=True))}
    if dist != expected:
        raise ConstructionFailure(f"{kind} weight distribution {dist} != {expected}")
    word_tuples = tuple(sorted(tuple(int(x) for x in row) for row in words))
    gens = tuple(tuple(int(x) for x in row) for row in gen)
    return GlueCode(moduli=tuple([q] * length), words=word_tuples, generators=gens)
