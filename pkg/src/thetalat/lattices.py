"""Lattice constructions: root lattices, glued rank-24 unimodular lattices,
the Leech lattice, and the three quaternary forms of determinant 121.

Glued lattices are assembled from integer root bases plus rational glue
vectors, integralized by scaling and row-HNF reduction; every construction
is verified (even, determinant, glue-index) before a Lattice is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import codes, exact
from .errors import ConstructionFailure, InvalidRank, UnknownLabel
from .shortvec import gram_hash

GREEK_ALIASES = {
    "α": "alpha", "δ": "delta", "ε": "epsilon", "ι": "iota",
    "κ": "kappa", "χ": "chi", "ψ": "psi", "ω": "omega",
}

COXETER_NUMBERS = {
    "alpha": 46, "delta": 25, "epsilon": 22, "iota": 14,
    "kappa": 13, "chi": 3, "psi": 2, "omega": 0,
}

NIEMEIER_LABELS = tuple(COXETER_NUMBERS)
QUATERNARY_LABELS = ("S1", "S2", "S3")
ALL_LABELS = NIEMEIER_LABELS + QUATERNARY_LABELS


def normalize_label(label: str) -> str:
    label = GREEK_ALIASES.get(label, label)
    if label in ("s1", "s2", "s3"):
        label = label.upper()
    if label not in ALL_LABELS:
        raise UnknownLabel(f"unknown lattice label {label!r}")
    return label


@dataclass(frozen=True)
class Lattice:
    label: str
    rank: int
    gram: tuple  # tuple of tuples, int
    coxeter: int = None
    construction: dict = field(default_factory=dict, compare=False)

    @property
    def det(self) -> int:
        return exact.det_bareiss(self.gram)

    @property
    def gram_hash(self) -> str:
        return gram_hash(self.gram)

    def to_json(self) -> str:
        return json.dumps(
            {
                "label": self.label,
                "rank": self.rank,
                "det": self.det,
                "coxeter": self.coxeter,
                "gram": [list(r) for r in self.gram],
            },
            indent=1,
        )

    def to_csv(self) -> str:
        head = f"# label={self.label} rank={self.rank} det={self.det} coxeter={self.coxeter}"
        return "\n".join([head] + [",".join(str(x) for x in r) for r in self.gram])


def _freeze(mat):
    return tuple(tuple(int(x) for x in row) for row in mat)


# -- root systems ------------------------------------------------------------

def root_gram(family: str, rank: int):
    """Cartan-matrix Gram of A_n / D_n / E_n root lattices."""
    if family == "A":
        if rank < 1:
            raise InvalidRank("A_n needs n >= 1")
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2
            if i + 1 < rank:
                g[i][i + 1] = g[i + 1][i] = -1
        expect = rank + 1
    elif family == "D":
        if rank < 3:
            raise InvalidRank("D_n needs n >= 3")
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2
        for i in range(rank - 2):
            g[i][i + 1] = g[i + 1][i] = -1
        g[rank - 3][rank - 1] = g[rank - 1][rank - 3] = -1
        expect = 4
    elif family == "E":
        if rank not in (6, 7, 8):
            raise InvalidRank("E_n needs n in {6,7,8}")
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [
            (i, i + 1) for i in range(4, rank - 1)
        ]
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2
        for a, b in edges:
            g[a][b] = g[b][a] = -1
        expect = {6: 3, 7: 2, 8: 1}[rank]
    else:
        raise InvalidRank(f"unknown family {family!r}")
    got = exact.det_bareiss(g)
    if got != expect:
        raise ConstructionFailure(f"{family}{rank} determinant {got} != {expect}")
    return _freeze(g)


def _root_basis_ambient(family: str, rank: int):
    """Integer root basis rows in the standard Euclidean ambient."""
    if family == "A":
        rows = []
        for i in range(rank):
            r = [0] * (rank + 1)
            r[i], r[i + 1] = 1, -1
            rows.append(r)
        return rows, rank + 1
    if family == "D":
        rows = []
        for i in range(rank - 1):
            r = [0] * rank
            r[i], r[i + 1] = 1, -1
            rows.append(r)
        r = [0] * rank
        r[rank - 2], r[rank - 1] = 1, 1
        rows.append(r)
        return rows, rank
    raise InvalidRank(f"no ambient basis for family {family!r}")


def _dual_class_rep(family: str, rank: int, label: int):
    """Representative of a dual-quotient class, as Fractions in the ambient."""
    if family == "A":
        m = rank + 1
        j = label % m
        if j == 0:
            return [Fraction(0)] * m
        return [Fraction(m - j, m)] * j + [Fraction(-j, m)] * (m - j)
    if family == "D":
        if label == 0:
            return [Fraction(0)] * rank
        if label == 1:  # v
            return [Fraction(1)] + [Fraction(0)] * (rank - 1)
        if label == 2:  # s
            return [Fraction(1, 2)] * rank
        if label == 3:  # c
            return [Fraction(1, 2)] * (rank - 1) + [Fraction(-1, 2)]
    raise InvalidRank(f"no dual classes for {family}{rank} label {label}")


# glue data: components (family, rank, count) and glue generator words
_NIEMEIER_RECIPES = {
    "alpha": (("D", 24, 1), ((2,),)),
    "delta": (("A", 24, 1), ((5,),)),
    "epsilon": (("D", 12, 2), ((2, 1), (1, 2))),
    "iota": (("D", 8, 3), ((2, 1, 1), (1, 2, 1), (1, 1, 2))),
    "kappa": (("A", 12, 2), ((1, 5),)),
    "chi": (("A", 2, 12), "ternary12"),
    "psi": (("A", 1, 24), "binary24"),
}


def glue_code_for(label: str) -> codes.GlueCode:
    """Expanded glue group for a glued Niemeier label."""
    label = normalize_label(label)
    if label not in _NIEMEIER_RECIPES:
        raise UnknownLabel(f"no glue recipe for {label}")
    (family, rank, count), gens = _NIEMEIER_RECIPES[label]
    if isinstance(gens, str):
        generators = codes.golay_code(gens).generators
    else:
        generators = gens
    moduli = tuple(("klein" if family == "D" else rank + 1) for _ in range(count))
    words = codes.expand_group(generators, moduli)
    return codes.GlueCode(moduli=moduli, words=words, generators=tuple(generators))


def _assemble_from_rows(label, frac_rows, norm_scale, coxeter, construction):
    """Scale rational generator rows, HNF-reduce, and verify the Gram."""
    den = 1
    for row in frac_rows:
        for x in row:
            q = Fraction(x).denominator
            den = den * q // gcd(den, q)
    int_rows = [[int(Fraction(x) * den) for x in row] for row in frac_rows]
    h = exact.hnf_rows(int_rows)
    if len(h) != 24:
        raise ConstructionFailure(f"{label}: generator rank {len(h)} != 24")
    try:
        gram = exact.gram_of_rows(h, scale=den * den * norm_scale)
    except ValueError as e:
        raise ConstructionFailure(f"{label}: non-integral gram ({e})") from None
    for i in range(24):
        if gram[i][i] % 2:
            raise ConstructionFailure(f"{label}: odd diagonal entry")
    det = exact.det_bareiss(gram)
    if det != 1:
        raise ConstructionFailure(f"{label}: determinant {det} != 1")
    construction = dict(construction)
    construction["basis_rows"] = [list(r) for r in h]
    construction["row_scale"] = den
    construction["norm_scale"] = norm_scale
    return Lattice(
        label=label, rank=24, gram=_freeze(gram), coxeter=coxeter,
        construction=construction,
    )


@lru_cache(maxsize=None)
def assemble_niemeier(label: str) -> Lattice:
    """Glued Niemeier lattice for one of the seven glued labels."""
    label = normalize_label(label)
    if label == "omega":
        return build_leech()
    if label not in _NIEMEIER_RECIPES:
        raise UnknownLabel(f"unsupported label {label}")
    (family, rank, count), _ = _NIEMEIER_RECIPES[label]
    glue = glue_code_for(label)

    root_rows, ambient = _root_basis_ambient(family, rank)
    root_det = exact.det_bareiss(root_gram(family, rank))
    if glue.cardinality**2 != root_det**count:
        raise ConstructionFailure(
            f"{label}: glue index {glue.cardinality}^2 != det {root_det}^{count}"
        )
    if not glue.is_closed():
        raise ConstructionFailure(f"{label}: glue words not closed")

    total_dim = ambient * count
    rows = []
    for c in range(count):
        for r in root_rows:
            row = [Fraction(0)] * total_dim
            row[c * ambient : (c + 1) * ambient] = [Fraction(x) for x in r]
            rows.append(row)
    if isinstance(_NIEMEIER_RECIPES[label][1], str):
        gen_words = glue.generators
    else:
        gen_words = _NIEMEIER_RECIPES[label][1]
    for word in gen_words:
        row = []
        for c in range(count):
            row.extend(_dual_class_rep(family, rank, word[c]))
        rows.append(row)
    construction = {
        "kind": "niemeier-glue",
        "components": f"{family}{rank}^{count}",
        "glue_generators": [list(w) for w in gen_words],
        "glue_cardinality": glue.cardinality,
    }
    return _assemble_from_rows(
        label, rows, 1, COXETER_NUMBERS[label], construction
    )


@lru_cache(maxsize=None)
def build_leech() -> Lattice:
    """Leech lattice from the binary Golay code (mod-8 frame construction).

    Vectors live in (1/sqrt 8)·Z^24: x with x ≡ m·1 (mod 2),
    (x − m·1)/2 mod 2 in the Golay code, sum(x) ≡ 4m (mod 8).
    """
    golay = codes.golay_code("binary24")
    rows = []
    for gen in golay.generators:
        rows.append([2 * int(x) for x in gen])
    for j in range(1, 24):
        row = [0] * 24
        row[0] = 4
        row[j] = 4
        rows.append(row)
    row = [0] * 24
    row[0], row[1] = 4, -4
    rows.append(row)
    rows.append([-3] + [1] * 23)
    h = exact.hnf_rows(rows)
    if len(h) != 24:
        raise ConstructionFailure(f"leech: generator rank {len(h)} != 24")
    try:
        gram = exact.gram_of_rows(h, scale=8)
    except ValueError as e:
        raise ConstructionFailure(f"leech: non-integral gram ({e})") from None
    for i in range(24):
        if gram[i][i] % 2:
            raise ConstructionFailure("leech: odd diagonal entry")
    det = exact.det_bareiss(gram)
    if det != 1:
        raise ConstructionFailure(f"leech: determinant {det} != 1")
    construction = {
        "kind": "leech-mod8",
        "basis_rows": [list(r) for r in h],
        "norm_scale": 8,
    }
    return Lattice(
        label="omega", rank=24, gram=_freeze(gram), coxeter=0,
        construction=construction,
    )


_QUATERNARY = {
    "S1": ((2, 0, 1, 0), (0, 2, 0, 1), (1, 0, 6, 0), (0, 1, 0, 6)),
    "S2": ((2, 1, 1, 1), (1, 2, 0, 1), (1, 0, 8, 4), (1, 1, 4, 8)),
    "S3": ((4, 2, 1, 1), (2, 4, 0, 1), (1, 0, 4, 2), (1, 1, 2, 4)),
}


@lru_cache(maxsize=None)
def quaternary_gram(i: int) -> Lattice:
    """The quaternary forms of determinant 121 and level 11."""
    if i not in (1, 2, 3):
        raise UnknownLabel(f"quaternary index {i} not in 1..3")
    label = f"S{i}"
    gram = _QUATERNARY[label]
    det = exact.det_bareiss(gram)
    if det != 121:
        raise ConstructionFailure(f"{label}: determinant {det} != 121")
    return Lattice(
        label=label, rank=4, gram=gram, coxeter=None,
        construction={"kind": "explicit-gram"},
    )


def coxeter_number(label: str) -> int:
    label = normalize_label(label)
    if label not in COXETER_NUMBERS:
        raise UnknownLabel(f"no Coxeter number for {label}")
    return COXETER_NUMBERS[label]


@lru_cache(maxsize=None)
def build_lattice(label: str) -> Lattice:
    label = normalize_label(label)
    if label == "omega":
        return build_leech()
    if label in _NIEMEIER_RECIPES:
        return assemble_niemeier(label)
    return quaternary_gram(int(label[1]))


def export_lattice(label: str, fmt: str = "json") -> str:
    lat = build_lattice(label)
    if fmt == "json":
        return lat.to_json()
    if fmt == "csv":
        return lat.to_csv()
    raise ValueError(f"unknown format {fmt!r}")
