"""Versioned golden fixtures: published coefficient grids, the Coxeter-number
row, and Ozeki's factored degree-4 Leech coefficients.

These are stored expected values with provenance notes, so table commands and
tests diff against auditable data instead of regenerating their own truth.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import forms

FIXTURE_VERSION = 1


@dataclass(frozen=True)
class CoeffTable:
    table_id: str
    degree: int
    classes: tuple          # T-specs in the bracket notation for that degree
    columns: tuple          # lattice labels, column order as published
    values: dict            # label -> tuple of coefficients down the rows
    citation: str

    def half_int(self, spec) -> forms.HalfIntMat:
        if self.degree == 2:
            return forms.decode_binary(*spec)
        return forms.decode_ternary(*spec)


@dataclass(frozen=True)
class OzekiRow:
    row_id: str             # "d64", "d144a", "d144b", ...
    det_claimed: int
    tuple10: tuple
    factors: tuple          # ((prime, exponent), ...)
    anomaly: bool = False
    note: str = ""

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.factors:
            v *= p ** e
        return v

    def half_int(self) -> forms.HalfIntMat:
        return forms.decode_ozeki4(*self.tuple10)


# -- coefficient grids ------------------------------------------------------

_DEG2_CLASSES = ((0, 0, 0), (1, 0, 0), (1, 1, 1), (1, 0, 1))
_DEG3_CLASSES = ((1, 1, 1, 1, 1, 1), (1, 1, 1, 0, 0, 1), (1, 1, 1, 0, 0, 0))

TABLE_PAPER_1 = CoeffTable(
    table_id="paper-1", degree=2, classes=_DEG2_CLASSES,
    columns=("S1", "alpha"),
    values={
        "S1": (1, 4, 0, 8),
        "alpha": (1, 1104, 97152, 1022304),
    },
    citation=(
        "degree-2 theta coefficients of S1 and alpha at the four classes "
        "[0,0,0],[1,0,0],[1,1,1],[1,0,1]; stored golden grid, fixture v1"
    ),
)

TABLE_PAPER_2 = CoeffTable(
    table_id="paper-2", degree=3, classes=_DEG3_CLASSES,
    columns=("S1", "alpha"),
    values={
        "S1": (0, 0, 0),
        "alpha": (4177536, 81607680, 781393536),
    },
    citation=(
        "degree-3 theta coefficients of S1 and alpha at the three classes "
        "[1,1,1;1,1,1],[1,1,1;0,0,1],[1,1,1;0,0,0]; stored golden grid, "
        "fixture v1"
    ),
)

# Coxeter numbers for the chains (ii) and (iii); alpha/kappa/psi are covered
# by the construction table in lattices.py.
TABLE_PAPER_3 = {
    "table_id": "paper-3",
    "columns": ("delta", "iota", "chi", "epsilon", "omega"),
    "values": (25, 14, 3, 22, 0),
    "citation": "Coxeter numbers of delta, iota, chi, epsilon, omega; "
                "fixture v1",
}

TABLE_PAPER_4 = CoeffTable(
    table_id="paper-4", degree=2, classes=_DEG2_CLASSES,
    columns=("S2", "delta", "S3", "omega"),
    values={
        "S2": (1, 6, 12, 0),
        "delta": (1, 600, 27600, 303600),
        "S3": (1, 0, 0, 0),
        "omega": (1, 0, 0, 0),
    },
    citation=(
        "degree-2 theta coefficients of S2, delta, S3, omega at the four "
        "classes of paper-1; stored golden grid, fixture v1"
    ),
)

TABLE_PAPER_5 = CoeffTable(
    table_id="paper-5", degree=3, classes=_DEG3_CLASSES,
    columns=("S2", "delta", "S3", "omega"),
    values={
        "S2": (0, 0, 0),
        "delta": (607200, 12751200, 127512000),
        "S3": (0, 0, 0),
        "omega": (0, 0, 0),
    },
    citation=(
        "degree-3 theta coefficients of S2, delta, S3, omega at the three "
        "classes of paper-2; stored golden grid, fixture v1"
    ),
)

COEFF_TABLES = {
    t.table_id: t for t in (TABLE_PAPER_1, TABLE_PAPER_2, TABLE_PAPER_4,
                            TABLE_PAPER_5)
}

# -- Ozeki degree-4 rows ----------------------------------------------------
# Ten-tuple order (t11,t22,t33,t44, u12,u13,u23,u14,u24,u34) with u_ij the
# doubled off-diagonal entries; the d121 row decodes to 2T = S3 exactly,
# which pins the convention.

_OZEKI_5 = (
    OzekiRow("d64", 64, (2, 2, 2, 2, 0, 0, 0, 2, 2, 2),
             ((2, 8), (3, 8), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d80", 80, (2, 2, 2, 2, 2, 0, 0, 2, 0, 2),
             ((2, 11), (3, 8), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d81", 81, (2, 2, 2, 2, 1, 1, 1, 1, 2, 2),
             ((2, 19), (3, 3), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1)),
             anomaly=True,
             note="printed tuple repeats the d_T=129 row and decodes to "
                  "determinant 129, so this row's label and value cannot "
                  "refer to the printed tuple; excluded from verdicts"),
    OzekiRow("d84", 84, (2, 2, 2, 2, 1, 0, 0, 2, 2, 2),
             ((2, 16), (3, 7), (5, 3), (7, 1), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d96", 96, (2, 2, 2, 2, 2, 1, -1, 0, 0, 2),
             ((2, 15), (3, 7), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d105", 105, (2, 2, 2, 2, 2, 1, 0, 0, 1, 2),
             ((2, 19), (3, 7), (5, 3), (7, 1), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d108", 108, (2, 2, 2, 2, 2, 1, -1, -1, 1, -1),
             ((2, 19), (3, 4), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d112", 112, (2, 2, 2, 2, 2, 1, 0, 2, 0, 0),
             ((2, 16), (3, 8), (5, 4), (7, 1), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d116", 116, (2, 2, 2, 2, 2, 1, 0, 0, 2, 0),
             ((2, 16), (3, 8), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d120", 120, (2, 2, 2, 2, 1, 1, 1, 2, 2, 0),
             ((2, 18), (3, 7), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d121", 121, (2, 2, 2, 2, 2, 1, 0, 1, 1, 2),
             ((2, 20), (3, 8), (5, 3), (7, 2), (13, 1), (23, 1))),
)

_OZEKI_6 = (
    OzekiRow("d125", 125, (2, 2, 2, 2, 1, 1, -1, -1, 1, 1),
             ((2, 20), (3, 9), (5, 1), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d128", 128, (2, 2, 2, 2, 0, 0, 0, 2, 2, 0),
             ((2, 10), (3, 9), (5, 4), (7, 2), (11, 2), (13, 1), (23, 1))),
    OzekiRow("d129", 129, (2, 2, 2, 2, 1, 1, 1, 1, 2, 2),
             ((2, 19), (3, 7), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d132", 132, (2, 2, 2, 2, 2, 1, -1, 0, 0, 1),
             ((2, 17), (3, 7), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d140", 140, (2, 2, 2, 2, 1, 1, -1, 0, 0, 2),
             ((2, 19), (3, 8), (5, 4), (7, 1), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d144a", 144, (2, 2, 2, 2, 2, 1, -1, 0, 0, 0),
             ((2, 16), (3, 7), (5, 3), (7, 2), (11, 1), (13, 1), (23, 2))),
    OzekiRow("d144b", 144, (2, 2, 2, 2, 2, 0, 0, 0, 0, 2),
             ((2, 12), (3, 7), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1),
              (373, 1))),
    OzekiRow("d145", 145, (2, 2, 2, 2, 2, 1, 0, -1, -1, 1),
             ((2, 19), (3, 8), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d153", 153, (2, 2, 2, 2, 1, 1, 0, 1, 1, 2),
             ((2, 19), (3, 7), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d156", 156, (2, 2, 2, 2, 1, 1, 1, 2, 0, 0),
             ((2, 20), (3, 8), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1))),
    OzekiRow("d160a", 160, (2, 2, 2, 2, 1, 1, -1, 1, -1, 0),
             ((2, 15), (3, 8), (5, 3), (7, 2), (11, 1), (13, 1), (23, 1),
              (41, 1)),
             anomaly=True,
             note="the two printed d_T=160 values are interchanged: this "
                  "tuple counts to the value printed on the other row "
                  "(stable under all 24 column permutations; direct "
                  "recount confirms the pairing); printed value kept "
                  "verbatim, excluded from verdicts"),
    OzekiRow("d160b", 160, (2, 2, 2, 2, 1, 1, 0, 2, 0, 0),
             ((2, 18), (3, 8), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)),
             anomaly=True,
             note="the two printed d_T=160 values are interchanged: this "
                  "tuple counts to the value printed on the other row "
                  "(stable under all 24 column permutations; direct "
                  "recount confirms the pairing); printed value kept "
                  "verbatim, excluded from verdicts"),
)

OZEKI_TABLES = {"ozeki-5": _OZEKI_5, "ozeki-6": _OZEKI_6}
OZEKI_CITATION = ("Ozeki's factored degree-4 Leech theta coefficients at "
                  "discriminants 64..160, fixture v1")

D121_VALUE = 12599323656192000

# rows required by the acceptance gate's long-run criterion
CRITERION7_ROWS = ("d64", "d80", "d84", "d96", "d121", "d128", "d144a")

TABLE_IDS = tuple(sorted(COEFF_TABLES)) + ("paper-3",) + tuple(
    sorted(OZEKI_TABLES))


def ozeki_row(row_id: str) -> OzekiRow:
    for rows in OZEKI_TABLES.values():
        for row in rows:
            if row.row_id == row_id:
                return row
    raise KeyError(row_id)


def all_ozeki_rows():
    return tuple(_OZEKI_5) + tuple(_OZEKI_6)
