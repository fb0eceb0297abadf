"""Fixture integrity: stored tables decode, factor and cross-reference cleanly."""
from thetalat import refdata


def test_ozeki_values_are_products_of_their_factors():
    for row in refdata.all_ozeki_rows():
        want = 1
        for p, e in row.factors:
            want *= p ** e
        assert row.value == want, row.row_id


def test_ozeki_tuples_decode_to_claimed_determinants():
    for row in refdata.all_ozeki_rows():
        d = row.half_int().det2t()
        if row.row_id == "d81":
            # the printed d81 row repeats the d129 tuple; never force-decoded
            assert d == 129
        else:
            assert d == row.det_claimed, row.row_id


def test_criterion7_rows_are_unambiguous():
    for row_id in refdata.CRITERION7_ROWS:
        row = refdata.ozeki_row(row_id)
        assert not row.anomaly, row_id
    assert refdata.ozeki_row("d121").value == refdata.D121_VALUE


def test_anomalies_carry_notes():
    flagged = [r.row_id for r in refdata.all_ozeki_rows() if r.anomaly]
    assert flagged == ["d81", "d160a", "d160b"]
    for r in refdata.all_ozeki_rows():
        if r.anomaly:
            assert r.note


def test_coeff_tables_are_internally_consistent():
    for table in refdata.COEFF_TABLES.values():
        for col in table.columns:
            assert len(table.values[col]) == len(table.classes), table.table_id
        assert table.citation
        for spec in table.classes:
            t = table.half_int(spec)
            assert t.n == table.degree


def test_table_ids_cover_all_fixtures():
    assert set(refdata.TABLE_IDS) == (
        set(refdata.COEFF_TABLES) | set(refdata.OZEKI_TABLES) | {"paper-3"})
