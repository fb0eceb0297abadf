"""End-to-end CLI behavior: exit codes, output formats, schema conformance."""
import json

import pytest

from thetalat import cli, schema


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_build_known_label(capsys, repo_cache):
    code, out = run(capsys, "build", "--label", "alpha",
                    "--cache-dir", repo_cache)
    assert code == 0
    assert "alpha" in out


def test_build_unknown_label(capsys, repo_cache):
    code, _ = run(capsys, "build", "--label", "zeta",
                  "--cache-dir", repo_cache)
    assert code == 1


def test_build_json_conforms(capsys, repo_cache):
    code, out = run(capsys, "build", "--label", "omega", "--format", "json",
                    "--cache-dir", repo_cache)
    assert code == 0
    obj = json.loads(out)
    assert schema.conforms(obj, "lattice") == []
    assert obj["det"] == 1 and obj["roots"] == 0 and obj["min4"] == 196560


def test_export_csv_is_gram(capsys, repo_cache):
    code, out = run(capsys, "export", "--label", "S1", "--format", "csv",
                    "--cache-dir", repo_cache)
    assert code == 0
    rows = [list(map(int, ln.split(",")))
            for ln in out.strip().splitlines() if not ln.startswith("#")]
    assert rows == [[2, 0, 1, 0], [0, 2, 0, 1], [1, 0, 6, 0], [0, 1, 0, 6]]


def test_coeff_degree2_identity(capsys, repo_cache):
    # classical binary notation [a,b,c]: "1,0,1" is the 2x2 identity T
    code, out = run(capsys, "coeff", "--lat", "S1", "--t", "1,0,1",
                    "--cache-dir", repo_cache)
    assert code == 0
    assert "= 8 " in out


def test_coeff_degree3_delta(capsys, repo_cache):
    code, out = run(capsys, "coeff", "--lat", "delta", "--t", "1,1,1:0,0,0",
                    "--cache-dir", repo_cache)
    assert code == 0
    assert "127512000" in out


def test_coeff_ozeki_tuple(capsys, repo_cache):
    code, out = run(capsys, "coeff", "--lat", "omega", "--format", "json",
                    "--ozeki", "2,2,2,2,1,0,0,2,2,2",
                    "--cache-dir", repo_cache)
    assert code == 0
    obj = json.loads(out)
    assert schema.conforms(obj, "coeff") == []
    assert obj["coeff"] == 412477857792000 and obj["d_T"] == 84


def test_coeff_reruns_from_ledger(capsys, repo_cache):
    argv = ("coeff", "--lat", "S2", "--t", "1,1,1", "--format", "json",
            "--cache-dir", repo_cache)
    code1, out1 = run(capsys, *argv)
    code2, out2 = run(capsys, *argv)
    assert code1 == code2 == 0
    a, b = json.loads(out1), json.loads(out2)
    assert a["coeff"] == b["coeff"]
    assert b["from_ledger"] is True


def test_coeff_requires_a_spec(capsys, repo_cache):
    code, _ = run(capsys, "coeff", "--lat", "S1", "--cache-dir", repo_cache)
    assert code == 1


def test_coeff_rejects_both_specs(capsys, repo_cache):
    code, _ = run(capsys, "coeff", "--lat", "omega", "--t", "1",
                  "--ozeki", "2,2,2,2,1,0,0,2,2,2", "--cache-dir", repo_cache)
    assert code == 1


def test_coeff_rejects_malformed_spec(capsys, repo_cache):
    code, _ = run(capsys, "coeff", "--lat", "S1", "--t", "1,1",
                  "--cache-dir", repo_cache)
    assert code == 1
    code, _ = run(capsys, "coeff", "--lat", "omega",
                  "--ozeki", "2,2,2,2,5,0,0,0,0,0", "--cache-dir", repo_cache)
    assert code == 1


def test_table_paper_tables_pass(capsys, repo_cache):
    for table_id in ("paper-1", "paper-2", "paper-3", "paper-4", "paper-5"):
        code, out = run(capsys, "table", "--id", table_id,
                        "--cache-dir", repo_cache)
        assert code == 0, (table_id, out)
        assert "overall: PASS" in out


def test_table_json_conforms(capsys, repo_cache):
    code, out = run(capsys, "table", "--id", "paper-1", "--format", "json",
                    "--cache-dir", repo_cache)
    assert code == 0
    obj = json.loads(out)
    assert schema.conforms(obj, "table") == []
    assert obj["overall"] == "pass"
    assert all(r["status"] == "match" for r in obj["rows"])


def test_table_ozeki_row_filter(capsys, repo_cache):
    code, out = run(capsys, "table", "--id", "ozeki-5", "--rows", "d64,d80",
                    "--format", "json", "--cache-dir", repo_cache)
    assert code == 0
    obj = json.loads(out)
    assert [r["row"] for r in obj["rows"]] == ["d64", "d80"]
    assert obj["overall"] == "pass"


def test_table_ozeki5_marks_anomaly_without_failing(capsys, repo_cache):
    code, out = run(capsys, "table", "--id", "ozeki-5", "--format", "json",
                    "--cache-dir", repo_cache)
    assert code == 0
    obj = json.loads(out)
    statuses = {r["row"]: r["status"] for r in obj["rows"]}
    assert statuses["d81"] == "anomaly"
    assert all(v == "match" for k, v in statuses.items() if k != "d81")


def test_table_ozeki6_passes_on_unambiguous_rows(capsys, repo_cache):
    code, out = run(capsys, "table", "--id", "ozeki-6", "--format", "json",
                    "--cache-dir", repo_cache)
    assert code == 0
    obj = json.loads(out)
    statuses = {r["row"]: r["status"] for r in obj["rows"]}
    assert statuses["d160a"] == statuses["d160b"] == "anomaly"
    assert all(v == "match" for k, v in statuses.items()
               if k not in ("d160a", "d160b"))
    assert obj["overall"] == "pass"


def test_table_unknown_id(capsys, repo_cache):
    code, _ = run(capsys, "table", "--id", "paper-9", "--cache-dir", repo_cache)
    assert code == 1


def test_table_bad_row_filter(capsys, repo_cache):
    code, _ = run(capsys, "table", "--id", "ozeki-5", "--rows", "d63",
                  "--cache-dir", repo_cache)
    assert code == 1


def test_verify_claim_exit_codes(capsys, repo_cache):
    code, out = run(capsys, "verify", "--claim", "thm3.1.i",
                    "--cache-dir", repo_cache)
    assert code == 0
    assert "PASS" in out
    code, _ = run(capsys, "verify", "--claim", "thm5", "--cache-dir", repo_cache)
    assert code == 1


def test_verify_writes_schema_valid_report(capsys, repo_cache, tmp_path):
    code, out = run(capsys, "verify", "--claim", "intro-mod23",
                    "--format", "json", "--cache-dir", repo_cache)
    assert code == 0
    obj = json.loads(out)
    assert schema.conforms(obj, "report") == []
    assert obj["claim_id"] == "intro-mod23"
    on_disk = json.load(open(f"{repo_cache}/reports/intro-mod23.json"))
    assert on_disk == obj


def test_usage_exit_on_missing_subcommand(capsys):
    assert cli.main([]) == 1
    assert cli.main(["frobnicate"]) == 1


def test_workers_must_be_positive(capsys, repo_cache):
    code, _ = run(capsys, "coeff", "--lat", "S1", "--t", "1,1,0",
                  "--workers", "0", "--cache-dir", repo_cache)
    assert code == 1
