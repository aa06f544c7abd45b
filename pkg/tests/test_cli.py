"""Команды CLI и коды выхода."""
import json

import pytest

from config.settings import settings
from gl3trace.api.commands import EXIT_BUDGET, EXIT_CONFIG, EXIT_OK
from gl3trace.main import run
from gl3trace.services.char_count_service import all_condition_ids


def _json(path):
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.mark.parametrize("argv", [
    ["verify", "--p", "5", "--n", "1"],
    ["orbits", "--p", "2", "--n", "3"],
    ["chars", "--p", "4", "--n", "1"],
    ["decompose", "--p", "2", "--n", "2"],
    ["decompose", "--p", "3", "--n", "6"],
    ["chars", "--p", "2", "--n", "0"],
    ["orbits", "--p", "2", "--n", "2", "--budget", "0"],
    ["verify", "--p", "2", "--n", "2", "--poly", "0,1,1"],
    ["verify", "--format", "xml"],
    ["orbital", "--p", "2", "--n", "2", "--class", "par1:9"],
    ["orbital", "--p", "2", "--n", "2", "--class", "blob:1"],
    ["orbital", "--p", "2", "--n", "2"],
])
def test_configuration_errors(argv):
    assert run(argv) == EXIT_CONFIG


def test_budget_exceeded():
    assert run(["orbits", "--p", "7", "--n", "1", "--budget", "1000"]) == EXIT_BUDGET


def test_budget_is_restored():
    before = settings.ENUMERATION_BUDGET
    run(["orbits", "--p", "7", "--n", "1", "--budget", "1000"])
    assert settings.ENUMERATION_BUDGET == before


def test_orbits_are_deterministic(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["orbits", "--p", "2", "--n", "2", "--out", str(first)]) == EXIT_OK
    assert run(["orbits", "--p", "2", "--n", "2", "--out", str(second)]) == EXIT_OK
    text = first.read_text(encoding="utf-8")
    assert text == second.read_text(encoding="utf-8")
    lines = text.splitlines()
    assert lines[0] == "alpha1,alpha2,alpha3,beta1,beta2,beta3,orbit_size"
    assert len(lines) == 141
    assert sum(int(line.rsplit(",", 1)[1]) for line in lines[1:]) == 2880


def test_chars_q4(tmp_path):
    out = tmp_path / "chars.json"
    assert run(["chars", "--p", "2", "--n", "2", "--out", str(out)]) == EXIT_OK
    report = _json(out)
    assert [row["condition"] for row in report["rows"]] == all_condition_ids()
    assert all(row["match"] is True for row in report["rows"])
    assert report["header"]["config"]["p"] == "2"


def test_decompose_n1(tmp_path):
    out = tmp_path / "decompose.json"
    assert run(["decompose", "--p", "7", "--n", "1", "--out", str(out)]) == EXIT_OK
    report = _json(out)
    assert report["failures"] == []
    assert report["checksums"]["checks"] == {"dimension": True, "dual": True, "double_cosets": True}


def test_decompose_csv_q32(tmp_path):
    out = tmp_path / "decompose.csv"
    assert run(["decompose", "--p", "2", "--n", "5", "--format", "csv", "--out", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "family,case,multiplicity,count,dimension"
    assert "pi_alpha,cube_trivial,5,0,1056" in lines


def test_list_classes(tmp_path):
    out = tmp_path / "classes.csv"
    assert run(["orbital", "--p", "2", "--n", "2", "--list-classes", "--out", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "kind,params,representative,class_size,centralizer_order,level,chi_rho,chi_oracle"
    assert len(lines) == 61
    central = next(line for line in lines if line.startswith("central,1,"))
    assert central.endswith(",1080,1080")


def test_orbital_par1(tmp_path):
    out = tmp_path / "orbital.json"
    assert run(["orbital", "--p", "2", "--n", "2", "--class", "par1:1", "--out", str(out)]) == EXIT_OK
    report = _json(out)
    assert report["closed_value"] == "315"
    assert report["oracle_value"] == "315"
    assert report["match"] is True
    assert report["horocycle_inputs"][0]["kappa"] == ["1", "0", "0", "1"]
    assert report["discrepancies"] == []


def test_orbital_par2_mismatch_is_ledgered(tmp_path):
    out = tmp_path / "orbital.json"
    assert run(["orbital", "--p", "2", "--n", "2", "--class", "par2:1", "--out", str(out)]) == EXIT_OK
    report = _json(out)
    assert report["match"] is False
    assert [d["location"] for d in report["discrepancies"]] == ["orbital_sum.par2"]


def test_bad_f_table(tmp_path):
    table = tmp_path / "f.json"
    table.write_text(json.dumps([{"orbit_rep": [0, 0, 0, 0, 0, 0], "value": "1"}]), encoding="utf-8")
    assert run(["verify", "--p", "2", "--n", "2", "--f-table", str(table)]) == EXIT_CONFIG


def test_verify_q4(tmp_path):
    template = tmp_path / "template.json"
    assert run(["orbits", "--p", "2", "--n", "2", "--format", "json", "--out", str(template)]) == EXIT_OK
    entries = _json(template)
    assert len(entries) == 140
    for i, entry in enumerate(entries):
        entry["value"] = f"{i % 5}/3"
    table = tmp_path / "thirds.json"
    table.write_text(json.dumps(entries), encoding="utf-8")

    out = tmp_path / "verify.json"
    argv = ["verify", "--p", "2", "--n", "2", "--num-f", "1", "--f-table", str(table), "--out", str(out)]
    assert run(argv) == EXIT_OK
    report = _json(out)
    assert report["failures"] == []
    assert [side["function"] for side in report["geometric"]] == ["constant-1", "delta-p0", "thirds", "random-1"]
    assert all(side["chain_holds"] for side in report["geometric"])
    assert report["characters"]["identity_value"] == "1080"
    assert report["checksums"]["double_cosets"] == "24"
    locations = {d["location"] for d in report["discrepancies"]}
    assert {"orbital_sum.par2", "example.k_indicator", "fundamental_domain.par2"} <= locations
