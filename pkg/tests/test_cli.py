import json

import pytest

from minrep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_catalog_json(capsys):
    code, out = run(capsys, "catalog", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == 1
    cases = [r["case"] for r in d["catalog"]]
    assert len(cases) >= 10 and "g2" in cases


def test_catalog_only_t(capsys):
    _, out = run(capsys, "catalog", "--only-t", "--json")
    assert all(r["property_t"] for r in json.loads(out)["catalog"])


def test_verify_rank_one(capsys):
    code, out = run(capsys, "verify", "case1:n=1", "--mmax", "3", "--json")
    d = json.loads(out)
    assert code == 0 and d["ok"]
    assert d["steps"]["delta"]["deltas"][0] == "1/80"


def test_verify_non_t_expected(capsys):
    code, out = run(capsys, "verify", "--case", "mixed:2x3", "--mmax", "2", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["steps"]["delta"]["status"] == "EXPECTED"
    assert d["steps"]["delta"]["witness"] is not None


def test_kernel_value(capsys):
    code, out = run(capsys, "kernel", "--case", "case1:n=1", "--x", "2", "--json")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(15.504011668709882, rel=1e-14)


def test_delta_solve(capsys):
    code, out = run(capsys, "delta-solve", "--case", "case2:p=2", "--mmax", "3", "--json")
    d = json.loads(out)["delta"]
    assert code == 0 and d["feasible"] and d["A"] == "1/16"


@pytest.mark.parametrize("argv", [
    ["verify", "case9:zzz"],
    ["bogus"],
    ["kernel", "--case", "case1:n=1"],
    ["delta-solve", "--case", "case1:n=1", "--mmax", "0"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_budget_exceeded(capsys):
    assert main(["verify", "case1:n=2", "--budget-secs", "0"]) == 3


def test_tables_written(tmp_path, capsys):
    assert main(["tables", "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["catalog.csv", "meijer.csv", "roots.csv"]


def test_negative_mmax_rejected(capsys):
    assert main(["weight", "--case", "case1:n=1", "--mmax", "-1"]) == 2
