import csv
import io
import json
import math

import pytest

from twistbsd.cli import main
from twistbsd.report import dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lfun_json_dossier(capsys):
    code, out, _ = run(capsys, "lfun", "--p", "5", "--nu", "1", "--f", "1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["schema_version"] == 1
    assert d["l_polynomial"]["coefficients"] == ["1", "0", "100", "0", "3750", "0", "62500", "0", "390625"]
    assert d["rank"] == 0 and d["l_star"] == "16/1" and d["all_checks_passed"]
    assert all(c["passed"] for c in d["checks"])
    assert dumps(json.loads(out)) == out  # parse / re-emit is byte-identical


def test_lfun_split_prime(capsys):
    code, out, _ = run(capsys, "lfun", "--p", "7")
    d = json.loads(out)
    assert code == 0 and d["rank"] == 0 and d["ord_p_l_star"] == -1


def test_lfun_full_rank(capsys):
    code, out, _ = run(capsys, "lfun", "--p", "11", "--nu", "2")
    d = json.loads(out)
    assert (d["l_star"], d["reg_sha"], d["dim_sha"], d["rank"]) == ("1/1", "121/1", 1, 20)
    # H = r^ceil(q/6) = 121^2, so the ratio is 1/2
    assert d["brauer_siegel"]["direct"] == pytest.approx(0.5, abs=1e-12)


def test_big_integers_are_strings(capsys):
    code, out, _ = run(capsys, "lfun", "--p", "5", "--f", "3")
    d = json.loads(out)
    assert code == 0
    assert d["reg_sha"] == "1677721600000000000000000000/1"
    assert all(isinstance(c, str) for c in d["l_polynomial"]["coefficients"])
    assert dumps(d) == out


def test_lfun_csv(capsys):
    code, out, _ = run(capsys, "lfun", "--p", "5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1
    assert rows[0]["l_star"] == "16/1"
    assert float(rows[0]["bs"]) == pytest.approx(math.log(16) / math.log(5), abs=1e-13)


def test_lfun_text_and_out_file(capsys, tmp_path):
    target = tmp_path / "d.txt"
    code, out, _ = run(capsys, "lfun", "--p", "5", "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    assert "analytic rank" in target.read_text()


@pytest.mark.parametrize("argv,code", [
    (["lfun", "--p", "9"], 2),
    (["lfun", "--p", "3"], 2),
    (["lfun", "--p", "5", "--n", "3"], 2),
    (["lfun", "--p", "5", "--cap-enum", "10"], 3),
    (["lfun", "--p", "5", "--cap-ambient", "10"], 3),
    (["sha", "--p", "7"], 2),
    (["oracle", "--p", "5", "--oracle-max", "9", "--cap-oracle", "1000"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_argparse_rejects_bad_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lfun", "--p", "5", "--nu", "0"])
    assert exc.value.code == 2


def test_env_cap_override(capsys, monkeypatch):
    monkeypatch.setenv("TWISTBSD_CAP_ENUM", "10")
    assert run(capsys, "lfun", "--p", "5")[0] == 3
    # an explicit flag wins over the environment
    assert run(capsys, "lfun", "--p", "5", "--cap-enum", "1000000")[0] == 0
    monkeypatch.setenv("TWISTBSD_CAP_ENUM", "zero")
    assert run(capsys, "lfun", "--p", "5")[0] == 2


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--p", "5")
    d = json.loads(out)
    assert code == 0 and len(d["orbits"]) == 4
    assert all(o["size"] == 2 for o in d["orbits"])
    code, out, _ = run(capsys, "orbits", "--p", "7", "--n", "2", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 1 + 6


def test_sha(capsys):
    code, out, _ = run(capsys, "sha", "--p", "5", "--f", "2")
    d = json.loads(out)
    assert code == 0 and d["dim_sha"] == d["floor_q_over_6"] == 4
    assert [o["size"] for o in d["orbits"]] == [12, 12, 12, 12]


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--p", "5", "--oracle-max", "4", "--method", "naive")
    d = json.loads(out)
    assert code == 0 and d["agree"]
    assert d["point_count"] == ["0", "-200", "0", "5000"]


def test_verify_only_gauss(capsys):
    code, out, _ = run(capsys, "verify", "--only", "gauss", "--grid", "5,1,1;7,1,1", "--jobs", "1")
    d = json.loads(out)
    assert code == 0 and d["all_passed"]
    assert all(set(p["suites"]) == {"gauss"} for p in d["points"])


def test_verify_default_grid_reports_rank_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--jobs", "2")
    d = json.loads(out)
    assert code == 1
    first = d["first_counterexample"]
    assert (first["p"], first["nu"], first["f"], first["suite"]) == (5, 1, 2, "rank")
    assert (first["expected"], first["actual"]) == (4, 0)
    assert [(p["p"], p["nu"], p["f"]) for p in d["points"]] == sorted((p["p"], p["nu"], p["f"]) for p in d["points"])
    failing = {(p["p"], p["nu"], p["f"], s, c["name"]) for p in d["points"]
               for s, cs in p["suites"].items() for c in cs if not c["passed"]}
    assert failing == {
        (5, 1, 2, "rank", "rank formula = analytic rank"),
        (7, 1, 1, "ord", "ord G_j = 2m/3 or m/3 by j mod 3"),
        (7, 1, 2, "ord", "ord G_j = 2m/3 or m/3 by j mod 3"),
        (13, 1, 1, "ord", "ord G_j = 2m/3 or m/3 by j mod 3"),
    }


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "5", "--fs", "1,2,3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["f"] for r in rows] == ["1", "2", "3"]
    assert all(math.isfinite(float(r["bs"])) for r in rows)


def test_sweep_skips_capped_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "5", "--fs", "1,3", "--cap-enum", "1000")
    d = json.loads(out)
    assert code == 0
    assert [r["status"] for r in d["rows"]] == ["ok", "skipped"]
    assert d["rows"][0]["floor_q6_nu"] == 0


def test_sweep_empty(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "5", "--fs", "", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines() == [",".join(
        ["p", "nu", "f", "q", "rank", "log_r_lstar", "bs", "log_r_reg_sha", "floor_q6_nu", "ord_p_reg_sha", "status"])]
