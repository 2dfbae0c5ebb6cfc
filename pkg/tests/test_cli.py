import json

import pytest

from oscgk import ENGINE
from oscgk.cli import main


def run(tmp_path, name, *argv):
    out = tmp_path / name
    code = main([*argv, "--out-dir", str(out)])
    return code, {p.name: p.read_text() for p in sorted(out.glob("*"))} if out.exists() else {}


def test_verify_rep_pass_and_mutation(tmp_path):
    code, files = run(tmp_path, "a", "verify-rep", "--algebra", "o-even", "--n", "2", "--n1", "1", "--n2", "2")
    assert code == 0
    assert json.loads(files["verify.json"])["violations"] == []
    code, _ = run(tmp_path, "b", "verify-rep", "--algebra", "sp", "--n", "2", "--n1", "1", "--n2", "1")
    assert code == 0
    code, files = run(tmp_path, "c", "verify-rep", "--algebra", "sp", "--n", "2", "--n1", "1", "--n2", "1",
                      "--mutate")
    assert code == 1
    assert json.loads(files["verify.json"])["violations"]


@pytest.mark.parametrize("argv,degree", [
    (("--algebra", "o-even", "--n", "2", "--n1", "1", "--n2", "1", "--kprime", "-1"), 1),
    (("--algebra", "sp", "--n", "2", "--n1", "1", "--n2", "2", "--kprime", "-1"), 3),
    (("--algebra", "o-odd", "--n", "2", "--n1", "1", "--n2", "2", "--kprime", "-1"), 3),
])
def test_gk_examples(tmp_path, argv, degree):
    code, files = run(tmp_path, "g", "gk", *argv, "--expect", str(degree))
    assert code == 0
    est = json.loads(files["gk_estimate.json"])
    assert est["estimate"]["degree"] == degree
    assert est["engine"] == ENGINE
    assert files["gk_series.csv"].startswith(f"# engine: {ENGINE}\n")
    assert "k,phi,diff1,diff2,diff3,diff4,diff5" in files["gk_series.csv"]


def test_gk_expect_mismatch_exits_one(tmp_path):
    code, _ = run(tmp_path, "g", "gk", "--algebra", "o-even", "--n", "2", "--n1", "1", "--n2", "1",
                  "--kprime", "-1", "--expect", "2")
    assert code == 1


def test_gk_short_horizon_is_unstable(tmp_path):
    code, _ = run(tmp_path, "g", "gk", "--algebra", "sp", "--n", "2", "--n1", "1", "--n2", "2",
                  "--kprime", "-1", "--K", "3")
    assert code == 2


def test_config_errors(tmp_path):
    assert main(["gk", "--algebra", "o-even", "--n", "2", "--n1", "2", "--n2", "1"]) == 3
    assert main(["harmonic", "--algebra", "sp", "--n", "2", "--n1", "1", "--n2", "1"]) == 3
    assert main(["gk", "--algebra", "o-even", "--n", "2", "--n1", "1", "--n2", "2", "--seed", "x1 + x2"]) == 3
    assert main(["oracle", "--family", "Uk", "--n", "3", "--n1", "1"]) == 3


def test_oracle_examples(tmp_path):
    code, files = run(tmp_path, "o", "oracle", "--family", "Rk", "--n", "2", "--kmax", "10")
    assert code == 0
    fit = json.loads(files["oracle_Rk.json"])
    assert fit["series"] == [1] * 11 and fit["measured_degree"] == 0
    code, files = run(tmp_path, "m", "oracle", "--family", "Mk", "--n", "3", "--n1", "1", "--kmax", "6")
    assert code == 0
    rows = [r.split(",") for r in files["oracle_Mk.csv"].splitlines() if r[0].isdigit()]
    assert all(r[1] == r[-1] for r in rows)
    code, files = run(tmp_path, "t", "oracle", "--family", "Tk", "--n", "3", "--kmax", "8")
    assert json.loads(files["oracle_Tk.json"])["measured_degree"] == 2


def test_harmonic_examples(tmp_path):
    code, files = run(tmp_path, "h", "harmonic", "--algebra", "o-even", "--n", "2", "--n1", "1", "--n2", "1",
                      "--kprime", "-1", "--N", "1")
    assert code == 0
    rep = json.loads(files["harmonic.json"])
    assert set(rep["basis"]) == {"x1", "y2"}
    code, _ = run(tmp_path, "h2", "harmonic", "--algebra", "o-even", "--n", "2", "--n1", "1", "--n2", "2",
                  "--kprime", "-2", "--N", "4")
    assert code == 0


def test_calibrate(tmp_path):
    code, files = run(tmp_path, "c", "calibrate", "--c", "3", "--K", "8")
    assert code == 0
    assert json.loads(files["calibrate.json"])["estimate"]["degree"] == 3


def test_flags_override_config_file(tmp_path):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"algebra": "sp", "n": 2, "n1": 1, "n2": 2, "kprime": -1, "K": 3}))
    code, files = run(tmp_path, "f", "gk", "--config", str(conf), "--K", "14", "--expect", "3")
    assert code == 0
    echoed = json.loads(files["gk_estimate.json"])["config"]
    assert echoed["K"] == 14 and echoed["algebra"] == "sp"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"bogus": 1}))
    assert main(["calibrate", "--config", str(bad)]) == 3


@pytest.mark.parametrize("argv", [
    ("gk", "--algebra", "sp", "--n", "2", "--n1", "2", "--n2", "2", "--kprime", "0", "--component", "1"),
    ("oracle", "--family", "Sk", "--n", "3", "--kmax", "6"),
    ("verify-rep", "--algebra", "o-odd", "--n", "2", "--n1", "1", "--n2", "1"),
])
def test_outputs_independent_of_workers_and_reruns(tmp_path, argv):
    _, a = run(tmp_path, "a", *argv)
    _, b = run(tmp_path, "b", *argv)
    _, c = run(tmp_path, "c", *argv, "--workers", "4")
    assert a and a == b == c
