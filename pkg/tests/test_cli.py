import io
import json

import pytest

from sharptrace import cli, report


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_identities_passes():
    code, out, _ = run(["identities", "--d", "4", "--K", "32", "--trials", "20"])
    assert code == 0
    doc = json.loads(out)
    rec = {r["check"]: r for r in doc["records"]}
    assert rec["energy_identity_gap_max"]["value"] <= 1e-11
    assert doc["summary"]["pass"] is True
    assert set(doc) == {"command", "config", "records", "summary"}


def test_constant_equality_case():
    code, out, _ = run(["inequality", "--which", "thmA", "--d", "6", "--family", "constant"])
    assert code == 0
    rec = json.loads(out)["records"][0]
    assert abs(rec["rel_gap"]) <= 1e-12 and rec["expect_equality"]


def test_halved_coefficient_is_reported_as_violation():
    code, out, _ = run(["inequality", "--which", "thmA", "--d", "6", "--neumann-coefficient", "-0.5"])
    assert code == 1
    assert json.loads(out)["summary"]["pass"] is False


@pytest.mark.parametrize("which, d", [("thmB", "4"), ("beckner_a", "4"), ("thmA", "5"),
                                      ("beckner_b", "8"), ("escobar", "6")])
def test_extremal_family_equality(which, d):
    code, out, _ = run(["inequality", "--which", which, "--d", d, "--family", "extremal", "--t", "0.25"])
    assert code == 0, out


def test_scan_csv():
    code, out, err = run(["scan-exponent", "--d", "6", "--t", "0.5", "--alphas=-0.5,-1,-2",
                          "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "alpha,rel_gap,gap,pass"
    assert len(lines) == 5
    assert lines[-1].startswith("# minimizer alpha=-1.0") and "separated" in lines[-1]


def test_scan_json_names_minimizer():
    code, out, err = run(["scan-exponent", "--d", "8", "--K", "32"])
    doc = json.loads(out)
    assert doc["summary"]["alpha_star"] == -2.0
    assert "minimizer" in err


def test_output_is_byte_identical(tmp_path, monkeypatch):
    argv = ["sweep", "--d", "5", "--trials", "5", "--K", "16", "--seed", "11", "--output", "r.json"]
    for sub in ("a", "b"):
        (tmp_path / sub).mkdir()
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / sub))
        assert run(argv)[0] == 0
    assert (tmp_path / "a" / "r.json").read_bytes() == (tmp_path / "b" / "r.json").read_bytes()


def test_seed_changes_records():
    a = run(["sweep", "--d", "5", "--trials", "3", "--K", "16", "--seed", "1"])[1]
    b = run(["sweep", "--d", "5", "--trials", "3", "--K", "16", "--seed", "2"])[1]
    assert a != b


def test_planted_violation_exits_one():
    code, out, _ = run(["sweep", "--d", "6", "--trials", "3", "--K", "16", "--tol", "0",
                        "--plant-violation"])
    assert code == 1
    recs = json.loads(out)["records"]
    assert recs[-1]["trial"] == -1 and recs[-1]["pass"] is False


def test_sweep_csv_has_header():
    code, out, _ = run(["sweep", "--d", "4", "--trials", "2", "--K", "16", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "trial,which,d,lhs,rhs,gap,rel_gap,pass"
    assert len(out.splitlines()) == 1 + 3 * 2


def test_metric_residuals():
    for d in ("4", "5", "8"):
        code, out, _ = run(["metric-residuals", "--d", d])
        assert code == 0


def test_i2_extremal_and_random():
    assert run(["i2", "--t", "0.25"])[0] == 0
    code, out, _ = run(["i2", "--family", "random", "--trials", "5", "--K", "24"])
    assert code == 0
    assert len(json.loads(out)["records"]) == 5


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["inequality", "--which", "thmA"],
    ["identities", "--d", "4", "--unknown"],
    ["scan-exponent", "--d", "6", "--alphas", "a,b"],
])
def test_usage_errors_exit_two(argv, capsys):
    code, _, _ = run(argv)
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_domain_errors_exit_two():
    code, out, err = run(["inequality", "--which", "thmB", "--d", "6"])
    assert code == 2 and "error" in err and out == ""
    code, _, err = run(["metric-residuals", "--d", "3"])
    assert code == 2
    code, _, err = run(["inequality", "--which", "escobar", "--d", "5", "--format", "csv"])
    assert code == 2


def test_config_echoed():
    code, out, _ = run(["identities", "--d", "5", "--K", "8", "--trials", "2", "--seed", "4"])
    cfg = json.loads(out)["config"]
    assert cfg["K"] == 8 and cfg["seed"] == 4 and cfg["angular"] == 200 and cfg["radial"] == 128


def test_json_float_format():
    text = report.dumps({"b": 0.1, "a": [1, float("nan"), True, None]})
    assert text.index('"a"') < text.index('"b"')
    assert "0.10000000000000001" in text and "NaN" in text


def test_summary():
    s = report.summarize([{"gap": -1.0, "pass": False}, {"gap": 2.0, "pass": True}])
    assert s == {"max_abs_gap": 2.0, "min_gap": -1.0, "pass": False}
