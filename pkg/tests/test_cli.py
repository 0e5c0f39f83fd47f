import csv
import io
import json
import subprocess
import sys

import pytest

from weylzhu import cli
from weylzhu.report import CheckResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("expr, apply, mu, expect", [
    ("a*(0)|0>", "a(0)", None, "|0>"),
    ("|0>", "L(-2)", "0", "a(-1)a*(-1)|0>"),
    ("a(-1)|0>", "L(0)", "1/2", "1/2*a(-1)|0>"),
    ("a(-1)|0>", "a*(1) D", None, "0"),
    ("|0>", "D", None, "0"),
])
def test_eval(capsys, expr, apply, mu, expect):
    argv = ["eval", "--expr", expr, "--apply", apply]
    if mu:
        argv += ["--mu", mu]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expect


def test_eval_parse_error_points_at_position(capsys):
    code, _, err = run(capsys, "eval", "--expr", "a(-1)a(2)|0>")
    assert code == 2
    caret_line = err.rstrip("\n").splitlines()[-1]
    assert caret_line.index("^") - 2 == 5


def test_eval_l_needs_mu(capsys):
    code, _, err = run(capsys, "eval", "--expr", "|0>", "--apply", "L(-2)")
    assert code == 2 and "--mu" in err


def test_eval_overflow(capsys):
    code, _, err = run(capsys, "eval", "--expr", "|0>", "--apply", "a(-3) a(-2)", "--degcap", "4")
    assert code == 3 and "a(-3)a(-2)|0>" in err


def test_decimal_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["classify", "--mu", "0.5"])
    assert exc.value.code == 2


@pytest.mark.parametrize("mu, tag, c", [("1/2", "OMEGA_VOA", "-1"), ("2", "NOT_OMEGA_GENERATED", "26")])
def test_classify_point(capsys, mu, tag, c):
    code, out, _ = run(capsys, "classify", "--mu", mu, "--json", "-")
    assert code == 0
    (row,) = json.loads(out)
    assert row["tag"] == tag and row["central_charge"] == c


def test_classify_negative_mu(capsys):
    code, out, _ = run(capsys, "classify", "--mu", "-1/2")
    assert code == 0 and "NOT_OMEGA_GENERATED" in out and "c = 11" in out


def test_classify_grid_csv(capsys):
    code, out, _ = run(capsys, "classify", "--grid", "0:1:1/4,0:1:1/4", "--csv", "-")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["mu", "reMu", "imMu", "tag", "subcase", "omega", "central_charge"]
    assert len(rows) == 26


def test_classify_files(tmp_path, capsys):
    csv_path, svg_path = tmp_path / "g.csv", tmp_path / "g.svg"
    code, _, _ = run(capsys, "classify", "--grid", "-1/2:3/2:1/4,-1:1:1/4",
                     "--csv", str(csv_path), "--svg", str(svg_path))
    assert code == 0
    assert csv_path.read_text().startswith("mu,")
    assert svg_path.read_text().lstrip().startswith("<?xml")


def test_region_map_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        code, out, _ = run(capsys, "region-map", "--svg", str(p), "--grid", "-1/2:3/2:1/8,-1:1:1/8")
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    for tag in ("OMEGA_VOA", "STRIP_CONF_OMEGA", "NOT_OMEGA_GENERATED"):
        assert tag in out


def test_central_charge_csv_and_svg(tmp_path, capsys):
    svg = tmp_path / "c.svg"
    code, out, _ = run(capsys, "central-charge", "--range", "0:1:1/2", "--svg", str(svg))
    assert code == 0
    assert out.splitlines() == ["mu,central_charge", "0,2", "1/2,-1", "1,2"]
    assert svg.exists()


def test_central_charge_tensor(capsys):
    code, out, _ = run(capsys, "central-charge", "--mu", "1/3", "--mu", "2", "--tensor")
    assert code == 0 and "NOT_OMEGA_GENERATED" in out and "c = 76/3" in out


def test_verify_json_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "verify", "--suite", "virasoro", "--mu", "1/2", "--degcap", "3",
                           "--modewindow", "-2:2", "--json", "-")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    report = json.loads(outs[0][: outs[0].rindex("}") + 1])
    assert all(c["ok"] for c in report["checks"])


@pytest.mark.parametrize("suite, mu", [("flow", "1/4+1/4i"), ("grading", "1/3"), ("modes", "1/3")])
def test_verify_suites_pass(capsys, suite, mu):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--mu", mu, "--degcap", "3", "--modewindow", "-2:2")
    assert code == 0
    assert "FAIL" not in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    def failing(name, mu, cfg):
        r = CheckResult("forced")
        r.record(False, "witness")
        return [r]

    import weylzhu.suites as suites

    monkeypatch.setattr(suites, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "--suite", "virasoro", "--mu", "1/2")
    assert code == 1
    assert "witness" in out and "reproduce with: weylzhu verify" in out


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nope", "--mu", "0"])
    assert exc.value.code == 2


def test_zhu_headline(capsys):
    code, out, _ = run(capsys, "zhu", "--mu", "1/3", "--degcap", "4", "--reportcap", "2")
    assert code == 0
    assert "dimUpperBound = 1" in out


def test_zhu_json_boundary(capsys):
    code, out, _ = run(capsys, "zhu", "--mu", "0", "--degcap", "3", "--reportcap", "1", "--json", "-")
    assert code == 0
    data = json.loads(out)
    assert data["dimUpperBound"] > 1
    table = {(e["left"], e["right"]): e["product"] for e in data["starTable"]}
    assert ("a(-1)|0>", "a*(0)|0>") in table


def test_zhu_refuses_outside_strip(capsys):
    code, _, err = run(capsys, "zhu", "--mu", "2")
    assert code == 2 and "Case 5" in err


def test_zhu_report_cap_guard(capsys):
    code, _, _ = run(capsys, "zhu", "--mu", "1/3", "--degcap", "3", "--reportcap", "2")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weylzhu", "eval", "--expr", "a*(0)|0>", "--apply", "a(0)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "|0>"
