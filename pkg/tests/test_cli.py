import csv
import io
import json
import os
import subprocess
import sys

import pytest

from k3corr import cli, k3class
from k3corr.k3class import Certificate, Status, classify

from conftest import load_members


def run(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    out = capsys.readouterr()
    return exc.value.code, out.out, out.err


def test_classify_17_text(capsys):
    code, out, _ = run(["classify", "17"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "d=17 status=both",
        "eps0=(8h+2a)/2 norm=-1",
        "cl=1",
        "h1=(3h+1a)/2 sq=-4",
        "r=(8h+2a)/2",
        "ht1=(5h+1a)/2",
        "H=(13h+3a)/2",
    ]


def test_classify_33_uses_hp(capsys):
    _, out, _ = run(["classify", "33"], capsys)
    assert "hp=(46h+8a)/2" in out.splitlines()
    assert "eps0=(46h+8a)/2 norm=+1" in out.splitlines()
    assert not any(line.startswith(("r=", "ht1=")) for line in out.splitlines())


def test_classify_1_negative_coordinates(capsys):
    _, out, _ = run(["classify", "1"], capsys)
    lines = out.splitlines()
    assert lines[0] == "d=1 status=special1"
    assert "h1=(3h-1a)/2 sq=+4" in lines
    assert "H=(5h-3a)/2" in lines


@pytest.mark.parametrize("d, reason", [(25, "square"), (13, "not-one-mod-8"), (105, "local-obstruction")])
def test_classify_not_in_d(d, reason, capsys):
    code, out, _ = run(["classify", str(d)], capsys)
    assert code == 0
    assert out.splitlines()[0] == f"d={d} status=not-in-D:{reason}"


@pytest.mark.parametrize("argv", [["classify", "0"], ["classify", "x"], ["classify", "-5"],
                                  ["families", "0"], ["scan", "0"], ["bogus"], [],
                                  ["classify", "17", "--json", "--csv"]])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == ""
    assert "error" in err


def test_scan_100(capsys):
    code, out, _ = run(["scan", "100"], capsys)
    assert code == 0
    assert out.strip() == "1(±), 9(-), 17(±), 33(-), 41(±), 57(-), 73(±), 89(±), 97(±)"


def test_scan_8(capsys):
    assert run(["scan", "8"], capsys)[1].strip() == "1(±)"


@pytest.mark.parametrize("dmax", [1, 8, 100, 777, 2009])
def test_csv_count_equals_text_count(dmax, capsys):
    _, text, _ = run(["scan", str(dmax)], capsys)
    _, csvout, _ = run(["scan", str(dmax), "--csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(csvout)))
    assert len(rows) == len(text.strip().split(", "))
    assert [f"{r['d']}({r['tag']})" for r in rows] == text.strip().split(", ")


def test_scan_2009_csv_matches_golden_list(capsys):
    _, csvout, _ = run(["scan", "2009", "--csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(csvout)))
    assert [(int(r["d"]), r["tag"]) for r in rows] == load_members()
    assert len(rows) == 140


def test_scan_json(capsys):
    _, out, _ = run(["scan", "60", "--json"], capsys)
    data = json.loads(out)
    assert [(e["d"], e["tag"]) for e in data] == [("1", "±"), ("9", "-"), ("17", "±"),
                                                  ("33", "-"), ("41", "±"), ("57", "-")]
    assert cli.from_json(data[2]["certificate"]) == classify(17)


def test_json_schema_keys(capsys):
    _, out, _ = run(["classify", "97", "--json"], capsys)
    obj = json.loads(out)
    assert list(obj) == ["d", "status", "reason", "mu", "eps0", "cl", "h1", "r", "hprime",
                         "ht1", "H", "notes"]
    assert obj["eps0"] == {"s": "11208", "t": "1138", "norm": -1}
    assert obj["H"] == {"x": "4757", "y": "483"}


@pytest.mark.parametrize("d", range(1, 501, 2))
def test_json_round_trip(d):
    cert = classify(d)
    assert cli.from_json(json.loads(json.dumps(cli.to_json(cert)))) == cert


def test_json_large_coordinates_are_strings():
    cert = classify(1969)
    obj = cli.to_json(cert)
    assert isinstance(obj["eps0"]["s"], str)
    assert int(obj["eps0"]["s"]) == cert.eps0.s
    assert cert.eps0.s > 2 ** 63


def test_classify_csv(capsys):
    _, out, _ = run(["classify", "129", "--csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    r = rows[0]
    assert (r["d"], r["status"], r["eps0_norm"], r["hprime_x"], r["H_x"]) == ("129", "minus", "1", "33710", "125")
    assert "erratum" in r["notes"]


def test_demo_line(capsys):
    code, out, _ = run(["demo-line"], capsys)
    assert code == 0
    lines = out.splitlines()
    for want in ("det=-17", "h1.H=7", "ht1.H=10"):
        assert want in lines


def test_families_5(capsys):
    code, out, _ = run(["families", "5"], capsys)
    assert code == 0
    assert out.startswith("ok:")


def test_families_failure_exits_1(capsys, monkeypatch):
    real = k3class.classify

    def broken(d, method="auto"):
        c = real(d, method)
        if d == (1 + 14) ** 2 - 8:
            return Certificate(d, Status.MINUS)
        return c

    monkeypatch.setattr(k3class, "classify", broken)
    code, out, err = run(["families", "3"], capsys)
    assert code == 1
    assert "verification failed" in err
    assert "(1+14*1)^2-8" in err


def test_threads_env_gives_same_scan():
    env = dict(os.environ, K3CORR_THREADS="4")
    out4 = subprocess.run([sys.executable, "-m", "k3corr", "scan", "2009"], env=env,
                          capture_output=True, text=True, check=True).stdout
    env["K3CORR_THREADS"] = "1"
    out1 = subprocess.run([sys.executable, "-m", "k3corr", "scan", "2009"], env=env,
                          capture_output=True, text=True, check=True).stdout
    assert out4 == out1
    assert out1.strip() == ", ".join(f"{d}({t})" for d, t in load_members())


def test_console_script_help():
    out = subprocess.run([sys.executable, "-m", "k3corr", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    for cmd in ("classify", "scan", "demo-line", "families"):
        assert cmd in out.stdout
