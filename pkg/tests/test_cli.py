import csv
import io
import json

import pytest

from weylstat import cli


def run_cli(*argv, expect=0):
    import contextlib

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.run(list(argv))
    assert code == expect, buf.getvalue()
    return buf.getvalue()


def test_var_examples_from_the_interface_contract():
    out = run_cli("var", "A5", "--stat", "descents", "-d", "2")
    assert out.startswith("7/12 = 0.58333333333333333333")
    assert "2d<=n" in out
    out = run_cli("var", "B4", "--stat", "inversions", "-d", "3", "--method", "enumerate")
    assert out.startswith("9/4")


def test_cov_both_methods_agree():
    closed = run_cli("cov", "G2", "r2", "r3")
    enum = run_cli("cov", "G2", "r2", "r3", "--method", "enumerate")
    angle = run_cli("cov", "G2", "r2", "r3", "--method", "angle")
    assert closed.startswith("1/6") and enum.startswith("1/6") and angle.startswith("1/6")


def test_roots_csv_format():
    out = run_cli("roots", "B4", "-d", "3", "--format", "csv")
    assert out.endswith("\n") and "\r" not in out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["id", "root", "height"]
    level3 = [r[1] for r in rows[1:] if r[2] == "3"]
    assert sorted(level3) == ["N[1,4]", "O[3]", "P[1,2]"]
    assert len(rows) - 1 == 10  # heights 1..3 of B4


def test_roots_exact_height():
    out = run_cli("roots", "B4", "-d", "3", "--exact-height", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) - 1 == 3


def test_poset_and_depgraph_formats():
    out = run_cli("poset", "G2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lower", "upper"] and len(rows) - 1 == 5
    out = run_cli("depgraph", "D4", "-d", "1", "--format", "dot")
    assert out.count("--") == 3
    out = run_cli("depgraph", "B4", "-d", "2", "--format", "json")
    data = json.loads(out)
    assert data["max_degree"] >= 1 and data["spec"] == "B4"


def test_dist_json_schema():
    out = run_cli("dist", "A3", "-d", "1", "--format", "json")
    data = json.loads(out)
    assert list(data) == ["spec", "psi", "n", "counts", "moments"]
    assert data["n"] == 24
    assert data["counts"] == [[0, 1], [1, 11], [2, 11], [3, 1]]


def test_dist_explicit_psi():
    out = run_cli("dist", "B4", "--psi", "N[1,2]", "P[3,4]", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["value", "count"]
    assert [int(r[1]) for r in rows[1:]] == [96, 192, 96]


def test_sample_reproducible_json():
    a = run_cli("sample", "B3", "-d", "2", "--samples", "64", "--seed", "5", "--format", "json")
    b = run_cli("sample", "B3", "-d", "2", "--samples", "64", "--seed", "5", "--format", "json")
    assert a == b
    data = json.loads(a)
    assert data["seed"] == 5 and len(data["values"]) == 64


def test_wpartition_output():
    out = run_cli("wpartition", "G2", "r2", "r3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1] == ["5", "1", "1", "5"]


def test_clt_csv_header():
    out = run_cli("clt", "A9", "-d", "1", "--stat", "descents",
                  "--samples", "2000", "--seed", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "d", "k", "delta", "variance", "ks", "bound"]
    assert rows[1][0] == "9" and rows[1][2] == "9"


def test_domain_error_exit_code_1(capsys):
    code = cli.run(["var", "A5", "--stat", "descents", "-d", "9"])
    assert code == 1
    assert "out of range" in capsys.readouterr().err


def test_usage_error_exit_code_2():
    with pytest.raises(SystemExit) as err:
        cli.run(["var", "A5", "--stat", "nonsense", "-d", "1"])
    assert err.value.code == 2


def test_out_writes_file(tmp_path):
    target = tmp_path / "roots.csv"
    run_cli("roots", "A3", "--format", "csv", "--out", str(target))
    assert target.read_text().startswith("id,root,height\n")


def test_cap_env_override(monkeypatch, capsys):
    monkeypatch.setenv("WEYLSTAT_CAP", "10")
    code = cli.run(["dist", "A3", "-d", "1"])
    assert code == 1
    assert "exceeds enumeration cap 10" in capsys.readouterr().err
    monkeypatch.setenv("WEYLSTAT_CAP", "1000")
    assert cli.run(["dist", "A3", "-d", "1"]) == 0


def test_thread_flag_does_not_change_output():
    argvs = [
        ["dist", "B4", "-d", "5", "--format", "csv"],
        ["sample", "A9", "-d", "2", "--samples", "5000", "--seed", "7", "--format", "json"],
        ["clt", "B5", "-d", "3", "--samples", "4000", "--seed", "11", "--format", "json"],
        ["var", "B4", "--stat", "inversions", "-d", "4", "--method", "enumerate", "--format", "json"],
    ]
    for argv in argvs:
        one = run_cli(*argv, "--threads", "1")
        eight = run_cli(*argv, "--threads", "8")
        assert one == eight, argv


def test_golden_roots_output_locked():
    # byte-for-byte lock of the deterministic catalog order
    out = run_cli("roots", "G2", "--format", "csv")
    assert out == (
        "id,root,height\n"
        "0,r1,1\n"
        "1,r2,1\n"
        "2,r3,2\n"
        "3,r4,3\n"
        "4,r5,4\n"
        "5,r6,5\n"
    )
