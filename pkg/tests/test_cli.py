import json

import pytest

from pyrsts.cli import main


def run(capsys, *argv):
    code = main(["--no-cache", *argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys):
    assert run(capsys, "check", "--f", "7", "--v", "79")[0] == 0
    code, out, _ = run(capsys, "check", "--f", "7", "--v", "81")
    assert code == 1 and "not admissible" in out


def test_construct_and_verify(tmp_path, capsys):
    path = tmp_path / "sts.json"
    code, out, _ = run(capsys, "construct", "--f", "7", "--v", "39", "--deterministic", "--out", str(path))
    assert code == 0
    assert "blocks: 247" in out and "time" not in out
    assert json.loads(path.read_text())["v"] == 39
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and out.startswith("PASS")


def test_construct_json_to_stdout(capsys):
    code, out, _ = run(capsys, "construct", "--f", "7", "--v", "15", "--format", "json")
    assert code == 0 and len(json.loads(out)["blocks"]) == 35


def test_construct_inadmissible(capsys):
    code, _, err = run(capsys, "construct", "--f", "7", "--v", "27")
    assert code == 1 and "not admissible" in err


def test_verify_detects_tampering(tmp_path, capsys):
    path = tmp_path / "sts.json"
    run(capsys, "construct", "--f", "7", "--v", "15", "--out", str(path))
    data = json.loads(path.read_text())
    data["blocks"].pop()
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and out.startswith("FAIL")


def test_verify_difference_family(tmp_path, capsys):
    path = tmp_path / "df.json"
    assert run(capsys, "df-solve", "--group", "2,2,3", "--spread-type", "2^3,3", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "DF" in out


def test_verify_usage_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", str(bad))[0] == 2
    bad.write_text(json.dumps({"something": 1}))
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_df_solve_absent_and_bad_input(capsys):
    assert run(capsys, "df-solve", "--group", "9", "--spread-type", "3")[0] == 1
    assert run(capsys, "df-solve", "--group", "2,x", "--spread-type", "3")[0] == 2
    assert run(capsys, "df-solve", "--group", "5", "--spread-type", "5")[0] == 2


def test_dm(capsys):
    code, out, _ = run(capsys, "dm", "--group", "2,2")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 3 and len(rows[0]) == 4
    assert run(capsys, "dm", "--group", "4")[0] == 1


def test_langford(capsys):
    code, out, _ = run(capsys, "langford", "--k", "3", "--a", "4", "--b", "1")
    s = json.loads(out)
    assert code == 0 and len(s) == 4
    assert run(capsys, "langford", "--k", "2", "--a", "1", "--b", "1")[0] == 1
    assert run(capsys, "langford", "--k", "1", "--a", "3", "--b", "7")[0] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-v", "100", "--f", "7")
    assert code == 0 and [line.split("\t")[1] for line in out.splitlines()] == ["15", "39", "63", "79", "87"]
    code, out, _ = run(capsys, "enumerate", "--max-v", "90", "--f", "7", "--build", "--threads", "2", "--deterministic")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("f\tv") and len(lines) == 6
    assert lines[4].split("\t")[:6] == ["7", "79", "Z_2^3 x Z_3^2", "B-odd", "2", "1027"]


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["check", "--f", "seven"])
    assert exc.value.code == 2


def test_cache_dir(tmp_path, capsys):
    assert main(["--cache-dir", str(tmp_path), "langford", "--k", "5", "--a", "12", "--b", "3"]) == 0
    capsys.readouterr()
    assert (tmp_path / "langford.json").exists()
