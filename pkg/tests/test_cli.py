import json

import pytest

from mdsdual.cli import EXIT_BLOCKED, EXIT_CAP, EXIT_CONDITION, EXIT_ERROR, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--q", "9")
    info = json.loads(out)
    assert code == EXIT_OK and info["modulus"] == [1, 0, 1] and info["generator"] == 4


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--q", "9", "field-info")
    assert code == EXIT_OK and json.loads(out)["q"] == 9


def test_construct_subfield_two(capsys):
    code, out, _ = run(capsys, "construct", "--q", "9", "--family", "subfield", "--n", "2")
    assert code == EXIT_OK and json.loads(out)["matrix"] == [[3, 1]]


def test_construct_golden(capsys, tmp_path):
    path = tmp_path / "g.json"
    code, _, _ = run(capsys, "construct", "--q", "9", "--family", "subfield", "--n", "4", "--out", str(path))
    data = json.loads(path.read_text())
    assert code == EXIT_OK
    assert data["matrix"] == [[1, 1, 1, 0], [0, 1, 2, 1]] and data["weights"] == [1, 1, 1]
    code, out, _ = run(capsys, "verify", str(path))
    assert code == EXIT_OK and json.loads(out)["ok"]


def test_construct_condition_failure(capsys):
    code, out, err = run(capsys, "construct", "--q", "9", "--family", "trace_kernel", "--l", "1", "--d", "1")
    assert code == EXIT_CONDITION
    assert "witness pair (1, 3)" in err
    assert "+1" in err and "-1" in err
    assert json.loads(out)["status"] == "failed"


def test_construct_blocked(capsys):
    code, _, err = run(capsys, "construct", "--q", "3", "--family", "subfield", "--n", "2")
    assert code == EXIT_BLOCKED and "blocked by nonexistence theorem" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["--family", "affine_union", "--l", "1", "--k", "2"],
        ["--family", "cyclotomic", "--f", "4", "--t", "2", "--case", "I1"],
        ["--family", "trace_lift", "--l", "2", "--base-set", "0,1"],
        ["--family", "trace_lift", "--l", "2", "--base-set", "0,1,2"],
        ["--family", "norm_fiber", "--s", "2", "--l", "2", "--kind", "eg"],
        ["--family", "trace_kernel", "--l", "2", "--d", "1"],
    ],
)
def test_construct_families(capsys, tmp_path, argv):
    q = "25" if argv[1] in ("cyclotomic", "norm_fiber") else "81" if argv[1] != "trace_kernel" else "9"
    path = tmp_path / "a.json"
    code, _, err = run(capsys, "construct", "--q", q, *argv, "--out", str(path))
    assert code == EXIT_OK, err
    code, out, _ = run(capsys, "verify", str(path))
    assert code == EXIT_OK and json.loads(out)["ok"]


def test_construct_usage_errors(capsys):
    assert run(capsys, "construct", "--q", "9", "--family", "subfield")[0] == EXIT_ERROR
    assert run(capsys, "construct", "--q", "121", "--family", "cyclotomic_scaled", "--f", "4", "--s", "4", "--t", "1")[0] == EXIT_ERROR
    assert run(capsys, "construct", "--q", "81", "--family", "trace_lift", "--l", "2", "--base-set", "0,1,3,4,2,5,6,7")[0] == EXIT_CONDITION
    with pytest.raises(SystemExit):
        main(["construct", "--family", "subfield", "--n", "2"])


def test_verify_detects_corruption(capsys, tmp_path):
    path = tmp_path / "g.json"
    run(capsys, "construct", "--q", "9", "--family", "subfield", "--n", "4", "--out", str(path))
    data = json.loads(path.read_text())
    data["matrix"][1][3] = 3
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path))
    assert code != EXIT_OK and json.loads(out)["self_dual"] is False
    data["weights"] = [0, 0, 0]
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "verify", str(path))
    assert code == EXIT_ERROR and "malformed" in err


def test_search(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, out, _ = run(capsys, "search", "--q", "9", "--n", "4", "--mode", "eg", "--out", str(path))
    assert code == EXIT_OK and json.loads(out)["witness"] == [0, 1, 2]
    assert json.loads(path.read_text())["matrix"] == [[1, 1, 1, 0], [0, 1, 2, 1]]
    code, out, _ = run(capsys, "search", "--q", "3", "--n", "2", "--mode", "selfdual-any")
    assert code == EXIT_OK and json.loads(out)["found"] is False
    code, out, _ = run(capsys, "search", "--q", "9", "--n", "4", "--mode", "g")
    first = out.splitlines()[0]
    assert json.loads(first)["found"] is True


def test_search_cap(capsys):
    code, _, err = run(capsys, "--max-subsets", "10", "search", "--q", "81", "--n", "10", "--mode", "g")
    assert code == EXIT_CAP and "cap" in err


def test_table(capsys, tmp_path):
    cat = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "table", "--q", "3", "--max-n", "12", "--catalog", str(cat))
    assert code == EXIT_OK and "3 blocked" in out
    code, out, _ = run(capsys, "table", "--q", "9", "--max-n", "6", "--jobs", "2", "--out", str(tmp_path / "art"))
    assert code == EXIT_OK and "summary:" in out
