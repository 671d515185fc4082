import json

import pytest

from mdsdual import grs, pipeline
from mdsdual.families import canonical_field, subfield_set, trace_kernel_union

GOLDEN = [[1, 1, 1, 0], [0, 1, 2, 1]]


@pytest.fixture
def golden_file(tmp_path, gf9):
    art, report = grs.build_code(gf9, [0, 1, 2])
    return pipeline.write_artifact(tmp_path / "golden.json", art, report)


def test_artifact_layout(golden_file):
    data = json.loads(golden_file.read_text())
    assert data["field"] == {"p": 3, "m": 2, "modulus": [1, 0, 1], "generator": 4}
    assert data["matrix"] == GOLDEN and data["weights"] == [1, 1, 1]
    assert (data["kind"], data["n"], data["k"]) == ("egrs", 4, 2)
    assert set(data["verification"]) >= {"condition", "self_dual", "rank", "mds"}


def test_round_trip(golden_file):
    report = pipeline.verify_file(golden_file)
    assert report.ok


def test_stored_verification_is_ignored(golden_file):
    data = json.loads(golden_file.read_text())
    data["verification"] = {"condition": False, "self_dual": False, "rank": False, "mds": False}
    golden_file.write_text(json.dumps(data))
    assert pipeline.verify_file(golden_file).ok


def test_corrupted_entry(golden_file):
    data = json.loads(golden_file.read_text())
    data["matrix"][1][3] = 3
    golden_file.write_text(json.dumps(data))
    assert not pipeline.verify_file(golden_file).self_dual_ok


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(weights=[0, 0, 0]),
        lambda d: d.pop("matrix"),
        lambda d: d["field"].update(modulus=[0, 1, 1]),
        lambda d: d["field"].update(generator=2),
        lambda d: d.update(kind="rs"),
        lambda d: d.update(evaluation_set=[0, 0, 1]),
        lambda d: d["matrix"][0].append(1),
        lambda d: d.update(weights=[1, 1, 99]),
        lambda d: d.update(k=3),
    ],
)
def test_malformed(golden_file, mutate):
    data = json.loads(golden_file.read_text())
    mutate(data)
    golden_file.write_text(json.dumps(data))
    with pytest.raises(pipeline.MalformedArtifact):
        pipeline.load_artifact(golden_file)


def test_not_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{")
    with pytest.raises(pipeline.MalformedArtifact):
        pipeline.load_artifact(p)


def test_run_claim_outcomes():
    ok = pipeline.run_claim(subfield_set(3, 4, "eg"))
    assert ok.status == "passed" and ok.artifact["matrix"] == GOLDEN
    bad = pipeline.run_claim(trace_kernel_union(3, 1, 1))
    assert bad.status == "failed" and len(bad.witness) == 2


def test_digest_is_stable():
    a = pipeline.params_digest(9, 4, "eg", "subfield", {"r": 3})
    b = pipeline.params_digest(9, 4, "eg", "subfield", {"r": 3})
    assert a == b and len(a) == 64
    assert a != pipeline.params_digest(9, 4, "eg", "subfield", {"r": 5})


def test_table_and_catalog(tmp_path):
    cat = pipeline.Catalog(tmp_path / "cat.jsonl")
    res = pipeline.run_table(9, 6, out_dir=tmp_path / "art", catalog=cat)
    counts = res.counts()
    assert counts["passed"] > 0 and counts["failed"] == 1
    first = cat.records()
    assert len(first) == len(res.outcomes)
    assert all("timestamp" in r for r in first)
    pipeline.run_table(9, 6, out_dir=tmp_path / "art", catalog=cat)
    assert cat.records() == first
    for o in res.outcomes:
        if o.status == "passed":
            art = pipeline.load_artifact(o.artifact_path)
            assert "timestamp" not in json.dumps(o.artifact)
            assert grs.verify(art).ok
    passed_rows = {(o.claim_dict["n"], o.claim_dict["sigma_kind"]) for o in res.outcomes if o.status == "passed"}
    assert {(2, "g"), (4, "eg"), (6, "eg")} <= passed_rows


def test_table_blocked_rows(tmp_path):
    cat = pipeline.Catalog(tmp_path / "cat.jsonl")
    res = pipeline.run_table(3, 12, catalog=cat)
    assert res.blocked == [2, 6, 10]
    lines = {line.split()[0]: line for line in res.text.splitlines()[2:-1]}
    for n in ("2", "6", "10"):
        assert "#" in lines[n]
    assert "3 blocked" in res.text.splitlines()[-1]
    assert {r["status"] for r in cat.records()} == {"blocked"}


def test_table_gf25_contents():
    res = pipeline.run_table(25, 12)
    passed = {(o.claim_dict["n"], o.claim_dict["family"]) for o in res.outcomes if o.status == "passed"}
    assert {(6, "norm_fiber"), (8, "cyclotomic"), (12, "norm_fiber"), (12, "cyclotomic")} <= passed


def test_parallel_matches_serial():
    serial = pipeline.run_table(25, 12, jobs=1)
    parallel = pipeline.run_table(25, 12, jobs=2)
    assert serial.text == parallel.text
    assert [o.artifact for o in serial.outcomes] == [o.artifact for o in parallel.outcomes]


def test_table_deterministic_files(tmp_path):
    pipeline.run_table(9, 10, out_dir=tmp_path / "a")
    pipeline.run_table(9, 10, out_dir=tmp_path / "b")
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
