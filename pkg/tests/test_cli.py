import json

import pytest

from a2twist.cli import main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_oracle_command(capsys):
    code, out = run(capsys, ["oracle", "--m", "2", "--n", "8"])
    assert code == 0 and out.strip() == "2"
    code, out = run(capsys, ["oracle", "--m", "0", "--n", "0"])
    assert code == 0 and out.strip() == "1"
    code, out = run(capsys, ["oracle", "--m", "3", "--n", "9"])
    assert code == 0 and out.strip() == "1"


def test_dims_json_round_trip(capsys):
    code, out = run(capsys, ["dims", "--cutoff", "8", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["cutoff"] == 8
    rows = {(r["charge"], r["qweight"]): r for r in doc["buckets"]}
    assert rows[(2, 4)]["dim"] == 1 and rows[(2, 4)]["oracle"] == 1 and rows[(2, 4)]["match"]
    assert rows[(2, 2)]["dim"] == 0
    # canonical serialization round-trips byte-identically
    again = json.dumps(json.loads(out), sort_keys=True, separators=(",", ":"))
    assert again == out.strip()


def test_dims_zero_cutoff(capsys):
    code, out = run(capsys, ["dims", "--cutoff", "0", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["buckets"] == [
        {"charge": 0, "qweight": 0, "dim": 1, "oracle": 1, "match": True}
    ]


def test_dims_csv(capsys):
    code, out = run(capsys, ["dims", "--cutoff", "4", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "charge,qweight,dim,oracle,match"
    assert "2,4,1,1,true" in lines


def test_verify_selected_suites(capsys):
    code, out = run(
        capsys,
        ["verify", "--suites", "recursion,oracle", "--cutoff", "12", "--format", "json"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["tool_version"]
    assert [s["name"] for s in doc["suites"]] == ["recursion", "partition-oracle"]
    assert all(s["pass"] for s in doc["suites"])


def test_verify_group_and_stability(capsys):
    code, out = run(
        capsys, ["verify", "--suites", "group,stability,morphisms", "--cutoff", "8", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(out)
    names = {s["name"]: s for s in doc["suites"]}
    assert names["group-layer"]["pass"]
    assert names["ideal-stability"]["details"]["solved_b"]
    assert names["shift-morphisms"]["details"]["single_global_constant_exists"] is False


def test_verify_text_output(capsys):
    code, out = run(capsys, ["verify", "--suites", "presentation", "--cutoff", "10", "--presentation-cutoff", "10"])
    assert code == 0
    assert "presentation" in out and "pass" in out


def test_usage_errors(capsys):
    code, _ = run(capsys, ["verify", "--suites", "nonsense", "--cutoff", "4"])
    assert code == 2
    code, _ = run(capsys, ["verify", "--suites", "oracle", "--cutoff", "4", "--presentation-cutoff", "10"])
    assert code == 2


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["dims", "--cutoff", "-3"])
    assert exc.value.code == 2
