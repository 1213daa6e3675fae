"""The command line front end, driven through main(argv)."""
import json

from crossed_commutant.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_builtin_ok(capsys):
    code, out, err = run(capsys, "validate", "--builtin", "two-intervals-crossed")
    assert code == 0
    assert "valid" in out
    assert err == ""


def test_validate_kind_violation_exits_one(capsys, tmp_path):
    doc = {"type": "real_line", "jump_points": ["0"], "perm": [2, 1, 0]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "[kind-preservation]" in out
    assert "I_0" in out


def test_validate_inconsistent_lift_exits_one(capsys, tmp_path):
    doc = {
        "type": "real_line",
        "jump_points": [],
        "additions": {"0": ["0", "1"]},
        "base_perm": [0],
        "refined_perm": [2, 0, 1, 3, 4],
    }
    path = tmp_path / "lift.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate", str(path))
    assert code == 0  # a 3-cycle of subintervals over the identity is consistent

    doc["refined_perm"] = [2, 0, 1, 3, 4]
    doc["jump_points"] = ["0"]
    doc["additions"] = {"0": ["-1"]}
    doc["base_perm"] = [1, 0, 2]
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "[lift-consistency]" in out


def test_missing_file_exits_two(capsys):
    code, out, err = run(capsys, "validate", "/nonexistent/file.json")
    assert code == 2
    assert "input error" in err


def test_unknown_builtin_exits_two(capsys):
    code, out, err = run(capsys, "report", "--builtin", "nope")
    assert code == 2
    assert "unknown case" in err


def test_requires_exactly_one_source(capsys):
    code, out, err = run(capsys, "validate")
    assert code == 2
    code, out, err = run(
        capsys, "validate", "somefile.json", "--builtin", "one-interval-swap"
    )
    assert code == 2


def test_report_json_structure(capsys):
    code, out, err = run(
        capsys, "report", "--builtin", "two-intervals-crossed", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["classes"] == {
        "1": [5], "2": [4, 6], "4": [0, 1, 2, 3],
    }
    assert payload["tilde_classes"]["2,2"] == [0, 1, 2, 3]
    assert payload["sep"]["2"] == [0, 1, 2, 3]
    assert payload["sep"]["-2"] == [0, 1, 2, 3]
    assert payload["difference"]["forbidden"]["2"] == [0, 1, 2, 3]
    assert payload["grading"]["strongly_graded"] is False
    assert payload["grading"]["witness"] == [1, 1]
    assert payload["labels"][0] == "I_0^1"


def test_report_round_trips_through_its_own_instance(capsys, tmp_path):
    code, first, _ = run(
        capsys, "report", "--builtin", "one-interval-3cycle-pointswap", "--json"
    )
    assert code == 0
    payload = json.loads(first)
    path = tmp_path / "again.json"
    path.write_text(json.dumps(payload["instance"]))
    code, second, _ = run(capsys, "report", str(path), "--json")
    assert code == 0
    assert json.loads(second) == payload


def test_report_window_flag_controls_tables(capsys):
    code, out, err = run(
        capsys, "report", "--builtin", "one-interval-swap", "--json", "--window", "2"
    )
    payload = json.loads(out)
    assert payload["window"] == 2
    assert sorted(int(n) for n in payload["sep"]) == [-2, -1, 0, 1, 2]


def test_report_text_mentions_grading_and_rule(capsys):
    code, out, err = run(capsys, "report", "--builtin", "two-intervals-crossed")
    assert code == 0
    assert "not strongly graded, witness (1, 1)" in out
    assert "period 4: I_0^1" in out
    assert "forbidden exactly when 2 | n and 4 does not divide n" in out


def test_report_identity_instance_all_allowed(capsys):
    code, out, err = run(capsys, "report", "--builtin", "one-interval-identity", "--json")
    payload = json.loads(out)
    assert payload["classes"] == {"1": [0, 1, 2, 3, 4]}
    assert all(v == [] for v in payload["sep"].values())
    assert payload["grading"]["strongly_graded"] is True
    assert payload["difference"]["active_classes"] == {}


def test_report_rejects_invalid_map(capsys, tmp_path):
    doc = {"type": "real_line", "jump_points": ["0"], "perm": [2, 1, 0]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "report", str(path))
    assert code == 1
    assert "[kind-preservation]" in err


def test_atlas_one_point(capsys):
    code, out, err = run(capsys, "atlas", "--points", "1")
    assert code == 0
    assert "2 distinct case(s)" in out


def test_atlas_two_points_json(capsys):
    code, out, err = run(capsys, "atlas", "--points", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["points"] == 2
    assert len(payload["cases"]) == 6
    assert sum(case["count"] for case in payload["cases"]) == 20


def test_atlas_scale_exceeded(capsys):
    code, out, err = run(capsys, "atlas", "--points", "2", "--base-n", "0")
    assert code == 2
    assert "input error" in err


def test_selftest_small_run(capsys):
    code, out, err = run(capsys, "selftest", "--seed", "5", "--iterations", "30")
    assert code == 0
    assert "sep formula = oracle: 30/30" in out
    assert "selftest: ok" in out


def test_selftest_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CROSSED_COMMUTANT_SEED", "42")
    code, out, err = run(capsys, "selftest", "--seed", "5", "--iterations", "10")
    assert code == 0
    assert "seed 42" in out


def test_cases_lists_builtins(capsys):
    code, out, err = run(capsys, "cases")
    assert code == 0
    for name in (
        "one-interval-identity",
        "two-intervals-crossed",
    ):
        assert name in out


def test_cases_json_documents_parse(capsys):
    code, out, err = run(capsys, "cases", "--json")
    payload = json.loads(out)
    assert len(payload) == 7
    assert payload["one-interval-swap"]["refined_perm"] == [1, 0, 2, 3, 4]
