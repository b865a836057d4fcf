"""The command-line front end, driven in-process through main(argv)."""

import json

import pytest

from symnash.cli import main
from conftest import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, data):
    path.write_text(json.dumps(data) + "\n")
    return str(path)


# ------------------------------------------------------------------ validate


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", fixture_path("toggle"))
    assert code == 0
    assert out == "valid: 2 players, 2 arena states, 4 reachable configurations\n"


def test_validate_penny(capsys):
    code, out, _ = run(capsys, "validate", fixture_path("penny"))
    assert code == 0
    assert "5 reachable configurations" in out


# ---------------------------------------------------------------- find/check


def test_find_writes_witness_and_check_accepts(capsys, tmp_path):
    witness = tmp_path / "witness.json"
    code, out, _ = run(
        capsys,
        "find",
        fixture_path("toggle"),
        "--winners",
        "0,1",
        "-o",
        str(witness),
    )
    assert code == 0 and out == ""
    data = json.loads(witness.read_text())
    assert data["winners"] == [0, 1]
    assert data["table"]["0,id:[a,a]"] == {"act": "go", "next": 0}
    assert data["outcome"] == {"prefix": [["a", "a"]], "cycle": [["b", "b"]]}

    code, out, _ = run(
        capsys, "check", fixture_path("toggle"), str(witness), "--winners", "0,1"
    )
    assert code == 0
    assert out == "accepted: winners [0, 1]\n"


def test_check_rejects_bad_profile(capsys, tmp_path):
    all_stay = {
        "memory": 1,
        "initial": 0,
        "table": {
            f"0,id:[{a},{b}]": {"act": "stay", "next": 0}
            for a in "ab"
            for b in "ab"
        },
    }
    path = write_json(tmp_path / "stay.json", all_stay)
    code, out, _ = run(capsys, "check", fixture_path("toggle"), path)
    assert code == 1
    assert out == "rejected: player 0 deviates profitably\n"


def test_find_reports_absence(capsys):
    code, _, err = run(
        capsys, "find", fixture_path("penny"), "--winners", "0,1"
    )
    assert code == 1
    assert err == "no solution\n"


def test_find_is_deterministic_across_jobs(capsys):
    results = []
    for jobs in ("1", "4"):
        code, out, _ = run(
            capsys, "find", fixture_path("toggle"), "--winners", "0,1",
            "--jobs", jobs,
        )
        assert code == 0
        results.append(out)
    assert results[0] == results[1]


def test_general_split(capsys):
    code, out, _ = run(
        capsys,
        "general",
        fixture_path("penny"),
        "--winners",
        "0",
        "--losers",
        "1",
    )
    assert code == 0
    data = json.loads(out)
    assert data["winners"] == [0]
    assert len(data["strategies"]) == 2


# -------------------------------------------------------------------- oracle


def test_oracle_matches_find(capsys):
    code, find_out, _ = run(
        capsys, "find", fixture_path("toggle"), "--winners", "0,1"
    )
    assert code == 0
    code, oracle_out, _ = run(
        capsys, "oracle", fixture_path("toggle"), "--winners", "0,1"
    )
    assert code == 0
    mine, ref = json.loads(find_out), json.loads(oracle_out)
    assert mine["table"] == ref["table"]
    assert mine["winners"] == ref["winners"]


def test_oracle_general(capsys):
    code, out, _ = run(
        capsys,
        "oracle",
        fixture_path("penny"),
        "--general",
        "--winners",
        "0",
        "--losers",
        "1",
    )
    assert code == 0
    assert len(json.loads(out)["strategies"]) == 2


def test_oracle_refuses_large_search(capsys):
    code, _, err = run(capsys, "oracle", fixture_path("toggle"), "--memory", "2")
    assert code == 3
    assert "budget exceeded" in err


# ----------------------------------------------------------- transforms/dot


def test_desym(capsys, tmp_path):
    out_path = tmp_path / "tagged.json"
    code, _, _ = run(capsys, "desym", fixture_path("toggle"), "-o", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["arena"]["states"] == ["a@0", "b@0", "a@1", "b@1"]
    assert data["initial"] == ["a@0", "a@1"]


def test_export_dot_product(capsys):
    code, out, _ = run(capsys, "export-dot", fixture_path("toggle"))
    assert code == 0
    assert out.startswith("digraph")
    assert '"(a,a)" [shape=doublecircle];' in out


def test_export_dot_deviation(capsys, tmp_path):
    witness = tmp_path / "w.json"
    run(capsys, "find", fixture_path("toggle"), "-o", str(witness))
    code, out, _ = run(
        capsys,
        "export-dot",
        fixture_path("toggle"),
        "--witness",
        str(witness),
        "--player",
        "0",
    )
    assert code == 0
    assert out.startswith("digraph")


# --------------------------------------------------------------- exit codes


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, )[0] == 64
    assert run(capsys, "find", fixture_path("toggle"), "--frobnicate")[0] == 64
    assert run(capsys, "find", fixture_path("toggle"), "--winners", "a,b")[0] == 64
    witness = tmp_path / "w.json"
    run(capsys, "find", fixture_path("toggle"), "-o", str(witness))
    code, _, err = run(
        capsys, "export-dot", fixture_path("toggle"), "--witness", str(witness)
    )
    assert code == 64 and "go together" in err
    code, _, _ = run(
        capsys, "export-dot", fixture_path("toggle"),
        "--witness", str(witness), "--player", "9",
    )
    assert code == 64


def test_missing_file_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 66
    assert "io error" in err


def test_unwritable_output_is_io_error(capsys, tmp_path):
    code, _, _ = run(
        capsys, "find", fixture_path("toggle"),
        "-o", str(tmp_path / "missing" / "out.json"),
    )
    assert code == 66


def test_invalid_game_file(capsys, tmp_path):
    # a syntactically fine file with an unknown key
    raw = json.loads(open(fixture_path("toggle")).read())
    raw["surprise"] = True
    path = write_json(tmp_path / "bad.json", raw)
    code, _, err = run(capsys, "validate", path)
    assert code == 2
    assert "invalid game" in err


def test_bad_witness_json(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text("{oops")
    code, _, _ = run(capsys, "check", fixture_path("toggle"), str(path))
    assert code == 2


def test_no_uniform_action_game(capsys, tmp_path):
    spec = {
        "arena": {
            "states": ["x", "y"],
            "actions": ["l", "r"],
            "mov": {"x": ["l"], "y": ["r"]},
            "tab": {"x": {"l": "x"}, "y": {"r": "y"}},
        },
        "players": 2,
        "base_perms": [[0, 1], [1, 0]],
        "observation": [{"type": "id", "players": []}],
        "objective": "G true",
        "initial": ["x", "y"],
    }
    path = write_json(tmp_path / "split.json", spec)
    assert run(capsys, "validate", path)[0] == 0
    code, _, err = run(capsys, "find", path)
    assert code == 2
    assert "invalid game" in err


def test_candidate_budget_exit(capsys):
    code, _, err = run(
        capsys, "find", fixture_path("toggle"), "--budget-candidates", "1"
    )
    assert code == 3
    assert "budget exceeded" in err
