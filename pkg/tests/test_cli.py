import json

import pytest

from fiqhkit.cli import main

ASK_BINDINGS = [
    "gender=child",
    "travel=traveling",
    "health=not_sick",
    "water_availability=unavailable",
    "substance=plain_water",
    "tool_condition=pure",
    "tool_worth=ordinary",
    "impurity_site=private_parts",
    "prayer_due=due",
    "action=washing",
    "outcome=full",
]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--space", "taymammum.space")
    assert code == 0
    assert out.strip() == "6912"


def test_count_by_id(capsys):
    code, out, _ = run(capsys, "count", "--space", "taymammum")
    assert code == 0 and out.strip() == "6912"


def test_gen_limit(capsys):
    code, out, _ = run(capsys, "gen", "--space", "taymammum", "--limit", "5", "--json")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert all(json.loads(line) for line in lines)


def test_ask_excluded(capsys):
    flags = [f for pair in ASK_BINDINGS for f in ("--set", pair)]
    code, out, _ = run(capsys, "ask", "--space", "taymammum", "--rules", "tahara", *flags)
    assert code == 1
    assert out.startswith("excluded:")
    assert "child-travel" in out


def test_ask_json_shape(capsys):
    flags = [f for pair in ASK_BINDINGS for f in ("--set", pair)]
    code, out, _ = run(
        capsys, "ask", "--space", "taymammum", "--rules", "tahara", "--json", *flags
    )
    doc = json.loads(out)
    assert doc["status"] == "excluded"
    assert doc["matched_rules"]
    assert doc["explanation"]


def test_ask_bad_binding(capsys):
    code, _, err = run(
        capsys, "ask", "--space", "taymammum", "--rules", "tahara", "--set", "nonsense"
    )
    assert code == 2
    assert "error" in err


def test_classify_incomplete_sample_exits_one(capsys):
    code, out, _ = run(capsys, "classify", "--space", "taymammum", "--rules", "tahara")
    assert code == 1
    assert "complete: no" in out
    assert "consistent: yes" in out


def test_classify_json_matches_baseline(capsys):
    code, out, _ = run(
        capsys, "classify", "--space", "taymammum", "--rules", "tahara", "--json"
    )
    committed = json.loads(open("tests/data/tahara_baseline.json").read())
    assert json.loads(out) == committed


def test_prove_derives_transfer(capsys):
    code, out, _ = run(capsys, "prove", "--rules", "itikaf", "--query", "Fs -> Fv")
    assert code == 0
    assert out.startswith("derived:")
    assert "X:=Fv" in out


def test_prove_not_derivable(capsys):
    code, out, _ = run(capsys, "prove", "--rule", "A -> B", "--query", "B")
    assert code == 1
    assert out.startswith("not-derivable")


def test_sat(capsys):
    code, out, _ = run(capsys, "sat", "--formula", "(A | B) & inverse(A)")
    assert code == 0
    assert out.strip() == "satisfiable: A=false B=true"
    code, out, _ = run(capsys, "sat", "--formula", "A & inverse(A)", "--brute")
    assert code == 1
    assert out.strip() == "unsatisfiable"


def test_sat_syntax_error(capsys):
    code, _, err = run(capsys, "sat", "--formula", "A -> -> B")
    assert code == 2
    assert "expected" in err


def test_qiyas_valid(capsys):
    code, out, _ = run(capsys, "qiyas", "--case", "itikaf")
    assert code == 0
    assert "Fs -> Fv" in out
    assert "valid" in out


def test_fsm_replay(capsys, tmp_path):
    log = tmp_path / "run.log"
    events = ["intention", "wash_face", "wash_arms", "wipe_head", "wash_feet"]
    log.write_text("".join(f"{i+1} {i+1} {e}\n" for i, e in enumerate(events)))
    code, out, _ = run(capsys, "fsm", "replay", "--automaton", "wudu_shafii", "--log", str(log))
    assert code == 0
    assert out.splitlines()[0] == "valid"


def test_fsm_replay_incomplete(capsys, tmp_path):
    log = tmp_path / "run.log"
    log.write_text("1 1 intention\n")
    code, out, _ = run(capsys, "fsm", "replay", "--automaton", "wudu_shafii", "--log", str(log))
    assert code == 1
    assert out.splitlines()[0] == "in-progress"
    assert "missing:" in out


def test_missing_data_file(capsys):
    code, _, err = run(capsys, "count", "--space", "atlantis")
    assert code == 2
    assert "cannot find" in err


def test_data_dir_env_var(capsys, tmp_path, monkeypatch):
    doc = {
        element: [
            {"attribute": f"a_{element}", "values": [{"id": "x"}, {"id": "y"}]}
        ]
        for element in ("subject", "tool", "reason", "method")
    }
    (tmp_path / "mini.space.json").write_text(json.dumps(doc))
    monkeypatch.setenv("FIQHKIT_DATA_DIR", str(tmp_path))
    code, out, _ = run(capsys, "count", "--space", "mini")
    assert code == 0
    assert out.strip() == "16"


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count"])  # --space is required
    assert exc.value.code == 2
