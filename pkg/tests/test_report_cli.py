import json

import pytest

from successrules import ClassifyConfig, ConfigError, PipelineConfig, minimize, run_pipeline
from successrules.cli import run
from successrules.report import dumps_report, truth_table_from_report


def fixture_args(data_dir, *extra):
    return ["--schema", str(data_dir / "case_study_schema.yaml"),
            "--input", str(data_dir / "case_study_frequency.csv"),
            "--min-successes", "70", *extra]


@pytest.fixture
def cfg(data_dir):
    return PipelineConfig(
        schema_path=data_dir / "case_study_schema.yaml",
        input_path=data_dir / "case_study_frequency.csv",
        classify=ClassifyConfig("share", 7.0, 70),
        coverage_target=90,
    )


def test_pipeline_case_study(cfg):
    report = run_pipeline(cfg)
    successes = report["phase1"]["truth_table"]["successes"]
    assert successes == ["1010", "1011", "1101", "1110", "1111"]
    assert report["phase2"]["expression"] == "ET + ESJ"
    trace = [round(s["cumulative_coverage"]) for s in report["phase3"]["greedy"]["selected"]]
    assert trace == [82, 100]
    errors = {r["candidate"]: r["overall_error"] for r in report["phase4"]["reports"]}
    assert errors["E"] == pytest.approx(0.203, abs=1e-3)
    assert errors["EJ"] == pytest.approx(0.106, abs=1e-3)
    assert report["decisions"] == []


def test_target_80_keeps_et(cfg):
    cfg.coverage_target = 80
    report = run_pipeline(cfg)
    assert [s["rule"] for s in report["phase3"]["greedy"]["selected"]] == ["ET"]


def test_all_failure_skips_later_phases(cfg):
    cfg.classify = ClassifyConfig("share", 99.0)
    report = run_pipeline(cfg)
    assert report["phase2"]["expression"] == "FALSE"
    assert report["phase3"]["status"] == "skipped"
    assert report["phase4"]["status"] == "skipped"


def test_report_is_deterministic(cfg):
    assert dumps_report(run_pipeline(cfg)) == dumps_report(run_pipeline(cfg))


def test_round_trip_truth_table(cfg, case_table):
    report = json.loads(dumps_report(run_pipeline(cfg)))
    table = truth_table_from_report(report)
    assert table == case_table
    assert minimize(table) == minimize(case_table)


def test_interactive_prompts_are_logged(cfg):
    answers = iter(["85", "y", "n", "q"])
    questions = []

    def prompt(text):
        questions.append(text)
        return next(answers)

    cfg.interactive = True
    report = run_pipeline(cfg, prompt=prompt)
    assert report["phase3"]["greedy"]["coverage_target"] == 85
    logged = report["decisions"]
    assert logged[0] == {"phase": 3, "item": "coverage_target", "value": 85.0, "source": "interactive"}
    first, second = report["phase4"]["reports"][:2]
    assert logged[1] == {"phase": 4, "candidate": first["candidate"], "decision": "accept",
                         "source": "interactive"}
    assert logged[2]["candidate"] == second["candidate"] and logged[2]["decision"] == "reject"
    assert len(logged) == 3 and len(questions) == 4


def test_flag_decisions_replay(cfg):
    cfg.decisions = {"E": "reject", "EJ": "accept"}
    report = run_pipeline(cfg)
    by_label = {r["candidate"]: r["decision"] for r in report["phase4"]["reports"]}
    assert by_label["E"] == "reject" and by_label["EJ"] == "accept" and by_label["ES"] is None
    assert [d["candidate"] for d in report["decisions"]] == ["EJ", "E"]


def test_unknown_decision_label(cfg):
    cfg.decisions = {"EQ": "accept"}
    with pytest.raises(ConfigError):
        run_pipeline(cfg)


@pytest.mark.parametrize("target", [0, 101])
def test_config_validation(cfg, target):
    cfg.coverage_target = target
    with pytest.raises(ConfigError):
        run_pipeline(cfg)


def test_cli_structured_output_is_byte_identical(data_dir, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["pipeline", *fixture_args(data_dir, "--format", "structured", "--output", str(a))]) == 0
    assert run(["pipeline", *fixture_args(data_dir, "--format", "structured", "--output", str(b))]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert set(report) >= {"phase1", "phase2", "phase3", "phase4", "decisions"}


@pytest.mark.parametrize("command,needle", [
    ("ingest", "Phase I"),
    ("minimize", "Y = ET + ESJ"),
    ("filter", "ET: 65% of successes, 82% of rule-set coverage"),
    ("effects", "Phase IV"),
    ("karnaugh", "TJ\\ES | 00 01 11 10"),
])
def test_cli_subcommands(data_dir, capsys, command, needle):
    assert run([command, *fixture_args(data_dir)]) == 0
    assert needle in capsys.readouterr().out


def test_cli_decisions_file(data_dir, tmp_path, capsys):
    path = tmp_path / "decisions.txt"
    path.write_text("# replayed\nE=reject\nEJ=accept\n")
    assert run(["effects", *fixture_args(data_dir, "--decisions", str(path))]) == 0
    out = capsys.readouterr().out
    assert "EJ: accept (flag)" in out


def test_cli_exit_codes(data_dir, tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("E,S,T,J,successes\n1,0,1,0,x\n")
    schema = str(data_dir / "case_study_schema.yaml")
    assert run(["pipeline", "--schema", schema, "--input", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert run(["pipeline", "--schema", schema, "--input", str(tmp_path / "none.csv")]) == 1
    assert run(["pipeline", *fixture_args(data_dir, "--coverage-target", "0")]) == 2
    assert run(["pipeline", *fixture_args(data_dir, "--mode", "rate")]) == 2
    assert run(["pipeline", *fixture_args(data_dir, "--decisions", "E=maybe")]) == 2
    bad_schema = tmp_path / "schema.yaml"
    bad_schema.write_text("attributes: 3\n")
    assert run(["pipeline", "--schema", str(bad_schema), "--input", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["pipeline", "--schema", schema])
    assert exc.value.code == 2


def test_cli_karnaugh_unsupported(tmp_path, capsys):
    schema = tmp_path / "s.yaml"
    schema.write_text("attributes: [A, B, C, D, E]\n")
    data = tmp_path / "f.csv"
    data.write_text("A,B,C,D,E,successes\n1,1,1,1,1,5\n")
    assert run(["karnaugh", "--schema", str(schema), "--input", str(data)]) == 2


def test_cli_records_input(tmp_path, capsys):
    schema = tmp_path / "s.yaml"
    schema.write_text("attributes:\n  - A\n  - {name: score, kind: numeric-threshold, threshold: 10}\n"
                      "outcome: result\n")
    data = tmp_path / "r.csv"
    data.write_text("A,score,result\n1,12,1\n1,15,1\n0,3,0\n1,2,0\n0,11,0\n")
    code = run(["minimize", "--schema", str(schema), "--input", str(data), "--input-kind", "records",
                "--mode", "rate", "--pct-threshold", "50"])
    assert code == 0
    assert "Y = Ascore" in capsys.readouterr().out
