from __future__ import annotations

import json
import os

import pytest

from wtrees.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("literal, expected", [("1,5,7|2,4,7", "18"), ("1,2,4,5|1,2,9", "72"), ("3|3", "1")])
def test_count(capsys, literal, expected):
    code, out, _ = run(capsys, "count", literal)
    assert code == 0
    assert out == expected + "\n"


def test_count_json_for_symmetric_type(capsys):
    code, out, _ = run(capsys, "count", "6,1,1,1|3,3,3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["cardinality"] == 3
    assert data["labeled_total"] == 84
    assert data["symmetric"] == {"3": 1}
    assert data["symmetric_labeled"] == {"3": 12}


def test_count_explain(capsys):
    code, out, _ = run(capsys, "count", "6,1,1,1|3,3,3", "--explain")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "3"
    assert "T = 84" in lines
    assert "p = 36" in lines
    assert "S_3 = 1" in lines


def test_parse_error_goes_to_stderr(capsys):
    code, out, err = run(capsys, "count", "1,x|3")
    assert code == 2
    assert out == ""
    error = json.loads(err)
    assert error["status"] == "error"
    assert error["kind"] == "type_literal"
    assert "column 3" in error["error"]


def test_sum_mismatch_exit_code(capsys):
    code, _, err = run(capsys, "count", "1|2")
    assert code == 2
    assert json.loads(err)["kind"] == "sum_mismatch"


def test_enumerate_jsonl(capsys):
    code, out, _ = run(capsys, "enumerate", "5,12|1,7,9")
    assert code == 0
    assert len(out.splitlines()) == 6


def test_enumerate_with_census(capsys):
    code, out, _ = run(capsys, "enumerate", "6,1,1,1|3,3,3", "--census")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 4
    assert json.loads(lines[-1]) == {"census": {"total": 3, "byOrder": {"1": 2, "3": 1}}}


def test_enumerate_json_array_and_dot(capsys):
    code, out, _ = run(capsys, "enumerate", "1|1", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 1
    code, out, _ = run(capsys, "enumerate", "1|1", "--format", "dot")
    assert code == 0
    assert out.count("graph ") == 1


def test_enumerate_output_does_not_depend_on_jobs(capsys):
    _, serial, _ = run(capsys, "enumerate", "1,2,6,10|4,5,10", "--jobs", "1")
    _, parallel, _ = run(capsys, "enumerate", "1,2,6,10|4,5,10", "--jobs", "2")
    assert serial == parallel


def test_enumerate_budget_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", "1,2,6,10|4,5,10", "--budget", "2")
    assert code == 4
    assert json.loads(err)["kind"] == "resource_budget"


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("WTREE_BUDGET", "2")
    code, _, _ = run(capsys, "enumerate", "1,2,6,10|4,5,10")
    assert code == 4


def test_malformed_environment(capsys, monkeypatch):
    monkeypatch.setenv("WTREE_BUDGET", "lots")
    code, _, err = run(capsys, "count", "3|3")
    assert code == 2
    assert "WTREE_BUDGET" in json.loads(err)["error"]


def test_verify_smallest(capsys):
    code, out, _ = run(capsys, "verify", "--max-weight", "1")
    report = json.loads(out)
    assert code == 0
    assert report["schema_version"] == "wtree.verify.v1"
    assert report["rows"][0]["formula"] == report["rows"][0]["enumeration"] == 1


def test_verify_report_file_is_never_overwritten(capsys, tmp_path):
    path = str(tmp_path / "report.json")
    code, out, _ = run(capsys, "verify", "--max-weight", "2", "--report", path)
    assert code == 0
    assert json.loads(out) == {"types_checked": 5, "mismatches": 0, "skipped": 0}
    code, _, err = run(capsys, "verify", "--max-weight", "2", "--report", path)
    assert code == 2
    assert json.loads(err)["kind"] == "io"


def test_verify_reports_are_byte_identical(capsys, tmp_path):
    first, second = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    run(capsys, "verify", "--max-weight", "4", "--report", first)
    run(capsys, "verify", "--max-weight", "4", "--report", second, "--jobs", "2")
    with open(first, "rb") as a, open(second, "rb") as b:
        assert a.read() == b.read()


def test_system_prints_equations(capsys):
    code, out, _ = run(capsys, "system", "1,2,4|2,5")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("system of ⟨1,2,4|2,5⟩")
    assert len(lines) == 4
    assert all(line.endswith("= 0") for line in lines[1:])


def test_system_qpoly(capsys):
    code, out, _ = run(capsys, "system", "--qpoly", "3")
    assert code == 0
    assert out.startswith("q_3 = ")
    for term in ("x_1**3", "3*x_1*x_2", "3*x_3"):
        assert term in out


def test_system_solve_banner(capsys):
    code, out, _ = run(capsys, "system", "1,4|2,3", "--solve", "--starts", "100", "--reduction")
    assert code == 0
    assert "solutions found: 2 (lower bound, heuristic" in out
    assert "reduces: True" in out


def test_system_solve_json(capsys):
    code, out, _ = run(capsys, "system", "1,2|3", "--solve", "--starts", "10", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["count"] == 1
    assert data["lowerBound"] is True
    assert data["solutions"][0]["point"][0][0] == pytest.approx(3)


def test_system_needs_a_target(capsys):
    code, _, err = run(capsys, "system")
    assert code == 2
    assert json.loads(err)["kind"] == "validation"


def test_partitions_listing(capsys):
    code, out, _ = run(capsys, "partitions", "1,5,7|2,4,7")
    lines = out.splitlines()
    assert code == 0
    assert lines == ["⟨1,5,7|2,4,7⟩  24", "⟨1,5|2,4⟩ ∪ ⟨7|7⟩  -6", "sum = 18"]


def test_print_schemas(capsys):
    code, out, _ = run(capsys, "--print-schemas")
    names = [entry["name"] for entry in json.loads(out)]
    assert code == 0
    assert names == ["count", "enumerate", "verify", "system", "partitions"]


def test_audit_trail(capsys):
    run(capsys, "count", "3|3")
    run(capsys, "count", "1|2")
    with open(os.environ["WTREE_AUDIT_LOG"], encoding="utf-8") as f:
        events = [json.loads(line)["event"] for line in f]
    assert events == ["command_received", "command_result", "command_received", "command_error"]


def test_existing_report_fails_before_the_sweep(capsys, monkeypatch, tmp_path):
    path = tmp_path / "report.json"
    path.write_text("keep", encoding="utf-8")

    def no_sweep(*args, **kwargs):
        pytest.fail("sweep ran although the report already exists")

    monkeypatch.setattr("wtrees.commands.run_sweep", no_sweep)
    code, out, err = run(capsys, "verify", "--max-weight", "9", "--report", str(path))
    assert code == 2
    assert out == ""
    assert json.loads(err)["kind"] == "io"
    assert path.read_text(encoding="utf-8") == "keep"


def test_failed_sweep_releases_the_report_path(capsys, monkeypatch, tmp_path):
    path = tmp_path / "report.json"

    def broken_sweep(*args, **kwargs):
        raise OSError("disk went away")

    monkeypatch.setattr("wtrees.commands.run_sweep", broken_sweep)
    code, _, err = run(capsys, "verify", "--max-weight", "2", "--report", str(path))
    assert code == 2
    assert json.loads(err)["kind"] == "io"
    assert not path.exists()


def test_unwritable_audit_log(capsys, monkeypatch, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    monkeypatch.setenv("WTREE_AUDIT_LOG", str(blocker / "audit.jsonl"))
    code, out, err = run(capsys, "count", "3|3")
    assert code == 2
    assert out == ""
    error = json.loads(err)
    assert error["status"] == "error"
    assert error["kind"] == "io"
