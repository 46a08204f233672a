"""Command-line behaviour: output, exit codes, stdin handling."""

import io
import json
import sys

import pytest

from respmap import (
    Assignment,
    AuthorityKind,
    MapDelta,
    ResponsibilityKind,
    TaskKind,
    analyze,
    apply_map_delta,
    parse_map,
    render_report,
    serialize_map,
)
from respmap.cli import main


def run_cli(argv, stdin: bytes = b"") -> tuple[int, bytes, bytes]:
    out_buf, err_buf = io.BytesIO(), io.BytesIO()
    old = sys.stdout, sys.stderr, sys.stdin
    sys.stdout = io.TextIOWrapper(out_buf, encoding="utf-8", write_through=True)
    sys.stderr = io.TextIOWrapper(err_buf, encoding="utf-8", write_through=True)
    sys.stdin = io.TextIOWrapper(io.BytesIO(stdin), encoding="utf-8")
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
    finally:
        sys.stdout.flush()
        sys.stderr.flush()
        out_bytes, err_bytes = out_buf.getvalue(), err_buf.getvalue()
        sys.stdout, sys.stderr, sys.stdin = old
    return code, out_bytes, err_bytes


@pytest.fixture()
def fixture_file(tmp_path, fixture_bytes):
    path = tmp_path / "karte.respmap.json"
    path.write_bytes(fixture_bytes)
    return path


class TestValidate:
    def test_fixture_is_ok(self, fixture_file):
        code, out, _ = run_cli(["validate", str(fixture_file)])
        assert code == 0
        assert out.decode().strip() == "OK"

    def test_duplicate_actor_listed(self, tmp_path, fixture_doc):
        doc = json.loads(json.dumps(fixture_doc))
        doc["actors"].append({"name": "Azra Jašarević"})
        path = tmp_path / "defekt.respmap.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, _, err = run_cli(["validate", str(path)])
        assert code == 65
        assert "DuplicateActor" in err.decode()

    def test_missing_file(self, tmp_path):
        code, _, err = run_cli(["validate", str(tmp_path / "fehlt.json")])
        assert code == 66
        assert "not found" in err.decode()

    def test_stdin(self, fixture_bytes):
        code, out, _ = run_cli(["validate", "-"], stdin=fixture_bytes)
        assert code == 0
        assert out.decode().strip() == "OK"


class TestAnalyze:
    def test_fixture_report_and_exit_code(self, fixture_file):
        code, out, _ = run_cli(["analyze", str(fixture_file)])
        assert code == 2
        text = out.decode()
        assert "das Algorithmensystem implementiert" in text
        assert text.count("unabhängige Evaluierung nicht gewährleistet") == 2
        assert "Verantwortungslücke" in text

    def test_clean_map_exits_zero(self, tmp_path, clean_map):
        path = tmp_path / "sauber.respmap.json"
        path.write_bytes(serialize_map(clean_map))
        code, out, _ = run_cli(["analyze", str(path)])
        assert code == 0
        assert out.decode().count("keine offensichtlichen Probleme") == 6

    def test_advisory_only_map_exits_one(self, tmp_path, clean_map):
        shared = apply_map_delta(clean_map, MapDelta(
            tasks={TaskKind.ADOPTION_DECISION: Assignment(("Olga", "Pia"))},
            responsibilities={ResponsibilityKind.TARGETS_NOT_MET: Assignment(("Olga", "Pia"))},
            authorities={AuthorityKind.STOP_SYSTEM: Assignment(("Olga", "Pia"))},
        ))
        report = analyze(shared)
        assert {f.rule for f in report.findings} == {"resp-overlap"}
        path = tmp_path / "geteilt.respmap.json"
        path.write_bytes(serialize_map(shared))
        code, _, _ = run_cli(["analyze", str(path)])
        assert code == 1

    def test_json_output_is_exactly_the_structured_rendering(self, fixture_file,
                                                             fixture_bytes):
        code, out, _ = run_cli(["analyze", str(fixture_file), "--format", "json",
                                "--locale", "en"])
        assert code == 2
        expected = render_report(analyze(parse_map(fixture_bytes)), "structured", "en")
        assert out == expected

    def test_parse_error_exits_65(self, tmp_path):
        path = tmp_path / "kaputt.respmap.json"
        path.write_text("{nicht json", encoding="utf-8")
        code, _, err = run_cli(["analyze", str(path)])
        assert code == 65
        assert "SyntaxError" in err.decode()

    def test_lenient_mode_warns_on_stderr(self, tmp_path, fixture_doc):
        doc = dict(fixture_doc, zukunft="bald")
        path = tmp_path / "zukunft.respmap.json"
        path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
        strict_code, _, strict_err = run_cli(["analyze", str(path)])
        assert strict_code == 65
        code, out, err = run_cli(["analyze", str(path), "--lenient"])
        assert code == 2
        assert b"zukunft" in err
        assert b"Problemkreis" in out


class TestDiff:
    def test_self_diff(self, fixture_file):
        code, out, _ = run_cli(["diff", str(fixture_file), str(fixture_file)])
        assert code == 0
        assert out.decode().strip() == "Keine Änderungen."

    def test_assigning_implementation_shows_as_resolved(self, tmp_path, fixture_file,
                                                        fixture_bytes):
        changed = apply_map_delta(parse_map(fixture_bytes), MapDelta(
            tasks={TaskKind.IMPLEMENTATION: Assignment(("AG Algorithmen",))}))
        after = tmp_path / "nachher.respmap.json"
        after.write_bytes(serialize_map(changed))
        code, out, _ = run_cli(["diff", str(fixture_file), str(after), "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert [(f["rule"], f["slot"]) for f in data["resolved"]] == [
            ("task-gap", "implementation")]
        assert data["introduced"] == []

    def test_adding_evaluator_to_development_shows_as_introduced(
            self, tmp_path, fixture_file, fixture_bytes):
        changed = apply_map_delta(parse_map(fixture_bytes), MapDelta(
            tasks={TaskKind.DEVELOPMENT: Assignment(("TechSolve GmbH", "Azra Jašarević"))}))
        after = tmp_path / "nachher.respmap.json"
        after.write_bytes(serialize_map(changed))
        code, out, _ = run_cli(["diff", str(fixture_file), str(after), "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert ("eval-independence", "development") in [
            (f["rule"], f["slot"]) for f in data["introduced"]]

    def test_parse_failure_exits_65(self, tmp_path, fixture_file):
        bad = tmp_path / "kaputt.json"
        bad.write_text("[]", encoding="utf-8")
        code, _, _ = run_cli(["diff", str(fixture_file), str(bad)])
        assert code == 65


class TestInit:
    def test_template_validates_and_is_fully_gapped(self, tmp_path):
        path = tmp_path / "neu.respmap.json"
        assert run_cli(["init", str(path)])[0] == 0
        assert run_cli(["validate", str(path)])[0] == 0
        code, out, _ = run_cli(["analyze", str(path), "--format", "json"])
        assert code == 2
        data = json.loads(out)
        counts = {s["section"]: len(s["findings"]) for s in data["sections"]}
        assert counts == {1: 7, 2: 0, 3: 0, 4: 5, 5: 0, 6: 0}

    def test_title_round_trips(self, tmp_path):
        path = tmp_path / "neu.respmap.json"
        run_cli(["init", str(path), "--title", "Gutes Beispiel KG"])
        assert parse_map(path.read_bytes()).title == "Gutes Beispiel KG"

    def test_refuses_to_overwrite(self, tmp_path):
        path = tmp_path / "neu.respmap.json"
        run_cli(["init", str(path)])
        code, _, err = run_cli(["init", str(path)])
        assert code == 73
        assert "--force" in err.decode()
        assert run_cli(["init", str(path), "--force"])[0] == 0


class TestUsage:
    def test_unknown_command_exits_64(self):
        code, _, _ = run_cli(["frobnicate"])
        assert code == 64

    def test_missing_argument_exits_64(self):
        code, _, _ = run_cli(["analyze"])
        assert code == 64
