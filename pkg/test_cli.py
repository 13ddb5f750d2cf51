#!/usr/bin/env python3
"""
Tests for the command line: statuses, exit codes, settings and the check suite.
"""
import io
import json
import sys
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

ROOT = Path(__file__).parent

# Add src to path
sys.path.insert(0, str(ROOT / "src"))

from gradecat.errors import SchemaError
from gradecat.evaluation.suite import run_suite, subset_match
from gradecat.main import main, run
from gradecat.tools import fixtures
from gradecat.tools.config import load_settings


def category(name: str) -> str:
    return str(fixtures.fixture_path("categories", name))


def grading(name: str) -> str:
    return str(fixtures.fixture_path("gradings", name))


def test_malformed_input_exits_with_two():
    report = run(["validate-category", "--category", category("malformed")])
    assert report.status == "error"
    assert report.exit_code == 2
    assert report.payload["pointer"] == "homs.u->w"


def test_missing_file_exits_with_two():
    report = run(["validate-category", "--category", "no/such/file.json"])
    assert report.exit_code == 2


def test_unknown_subcommand():
    report = run(["no-such-command"])
    assert report.exit_code == 2
    assert report.command == ""


def test_unknown_object_name_exits_with_two():
    report = run(["walk-group", "--category", category("kc2"), "--grading", grading("kc2_z"), "--base", "nowhere"])
    assert report.status == "error"
    assert report.exit_code == 2
    assert report.payload["type"] == "UnknownObjectError"

    report = run(["convex-check", "--category", category("e3"), "--sub", "u,nowhere"])
    assert report.exit_code == 2


def test_extend_convex_reports_witness():
    report = run(["extend-convex", "--category", category("e3"), "--sub", "u", "--grading", grading("e3_u_c2")])
    assert report.status == "invalid"
    assert report.exit_code == 1
    assert report.payload["witness"] == ["f", "t"]

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "ends.json"
        path.write_text(json.dumps({
            "group": {"kind": "fg-abelian", "free_rank": 1, "torsion": []},
            "degrees": {"a->a": [[0]], "a->c": [[0]], "c->c": [[0]]},
        }))
        report = run(["extend-convex", "--category", category("a3_path"), "--sub", "a,c", "--grading", str(path)])
    assert report.status == "invalid"
    assert report.payload == {"convex": False, "witness": ["f", "g"]}


def test_roundtrip_text_is_canonical():
    path = grading("kc2_c2")
    report = run(["roundtrip", "--input", path, "--category", category("kc2")])
    assert report.status == "ok"
    assert report.text == Path(path).read_text(encoding="utf-8")
    assert report.payload["canonical"] is True


def test_roundtrip_normalizes_then_is_fixed():
    data = {
        "objects": ["a", "b", "c"],
        "compose": [{"result": [["h", "2/4"]], "g": "g", "f": "f"}],
        "identity": {"c": [["1c", "1"]], "b": [["1b", "1"]], "a": [["1a", "1"]]},
        "homs": {"b->c": ["g"], "a->c": ["h"], "a->b": ["f"], "a->a": ["1a"], "b->b": ["1b"], "c->c": ["1c"]},
        "field": {"type": "Q"},
    }
    with tempfile.TemporaryDirectory() as tmp:
        first = Path(tmp) / "messy.json"
        first.write_text(json.dumps(data))
        report = run(["roundtrip", "--input", str(first)])
        assert report.status == "ok"
        assert report.payload["canonical"] is False
        assert '"1/2"' in report.text
        assert '"2/4"' not in report.text

        second = Path(tmp) / "canonical.json"
        second.write_text(report.text, encoding="utf-8")
        again = run(["roundtrip", "--input", str(second)])
        assert again.payload["canonical"] is True
        assert again.text == report.text


def test_json_output_and_report_file():
    with tempfile.TemporaryDirectory() as tmp:
        out_file = Path(tmp) / "report.json"
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(["walk-group", "--category", category("kc2"), "--grading", grading("kc2_z"),
                         "--format", "json", "--output", str(out_file)])
        assert code == 0
        printed = json.loads(buf.getvalue())
        assert printed["status"] == "ok"
        assert printed["payload"]["subgroup"]["index"] == 1
        assert json.loads(out_file.read_text(encoding="utf-8")) == printed


def test_settings_file_and_flags():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "gradecat.yaml"
        path.write_text("max_enum: 500\nworkers: 2\n")
        settings = load_settings(str(path))
        assert settings.max_enum == 500
        assert settings.workers == 2
        assert settings.with_overrides(workers=None, max_enum=7).max_enum == 7

        path.write_text("colour: blue\n")
        try:
            load_settings(str(path))
        except SchemaError as e:
            assert e.pointer == "colour"
        else:
            raise AssertionError("unknown settings keys must be rejected")

    report = run(["walk-group", "--category", category("kc2"), "--grading", grading("kc2_z"), "--workers", "0"])
    assert report.exit_code == 2


def test_subset_match_paths():
    assert subset_match({"a": {"b": 1}}, {"a": {"b": 1, "c": 2}, "d": 3}) is None
    assert subset_match({"a": [1, 2]}, {"a": [1, 3]}) is not None
    assert subset_match({"x": 1}, {}) == "missing x"


def test_check_suite_passes():
    result = run_suite(ROOT / "checks.yaml", run)
    failures = [o.to_json() for o in result.outcomes if not o.passed]
    assert result.passed, failures
    assert len(result.outcomes) == 24


TESTS = [
    test_malformed_input_exits_with_two,
    test_missing_file_exits_with_two,
    test_unknown_subcommand,
    test_unknown_object_name_exits_with_two,
    test_extend_convex_reports_witness,
    test_roundtrip_text_is_canonical,
    test_roundtrip_normalizes_then_is_fixed,
    test_json_output_and_report_file,
    test_settings_file_and_flags,
    test_subset_match_paths,
    test_check_suite_passes,
]


def main_tests():
    """Run all tests."""
    print("=" * 60)
    print("CLI TESTS")
    print("=" * 60)
    failed = 0
    for test in TESTS:
        try:
            test()
            print(f"✓ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"✗ {test.__name__}: {e!r}")
    print(f"\nTotal: {len(TESTS) - failed}/{len(TESTS)} tests passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main_tests())
