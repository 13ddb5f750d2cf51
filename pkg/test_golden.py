#!/usr/bin/env python3
"""
Golden-file tests: CLI output for the fixtures compared byte for byte with the
pinned files under golden/.
"""
import io
import sys
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

ROOT = Path(__file__).parent
GOLDEN = ROOT / "golden"

# Add src to path
sys.path.insert(0, str(ROOT / "src"))

from gradecat.categories.fincat import full_subcategory
from gradecat.main import main
from gradecat.tools import fixtures, schema

# grading fixture -> category it grades; a (category, objects) pair names a full subcategory
GRADING_CATEGORY = {
    "kc2_trivial": "kc2", "kc2_z": "kc2", "kc2_z2": "kc2", "kc2_c2": "kc2",
    "kc3_z": "kc3", "kc3_z3": "kc3",
    "kronecker_z01": "kronecker", "kronecker_z02": "kronecker",
    "kronecker_z2_01": "kronecker", "kronecker_z4_02": "kronecker",
    "e3_u_c2": ("e3", ["u"]),
    "e4_z": "e4", "e4_trivial": "e4", "e4_u_z": "e4_u", "e4_u_trivial": "e4_u",
    "cycle3_z": "cycle3", "cycle3_z3": "cycle3",
}


def _cli_output(argv) -> bytes:
    """Run the CLI with --output and return the bytes it wrote."""
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "out.json"
        with redirect_stdout(io.StringIO()):
            main(list(argv) + ["--output", str(out)])
        return out.read_bytes()


def _path(kind: str, name: str) -> str:
    return str(fixtures.fixture_path(kind, name))


def test_every_fixture_has_a_golden():
    categories = set(fixtures.fixture_names("categories")) - {"malformed"}
    gradings = set(fixtures.fixture_names("gradings"))
    assert {p.stem for p in (GOLDEN / "roundtrip" / "categories").glob("*.json")} == categories
    assert {p.stem for p in (GOLDEN / "roundtrip" / "gradings").glob("*.json")} == gradings
    assert set(GRADING_CATEGORY) == gradings


def test_category_roundtrip_goldens():
    for golden in sorted((GOLDEN / "roundtrip" / "categories").glob("*.json")):
        written = _cli_output(["roundtrip", "--input", _path("categories", golden.stem)])
        assert written == golden.read_bytes(), golden.name


def test_grading_roundtrip_goldens():
    with tempfile.TemporaryDirectory() as tmp:
        for golden in sorted((GOLDEN / "roundtrip" / "gradings").glob("*.json")):
            category = GRADING_CATEGORY[golden.stem]
            if isinstance(category, tuple):
                name, objs = category
                path = Path(tmp) / f"{name}_{'_'.join(objs)}.json"
                sub = full_subcategory(fixtures.load_category(name), objs)
                path.write_text(schema.dumps(sub.to_json()), encoding="utf-8")
                category_path = str(path)
            else:
                category_path = _path("categories", category)
            written = _cli_output(["roundtrip", "--input", _path("gradings", golden.stem), "--category", category_path])
            assert written == golden.read_bytes(), golden.name


def test_extension_goldens():
    for category, grading_name in (("e4", "e4_u_z"), ("e3", "e3_u_c2")):
        written = _cli_output(["extend-convex", "--category", _path("categories", category), "--sub", "u",
                               "--grading", _path("gradings", grading_name), "--format", "json"])
        assert written == (GOLDEN / "extend_convex" / f"{grading_name}.json").read_bytes(), grading_name


TESTS = [
    test_every_fixture_has_a_golden,
    test_category_roundtrip_goldens,
    test_grading_roundtrip_goldens,
    test_extension_goldens,
]


def main_tests():
    """Run all tests."""
    print("=" * 60)
    print("GOLDEN FILE TESTS")
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
