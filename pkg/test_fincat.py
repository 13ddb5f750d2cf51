#!/usr/bin/env python3
"""
Tests for finite linear categories: parsing, axioms, subcategories and convexity.
"""
import json
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from gradecat.categories.fincat import (
    ViolationKind,
    connected_components,
    full_subcategory,
    is_connected_category,
    is_convex,
    validate_category,
)
from gradecat.errors import SchemaError
from gradecat.evaluation.oracles import associativity_holds
from gradecat.tools import fixtures, schema


def _non_associative() -> dict:
    """x∘x = y but x∘y = 0 while y∘x = x."""
    return {
        "field": {"type": "Q"},
        "objects": ["u"],
        "homs": {"u->u": ["1u", "x", "y"]},
        "identity": {"u": [["1u", "1"]]},
        "compose": [
            {"g": "x", "f": "x", "result": [["y", "1"]]},
            {"g": "y", "f": "x", "result": [["x", "1"]]},
        ],
    }


def test_fixture_categories_are_valid():
    for name in ("kc2", "kc3", "kronecker", "a2", "a3_zero", "a3_path", "e3", "e4", "e4_u", "cycle3"):
        report = validate_category(fixtures.load_category(name))
        assert report.valid, f"{name}: {report.to_json()}"


def test_composition_from_structure_constants():
    cat = fixtures.load_category("e3")
    t = cat.ref("t")
    f = cat.ref("f")
    assert cat.compose_basis(t, t) == cat.identity("u")
    assert cat.vector_label("u", "v", cat.compose_basis(f, t)) == "f"
    assert cat.dim("v", "u") == 0


def test_associativity_violation_reported():
    cat = schema.parse_category(_non_associative())
    report = validate_category(cat)
    assert not report.valid
    assert any(v.kind == ViolationKind.ASSOCIATIVITY for v in report.violations)
    assert not associativity_holds(cat)


def test_schema_error_points_at_field():
    data = json.loads(fixtures.fixture_path("categories", "malformed").read_text())
    try:
        schema.parse_category(data)
    except SchemaError as e:
        assert e.pointer == "homs.u->w"
    else:
        raise AssertionError("unknown object in a hom key must be rejected")

    bad = _non_associative()
    bad["compose"][0]["result"] = [["f", "1"]]
    try:
        schema.parse_category(bad)
    except SchemaError as e:
        assert e.pointer == "compose[0].result[0]"
    else:
        raise AssertionError("unknown basis label in a composite must be rejected")


def test_canonical_serialization_of_fixture():
    path = fixtures.fixture_path("categories", "e3")
    assert schema.canonical_text(path) == path.read_text(encoding="utf-8")


def test_connectivity():
    assert is_connected_category(fixtures.load_category("cycle3"))
    sub = full_subcategory(fixtures.load_category("a3_zero"), ["a", "c"])
    assert not is_connected_category(sub)
    assert connected_components(sub) == [["a"], ["c"]]


def test_full_subcategory_keeps_structure():
    e4 = fixtures.load_category("e4")
    assert full_subcategory(e4, ["u"]) == fixtures.load_category("e4_u")


def test_convexity():
    result = is_convex(fixtures.load_category("a3_path"), ["a", "c"])
    assert not result.convex
    assert result.witness == ("f", "g")
    assert is_convex(fixtures.load_category("a3_zero"), ["a", "c"]).convex
    assert is_convex(fixtures.load_category("e3"), ["u"]).convex


def test_whole_object_set_is_convex():
    for name in ("kc2", "kronecker", "a3_path", "e3", "cycle3"):
        cat = fixtures.load_category(name)
        assert is_convex(cat, cat.objects).convex, name


def test_full_subcategory_of_full_subcategory():
    cat = fixtures.load_category("a3_path")
    for first, second in ((["a", "b", "c"], ["a", "c"]), (["a", "b"], ["b", "c"]), (["b", "c"], ["b", "c"])):
        both = [b for b in first if b in second]
        assert full_subcategory(full_subcategory(cat, first), both) == full_subcategory(cat, both)
    outer = full_subcategory(cat, ["a", "b", "c"])
    assert outer == cat
    assert outer.compose_basis(outer.ref("g"), outer.ref("f")) == cat.compose_basis(cat.ref("g"), cat.ref("f"))


TESTS = [
    test_fixture_categories_are_valid,
    test_composition_from_structure_constants,
    test_associativity_violation_reported,
    test_schema_error_points_at_field,
    test_canonical_serialization_of_fixture,
    test_connectivity,
    test_full_subcategory_keeps_structure,
    test_convexity,
    test_whole_object_set_is_convex,
    test_full_subcategory_of_full_subcategory,
]


def main():
    """Run all tests."""
    print("=" * 60)
    print("CATEGORY TESTS")
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
    sys.exit(main())
