#!/usr/bin/env python3
"""
Acceptance runs: the kC2 fundamental group, the randomized property runs and
the fixture-wide checks of morphism lists, extension, Galois coverings and
spanning-tree choices.
"""
import sys
import time
from itertools import product
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from gradecat.categories.fincat import full_subcategory
from gradecat.categories.grading import (
    GradingViolationKind,
    extend_trivial,
    grading_equal,
    is_connected_grading,
    restrict_grading,
)
from gradecat.coverings.morphisms import enumerate_identityJ_morphisms, find_identityJ_morphism
from gradecat.coverings.pi1 import build_diagram, relative_pi1, verify_choice_independence
from gradecat.coverings.smash import smash_product, verify_covering, verify_galois
from gradecat.evaluation.oracles import exhaustive_morphisms
from gradecat.evaluation.properties import run_property
from gradecat.tools import fixtures, schema

# (grading, category) for every fixture grading
FIXTURES = [
    ("kc2_trivial", "kc2"), ("kc2_z", "kc2"), ("kc2_z2", "kc2"), ("kc2_c2", "kc2"),
    ("kc3_z", "kc3"), ("kc3_z3", "kc3"),
    ("kronecker_z01", "kronecker"), ("kronecker_z02", "kronecker"),
    ("kronecker_z2_01", "kronecker"), ("kronecker_z4_02", "kronecker"),
    ("e4_z", "e4"), ("e4_trivial", "e4"),
    ("cycle3_z", "cycle3"), ("cycle3_z3", "cycle3"),
]


def _assert_property(name: str, instances: int, seed: int):
    run = run_property(name, instances, seed)
    assert run.passed, [f.to_json() for f in run.failures[:3]]


def test_kc2_relative_pi1():
    start = time.perf_counter()
    loaded = fixtures.load_diagram("kc2")
    d = build_diagram(loaded.category, loaded.base_object, loaded.gradings)
    L = relative_pi1(d)
    assert (L.free_rank, list(L.torsion)) == (1, [2])
    assert any("not computed" in w for w in L.warnings)
    assert time.perf_counter() - start < 5
    z2, c2 = loaded.gradings["kc2_z2"], loaded.gradings["kc2_c2"]
    assert not find_identityJ_morphism(z2, c2, "u")
    assert not find_identityJ_morphism(c2, z2, "u")


def test_coset_law_property():
    _assert_property("coset-law", 200, 1)


def test_component_property():
    _assert_property("component", 100, 2)


def test_conjugation_lemma_property():
    _assert_property("conjugation-lemma", 100, 3)


def test_morphism_lists_on_fixtures():
    loaded = [(name, cat, fixtures.load_grading(name, cat)) for name, cat in FIXTURES]
    small = [(name, cat, g) for name, cat, g in loaded
             if g.group.is_finite and g.group.order <= 6 and is_connected_grading(g, g.category.objects[0])]
    pairs = 0
    for (_, cat, X), (_, cat2, Xp) in product(small, repeat=2):
        if cat != cat2:
            continue
        b0 = X.category.objects[0]
        orbit = enumerate_identityJ_morphisms(X, Xp, b0)
        tables = [{b: m.object_table(b) for b in X.category.objects} for m in orbit.members()]
        brute = exhaustive_morphisms(X, Xp, b0)
        assert sorted(map(repr, tables)) == sorted(map(repr, brute))
        pairs += 1
    assert pairs >= 9
    _assert_property("morphism-orbit", 40, 5)


def test_convex_extension_dichotomy():
    e4 = fixtures.load_category("e4")
    gD = fixtures.load_grading("e4_u_z", "e4_u")
    ok = extend_trivial(gD, e4, ["u"])
    assert ok.ok
    assert is_connected_grading(ok.grading, "u")
    assert grading_equal(restrict_grading(ok.grading, ["u"]), gD)

    e3 = fixtures.load_category("e3")
    gD = schema.load_grading(fixtures.fixture_path("gradings", "e3_u_c2"), full_subcategory(e3, ["u"]))
    failed = extend_trivial(gD, e3, ["u"])
    assert not failed.ok
    assert [v.composite for v in failed.violations
            if v.kind == GradingViolationKind.COMPOSITE_DEGREE] == [("f", "t")]


def test_galois_equivalence():
    for name, cat in FIXTURES:
        g = fixtures.load_grading(name, cat)
        if not g.group.is_finite:
            continue
        b0 = g.category.objects[0]
        cov = smash_product(g)
        assert verify_covering(cov).valid, name
        assert verify_galois(cov, b0).galois == is_connected_grading(g, b0), name
    _assert_property("galois", 100, 7)


def test_choice_independence_on_multi_tree_fixtures():
    for name, cat in FIXTURES:
        if cat not in ("kronecker", "cycle3"):
            continue
        g = fixtures.load_grading(name, cat)
        for seed in (0, 1, 2):
            report = verify_choice_independence(g, alt_tree_seed=seed)
            assert report.independent, f"{name}: {report.detail}"
    _assert_property("choice-independence", 50, 8)


def test_associativity_property():
    _assert_property("associativity", 50, 9)


TESTS = [
    test_kc2_relative_pi1,
    test_coset_law_property,
    test_component_property,
    test_conjugation_lemma_property,
    test_morphism_lists_on_fixtures,
    test_convex_extension_dichotomy,
    test_galois_equivalence,
    test_choice_independence_on_multi_tree_fixtures,
    test_associativity_property,
]


def main():
    """Run all tests."""
    print("=" * 60)
    print("ACCEPTANCE TESTS")
    print("=" * 60)
    failed = 0
    for test in TESTS:
        start = time.perf_counter()
        try:
            test()
            print(f"✓ {test.__name__} ({time.perf_counter() - start:.1f}s)")
        except Exception as e:
            failed += 1
            print(f"✗ {test.__name__}: {e!r}")
    print(f"\nTotal: {len(TESTS) - failed}/{len(TESTS)} tests passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
