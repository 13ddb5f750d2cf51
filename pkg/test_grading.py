#!/usr/bin/env python3
"""
Tests for gradings: validation, walk groups, restriction, conjugation and extension.
"""
import random
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from gradecat.algebra.fields import FieldConfig
from gradecat.algebra.groups import AbelianGroup
from gradecat.categories.fincat import full_subcategory, validate_category
from gradecat.categories.grading import (
    ConjugationFamily,
    Grading,
    GradingViolationKind,
    base_component_grading,
    conjugate_grading,
    extend_trivial,
    grading_equal,
    is_connected_grading,
    restrict_grading,
    trivial_grading,
    validate_grading,
    walk_degree_coset,
    walk_group,
)
from gradecat.errors import PreconditionError
from gradecat.evaluation.instances import (
    GROUP_ALGEBRA,
    MONOMIAL,
    nonzero_composites,
    quiver,
    random_family,
    random_instance,
)
from gradecat.evaluation.oracles import walk_degrees
from gradecat.tools import fixtures, schema

GRADINGS = [
    ("kc2_trivial", "kc2"),
    ("kc2_z", "kc2"),
    ("kc2_z2", "kc2"),
    ("kc2_c2", "kc2"),
    ("kc3_z", "kc3"),
    ("kc3_z3", "kc3"),
    ("kronecker_z01", "kronecker"),
    ("kronecker_z02", "kronecker"),
    ("kronecker_z4_02", "kronecker"),
    ("kronecker_z2_01", "kronecker"),
    ("e4_z", "e4"),
    ("e4_trivial", "e4"),
    ("cycle3_z", "cycle3"),
    ("cycle3_z3", "cycle3"),
]


def test_fixture_gradings_are_valid():
    for name, cat in GRADINGS:
        report = validate_grading(fixtures.load_grading(name, cat))
        assert report.valid, f"{name}: {report.to_json()}"


def test_sheared_basis_homogeneity():
    g = fixtures.load_grading("kc2_c2", "kc2")
    K = g.field
    x = (K.zero, K.one)
    t = (K.one, K.one)
    assert g.degree_of("u", "u", x) is None
    assert g.degree_of("u", "u", t).label == "1"
    assert g.labels[("u", "u")] == ("1u", "t")


def test_identity_of_nontrivial_degree_rejected():
    cat = fixtures.load_category("kc2")
    g = Grading.build(cat, AbelianGroup.integers(), {("u", "u"): [1, 1]})
    report = validate_grading(g)
    assert not report.valid
    assert report.violations[0].kind == GradingViolationKind.IDENTITY_DEGREE


def test_walk_groups():
    wg = walk_group(fixtures.load_grading("kc2_z", "kc2"), "u")
    assert wg.subgroup.is_whole()
    g = fixtures.load_grading("kronecker_z02", "kronecker")
    assert walk_group(g, "a").subgroup.index() == 2
    assert not is_connected_grading(g, "a")
    assert is_connected_grading(fixtures.load_grading("cycle3_z", "cycle3"), "q")


def test_walk_degree_coset_matches_walks():
    g = fixtures.load_grading("kronecker_z4_02", "kronecker")
    coset = walk_degree_coset(g, "a", "b")
    assert sorted(x.label for x in coset.elements()) == ["0", "2"]
    assert not coset.contains(g.group.parse(1))
    found = walk_degrees(g, "a", "b")
    assert found.stabilized
    assert found.degrees == set(coset.elements())


def test_restriction_to_full_subcategory():
    restricted = restrict_grading(fixtures.load_grading("e4_z", "e4"), ["u"])
    assert grading_equal(restricted, fixtures.load_grading("e4_u_z", "e4_u"))


def test_conjugation_shifts_cross_degrees():
    g = fixtures.load_grading("kronecker_z01", "kronecker")
    Z = g.group
    h = conjugate_grading(g, {"a": Z.parse(0), "b": Z.parse(1)})
    assert [d.label for d in h.degrees[("a", "b")]] == ["-1", "0"]
    assert [d.label for d in h.degrees[("a", "a")]] == ["0"]
    assert validate_grading(h).valid
    assert is_connected_grading(h, "a")


def test_base_component_is_connected():
    g = fixtures.load_grading("kronecker_z02", "kronecker")
    component = base_component_grading(g, "a")
    assert component.subgroup.index() == 2
    assert validate_grading(component.grading).valid
    assert is_connected_grading(component.grading, "a")


def test_extension_fails_on_e3():
    cat = fixtures.load_category("e3")
    gD = schema.load_grading(fixtures.fixture_path("gradings", "e3_u_c2"), full_subcategory(cat, ["u"]))
    result = extend_trivial(gD, cat, ["u"])
    assert not result.ok
    assert result.grading is None
    composites = [v.composite for v in result.violations if v.kind == GradingViolationKind.COMPOSITE_DEGREE]
    assert composites == [("f", "t")]
    assert result.warnings


def test_extension_succeeds_on_e4():
    cat = fixtures.load_category("e4")
    gD = fixtures.load_grading("e4_u_z", "e4_u")
    result = extend_trivial(gD, cat, ["u"])
    assert result.ok
    assert validate_grading(result.grading).valid
    assert grading_equal(restrict_grading(result.grading, ["u"]), gD)
    assert result.grading.degrees[("u", "v")][0].is_identity()


def test_extension_requires_convexity():
    cat = fixtures.load_category("a3_path")
    gD = trivial_grading(full_subcategory(cat, ["a", "c"]))
    try:
        extend_trivial(gD, cat, ["a", "c"])
    except PreconditionError as e:
        assert tuple(e.witness) == ("f", "g")
    else:
        raise AssertionError("a non-convex object set must be rejected")


def test_walk_group_ignores_edge_order():
    trees_differ = False
    for name, cat in (("kronecker_z4_02", "kronecker"), ("kronecker_z02", "kronecker"), ("cycle3_z3", "cycle3")):
        g = fixtures.load_grading(name, cat)
        b0 = g.category.objects[0]
        n = len(g.edges())
        first = walk_group(g, b0)
        for order in (list(reversed(range(n))), random.Random(n).sample(range(n), n)):
            other = walk_group(g, b0, order)
            assert other.subgroup == first.subgroup, name
            trees_differ = trees_differ or other.tree.parent != first.tree.parent
    assert trees_differ


def test_conjugating_back_restores_grading():
    g = fixtures.load_grading("kronecker_z01", "kronecker")
    Z = g.group
    a = ConjugationFamily({"a": Z.parse(3), "b": Z.parse(-1)}, "a")
    assert not grading_equal(conjugate_grading(g, a), g)
    assert grading_equal(conjugate_grading(conjugate_grading(g, a), a.inverse()), g)

    for index in range(10):
        inst = random_instance(6, index, groups=["S3", "D4"])
        a = random_family(random.Random(index), inst.category, inst.grading.group)
        back = conjugate_grading(conjugate_grading(inst.grading, a), a.inverse())
        assert grading_equal(back, inst.grading), inst.describe()


def test_restricting_twice_restricts_to_intersection():
    g = fixtures.load_grading("cycle3_z3", "cycle3")
    for first, second in ((["p", "q"], ["q", "r"]), (["p", "q", "r"], ["r"]), (["q", "r"], ["q", "r"])):
        both = [b for b in first if b in second]
        twice = restrict_grading(restrict_grading(g, first), both)
        assert grading_equal(twice, restrict_grading(g, both)), (first, second)


def test_monomial_path_category_grading():
    q = quiver(["p", "r", "s"], [("p", "r"), ("r", "s")], max_length=2)
    cat = q.category(FieldConfig.rationals())
    assert validate_category(cat).valid
    assert cat.homs[("p", "s")] == ("a1a0",)
    assert nonzero_composites(cat) == [("a1", "a0")]

    Z = AbelianGroup.integers()
    g = q.grading(cat, Z, [Z.parse(1), Z.parse(2)])
    assert validate_grading(g).valid
    assert g.degrees[("p", "s")][0].label == "3"

    bad = Grading.build(cat, Z, {("p", "p"): [0], ("r", "r"): [0], ("s", "s"): [0],
                                 ("p", "r"): [1], ("r", "s"): [2], ("p", "s"): [0]})
    report = validate_grading(bad)
    assert [v.composite for v in report.violations] == [("a1", "a0")]
    assert report.violations[0].kind == GradingViolationKind.COMPOSITE_DEGREE
    assert report.violations[0].expected == "3"


def test_random_instances_with_nonzero_composites():
    seen = {MONOMIAL: 0, GROUP_ALGEBRA: 0}
    for index in range(30):
        inst = random_instance(4, index, shapes=[MONOMIAL, GROUP_ALGEBRA])
        assert validate_category(inst.category).valid, inst.describe()
        assert validate_grading(inst.grading).valid, inst.describe()
        if nonzero_composites(inst.category):
            seen[inst.shape] += 1
        else:
            assert inst.shape != GROUP_ALGEBRA, inst.describe()
    assert seen[MONOMIAL] and seen[GROUP_ALGEBRA]


def test_extension_of_disconnected_grading():
    cat = fixtures.load_category("e4")
    Z = AbelianGroup.integers()
    gD = Grading.build(fixtures.load_category("e4_u"), Z, {("u", "u"): [0, 0]})
    assert not is_connected_grading(gD, "u")
    result = extend_trivial(gD, cat, ["u"])
    assert result.ok
    assert not is_connected_grading(result.grading, "u")


TESTS = [
    test_fixture_gradings_are_valid,
    test_sheared_basis_homogeneity,
    test_identity_of_nontrivial_degree_rejected,
    test_walk_groups,
    test_walk_degree_coset_matches_walks,
    test_restriction_to_full_subcategory,
    test_conjugation_shifts_cross_degrees,
    test_base_component_is_connected,
    test_extension_fails_on_e3,
    test_extension_succeeds_on_e4,
    test_extension_requires_convexity,
    test_walk_group_ignores_edge_order,
    test_conjugating_back_restores_grading,
    test_restricting_twice_restricts_to_intersection,
    test_monomial_path_category_grading,
    test_random_instances_with_nonzero_composites,
    test_extension_of_disconnected_grading,
]


def main():
    """Run all tests."""
    print("=" * 60)
    print("GRADING TESTS")
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
