#!/usr/bin/env python3
"""
Tests for smash products, Galois checks and covering morphisms.
"""
import sys
from dataclasses import replace
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from gradecat.algebra.fields import FieldConfig
from gradecat.algebra.groups import AbelianGroup, FiniteGroup, conjugation_hom
from gradecat.categories.fincat import validate_category
from gradecat.categories.grading import Grading, validate_grading
from gradecat.coverings.morphisms import (
    ObstructionKind,
    canonical_mu,
    conjugation_covering_morphism,
    enumerate_identityJ_morphisms,
    find_identityJ_morphism,
    from_object_maps,
    left_translate,
    verify_morphism,
)
from gradecat.coverings.smash import (
    connected_component,
    smash_hom,
    smash_product,
    verify_covering,
    verify_deck_action,
    verify_galois,
)
from gradecat.errors import UnsupportedError
from gradecat.evaluation.instances import group_algebra
from gradecat.evaluation.oracles import component_isomorphism, exhaustive_morphisms
from gradecat.tools import fixtures


def test_smash_of_connected_grading_is_galois():
    g = fixtures.load_grading("kc2_z2", "kc2")
    cov = smash_product(g)
    assert len(cov.category.objects) == 2
    assert validate_category(cov.category).valid
    assert verify_covering(cov).valid
    assert verify_galois(cov, "u").galois
    e, one = g.group.parse(0), g.group.parse(1)
    assert cov.category.dim(cov.name("u", e), cov.name("u", one)) == 1
    assert cov.category.dim(cov.name("u", one), cov.name("u", e)) == 1


def test_smash_of_disconnected_grading():
    g = fixtures.load_grading("kronecker_z4_02", "kronecker")
    cov = smash_product(g)
    assert len(cov.category.objects) == 8
    assert verify_covering(cov).valid
    report = verify_galois(cov, "a")
    assert not report.galois
    deck = verify_deck_action(cov)
    assert deck.free and deck.transitive
    component = connected_component(cov, cov.name("a", g.group.identity()))
    assert len(component.objects) == 4


def test_component_matches_base_component_smash():
    g = fixtures.load_grading("kronecker_z4_02", "kronecker")
    check = component_isomorphism(g, "a")
    assert check.ok, check.failures


def test_infinite_groups_are_not_materialized():
    g = fixtures.load_grading("kc2_z", "kc2")
    try:
        smash_product(g)
    except UnsupportedError:
        pass
    else:
        raise AssertionError("the smash over Z cannot be materialized")
    Z = g.group
    assert smash_hom(g, ("u", Z.parse(0)), ("u", Z.parse(-1))) == ["x"]
    assert smash_hom(g, ("u", Z.parse(3)), ("u", Z.parse(3))) == ["1u"]
    assert smash_hom(g, ("u", Z.parse(0)), ("u", Z.parse(5))) == []


def test_morphism_onto_quotient_grading():
    X = fixtures.load_grading("kc2_z", "kc2")
    Xp = fixtures.load_grading("kc2_z2", "kc2")
    result = find_identityJ_morphism(X, Xp, "u")
    assert result
    m = result.morphism
    assert m.is_normalized()
    assert verify_morphism(m).valid
    assert m.lam(X.group.parse(3)).label == "1"
    assert m.lam.is_surjective()


def test_non_homogeneous_obstruction():
    X = fixtures.load_grading("kc2_z2", "kc2")
    Xp = fixtures.load_grading("kc2_c2", "kc2")
    result = find_identityJ_morphism(X, Xp, "u")
    assert not result
    assert result.obstruction.kind == ObstructionKind.NON_HOMOGENEOUS
    assert not find_identityJ_morphism(Xp, X, "u")


def test_orbit_matches_exhaustive_search():
    X = fixtures.load_grading("kronecker_z2_01", "kronecker")
    orbit = enumerate_identityJ_morphisms(X, X, "a")
    assert orbit.size == 2
    tables = [{b: m.object_table(b) for b in X.category.objects} for m in orbit.members()]
    brute = exhaustive_morphisms(X, X, "a")
    assert sorted(map(repr, tables)) == sorted(map(repr, brute))
    n = orbit.normalized
    assert orbit.contains(left_translate(n, X.group.parse(1)))


def test_morphism_from_object_maps():
    X = fixtures.load_grading("kronecker_z2_01", "kronecker")
    identity = {"0": "0", "1": "1"}
    m = from_object_maps(X, X, {"a": identity, "b": identity}, "a")
    assert verify_morphism(m).valid
    assert canonical_mu(m).is_identity()


def test_swap_automorphism_negates():
    cat = fixtures.load_category("kronecker")
    X = fixtures.load_grading("kronecker_z01", "kronecker")
    J = fixtures.load_automorphism("kronecker_swap", "kronecker")
    result = find_identityJ_morphism(X, X, "a", J)
    assert result
    assert result.morphism.j_name == "kronecker_swap"
    Z = X.group
    assert result.morphism.lam(Z.parse(1)) == Z.parse(-1)
    assert verify_morphism(result.morphism).valid
    assert X.category == cat


def test_conjugation_morphism_mu_is_conjugation():
    cat = fixtures.load_category("kronecker")
    S3 = FiniteGroup.symmetric(3)
    e, r = S3.identity(), S3.parse("(1 2 3)")
    X = Grading.build(cat, S3, {("a", "a"): [e], ("a", "b"): [e, r], ("b", "b"): [e]})
    assert validate_grading(X).valid
    a = {"a": S3.parse("(1 2)"), "b": e}
    m = conjugation_covering_morphism(X, a, "a")
    mu = canonical_mu(m)
    assert mu == conjugation_hom(S3, a["a"])
    assert not mu.is_identity()
    m0 = conjugation_covering_morphism(X, {"a": e, "b": S3.parse("(1 2)")}, "a")
    assert canonical_mu(m0).is_identity()


def _failing_points(report):
    return {(f.base_object, f.fibre_object) for f in report.failures}


def test_broken_star_is_reported():
    g = fixtures.load_grading("kc2_z2", "kc2")
    cov = smash_product(g)
    x, y = cov.name("u", g.group.parse(0)), cov.name("u", g.group.parse(1))
    assert cov.lifts[(x, y)] == (1,)

    dropped = replace(cov, lifts=dict(cov.lifts))
    dropped.lifts[(x, y)] = ()
    report = verify_covering(dropped)
    assert report.valid is False
    assert ("u", x) in _failing_points(report)
    assert ("u", y) in _failing_points(report)

    corrupted = replace(cov, lifts=dict(cov.lifts))
    corrupted.lifts[(x, y)] = (0,)
    report = verify_covering(corrupted)
    assert report.valid is False
    assert ("u", x) in _failing_points(report)
    assert report.to_json()["failures"][0]["base_object"] == "u"


def test_composition_over_base_is_checked():
    cat = group_algebra(FieldConfig.prime(3), 3)
    g = Grading.build(cat, AbelianGroup(0, (3,)), {("u", "u"): [0, 1, 2]})
    assert validate_grading(g).valid
    cov = smash_product(g)
    assert verify_covering(cov).valid

    K = cat.field
    key = next(
        (gref, fref) for (gref, fref), vec in sorted(cov.category.composition.items())
        if not K.is_zero_vector(vec)
        and cov.lifts[(gref.source, gref.target)][gref.index] != 0
        and cov.lifts[(fref.source, fref.target)][fref.index] != 0
    )
    composition = dict(cov.category.composition)
    composition[key] = K.zeros(len(composition[key]))
    broken = replace(cov, category=replace(cov.category, composition=composition))
    report = verify_covering(broken)
    assert report.valid is False
    x = key[1].source
    assert ("u", x) in _failing_points(report)
    assert any("does not lie over the composite" in f.detail for f in report.failures)


TESTS = [
    test_smash_of_connected_grading_is_galois,
    test_smash_of_disconnected_grading,
    test_component_matches_base_component_smash,
    test_infinite_groups_are_not_materialized,
    test_morphism_onto_quotient_grading,
    test_non_homogeneous_obstruction,
    test_orbit_matches_exhaustive_search,
    test_morphism_from_object_maps,
    test_swap_automorphism_negates,
    test_conjugation_morphism_mu_is_conjugation,
    test_broken_star_is_reported,
    test_composition_over_base_is_checked,
]


def main():
    """Run all tests."""
    print("=" * 60)
    print("COVERING TESTS")
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
