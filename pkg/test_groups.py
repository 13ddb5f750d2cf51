#!/usr/bin/env python3
"""
Tests for the group layer: finite and abelian groups, subgroups and homomorphisms.
"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from gradecat.algebra.groups import (
    AbelianGroup,
    FiniteGroup,
    conjugation_hom,
    group_from_json,
    hom_build,
    identity_hom,
    subgroup_generated,
    trivial_hom,
)
from gradecat.errors import GroupError, NotAHomomorphismError


def test_cyclic_group_arithmetic():
    C5 = FiniteGroup.cyclic(5)
    x = C5.parse("3")
    y = C5.parse("4")
    assert C5.order == 5
    assert C5.multiply(x, y).label == "2"
    assert C5.inverse(x).label == "2"
    assert C5.power(x, 5).is_identity()


def test_symmetric_and_dihedral_orders():
    S3 = FiniteGroup.symmetric(3)
    D4 = FiniteGroup.dihedral(4)
    assert S3.order == 6
    assert D4.order == 8
    assert not S3.is_abelian()
    assert FiniteGroup.cyclic(4).is_abelian()


def test_permutation_labels_parse_in_any_spelling():
    S3 = FiniteGroup.symmetric(3)
    assert S3.parse("(1 2)") == S3.parse("(1,2)")
    assert S3.parse("()").is_identity()


def test_bad_table_rejected():
    try:
        FiniteGroup(["a", "b"], [[0, 0], [0, 1]])
    except GroupError:
        pass
    else:
        raise AssertionError("a table without inverses must be rejected")


def test_abelian_elements_reduce_modulo_torsion():
    G = AbelianGroup(1, [4])
    x = G.parse("(3,3)")
    y = G.parse([2, 2])
    assert G.multiply(x, y).payload == (5, 1)
    assert G.parse("(0,4)").is_identity()
    assert not G.is_finite
    assert AbelianGroup(0, [2, 3]).order == 6


def test_group_json_roundtrip_keys():
    G = group_from_json({"kind": "fg-abelian", "free_rank": 1, "torsion": [2]})
    assert G == AbelianGroup(1, [2])
    assert G.to_json() == {"kind": "fg-abelian", "free_rank": 1, "torsion": [2]}
    assert group_from_json(AbelianGroup(0, []).to_json()).order == 1


def test_subgroup_index_and_structure():
    Z = AbelianGroup.integers()
    two_z = subgroup_generated(Z, [Z.parse(2)])
    assert two_z.index() == 2
    assert two_z.structure() == (1, [])
    Z4 = AbelianGroup.cyclic(4)
    sub = subgroup_generated(Z4, [Z4.parse(2)])
    assert sub.order == 2
    assert sub.index() == 2
    assert not sub.is_whole()


def test_finite_subgroup_members():
    S3 = FiniteGroup.symmetric(3)
    sub = subgroup_generated(S3, [S3.parse("(1 2 3)")])
    assert sub.order == 3
    assert sub.index() == 2
    assert S3.parse("(1 3 2)") in sub
    assert S3.parse("(1 2)") not in sub


def test_homomorphism_by_generator_images():
    Z = AbelianGroup.integers()
    Z2 = AbelianGroup.cyclic(2)
    h = hom_build(Z, Z2, [1])
    assert h(Z.parse(7)).label == "1"
    assert h(Z.parse(4)).is_identity()
    assert h.is_surjective()
    assert not h.is_injective()


def test_non_homomorphism_names_a_pair():
    C3 = FiniteGroup.cyclic(3)
    C2 = FiniteGroup.cyclic(2)
    try:
        hom_build(C3, C2, lambda x: C2.element(x.payload % 2))
    except NotAHomomorphismError as e:
        assert e.pair is not None
    else:
        raise AssertionError("C3 -> C2 reducing indices is not a homomorphism")


def test_conjugation_and_identity_homs():
    S3 = FiniteGroup.symmetric(3)
    a = S3.parse("(1 2)")
    c = conjugation_hom(S3, a)
    r = S3.parse("(1 2 3)")
    assert c(r) == S3.multiply(S3.multiply(a.inverse(), r), a)
    assert not c.is_identity()
    assert conjugation_hom(S3, S3.identity()) == identity_hom(S3)
    assert c.compose(c).is_identity()
    assert trivial_hom(S3, AbelianGroup.cyclic(2))(r).is_identity()


TESTS = [
    test_cyclic_group_arithmetic,
    test_symmetric_and_dihedral_orders,
    test_permutation_labels_parse_in_any_spelling,
    test_bad_table_rejected,
    test_abelian_elements_reduce_modulo_torsion,
    test_group_json_roundtrip_keys,
    test_subgroup_index_and_structure,
    test_finite_subgroup_members,
    test_homomorphism_by_generator_images,
    test_non_homomorphism_names_a_pair,
    test_conjugation_and_identity_homs,
]


def main():
    """Run all tests."""
    print("=" * 60)
    print("GROUP TESTS")
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
