#!/usr/bin/env python3
"""
Tests for grading diagrams, compatible families and relative fundamental groups.
"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from gradecat.algebra.fields import FieldConfig
from gradecat.algebra.groups import AbelianGroup, FiniteGroup
from gradecat.categories.fincat import full_subcategory
from gradecat.categories.grading import Grading, trivial_grading
from gradecat.coverings.pi1 import (
    LimitKind,
    build_diagram,
    check_compatible_family,
    kappa_relative,
    relative_pi1,
    verify_choice_independence,
)
from gradecat.errors import PreconditionError
from gradecat.evaluation.instances import quiver
from gradecat.tools import fixtures, schema


def _kc2_diagram(workers: int = 1):
    loaded = fixtures.load_diagram("kc2")
    return build_diagram(loaded.category, loaded.base_object, loaded.gradings, loaded.declared_J, workers)


def _family(d, values):
    return {name: d.grading(name).group.parse(v) for name, v in values.items()}


def test_kc2_diagram_edges():
    d = _kc2_diagram()
    assert d.names == ["kc2_trivial", "kc2_z", "kc2_z2", "kc2_c2"]
    assert d.edges_between("kc2_z", "kc2_z2")
    assert d.edges_between("kc2_z2", "kc2_trivial")
    assert not d.edges_between("kc2_z2", "kc2_c2")
    assert not d.edges_between("kc2_c2", "kc2_z2")
    assert not d.edges_between("kc2_trivial", "kc2_z")


def test_edge_order_does_not_depend_on_workers():
    assert _kc2_diagram(1).to_json() == _kc2_diagram(3).to_json()


def test_compatible_families():
    d = _kc2_diagram()
    trivial = d.grading("kc2_trivial").group.identity()
    good = _family(d, {"kc2_z": 3, "kc2_z2": 1, "kc2_c2": 1})
    good["kc2_trivial"] = trivial
    assert check_compatible_family(d, good)
    bad = dict(good, kc2_z2=d.grading("kc2_z2").group.parse(0))
    check = check_compatible_family(d, bad)
    assert not check
    assert check.violation["from"] == "kc2_z"
    assert check.violation["to"] == "kc2_z2"


def test_kc2_limit_is_z_times_z2():
    L = relative_pi1(_kc2_diagram())
    assert L.kind == LimitKind.FG_ABELIAN
    assert L.free_rank == 1
    assert list(L.torsion) == [2]
    assert L.order is None
    assert L.contains(L.identity())
    assert all(L.contains(g) for g in L.generators())
    data = L.to_json()
    assert data["kind"] == "fg-abelian"
    assert data["invariant_factors"] == [2]
    assert data["warnings"]


def test_finite_limit_is_enumerated():
    cat = fixtures.load_category("kronecker")
    C2 = FiniteGroup.cyclic(2)
    e, s = C2.parse("0"), C2.parse("1")
    X = Grading.build(cat, C2, {("a", "a"): [e], ("a", "b"): [e, s], ("b", "b"): [e]})
    d = build_diagram(cat, "a", {"X": X})
    L = relative_pi1(d)
    assert L.kind == LimitKind.FINITE
    assert L.order == 2
    assert len(L.elements()) == 2


def test_disconnected_grading_rejected():
    cat = fixtures.load_category("kronecker")
    g = fixtures.load_grading("kronecker_z02", "kronecker")
    try:
        build_diagram(cat, "a", {"z02": g})
    except PreconditionError as e:
        assert e.witness is not None
    else:
        raise AssertionError("a disconnected grading cannot be a diagram node")


def test_kappa_on_convex_subcategory():
    big = fixtures.load_diagram("e4_big")
    small = fixtures.load_diagram("e4_small")
    dB = build_diagram(big.category, big.base_object, big.gradings)
    dD = build_diagram(small.category, small.base_object, small.gradings)
    report = kappa_relative(dB, ["u"], dD)
    assert report.map_defined
    assert report.missing == []
    assert report.unrealized == []
    assert report.criterion_holds
    assert report.homomorphism is True
    assert report.injective is True
    assert {m.node: m.target for m in report.matches} == {"e4_z": "e4_u_z", "e4_trivial": "e4_u_trivial"}


def test_choice_of_spanning_tree_is_irrelevant():
    g = fixtures.load_grading("cycle3_z3", "cycle3")
    for seed in (0, 7, 11):
        report = verify_choice_independence(g, alt_tree_seed=seed)
        assert report.independent, report.detail
        assert report.mu.is_identity()


def test_isolated_nodes_give_direct_product():
    cat = quiver(["u"], [("u", "u"), ("u", "u")]).category(FieldConfig.rationals())
    C2, C3 = AbelianGroup(0, (2,)), AbelianGroup(0, (3,))
    d = build_diagram(cat, "u", {
        "c2": Grading.build(cat, C2, {("u", "u"): [0, 1, 0]}),
        "c3": Grading.build(cat, C3, {("u", "u"): [0, 0, 1]}),
    })
    assert not d.edges_between("c2", "c3")
    assert not d.edges_between("c3", "c2")
    L = relative_pi1(d)
    assert L.kind == LimitKind.FG_ABELIAN
    assert L.free_rank == 0
    assert list(L.torsion) == [6]
    assert L.order == 6


def test_edge_maps_compose():
    loaded = fixtures.load_diagram("kc2")
    cat = loaded.category
    z4 = Grading.build(cat, AbelianGroup(0, (4,)), {("u", "u"): [0, 1]})
    d = build_diagram(cat, "u", {"z": loaded.gradings["kc2_z"], "z4": z4,
                                 "z2": loaded.gradings["kc2_z2"], "trivial": loaded.gradings["kc2_trivial"]})
    assert d.edges_between("z", "z4") and d.edges_between("z4", "z2")
    checked = 0
    for first in d.edges:
        for second in d.edges:
            if first.target != second.source:
                continue
            direct = d.edges_between(first.source, second.target)
            assert direct, (first.source, second.target)
            assert second.mu.compose(first.mu) == direct[0].mu, (first.source, first.target, second.target)
            checked += 1
    assert checked >= 6


def test_kappa_reports_unrealized_node():
    e3 = fixtures.load_category("e3")
    sub = full_subcategory(e3, ["u"])
    gD = schema.load_grading(fixtures.fixture_path("gradings", "e3_u_c2"), sub)
    dB = build_diagram(e3, "u", {"e3_trivial": trivial_grading(e3)})
    dD = build_diagram(sub, "u", {"e3_u_trivial": trivial_grading(sub), "e3_u_c2": gD})
    report = kappa_relative(dB, ["u"], dD)
    assert report.map_defined
    assert [m.target for m in report.matches] == ["e3_u_trivial"]
    assert report.unrealized == ["e3_u_c2"]
    assert not report.criterion_holds
    diagnostic = report.diagnostics["e3_u_c2"]
    assert diagnostic["extends"] is False
    assert [v["composite"] for v in diagnostic["violations"]] == [["f", "t"]]
    assert any("injectivity criterion not established" in w for w in report.warnings)
    assert report.to_json()["criterion_holds"] is False


TESTS = [
    test_kc2_diagram_edges,
    test_edge_order_does_not_depend_on_workers,
    test_compatible_families,
    test_kc2_limit_is_z_times_z2,
    test_finite_limit_is_enumerated,
    test_disconnected_grading_rejected,
    test_kappa_on_convex_subcategory,
    test_choice_of_spanning_tree_is_irrelevant,
    test_isolated_nodes_give_direct_product,
    test_edge_maps_compose,
    test_kappa_reports_unrealized_node,
]


def main():
    """Run all tests."""
    print("=" * 60)
    print("FUNDAMENTAL GROUP TESTS")
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
