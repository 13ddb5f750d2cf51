"""
Named randomized property runs.

Each property checks one instance at a time and returns None on success or a
message describing the failure. Runs are reproducible from (name, seed, count).
"""
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from ..algebra.groups import conjugation_hom, identity_hom
from ..categories.fincat import validate_category
from ..categories.grading import (
    base_component_grading,
    conjugate_grading,
    is_connected_grading,
    walk_degree_coset,
)
from ..coverings.morphisms import (
    canonical_mu,
    conjugation_covering_morphism,
    enumerate_identityJ_morphisms,
)
from ..coverings.pi1 import verify_choice_independence
from ..coverings.smash import smash_product, verify_covering, verify_galois
from . import oracles
from .instances import (
    Instance,
    group_names,
    instance_rng,
    mutate_composite,
    random_category,
    random_family,
    random_instance,
)

Check = Callable[[Instance, random.Random, int], Optional[str]]


@dataclass
class Failure:
    index: int
    instance: str
    detail: str

    def to_json(self) -> dict:
        return {"index": self.index, "instance": self.instance, "detail": self.detail}


@dataclass
class PropertyRun:
    """Outcome of run_property."""
    name: str
    seed: int
    instances: int
    failures: List[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "property": self.name,
            "seed": self.seed,
            "instances": self.instances,
            "passed": self.passed,
            "failures": [f.to_json() for f in self.failures],
        }


def check_coset_law(inst: Instance, rng: random.Random, max_enum: int) -> Optional[str]:
    g = inst.grading
    b1, b2 = rng.choice(g.category.objects), rng.choice(g.category.objects)
    coset = walk_degree_coset(g, b1, b2)
    found = oracles.walk_degrees(g, b1, b2, max_enum=max_enum)
    if not found.stabilized:
        return f"walk search from {b1} did not stabilize"
    if set(coset.elements()) != found.degrees:
        return f"coset {b1}->{b2} has {len(coset.elements())} elements, walks reach {len(found.degrees)}"
    return None


def check_component(inst: Instance, rng: random.Random, max_enum: int) -> Optional[str]:
    result = oracles.component_isomorphism(inst.grading, inst.base, max_enum)
    return None if result.ok else "; ".join(result.failures)


def check_conjugation_lemma(inst: Instance, rng: random.Random, max_enum: int) -> Optional[str]:
    g = inst.grading
    G = g.group
    a = random_family(rng, g.category, G, base_identity=rng.random() < 0.5)
    m = conjugation_covering_morphism(g, a, inst.base)
    mu = canonical_mu(m)
    expected = conjugation_hom(G, a[inst.base])
    if mu != expected:
        return f"μ differs from conjugation by {a[inst.base].label}"
    if a[inst.base].is_identity() and mu != identity_hom(G):
        return "μ is not the identity for a family trivial at the base"
    return None


def check_galois(inst: Instance, rng: random.Random, max_enum: int) -> Optional[str]:
    g = inst.grading
    cov = smash_product(g, max_enum)
    if not verify_covering(cov).valid:
        return "smash product fails the star check"
    galois = verify_galois(cov, inst.base).galois
    connected = is_connected_grading(g, inst.base)
    if galois != connected:
        return f"Galois={galois} but connected={connected}"
    return None


def check_morphism_orbit(inst: Instance, rng: random.Random, max_enum: int) -> Optional[str]:
    """Connected source: the base component; target: a random conjugate of it or itself."""
    X = base_component_grading(inst.grading, inst.base).grading
    Xp = conjugate_grading(X, random_family(rng, X.category, X.group)) if rng.random() < 0.7 else X
    orbit = enumerate_identityJ_morphisms(X, Xp, inst.base)
    brute = oracles.exhaustive_morphisms(X, Xp, inst.base, max_enum=max_enum)
    tables = [{b: m.object_table(b) for b in X.category.objects} for m in orbit.members()]
    if sorted(map(repr, tables)) != sorted(map(repr, brute)):
        return f"orbit has {len(tables)} members, exhaustive search found {len(brute)}"
    return None


def check_choice_independence(inst: Instance, rng: random.Random, max_enum: int) -> Optional[str]:
    report = verify_choice_independence(inst.grading, b0=inst.base, alt_tree_seed=rng.randrange(10 ** 6))
    return None if report.independent else report.detail


def check_associativity(inst: Instance, rng: random.Random, max_enum: int) -> Optional[str]:
    cat, changed = mutate_composite(rng, random_category(rng, inst.category.field, max_length=rng.randint(1, 3)))
    verdict = validate_category(cat).valid
    if verdict != oracles.associativity_holds(cat):
        return f"validate_category says {verdict} after changing {changed}"
    return None


@dataclass(frozen=True)
class Property:
    name: str
    description: str
    check: Check
    max_order: Optional[int] = None


PROPERTIES: Dict[str, Property] = {p.name: p for p in (
    Property("coset-law", "walk_degree_coset equals brute-force walk enumeration", check_coset_law),
    Property("component", "component of (b0, 1) is the smash of the base component grading", check_component),
    Property("conjugation-lemma", "canonical μ of a conjugation morphism is conjugation by a_b0",
             check_conjugation_lemma),
    Property("galois", "smash is Galois exactly when the grading is connected", check_galois),
    Property("morphism-orbit", "exhaustive morphism search equals the deck orbit", check_morphism_orbit, 6),
    Property("choice-independence", "base components from two spanning trees agree up to μ = identity",
             check_choice_independence),
    Property("associativity", "validate_category agrees with a direct associativity check", check_associativity),
)}


def run_property(name: str, instances: int, seed: int = 0, max_enum: int = 10 ** 6) -> PropertyRun:
    """
    Check a named property on instances 0..instances-1 of the seeded stream.

    Raises:
        KeyError: for unknown property names
    """
    prop = PROPERTIES[name]
    run = PropertyRun(name, seed, instances)
    start = time.perf_counter()
    groups = group_names(prop.max_order)
    for index in range(instances):
        inst = random_instance(seed, index, groups)
        rng = instance_rng(seed + 1, index)
        detail = prop.check(inst, rng, max_enum)
        if detail is not None:
            run.failures.append(Failure(index, inst.describe(), detail))
    run.elapsed = time.perf_counter() - start
    return run
