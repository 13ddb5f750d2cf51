"""
Random instances, brute-force oracles, property runs and check suites.
"""
from .instances import (
    GROUPS,
    SHAPES,
    Instance,
    group_algebra,
    group_names,
    mutate_composite,
    nonzero_composites,
    quiver,
    random_category,
    random_family,
    random_instance,
    random_quiver_grading,
)
from .oracles import (
    ComponentCheck,
    WalkOracle,
    associativity_holds,
    component_isomorphism,
    exhaustive_morphisms,
    walk_degrees,
)
from .properties import PROPERTIES, Failure, Property, PropertyRun, run_property
from .suite import CheckOutcome, SuiteResult, load_checks, run_suite, subset_match

__all__ = [
    'GROUPS',
    'SHAPES',
    'Instance',
    'group_algebra',
    'group_names',
    'mutate_composite',
    'nonzero_composites',
    'quiver',
    'random_category',
    'random_family',
    'random_instance',
    'random_quiver_grading',
    'ComponentCheck',
    'WalkOracle',
    'associativity_holds',
    'component_isomorphism',
    'exhaustive_morphisms',
    'walk_degrees',
    'PROPERTIES',
    'Failure',
    'Property',
    'PropertyRun',
    'run_property',
    'CheckOutcome',
    'SuiteResult',
    'load_checks',
    'run_suite',
    'subset_match',
]
