"""Finite linear categories and their group gradings."""
from .fincat import (
    AxiomViolation,
    BasisRef,
    CategoryReport,
    ConvexityResult,
    FinCategory,
    ObjectSubset,
    Star,
    ViolationKind,
    connected_components,
    full_subcategory,
    hom_key,
    is_connected_category,
    is_convex,
    object_subset,
    star,
    validate_category,
)
from .grading import (
    BaseComponent,
    ConjugationFamily,
    ExtensionResult,
    Grading,
    GradingReport,
    GradingViolation,
    GradingViolationKind,
    WalkCoset,
    WalkEdge,
    WalkGroup,
    base_component_grading,
    conjugate_grading,
    extend_trivial,
    grading_equal,
    is_connected_grading,
    restrict_grading,
    trivial_grading,
    validate_grading,
    walk_degree_coset,
    walk_graph,
    walk_group,
)

__all__ = [
    'AxiomViolation',
    'BasisRef',
    'CategoryReport',
    'ConvexityResult',
    'FinCategory',
    'ObjectSubset',
    'Star',
    'ViolationKind',
    'connected_components',
    'full_subcategory',
    'hom_key',
    'is_connected_category',
    'is_convex',
    'object_subset',
    'star',
    'validate_category',
    'BaseComponent',
    'ConjugationFamily',
    'ExtensionResult',
    'Grading',
    'GradingReport',
    'GradingViolation',
    'GradingViolationKind',
    'WalkCoset',
    'WalkEdge',
    'WalkGroup',
    'base_component_grading',
    'conjugate_grading',
    'extend_trivial',
    'grading_equal',
    'is_connected_grading',
    'restrict_grading',
    'trivial_grading',
    'validate_grading',
    'walk_degree_coset',
    'walk_graph',
    'walk_group',
]
