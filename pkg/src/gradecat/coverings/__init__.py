"""Smash-product coverings, covering morphisms and relative fundamental groups."""
from .morphisms import (
    IDENTITY_J,
    BaseAutomorphism,
    CoveringMorphism,
    MorphismOrbit,
    MorphismReport,
    Obstruction,
    ObstructionKind,
    SearchResult,
    canonical_mu,
    conjugation_covering_morphism,
    enumerate_identityJ_morphisms,
    find_identityJ_morphism,
    from_object_maps,
    lambda_of,
    left_translate,
    normalize,
    transport_grading,
    verify_morphism,
)
from .pi1 import (
    RELATIVE_WARNING,
    ChoiceReport,
    CompatibleFamily,
    DiagramEdge,
    DiagramNode,
    FamilyCheck,
    GradingDiagram,
    KappaMatch,
    KappaReport,
    LimitGroup,
    LimitKind,
    MatchTier,
    build_diagram,
    check_compatible_family,
    family_from,
    kappa_map,
    kappa_relative,
    relative_pi1,
    verify_choice_independence,
)
from .smash import (
    SMASH_SEPARATOR,
    CoveringReport,
    DeckReport,
    GaloisReport,
    SmashCovering,
    StarFailure,
    connected_component,
    deck_action,
    smash_hom,
    smash_product,
    verify_covering,
    verify_deck_action,
    verify_galois,
)

__all__ = [
    'IDENTITY_J',
    'BaseAutomorphism',
    'CoveringMorphism',
    'MorphismOrbit',
    'MorphismReport',
    'Obstruction',
    'ObstructionKind',
    'SearchResult',
    'canonical_mu',
    'conjugation_covering_morphism',
    'enumerate_identityJ_morphisms',
    'find_identityJ_morphism',
    'from_object_maps',
    'lambda_of',
    'left_translate',
    'normalize',
    'transport_grading',
    'verify_morphism',
    'RELATIVE_WARNING',
    'ChoiceReport',
    'CompatibleFamily',
    'DiagramEdge',
    'DiagramNode',
    'FamilyCheck',
    'GradingDiagram',
    'KappaMatch',
    'KappaReport',
    'LimitGroup',
    'LimitKind',
    'MatchTier',
    'build_diagram',
    'check_compatible_family',
    'family_from',
    'kappa_map',
    'kappa_relative',
    'relative_pi1',
    'verify_choice_independence',
    'SMASH_SEPARATOR',
    'CoveringReport',
    'DeckReport',
    'GaloisReport',
    'SmashCovering',
    'StarFailure',
    'connected_component',
    'deck_action',
    'smash_hom',
    'smash_product',
    'verify_covering',
    'verify_deck_action',
    'verify_galois',
]
