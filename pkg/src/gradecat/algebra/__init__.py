"""Exact fields, integer lattices and groups."""
from .fields import FieldConfig
from .groups import (
    AbelianGroup,
    AbelianPresentation,
    EmbeddedGroup,
    FiniteGroup,
    Group,
    GroupElement,
    GroupHom,
    GroupKind,
    Subgroup,
    as_group,
    conjugation_hom,
    group_from_json,
    hom_build,
    hom_from_family,
    identity_hom,
    in_group,
    is_surjective,
    subgroup_generated,
    trivial_group,
    trivial_hom,
)

__all__ = [
    'FieldConfig',
    'AbelianGroup',
    'AbelianPresentation',
    'EmbeddedGroup',
    'FiniteGroup',
    'Group',
    'GroupElement',
    'GroupHom',
    'GroupKind',
    'Subgroup',
    'as_group',
    'conjugation_hom',
    'group_from_json',
    'hom_build',
    'hom_from_family',
    'identity_hom',
    'in_group',
    'is_surjective',
    'subgroup_generated',
    'trivial_group',
    'trivial_hom',
]
