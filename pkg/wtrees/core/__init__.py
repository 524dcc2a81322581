"""Weights, types, plane weighted trees and their canonical codes."""

from .canonical import (
    CanonicalCode,
    RotationSystem,
    are_isotopic,
    automorphism_order,
    canonical_code,
    canonical_form,
    vertex_orbit_count,
)
from .tree import Edge, PlaneTree, Vertex, build_plane_tree, derive_edge_weights, peel_edge_weights
from .weights import (
    BLACK,
    COLORS,
    WHITE,
    Color,
    LabeledType,
    WeightedType,
    as_weight,
    format_weight,
    other_color,
    parse_type_literal,
    validate_type,
    weight_document,
)

__all__ = [
    "BLACK",
    "COLORS",
    "WHITE",
    "CanonicalCode",
    "Color",
    "Edge",
    "LabeledType",
    "PlaneTree",
    "RotationSystem",
    "Vertex",
    "WeightedType",
    "are_isotopic",
    "as_weight",
    "automorphism_order",
    "build_plane_tree",
    "canonical_code",
    "canonical_form",
    "derive_edge_weights",
    "format_weight",
    "other_color",
    "parse_type_literal",
    "peel_edge_weights",
    "validate_type",
    "vertex_orbit_count",
    "weight_document",
]
