"""Counting and enumeration of plane weighted trees (w-trees) of a given type."""

from .antivandermonde import AVSystem, SolverConfig, build_system, newton_q, solve_multistart
from .core import LabeledType, PlaneTree, WeightedType, canonical_code, parse_type_literal, validate_type
from .enumerator import enumerate_types, enumerate_wtrees, symmetric_census
from .partitions import cardinality, cardinality_simple, classify, derivative_type, enumerate_partitions

__all__ = [
    "AVSystem",
    "LabeledType",
    "PlaneTree",
    "SolverConfig",
    "WeightedType",
    "build_system",
    "canonical_code",
    "cardinality",
    "cardinality_simple",
    "classify",
    "derivative_type",
    "enumerate_partitions",
    "enumerate_types",
    "enumerate_wtrees",
    "newton_q",
    "parse_type_literal",
    "solve_multistart",
    "symmetric_census",
    "validate_type",
]
