"""Exact Lie-algebraic data: root systems, sign cocycles, matrix representations."""

from .cocycle import Cocycle, build_cocycle, epsilon
from .reps import MatrixRep, defining_rep
from .roots import (
    Root,
    RootSystem,
    SUPPORTED_SYSTEMS,
    affine_adjacency,
    build_root_system,
    dot,
    mass_coefficients,
    to_json_dict,
)

__all__ = [
    "Cocycle",
    "MatrixRep",
    "Root",
    "RootSystem",
    "SUPPORTED_SYSTEMS",
    "affine_adjacency",
    "build_cocycle",
    "build_root_system",
    "defining_rep",
    "dot",
    "epsilon",
    "mass_coefficients",
    "to_json_dict",
]
