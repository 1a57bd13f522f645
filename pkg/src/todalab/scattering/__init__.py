"""Closed-form scattering data: phase-factor blocks, S-matrix, reflection
factors, bulk-coupling map, and the two-boundary quantization condition."""

from .blocks import (
    ShGParams,
    a_from_b,
    block,
    bulk_coupling,
    cos_from_a,
    free_reflection,
    reflection_factor,
    s_matrix,
)
from .spectrum import SpectrumProblem, bound_state_frequency, interval_spectrum

__all__ = [
    "ShGParams",
    "SpectrumProblem",
    "a_from_b",
    "block",
    "bound_state_frequency",
    "bulk_coupling",
    "cos_from_a",
    "free_reflection",
    "interval_spectrum",
    "reflection_factor",
    "s_matrix",
]
