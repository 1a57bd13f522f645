"""Finite-difference evolution of the classical field equations on a line,
half-line, interval, or line with a defect, with conservation diagnostics."""

from .boundaries import BoundarySpec, Neumann, Robin, TodaBoundary
from .defects import DefectSpec, FreeDefect, SineGordonBacklund, constraint_residuals
from .diagnostics import (
    Diagnostics,
    diagnostics,
    fourier_amplitude,
    measure_frequency,
    measure_reflection_phase,
)
from .grid import Grid1D
from .initial import (
    init_boundary_mode,
    init_cosine,
    init_gaussian,
    init_noise,
    init_soliton,
    init_wavepacket,
)
from .models import AffineToda, KleinGordon, Model, SineGordon, SinhGordon, make_model
from .state import (
    DefectState,
    FieldHistory,
    FieldState,
    Geometry,
    half_line,
    interval,
    line,
    periodic_line,
    vacuum_state,
    with_defect,
)
from .stepper import evolve, step

__all__ = [
    "AffineToda",
    "BoundarySpec",
    "DefectSpec",
    "DefectState",
    "Diagnostics",
    "FieldHistory",
    "FieldState",
    "FreeDefect",
    "Geometry",
    "Grid1D",
    "KleinGordon",
    "Model",
    "Neumann",
    "Robin",
    "SineGordon",
    "SineGordonBacklund",
    "SinhGordon",
    "TodaBoundary",
    "constraint_residuals",
    "diagnostics",
    "evolve",
    "fourier_amplitude",
    "half_line",
    "init_boundary_mode",
    "init_cosine",
    "init_gaussian",
    "init_noise",
    "init_soliton",
    "init_wavepacket",
    "interval",
    "line",
    "make_model",
    "measure_frequency",
    "measure_reflection_phase",
    "periodic_line",
    "step",
    "vacuum_state",
    "with_defect",
]
