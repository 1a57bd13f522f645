"""Field states, geometries, and evolution histories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from .boundaries import BoundarySpec
from .defects import DefectSpec
from .grid import Grid1D

GEOMETRY_KINDS = ("periodic", "line", "halfline", "interval", "defect")


@dataclass(frozen=True, eq=False)
class Geometry:
    """Grid plus boundary/defect layout.

    ``halfline`` puts the physical boundary at the right endpoint (domain
    x < x_max, conventionally x_max = 0).  ``sponge_fraction`` > 0 switches on
    momentum damping over that fraction of the domain at each open end (both
    ends for ``line`` and ``defect``, the far end for ``halfline``).
    """

    kind: str
    grid: Grid1D
    left: BoundarySpec | None = None
    right: BoundarySpec | None = None
    defect: DefectSpec | None = None
    sponge_fraction: float = 0.0
    sponge_strength: float = 2.0

    def __post_init__(self):
        if self.kind not in GEOMETRY_KINDS:
            raise ValidationError(f"unknown geometry kind {self.kind!r}")
        if self.kind == "interval" and (self.left is None or self.right is None):
            raise ValidationError("interval geometry needs both boundary specs")
        if self.kind == "halfline" and self.right is None:
            raise ValidationError("half-line geometry needs the right boundary spec")
        if self.kind == "defect":
            if self.defect is None:
                raise ValidationError("defect geometry needs a defect spec")
            g = self.grid
            if not g.x_min < 0.0 < g.x_max:
                raise ValidationError("defect geometry needs x_min < 0 < x_max")
            idx = (0.0 - g.x_min) / g.h
            if abs(idx - round(idx)) > 1e-9:
                raise ValidationError("defect interface x=0 must fall on a grid node")
        if not 0.0 <= self.sponge_fraction < 0.5:
            raise ValidationError("sponge fraction must lie in [0, 0.5)")

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes(periodic=self.kind == "periodic")

    @property
    def interface_index(self) -> int:
        if self.kind != "defect":
            raise ValidationError("interface index only defined for defect geometry")
        return round((0.0 - self.grid.x_min) / self.grid.h)


def periodic_line(grid: Grid1D) -> Geometry:
    return Geometry(kind="periodic", grid=grid)


def line(grid: Grid1D, sponge_fraction: float = 0.1) -> Geometry:
    return Geometry(kind="line", grid=grid, sponge_fraction=sponge_fraction)


def half_line(grid: Grid1D, right: BoundarySpec, sponge_fraction: float = 0.0) -> Geometry:
    return Geometry(kind="halfline", grid=grid, right=right, sponge_fraction=sponge_fraction)


def interval(grid: Grid1D, left: BoundarySpec, right: BoundarySpec) -> Geometry:
    return Geometry(kind="interval", grid=grid, left=left, right=right)


def with_defect(grid: Grid1D, defect: DefectSpec, sponge_fraction: float = 0.1) -> Geometry:
    return Geometry(kind="defect", grid=grid, defect=defect, sponge_fraction=sponge_fraction)


@dataclass(frozen=True, eq=False)
class FieldState:
    """Single-domain state: phi and pi = d_t phi, shape (n_components, n_nodes)."""

    t: float
    phi: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        if self.phi.shape != self.pi.shape:
            raise ValidationError("phi and pi must have matching shapes")

    def check_finite(self) -> None:
        if not (np.all(np.isfinite(self.phi)) and np.all(np.isfinite(self.pi))):
            raise ValidationError(f"non-finite field values at t={self.t}")


@dataclass(frozen=True, eq=False)
class DefectState:
    """Two scalar fields joined at x = 0: phi on the left grid (interface is
    its last node), psi on the right grid (interface is its first node)."""

    t: float
    phi: np.ndarray
    pi_phi: np.ndarray
    psi: np.ndarray
    pi_psi: np.ndarray

    def check_finite(self) -> None:
        for arr in (self.phi, self.pi_phi, self.psi, self.pi_psi):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"non-finite field values at t={self.t}")


@dataclass(frozen=True, eq=False)
class FieldHistory:
    """Uniformly sampled evolution record used by the Lax diagnostics."""

    times: np.ndarray  # (nt,)
    x: np.ndarray  # (nx,)
    phi: np.ndarray  # (nt, n_components, nx)
    pi: np.ndarray


def vacuum_state(geometry: Geometry, n_components: int = 1) -> FieldState | DefectState:
    nx = len(geometry.x)
    if geometry.kind == "defect":
        i0 = geometry.interface_index
        n_left, n_right = i0 + 1, nx - i0
        return DefectState(
            t=0.0,
            phi=np.zeros(n_left),
            pi_phi=np.zeros(n_left),
            psi=np.zeros(n_right),
            pi_psi=np.zeros(n_right),
        )
    return FieldState(t=0.0, phi=np.zeros((n_components, nx)), pi=np.zeros((n_components, nx)))
