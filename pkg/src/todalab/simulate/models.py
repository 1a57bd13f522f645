"""Bulk field models: potential, gradient, and component count.

Fields are arrays of shape (n_components, n_nodes); scalar models use a
single component.  The multi-component exponential model reduces to the
hyperbolic scalar one at rank one: AffineToda(A1, m, b) evolves identically
to SinhGordon(2m, b*sqrt(2)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra.roots import RootSystem, build_root_system
from ..errors import ValidationError


@dataclass(frozen=True)
class KleinGordon:
    m: float = 1.0
    n_components = 1

    def potential(self, phi: np.ndarray) -> np.ndarray:
        return 0.5 * self.m**2 * np.sum(phi**2, axis=0)

    def gradient(self, phi: np.ndarray) -> np.ndarray:
        return self.m**2 * phi


@dataclass(frozen=True)
class SineGordon:
    m: float = 1.0
    beta: float = 1.0
    n_components = 1

    def potential(self, phi: np.ndarray) -> np.ndarray:
        return (self.m**2 / self.beta**2) * np.sum(1.0 - np.cos(self.beta * phi), axis=0)

    def gradient(self, phi: np.ndarray) -> np.ndarray:
        return (self.m**2 / self.beta) * np.sin(self.beta * phi)


@dataclass(frozen=True)
class SinhGordon:
    m: float = 1.0
    beta: float = 1.0
    n_components = 1

    def potential(self, phi: np.ndarray) -> np.ndarray:
        return (self.m**2 / self.beta**2) * np.sum(np.cosh(self.beta * phi) - 1.0, axis=0)

    def gradient(self, phi: np.ndarray) -> np.ndarray:
        return (self.m**2 / self.beta) * np.sinh(self.beta * phi)


@dataclass(frozen=True, eq=False)
class AffineToda:
    rs: RootSystem
    m: float = 1.0
    beta: float = 1.0
    _alpha: np.ndarray = field(init=False, repr=False)
    _marks: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        alpha = np.asarray(
            [self.rs.to_rootspace(self.rs.affine_vector(i)) for i in range(self.rs.rank + 1)]
        )
        object.__setattr__(self, "_alpha", alpha)
        object.__setattr__(self, "_marks", np.asarray(self.rs.marks, dtype=float))

    @property
    def n_components(self) -> int:
        return self.rs.rank

    def potential(self, phi: np.ndarray) -> np.ndarray:
        exps = np.exp(self.beta * np.einsum("ia,a...->i...", self._alpha, phi))
        return (self.m**2 / self.beta**2) * np.einsum("i,i...->...", self._marks, exps - 1.0)

    def gradient(self, phi: np.ndarray) -> np.ndarray:
        exps = np.exp(self.beta * np.einsum("ia,a...->i...", self._alpha, phi))
        return (self.m**2 / self.beta) * np.einsum("i,ia,i...->a...", self._marks, self._alpha, exps)


Model = KleinGordon | SineGordon | SinhGordon | AffineToda


def make_model(kind: str, m: float = 1.0, beta: float = 1.0, family: str = "A", rank: int = 1) -> Model:
    kind = kind.lower().replace("-", "_")
    if kind == "klein_gordon":
        return KleinGordon(m=m)
    if kind == "sine_gordon":
        return SineGordon(m=m, beta=beta)
    if kind == "sinh_gordon":
        return SinhGordon(m=m, beta=beta)
    if kind == "affine_toda":
        return AffineToda(rs=build_root_system(family, rank), m=m, beta=beta)
    raise ValidationError(f"unknown model kind {kind!r}")
