"""Boundary conditions for half-line and interval geometries.

Each spec provides the normal-derivative function dB(phi): the condition is
``d_x phi = -dB`` at a right endpoint and ``d_x phi = +dB`` at a left one,
imposed through second-order ghost cells.  Robin with ``lam = 0`` is Neumann;
an optional constant offset gives the inhomogeneous Robin variant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from .models import AffineToda, SinhGordon


@dataclass(frozen=True)
class Neumann:
    def db(self, model, phi_b: np.ndarray) -> np.ndarray:
        return np.zeros_like(phi_b)

    def value(self, model, phi_b: np.ndarray) -> float:
        return 0.0


@dataclass(frozen=True)
class Robin:
    lam: float
    offset: float = 0.0

    def db(self, model, phi_b: np.ndarray) -> np.ndarray:
        return self.lam * phi_b - self.offset

    def value(self, model, phi_b: np.ndarray) -> float:
        return float(np.sum(0.5 * self.lam * phi_b**2 - self.offset * phi_b))


@dataclass(frozen=True)
class TodaBoundary:
    """B(phi) = (m / beta^2) sum_i b_i exp(beta alpha_i . phi / 2).

    With this scale the coefficients b_i are exactly the normalized-unit
    constants of the K-matrix analysis (see CONVENTIONS.md); for the
    hyperbolic scalar model the exponents reduce to +-beta phi / 2 with
    b = (b_0, b_1).
    """

    b: tuple[float, ...]

    def _data(self, model):
        if isinstance(model, SinhGordon):
            alpha = np.array([[-np.sqrt(2.0)], [np.sqrt(2.0)]])
            beta_t = model.beta / np.sqrt(2.0)
            m_t = model.m / 2.0
        elif isinstance(model, AffineToda):
            alpha = model._alpha
            beta_t, m_t = model.beta, model.m
        else:
            raise ValidationError(
                f"Toda boundary needs a SinhGordon or AffineToda bulk, got {type(model).__name__}"
            )
        if len(self.b) != len(alpha):
            raise ValidationError(
                f"Toda boundary needs {len(alpha)} coefficients, got {len(self.b)}"
            )
        return np.asarray(self.b, dtype=float), alpha, m_t, beta_t

    def db(self, model, phi_b: np.ndarray) -> np.ndarray:
        b, alpha, m_t, beta_t = self._data(model)
        exps = np.exp(beta_t * (alpha @ phi_b) / 2.0)
        return (m_t / (2.0 * beta_t)) * (alpha.T @ (b * exps))

    def value(self, model, phi_b: np.ndarray) -> float:
        b, alpha, m_t, beta_t = self._data(model)
        exps = np.exp(beta_t * (alpha @ phi_b) / 2.0)
        return float((m_t / beta_t**2) * np.dot(b, exps))


BoundarySpec = Neumann | Robin | TodaBoundary
