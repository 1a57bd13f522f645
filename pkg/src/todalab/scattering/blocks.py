"""Closed-form phase factors: building block (x)_theta, S-matrix, reflection
factors, and the bulk coupling map."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import acos, cos, pi

from ..errors import PoleError, ValidationError

_POLE_RTOL = 1e-8


def block(x: float, theta: complex) -> complex:
    """(x)_theta = sinh(theta/2 + i pi x/4) / sinh(theta/2 - i pi x/4).

    Unimodular for real arguments; raises ``PoleError`` within 1e-8 (relative)
    of a zero denominator.
    """
    num = cmath.sinh(theta / 2.0 + 1j * pi * x / 4.0)
    den = cmath.sinh(theta / 2.0 - 1j * pi * x / 4.0)
    scale = max(1.0, abs(num))
    if abs(den) < _POLE_RTOL * scale:
        raise PoleError(
            f"block ({x})_theta has a pole at theta={theta}",
            where=f"({x})_theta",
        )
    return num / den


def bulk_coupling(beta: float) -> float:
    """B(beta) = 2 beta^2 / (8 pi + beta^2), in [0, 2) for real beta."""
    return 2.0 * beta**2 / (8.0 * pi + beta**2)


def s_matrix(theta: complex, beta: float) -> complex:
    """Two-particle scattering phase S = -1 / [(B)_theta (2-B)_theta]."""
    b = bulk_coupling(beta)
    denom = block(b, theta) * block(2.0 - b, theta)
    if abs(denom) < _POLE_RTOL:
        raise PoleError(f"S-matrix pole at theta={theta}", where="S")
    return -1.0 / denom


@dataclass(frozen=True)
class ShGParams:
    """Boundary-scattering parameter pack: coupling and boundary parameters.

    ``a0`` and ``a1`` are the primary inputs; ``from_b`` converts from
    b_j = cos(a_j pi) on the real branch only.
    """

    beta: float
    a0: float
    a1: float

    @property
    def bulk_b(self) -> float:
        return bulk_coupling(self.beta)

    @property
    def e_param(self) -> float:
        return (self.a0 + self.a1) * (1.0 - self.bulk_b / 2.0)

    @property
    def f_param(self) -> float:
        return (self.a0 - self.a1) * (1.0 - self.bulk_b / 2.0)

    @classmethod
    def from_b(cls, b0: float, b1: float, beta: float) -> "ShGParams":
        return cls(beta=beta, a0=a_from_b(b0), a1=a_from_b(b1))


def a_from_b(b_j: float) -> float:
    """Invert b_j = cos(a_j pi) on the real branch a_j in [0, 1]."""
    if abs(b_j) > 1.0:
        raise ValidationError(
            f"|b_j| = {abs(b_j)} > 1 has no real a_j; supply a_j directly "
            "(complex branch out of scope)"
        )
    return acos(b_j) / pi


def reflection_factor(theta: complex, a0: float, a1: float, beta: float) -> complex:
    """One-particle boundary reflection phase.

    R = (1)(1+B/2)(2-B/2) / [(1+E)(1-E)(1+F)(1-F)], all blocks at rapidity
    ``theta``; poles are reported with the offending block identified
    (candidate boundary bound states).
    """
    p = ShGParams(beta=beta, a0=a0, a1=a1)
    b = p.bulk_b
    num = 1.0 + 0.0j
    for x in (1.0, 1.0 + b / 2.0, 2.0 - b / 2.0):
        num *= block(x, theta)
    den = 1.0 + 0.0j
    for x in (1.0 + p.e_param, 1.0 - p.e_param, 1.0 + p.f_param, 1.0 - p.f_param):
        factor = block(x, theta)
        if abs(factor) < _POLE_RTOL:
            raise PoleError(
                f"reflection factor pole: block ({x})_theta vanishes at theta={theta}",
                where=f"({x})_theta",
            )
        den *= factor
    return num / den


def free_reflection(k: complex, lam_b: float) -> complex:
    """Linear-boundary reflection factor R = (ik + lam) / (ik - lam)."""
    if k == 0 and lam_b == 0:
        raise ValidationError("free reflection undefined at k = lam_b = 0")
    num = 1j * k + lam_b
    den = 1j * k - lam_b
    # a genuine (bound-state) pole needs a finite numerator over a vanishing
    # denominator; at lam_b = 0 both shrink together and R == 1 exactly
    if abs(den) < _POLE_RTOL * abs(num):
        raise PoleError(
            f"free reflection pole at ik = lam_b (k={k}, lam_b={lam_b}): "
            "bound-state pole, not a value",
            where="free_reflection",
        )
    return num / den


def cos_from_a(a_j: float) -> float:
    """Forward map b_j = cos(a_j pi) (convention-dependent, see docs)."""
    return cos(a_j * pi)
