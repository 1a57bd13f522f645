"""Numeric gauge components, curvature residual, and monodromy diagnostics.

Everything here is float/complex; exact data comes in through a ``LaxFrame``
built from the algebra module.  Fields are given in orthonormal root-space
coordinates, so ``a_t`` and ``a_x`` follow the two-dimensional gauge-field
construction: Cartan piece proportional to the field derivatives, step
operators weighted by ``lam`` and ``1/lam`` with node masses and exponentials
of ``alpha_i . phi / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
from scipy.linalg import expm

from ..algebra.reps import MatrixRep, defining_rep
from ..algebra.roots import RootSystem, _vneg, mass_coefficients
from ..errors import ValidationError


@dataclass(frozen=True, eq=False)
class LaxFrame:
    """Float-valued representation data for one root system."""

    rs: RootSystem
    n: int
    masses: np.ndarray
    alpha_rootspace: np.ndarray  # (nodes, rank)
    e_plus: np.ndarray  # (nodes, n, n)
    e_minus: np.ndarray
    h_dirs: np.ndarray  # (rank, n, n): Cartan matrices of the orthobasis rows


def lax_frame(rs: RootSystem, rep: MatrixRep | None = None) -> LaxFrame:
    rep = rep if rep is not None else defining_rep(rs)
    nodes = range(rs.rank + 1)
    e_plus = np.array(
        [[[float(x) for x in row] for row in rep.step(rs.affine_vector(i))] for i in nodes]
    ).astype(complex)
    e_minus = np.array(
        [
            [[float(x) for x in row] for row in rep.step(_vneg(rs.affine_vector(i)))]
            for i in nodes
        ]
    ).astype(complex)
    h_dirs = np.array(
        [
            [[float(x) for x in row] for row in rep.cartan_element(list(map(float, basis_row)))]
            for basis_row in [tuple(r) for r in rs.orthobasis]
        ]
    ).astype(complex)
    alpha_rootspace = np.array(
        [rs.to_rootspace(rs.affine_vector(i)) for i in nodes], dtype=float
    )
    return LaxFrame(
        rs=rs,
        n=rep.n,
        masses=np.asarray(mass_coefficients(rs)),
        alpha_rootspace=alpha_rootspace,
        e_plus=e_plus,
        e_minus=e_minus,
        h_dirs=h_dirs,
    )


@dataclass(frozen=True)
class GaugeComponents:
    a_t: np.ndarray
    a_x: np.ndarray


def lax_components(
    frame: LaxFrame,
    phi: np.ndarray,
    dt_phi: np.ndarray,
    dx_phi: np.ndarray,
    lam: complex,
    m: float = 1.0,
    beta: float = 1.0,
) -> GaugeComponents:
    """Gauge pair at field values ``phi`` (shape (..., rank)).

    ``m = beta = 1`` reproduces the normalized display; general (m, beta)
    rescale the step-operator weights and exponents so that zero curvature is
    equivalent to the (m, beta) field equations.
    """
    lam = complex(lam)
    if lam == 0:
        raise ValidationError("spectral parameter must be nonzero (1/lambda pole)")
    phi = np.asarray(phi, dtype=float)
    dt_phi = np.asarray(dt_phi, dtype=float)
    dx_phi = np.asarray(dx_phi, dtype=float)
    r = frame.rs.rank
    if phi.shape[-1] != r:
        raise ValidationError(f"phi must have {r} components, got {phi.shape[-1]}")

    expf = np.exp(beta * (phi @ frame.alpha_rootspace.T) / 2.0)  # (..., nodes)
    weights = m * frame.masses * expf  # (..., nodes)
    plus = np.einsum("...i,ijk->...jk", weights, frame.e_plus) * lam
    minus = np.einsum("...i,ijk->...jk", weights, frame.e_minus) / lam
    h_t = np.einsum("...a,ajk->...jk", dt_phi, frame.h_dirs) * (beta / 2.0)
    h_x = np.einsum("...a,ajk->...jk", dx_phi, frame.h_dirs) * (beta / 2.0)
    return GaugeComponents(a_t=h_x + plus - minus, a_x=h_t + plus + minus)


def toda_frame_for(model) -> tuple[LaxFrame, float, float]:
    """(frame, m_toda, beta_toda) for a simulate-module model.

    The hyperbolic scalar model maps onto the rank-one system with
    ``m -> m/2`` and ``beta -> beta/sqrt(2)``; multi-component models pass
    through unchanged.  Models with trigonometric potential are rejected: the
    gauge construction used here assumes a real coupling.
    """
    from ..simulate import models as sim_models  # deferred: avoid import cycle
    from ..algebra.roots import build_root_system

    if isinstance(model, sim_models.SinhGordon):
        frame = lax_frame(build_root_system("A", 1))
        return frame, model.m / 2.0, model.beta / np.sqrt(2.0)
    if isinstance(model, sim_models.AffineToda):
        return lax_frame(model.rs), model.m, model.beta
    raise ValidationError(
        f"no real Lax frame for model {type(model).__name__}; "
        "use SinhGordon or AffineToda"
    )


def curvature_residual(history, frame: LaxFrame, lam: complex, m: float = 1.0, beta: float = 1.0) -> float:
    """RMS Frobenius norm of F_tx = dt a_x - dx a_t + [a_t, a_x] on a history.

    Centered differences in both directions; on a solution of the field
    equations the result decays at second order in the grid spacings.
    """
    times = np.asarray(history.times, dtype=float)
    x = np.asarray(history.x, dtype=float)
    phi = np.asarray(history.phi, dtype=float)  # (nt, ncomp, nx)
    pi = np.asarray(history.pi, dtype=float)
    if len(times) < 3 or len(x) < 3:
        raise ValidationError("need at least a 3x3 space-time grid for stencils")
    dts = np.diff(times)
    if not np.allclose(dts, dts[0], rtol=1e-8):
        raise ValidationError("history must be sampled at uniform time intervals")
    dt = float(dts[0])
    h = float(x[1] - x[0])

    # (nt, nx, ncomp) field arrays
    phi_t = np.moveaxis(phi, 1, -1)
    pi_t = np.moveaxis(pi, 1, -1)
    dx_phi = np.gradient(phi_t, h, axis=1, edge_order=2)

    comps = lax_components(frame, phi_t, pi_t, dx_phi, lam, m=m, beta=beta)
    a_t, a_x = comps.a_t, comps.a_x
    dt_ax = (a_x[2:] - a_x[:-2]) / (2.0 * dt)
    dx_at = (a_t[:, 2:] - a_t[:, :-2]) / (2.0 * h)
    bracket = a_t @ a_x - a_x @ a_t
    f = dt_ax[:, 1:-1] - dx_at[1:-1] + bracket[1:-1, 1:-1]
    return float(np.sqrt(np.mean(np.abs(f) ** 2)))


def _transport_factors(a_x_nodes: np.ndarray, h: float, periodic: bool) -> np.ndarray:
    """Midpoint cell transports exp(h (A_j + A_{j+1})/2), batched."""
    if periodic:
        mids = 0.5 * (a_x_nodes + np.roll(a_x_nodes, -1, axis=0))
    else:
        mids = 0.5 * (a_x_nodes[:-1] + a_x_nodes[1:])
    return expm(mids * h)


def _ordered_product(factors: np.ndarray, reverse: bool = False) -> np.ndarray:
    seq = factors[::-1] if reverse else factors
    out = np.eye(factors.shape[-1], dtype=complex)
    for f in seq:
        out = out @ f
    return out


def monodromy_charge(
    x: np.ndarray,
    phi: np.ndarray,
    pi: np.ndarray,
    frame: LaxFrame,
    lam: complex,
    m: float = 1.0,
    beta: float = 1.0,
    geometry: str = "periodic",
    kmat: np.ndarray | None = None,
) -> complex:
    """Trace of the path-ordered transport of a_x across the snapshot.

    ``geometry='periodic'`` / ``'line'``: Q = tr V with V the left-to-right
    ordered product of cell transports.  ``'halfline'`` (boundary at the right
    end): Q = tr(V K V_rev), with V_rev the same factors composed in reverse
    order, which is the transport of the reflected-field connection; K is
    required and mediates the gauge matching at the boundary.
    """
    x = np.asarray(x, dtype=float)
    phi = np.asarray(phi, dtype=float)
    pi = np.asarray(pi, dtype=float)
    if phi.ndim == 1:
        phi = phi[None, :]
        pi = pi[None, :]
    h = float(x[1] - x[0])
    phi_nodes = np.moveaxis(phi, 0, -1)  # (nx, ncomp)
    pi_nodes = np.moveaxis(pi, 0, -1)
    comps = lax_components(
        frame, phi_nodes, pi_nodes, np.zeros_like(phi_nodes), lam, m=m, beta=beta
    )
    if geometry in ("periodic", "line"):
        factors = _transport_factors(comps.a_x, h, periodic=(geometry == "periodic"))
        return complex(np.trace(_ordered_product(factors)))
    if geometry == "halfline":
        if kmat is None:
            raise ValidationError("half-line monodromy requires the boundary K matrix")
        factors = _transport_factors(comps.a_x, h, periodic=False)
        v = _ordered_product(factors)
        v_rev = _ordered_product(factors, reverse=True)
        return complex(np.trace(v @ np.asarray(kmat, dtype=complex) @ v_rev))
    raise ValidationError(f"unknown monodromy geometry {geometry!r}")
