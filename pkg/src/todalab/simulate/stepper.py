"""Explicit leapfrog (velocity-Verlet) evolution on all geometries.

Boundary conditions enter through second-order ghost cells.  The defect
interface values are not bulk nodes: the sewing conditions are rearranged
into ODEs for the two interface values,

    d_t phi0 = d_x psi - B_psi,        d_t psi0 = d_x phi + B_phi,

discretized with a trapezoidal average in time (the explicit version is
unstable) and one-sided second-order spatial derivatives; the resulting
2x2 nonlinear system is solved by damped Newton each step.
"""

from __future__ import annotations

import numpy as np

from ..errors import StepFailure
from .state import DefectState, FieldState, Geometry


def _sponge_profile(geometry: Geometry) -> np.ndarray | None:
    """exp(-sigma dt) damping factors for pi, or None when disabled."""
    frac = geometry.sponge_fraction
    if frac <= 0.0:
        return None
    x = geometry.x
    width = frac * (geometry.grid.x_max - geometry.grid.x_min)
    sigma = np.zeros_like(x)
    if geometry.kind in ("line", "defect"):
        ends = ("left", "right")
    elif geometry.kind == "halfline":
        ends = ("left",)
    else:
        return None
    if "left" in ends:
        d = (x - geometry.grid.x_min) / width
        sigma = np.where(d < 1.0, geometry.sponge_strength * (1.0 - d) ** 2, sigma)
    if "right" in ends:
        d = (geometry.grid.x_max - x) / width
        sigma = np.where(d < 1.0, geometry.sponge_strength * (1.0 - d) ** 2, sigma)
    return np.exp(-sigma * geometry.grid.dt)


def _laplacian(phi: np.ndarray, geometry: Geometry, model) -> np.ndarray:
    h = geometry.grid.h
    lap = np.empty_like(phi)
    if geometry.kind == "periodic":
        lap[:] = (np.roll(phi, -1, axis=-1) - 2.0 * phi + np.roll(phi, 1, axis=-1)) / h**2
        return lap
    lap[..., 1:-1] = (phi[..., 2:] - 2.0 * phi[..., 1:-1] + phi[..., :-2]) / h**2
    left = geometry.left if geometry.kind == "interval" else None
    right = geometry.right if geometry.kind in ("interval", "halfline") else None
    # open/far ends default to Neumann
    db_left = left.db(model, phi[..., 0]) if left is not None else 0.0
    db_right = right.db(model, phi[..., -1]) if right is not None else 0.0
    lap[..., 0] = (2.0 * phi[..., 1] - 2.0 * phi[..., 0] - 2.0 * h * db_left) / h**2
    lap[..., -1] = (2.0 * phi[..., -2] - 2.0 * phi[..., -1] - 2.0 * h * db_right) / h**2
    return lap


def _force(phi: np.ndarray, geometry: Geometry, model) -> np.ndarray:
    return _laplacian(phi, geometry, model) - model.gradient(phi)


def step(state, model, geometry: Geometry):
    """Advance one leapfrog step; returns a new state at t + dt."""
    if isinstance(state, DefectState):
        return _step_defect(state, model, geometry)
    return _step_bulk(state, model, geometry)


def _step_bulk(state: FieldState, model, geometry: Geometry) -> FieldState:
    dt = geometry.grid.dt
    phi, pi = state.phi, state.pi
    pi_half = pi + 0.5 * dt * _force(phi, geometry, model)
    phi_new = phi + dt * pi_half
    pi_new = pi_half + 0.5 * dt * _force(phi_new, geometry, model)
    damp = _sponge_profile(geometry)
    if damp is not None:
        pi_new = pi_new * damp
    return FieldState(t=state.t + dt, phi=phi_new, pi=pi_new)


def _one_sided_left(arr: np.ndarray, h: float) -> float:
    """d_x at the last node of a left-domain array (interface), second order."""
    return (3.0 * arr[-1] - 4.0 * arr[-2] + arr[-3]) / (2.0 * h)


def _one_sided_right(arr: np.ndarray, h: float) -> float:
    """d_x at the first node of a right-domain array (interface), second order."""
    return (-3.0 * arr[0] + 4.0 * arr[1] - arr[2]) / (2.0 * h)


def _interior_force(phi: np.ndarray, model, h: float, fixed_end: str) -> np.ndarray:
    """Force on a half-domain: ghost Neumann at the far end, interface value
    held as Dirichlet data (its own update comes from the sewing ODEs)."""
    lap = np.empty_like(phi)
    lap[1:-1] = (phi[2:] - 2.0 * phi[1:-1] + phi[:-2]) / h**2
    if fixed_end == "right":  # left domain: far end at index 0
        lap[0] = (2.0 * phi[1] - 2.0 * phi[0]) / h**2
        lap[-1] = 0.0
    else:  # right domain: far end at last index
        lap[-1] = (2.0 * phi[-2] - 2.0 * phi[-1]) / h**2
        lap[0] = 0.0
    return lap - model.gradient(phi[None, :])[0]


def _step_defect(state: DefectState, model, geometry: Geometry) -> DefectState:
    defect = geometry.defect
    defect.validate_model(model)
    dt = geometry.grid.dt
    h = geometry.grid.h
    phi, pi_phi = state.phi.copy(), state.pi_phi.copy()
    psi, pi_psi = state.psi.copy(), state.pi_psi.copy()

    phi0_old, psi0_old = phi[-1], psi[0]
    dphi_old = _one_sided_left(phi, h)
    dpsi_old = _one_sided_right(psi, h)

    # bulk half-kick + drift on interior nodes (interface enters their stencil
    # at the old time level)
    f_phi = _interior_force(phi, model, h, fixed_end="right")
    f_psi = _interior_force(psi, model, h, fixed_end="left")
    pi_phi[:-1] += 0.5 * dt * f_phi[:-1]
    pi_psi[1:] += 0.5 * dt * f_psi[1:]
    phi[:-1] += dt * pi_phi[:-1]
    psi[1:] += dt * pi_psi[1:]

    # trapezoidal update of the interface pair
    rhs_phi = phi0_old + 0.5 * dt * (dpsi_old - defect.b_psi(phi0_old, psi0_old))
    rhs_psi = psi0_old + 0.5 * dt * (dphi_old + defect.b_phi(phi0_old, psi0_old))
    # new-time one-sided derivatives split into known interior part + interface term
    dphi_known = (-4.0 * phi[-2] + phi[-3]) / (2.0 * h)
    dpsi_known = (4.0 * psi[1] - psi[2]) / (2.0 * h)
    cp, cm = 3.0 / (2.0 * h), -3.0 / (2.0 * h)

    u_phi, u_psi = phi0_old, psi0_old
    scale = max(1.0, abs(rhs_phi), abs(rhs_psi))
    converged = False
    for _ in range(25):
        g1 = u_phi - 0.5 * dt * ((dpsi_known + cm * u_psi) - defect.b_psi(u_phi, u_psi)) - rhs_phi
        g2 = u_psi - 0.5 * dt * ((dphi_known + cp * u_phi) + defect.b_phi(u_phi, u_psi)) - rhs_psi
        res = max(abs(g1), abs(g2))
        if res < 1e-12 * scale:
            converged = True
            break
        j11 = 1.0 + 0.5 * dt * defect.b_phipsi(u_phi, u_psi)  # dB_psi/dphi = B_phipsi
        j12 = -0.5 * dt * (cm - defect.b_psipsi(u_phi, u_psi))
        j21 = -0.5 * dt * (cp + defect.b_phiphi(u_phi, u_psi))
        j22 = 1.0 - 0.5 * dt * defect.b_phipsi(u_phi, u_psi)
        det = j11 * j22 - j12 * j21
        if det == 0.0 or not np.isfinite(det):
            break
        du_phi = -(j22 * g1 - j12 * g2) / det
        du_psi = -(-j21 * g1 + j11 * g2) / det
        lam = 1.0
        for _ in range(8):
            t_phi, t_psi = u_phi + lam * du_phi, u_psi + lam * du_psi
            n1 = t_phi - 0.5 * dt * ((dpsi_known + cm * t_psi) - defect.b_psi(t_phi, t_psi)) - rhs_phi
            n2 = t_psi - 0.5 * dt * ((dphi_known + cp * t_phi) + defect.b_phi(t_phi, t_psi)) - rhs_psi
            if max(abs(n1), abs(n2)) < res:
                break
            lam *= 0.5
        u_phi += lam * du_phi
        u_psi += lam * du_psi
    if not converged:
        raise StepFailure(
            f"defect interface Newton failed to converge at t={state.t}",
            state_dump={
                "t": state.t,
                "phi0": float(phi0_old),
                "psi0": float(psi0_old),
                "u_phi": float(u_phi),
                "u_psi": float(u_psi),
            },
        )
    phi[-1], psi[0] = u_phi, u_psi

    # second bulk half-kick with the completed new-time fields
    f_phi = _interior_force(phi, model, h, fixed_end="right")
    f_psi = _interior_force(psi, model, h, fixed_end="left")
    pi_phi[:-1] += 0.5 * dt * f_phi[:-1]
    pi_psi[1:] += 0.5 * dt * f_psi[1:]
    # interface velocities from the sewing conditions (diagnostic values)
    pi_phi[-1] = (dpsi_known + cm * u_psi) - defect.b_psi(u_phi, u_psi)
    pi_psi[0] = (dphi_known + cp * u_phi) + defect.b_phi(u_phi, u_psi)

    damp = _sponge_profile(geometry)
    if damp is not None:
        i0 = geometry.interface_index
        pi_phi *= damp[: i0 + 1]
        pi_psi *= damp[i0:]
    return DefectState(t=state.t + dt, phi=phi, pi_phi=pi_phi, psi=psi, pi_psi=pi_psi)


def evolve(state, model, geometry: Geometry, n_steps: int, save_every: int = 0, on_save=None):
    """Run ``n_steps`` steps; optionally collect uniformly spaced snapshots.

    Returns (final state, FieldHistory or None).  ``on_save(state)`` runs at
    every saved snapshot, including the initial one.
    """
    from .state import FieldHistory

    snaps_t, snaps_phi, snaps_pi = [], [], []

    def record(s):
        snaps_t.append(s.t)
        if isinstance(s, FieldState):
            snaps_phi.append(s.phi.copy())
            snaps_pi.append(s.pi.copy())
        if on_save is not None:
            on_save(s)

    if save_every:
        record(state)
    for k in range(n_steps):
        state = step(state, model, geometry)
        if save_every and (k + 1) % save_every == 0:
            state.check_finite()
            record(state)
    history = None
    if save_every and snaps_phi:
        history = FieldHistory(
            times=np.asarray(snaps_t),
            x=geometry.x,
            phi=np.asarray(snaps_phi),
            pi=np.asarray(snaps_pi),
        )
    return state, history
