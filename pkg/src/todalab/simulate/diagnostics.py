"""Conserved-quantity diagnostics and frequency/phase measurements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from .state import DefectState, Geometry


@dataclass(frozen=True)
class Diagnostics:
    t: float
    energy: float
    momentum: float
    defect_u: float
    p_plus_u: float
    topological_charge: float
    field_charge: float
    probes: tuple[float, ...]


def _gradient_x(arr: np.ndarray, h: float, periodic: bool) -> np.ndarray:
    if periodic:
        return (np.roll(arr, -1, axis=-1) - np.roll(arr, 1, axis=-1)) / (2.0 * h)
    return np.gradient(arr, h, axis=-1)


def _trapz(values: np.ndarray, h: float, periodic: bool) -> float:
    if periodic:
        return float(np.sum(values) * h)
    return float(np.trapezoid(values, dx=h))


def _beta_of(model) -> float:
    return getattr(model, "beta", 0.0)


def diagnostics(state, model, geometry: Geometry, probes: tuple[float, ...] = ()) -> Diagnostics:
    """Energy, momentum (paper convention P = int d_t phi d_x phi), defect
    functional U, P + U, and topological charge; probe values are field
    samples at the nearest grid node."""
    h = geometry.grid.h
    periodic = geometry.kind == "periodic"
    beta = _beta_of(model)

    if isinstance(state, DefectState):
        defect = geometry.defect
        x = geometry.x
        i0 = geometry.interface_index
        e = u = p = 0.0
        for arr, pi in ((state.phi, state.pi_phi), (state.psi, state.pi_psi)):
            grad = _gradient_x(arr, h, periodic=False)
            dens = 0.5 * pi**2 + 0.5 * grad**2 + model.potential(arr[None, :])
            e += _trapz(dens, h, periodic=False)
            p += _trapz(pi * grad, h, periodic=False)
        phi0, psi0 = state.phi[-1], state.psi[0]
        e += float(defect.b_value(phi0, psi0))
        u = float(defect.u_value(phi0, psi0))
        if beta:
            coeff = beta / (2.0 * np.pi)
            field_charge = coeff * ((phi0 - state.phi[0]) + (state.psi[-1] - psi0))
            total_charge = coeff * (state.psi[-1] - state.phi[0])
        else:
            field_charge = total_charge = 0.0
        probe_vals = []
        for px in probes:
            if px < 0:
                idx = int(np.argmin(np.abs(x[: i0 + 1] - px)))
                probe_vals.append(float(state.phi[idx]))
            else:
                idx = int(np.argmin(np.abs(x[i0:] - px)))
                probe_vals.append(float(state.psi[idx]))
        return Diagnostics(
            t=state.t,
            energy=e,
            momentum=p,
            defect_u=u,
            p_plus_u=p + u,
            topological_charge=total_charge,
            field_charge=field_charge,
            probes=tuple(probe_vals),
        )

    phi, pi = state.phi, state.pi
    grad = _gradient_x(phi, h, periodic)
    dens = 0.5 * np.sum(pi**2, axis=0) + 0.5 * np.sum(grad**2, axis=0) + model.potential(phi)
    e = _trapz(dens, h, periodic)
    p = _trapz(np.sum(pi * grad, axis=0), h, periodic)
    if geometry.kind in ("interval", "halfline"):
        if geometry.right is not None:
            e += geometry.right.value(model, phi[:, -1])
        if geometry.kind == "interval" and geometry.left is not None:
            e += geometry.left.value(model, phi[:, 0])
    charge = 0.0
    if beta and not periodic:
        charge = float(beta / (2.0 * np.pi) * (phi[0, -1] - phi[0, 0]))
    x = geometry.x
    probe_vals = tuple(float(phi[0, int(np.argmin(np.abs(x - px)))]) for px in probes)
    return Diagnostics(
        t=state.t,
        energy=e,
        momentum=p,
        defect_u=0.0,
        p_plus_u=p,
        topological_charge=charge,
        field_charge=charge,
        probes=probe_vals,
    )


def measure_frequency(
    series: np.ndarray,
    dt: float,
    min_periods: float = 8.0,
    require_isolated: bool = False,
) -> float:
    """Dominant angular frequency of a real time series.

    Hann window, FFT peak, quadratic (parabolic) interpolation on the log
    magnitude.  Rejects series shorter than ``min_periods`` of the measured
    frequency, series with no peak above the noise floor, and (optionally)
    series with a second comparable tone.
    """
    s = np.asarray(series, dtype=float)
    n = len(s)
    if n < 16:
        raise ValidationError("series too short for a frequency measurement")
    s = s - np.mean(s)
    window = np.hanning(n)
    spec = np.abs(np.fft.rfft(s * window))
    spec[0] = 0.0
    k = int(np.argmax(spec))
    if spec[k] <= 0 or spec[k] < 10.0 * np.median(spec[1:]):
        raise ValidationError("no spectral peak above the noise floor")
    if require_isolated:
        guard = 5  # Hann main lobe plus near sidelobes
        masked = spec.copy()
        masked[max(0, k - guard) : k + guard + 1] = 0.0
        if np.max(masked) > 0.5 * spec[k]:
            raise ValidationError("second comparable tone present; series is not single-mode")
    if 0 < k < len(spec) - 1:
        la, lb, lc = np.log(spec[k - 1] + 1e-300), np.log(spec[k]), np.log(spec[k + 1] + 1e-300)
        denom = la - 2.0 * lb + lc
        delta = 0.5 * (la - lc) / denom if denom != 0 else 0.0
        delta = float(np.clip(delta, -0.5, 0.5))
    else:
        delta = 0.0
    omega = 2.0 * np.pi * (k + delta) / (n * dt)
    if n * dt * omega / (2.0 * np.pi) < min_periods:
        raise ValidationError(
            f"series covers fewer than {min_periods} periods of the measured frequency"
        )
    return float(omega)


def fourier_amplitude(series: np.ndarray, dt: float, omega: float) -> complex:
    """Windowed discrete Fourier amplitude of exp(-i omega t) at a known omega."""
    s = np.asarray(series, dtype=float)
    n = len(s)
    t = dt * np.arange(n)
    window = np.hanning(n)
    return complex(np.sum(s * window * np.exp(1j * omega * t)) * dt)


def measure_reflection_phase(
    series: np.ndarray,
    dt: float,
    t_split: float,
    omega: float,
    k: float,
    x_probe_rel: float,
) -> tuple[float, float]:
    """Measured reflection phase and modulus at carrier frequency ``omega``.

    The probe series is split at ``t_split`` into the incident and reflected
    passes.  Each pass is analysed over an equal-length rectangular window
    centered on its energy centroid, using absolute-time Fourier sums: for
    temporally separated compact packets the rectangular window keeps the
    Fourier integral exact up to tail truncation, whereas a taper would
    convolve in the quadratic spectral phase of the propagation.  With the
    incident wave written exp(i(k x - w t)) relative to the boundary and the
    probe at ``x_probe_rel`` (< 0) from it, the propagation phase
    exp(-2 i k x_p) is removed here.
    """
    s = np.asarray(series, dtype=float)
    n_split = int(round(t_split / dt))
    if n_split < 16 or len(s) - n_split < 16:
        raise ValidationError("split leaves too few samples in a window")

    def centroid(segment: np.ndarray, offset: int) -> float:
        e = segment**2
        total = float(np.sum(e))
        if total <= 0:
            raise ValidationError("empty signal window in reflection measurement")
        return offset + float(np.sum(np.arange(len(segment)) * e) / total)

    c_in = centroid(s[:n_split], 0)
    c_out = centroid(s[n_split:], n_split)
    half = int(min(c_in, n_split - c_in, c_out - n_split, len(s) - 1 - c_out))
    if half < 16:
        raise ValidationError("packets too close to the window edges")

    def amplitude(center: float) -> complex:
        idx = np.arange(int(round(center)) - half, int(round(center)) + half + 1)
        t = idx * dt
        return complex(np.sum(s[idx] * np.exp(1j * omega * t)) * dt)

    ratio = amplitude(c_out) / amplitude(c_in) * np.exp(2j * k * x_probe_rel)
    return float(np.angle(ratio)), float(abs(ratio))
