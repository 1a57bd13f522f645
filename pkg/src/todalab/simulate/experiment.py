"""Config-driven experiment runner.

Configs are flat INI files with sections [model], [grid], [geometry],
[initial], [output]; unknown sections or keys are rejected.  Every run writes
``run.manifest`` echoing the fully resolved configuration (all defaults made
explicit), so re-running from the manifest reproduces the run byte for byte.
Floats in all outputs carry 17 significant digits.
"""

from __future__ import annotations

import configparser
import io
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ValidationError
from . import initial as init_mod
from .boundaries import Neumann, Robin, TodaBoundary
from .defects import FreeDefect, SineGordonBacklund
from .diagnostics import Diagnostics, diagnostics
from .grid import Grid1D
from .models import make_model
from .state import FieldHistory, Geometry, vacuum_state
from .stepper import step

_SCHEMA: dict[str, dict[str, str]] = {
    "model": {
        "kind": "klein_gordon",
        "mass": "1.0",
        "beta": "1.0",
        "family": "A",
        "rank": "1",
    },
    "grid": {
        "x_min": "-10.0",
        "x_max": "10.0",
        "n_cells": "400",
        "courant": "0.5",
        "t_final": "10.0",
        "save_every": "0",
        "snapshot_every": "0",
    },
    "geometry": {
        "kind": "periodic",
        "left": "neumann",
        "left_lambda": "0.0",
        "left_offset": "0.0",
        "left_b": "",
        "right": "neumann",
        "right_lambda": "0.0",
        "right_offset": "0.0",
        "right_b": "",
        "defect": "free",
        "defect_lambda": "1.0",
        "sponge_fraction": "-1.0",
        "sponge_strength": "2.0",
    },
    "initial": {
        "kind": "vacuum",
        "amplitude": "0.0",
        "amplitude2": "0.0",
        "k0": "1.0",
        "width": "1.0",
        "x0": "0.0",
        "velocity": "0.0",
        "charge": "1",
        "direction": "1",
        "mode": "1",
        "mode2": "0",
        "traveling": "false",
        "lambda_b": "-0.5",
        "seed": "0",
    },
    "output": {
        "directory": "",
        "probes": "",
        "diagnostics_file": "diagnostics.csv",
        "snapshots_file": "snapshots.csv",
    },
}

FLOAT_FMT = "%.17g"


@dataclass(frozen=True, eq=False)
class RunConfig:
    """Fully resolved configuration (every key present, as strings)."""

    sections: dict[str, dict[str, str]]

    def get(self, section: str, key: str) -> str:
        return self.sections[section][key]

    def getfloat(self, section: str, key: str) -> float:
        return float(self.get(section, key))

    def getint(self, section: str, key: str) -> int:
        return int(self.get(section, key))

    def getbool(self, section: str, key: str) -> bool:
        return self.get(section, key).strip().lower() in ("1", "true", "yes", "on")

    def to_ini(self) -> str:
        buf = io.StringIO()
        parser = configparser.ConfigParser()
        for sec in _SCHEMA:
            parser[sec] = dict(sorted(self.sections[sec].items()))
        parser.write(buf)
        return buf.getvalue()


def resolve_config(raw: dict[str, dict[str, str]]) -> RunConfig:
    """Merge user keys over defaults, rejecting anything unknown."""
    sections: dict[str, dict[str, str]] = {}
    for sec, defaults in _SCHEMA.items():
        sections[sec] = dict(defaults)
    for sec, items in raw.items():
        if sec not in _SCHEMA:
            raise ValidationError(f"unknown config section [{sec}]")
        for key, value in items.items():
            if key not in _SCHEMA[sec]:
                raise ValidationError(f"unknown config key {key!r} in section [{sec}]")
            sections[sec][key] = str(value)
    return RunConfig(sections=sections)


def load_config(path: str | os.PathLike) -> RunConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValidationError(f"config file not found: {path}")
    raw = {sec: dict(parser[sec]) for sec in parser.sections()}
    return resolve_config(raw)


def _build_model(cfg: RunConfig):
    return make_model(
        cfg.get("model", "kind"),
        m=cfg.getfloat("model", "mass"),
        beta=cfg.getfloat("model", "beta"),
        family=cfg.get("model", "family"),
        rank=cfg.getint("model", "rank"),
    )


def _build_boundary(cfg: RunConfig, side: str):
    kind = cfg.get("geometry", side).strip().lower()
    if kind == "neumann":
        return Neumann()
    if kind == "robin":
        return Robin(
            lam=cfg.getfloat("geometry", f"{side}_lambda"),
            offset=cfg.getfloat("geometry", f"{side}_offset"),
        )
    if kind == "toda":
        raw = cfg.get("geometry", f"{side}_b").strip()
        if not raw:
            raise ValidationError(f"{side} toda boundary needs {side}_b coefficients")
        return TodaBoundary(b=tuple(float(v) for v in raw.split(",")))
    raise ValidationError(f"unknown boundary kind {kind!r} for {side}")


def _build_geometry(cfg: RunConfig, model) -> Geometry:
    kind = cfg.get("geometry", "kind").strip().lower()
    grid = Grid1D(
        x_min=cfg.getfloat("grid", "x_min"),
        x_max=cfg.getfloat("grid", "x_max"),
        n_cells=cfg.getint("grid", "n_cells"),
        courant=cfg.getfloat("grid", "courant"),
    )
    sponge = cfg.getfloat("geometry", "sponge_fraction")
    if sponge < 0:  # unset: spec default is absorbing ends on line/defect
        sponge = 0.1 if kind in ("line", "defect") else 0.0
    strength = cfg.getfloat("geometry", "sponge_strength")
    if kind == "periodic":
        return Geometry(kind="periodic", grid=grid)
    if kind == "line":
        return Geometry(kind="line", grid=grid, sponge_fraction=sponge, sponge_strength=strength)
    if kind == "halfline":
        return Geometry(
            kind="halfline",
            grid=grid,
            right=_build_boundary(cfg, "right"),
            sponge_fraction=sponge,
            sponge_strength=strength,
        )
    if kind == "interval":
        return Geometry(
            kind="interval",
            grid=grid,
            left=_build_boundary(cfg, "left"),
            right=_build_boundary(cfg, "right"),
        )
    if kind == "defect":
        dkind = cfg.get("geometry", "defect").strip().lower()
        lam_d = cfg.getfloat("geometry", "defect_lambda")
        if dkind == "free":
            defect = FreeDefect(lam=lam_d, m=model.m)
        elif dkind == "backlund":
            defect = SineGordonBacklund(lam=lam_d, m=model.m, beta=model.beta)
        else:
            raise ValidationError(f"unknown defect kind {dkind!r}")
        return Geometry(
            kind="defect",
            grid=grid,
            defect=defect,
            sponge_fraction=sponge,
            sponge_strength=strength,
        )
    raise ValidationError(f"unknown geometry kind {kind!r}")


def _build_initial(cfg: RunConfig, model, geometry: Geometry):
    kind = cfg.get("initial", "kind").strip().lower()
    if kind == "vacuum":
        return vacuum_state(geometry, n_components=model.n_components)
    if kind == "wavepacket":
        return init_mod.init_wavepacket(
            geometry,
            model,
            k0=cfg.getfloat("initial", "k0"),
            width=cfg.getfloat("initial", "width"),
            x0=cfg.getfloat("initial", "x0"),
            amplitude=cfg.getfloat("initial", "amplitude"),
            direction=cfg.getint("initial", "direction"),
        )
    if kind == "soliton":
        return init_mod.init_soliton(
            geometry,
            model,
            v=cfg.getfloat("initial", "velocity"),
            x0=cfg.getfloat("initial", "x0"),
            charge=cfg.getint("initial", "charge"),
        )
    if kind == "boundary_mode":
        return init_mod.init_boundary_mode(
            geometry,
            model,
            lam_b=cfg.getfloat("initial", "lambda_b"),
            amplitude=cfg.getfloat("initial", "amplitude"),
        )
    if kind == "gaussian":
        return init_mod.init_gaussian(
            geometry,
            amplitude=cfg.getfloat("initial", "amplitude"),
            width=cfg.getfloat("initial", "width"),
            x0=cfg.getfloat("initial", "x0"),
        )
    if kind == "noise":
        return init_mod.init_noise(
            geometry,
            amplitude=cfg.getfloat("initial", "amplitude"),
            width=cfg.getfloat("initial", "width"),
            seed=cfg.getint("initial", "seed"),
        )
    if kind == "cosine":
        return init_mod.init_cosine(
            geometry,
            amplitude=cfg.getfloat("initial", "amplitude"),
            mode=cfg.getint("initial", "mode"),
            amplitude2=cfg.getfloat("initial", "amplitude2"),
            mode2=cfg.getint("initial", "mode2"),
            traveling_m=model.m if cfg.getbool("initial", "traveling") else None,
        )
    raise ValidationError(f"unknown initial kind {kind!r}")


@dataclass(frozen=True, eq=False)
class RunResult:
    config: RunConfig
    times: np.ndarray
    diagnostics: list[Diagnostics]
    history: FieldHistory | None
    final_state: object
    geometry: Geometry
    model: object
    probes: tuple[float, ...] = field(default=())

    def diagnostics_csv(self) -> str:
        cols = ["t", "E", "P", "U", "P_plus_U", "Q_topological"]
        cols += [f"probe_{i+1}" for i in range(len(self.probes))]
        lines = [",".join(cols)]
        for d in self.diagnostics:
            row = [d.t, d.energy, d.momentum, d.defect_u, d.p_plus_u, d.topological_charge]
            row += list(d.probes)
            lines.append(",".join(FLOAT_FMT % v for v in row))
        return "\n".join(lines) + "\n"

    def snapshots_csv(self) -> str:
        if self.history is None:
            raise ValidationError("run was configured without snapshots")
        xs = self.history.x
        header = ",".join(["t"] + [FLOAT_FMT % x for x in xs])
        lines = [header]
        for i, t in enumerate(self.history.times):
            row = [FLOAT_FMT % t] + [FLOAT_FMT % v for v in self.history.phi[i, 0]]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp_", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_experiment(cfg: RunConfig, out_dir: str | os.PathLike | None = None) -> RunResult:
    """Execute a configured run; deterministic for a fixed config.

    Writes diagnostics CSV, optional snapshot CSV, and the manifest when an
    output directory is set (from ``out_dir`` or [output] directory).
    """
    model = _build_model(cfg)
    geometry = _build_geometry(cfg, model)
    state = _build_initial(cfg, model, geometry)

    dt = geometry.grid.dt
    t_final = cfg.getfloat("grid", "t_final")
    n_steps = int(round(t_final / dt))
    save_every = cfg.getint("grid", "save_every")
    if save_every <= 0:
        save_every = max(1, n_steps // 400)
    snapshot_every = cfg.getint("grid", "snapshot_every")
    probes_raw = cfg.get("output", "probes").strip()
    probes = tuple(float(v) for v in probes_raw.split(",")) if probes_raw else ()

    diags: list[Diagnostics] = [diagnostics(state, model, geometry, probes)]
    snaps_t, snaps_phi, snaps_pi = [], [], []

    def snap(s):
        snaps_t.append(s.t)
        if hasattr(s, "psi"):  # defect: store the two fields side by side
            snaps_phi.append(np.concatenate([s.phi, s.psi])[None, :])
            snaps_pi.append(np.concatenate([s.pi_phi, s.pi_psi])[None, :])
        else:
            snaps_phi.append(np.array(s.phi, copy=True))
            snaps_pi.append(np.array(s.pi, copy=True))

    if snapshot_every > 0:
        snap(state)
    for k in range(n_steps):
        state = step(state, model, geometry)
        if (k + 1) % save_every == 0 or k + 1 == n_steps:
            state.check_finite()
            diags.append(diagnostics(state, model, geometry, probes))
        if snapshot_every > 0 and (k + 1) % snapshot_every == 0:
            snap(state)

    history = None
    if snaps_phi:
        x_hist = geometry.x
        if geometry.kind == "defect":
            i0 = geometry.interface_index
            x_hist = np.concatenate([x_hist[: i0 + 1], x_hist[i0:]])
        history = FieldHistory(
            times=np.asarray(snaps_t),
            x=x_hist,
            phi=np.asarray(snaps_phi),
            pi=np.asarray(snaps_pi),
        )
    result = RunResult(
        config=cfg,
        times=np.asarray([d.t for d in diags]),
        diagnostics=diags,
        history=history,
        final_state=state,
        geometry=geometry,
        model=model,
        probes=probes,
    )

    directory = out_dir if out_dir is not None else (cfg.get("output", "directory") or None)
    if directory:
        base = Path(directory)
        _write_atomic(base / cfg.get("output", "diagnostics_file"), result.diagnostics_csv())
        if history is not None:
            _write_atomic(base / cfg.get("output", "snapshots_file"), result.snapshots_csv())
        _write_atomic(base / "run.manifest", cfg.to_ini())
    return result
