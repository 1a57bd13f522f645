"""Command-line entry point: simulate, spectrum, reflect, derive-boundary,
lax-check.

Exit codes: 0 success, 1 validation error (bad flags, bad config), 2
numerical failure (Newton / root finder).  Every run writes a manifest next
to its outputs; all file writes are atomic (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import NumericalError, PoleError, ValidationError
from .simulate.experiment import FLOAT_FMT, RunConfig, _write_atomic, load_config, resolve_config, run_experiment


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exit code is 2; spec wants 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _manifest_text(command: str, pairs: dict) -> str:
    lines = ["[cli]", f"command = {command}"]
    for key in sorted(pairs):
        lines.append(f"{key} = {pairs[key]}")
    return "\n".join(lines) + "\n"


def _emit(out_dir: str | None, filename: str, text: str, manifest: str | None) -> None:
    if out_dir is None:
        sys.stdout.write(text)
        return
    base = Path(out_dir)
    _write_atomic(base / filename, text)
    if manifest is not None:
        _write_atomic(base / "run.manifest", manifest)


# ---------------------------------------------------------------------------
# simulate


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    sweeps = []
    for spec in args.sweep or []:
        try:
            target, values = spec.split("=", 1)
            section, key = target.split(".", 1)
        except ValueError:
            raise ValidationError(
                f"bad --sweep {spec!r}; expected section.key=v1,v2,..."
            ) from None
        sweeps.append((section.strip(), key.strip(), values.split(",")))
    if not sweeps:
        run_experiment(cfg, out_dir=args.out)
        return 0
    if len(sweeps) > 1:
        raise ValidationError("one --sweep key at a time")
    section, key, values = sweeps[0]
    base_out = Path(args.out) if args.out else Path(cfg.get("output", "directory") or ".")
    for value in values:  # disjoint configs, fully independent runs
        raw = {sec: dict(items) for sec, items in cfg.sections.items()}
        raw[section][key] = value
        sub = resolve_config(raw)
        run_experiment(sub, out_dir=base_out / f"{key}={value}")
    return 0


# ---------------------------------------------------------------------------
# spectrum


def _cmd_spectrum(args) -> int:
    from .scattering import SpectrumProblem, interval_spectrum

    problem = SpectrumProblem(
        m=args.mass,
        half_length=args.half_length,
        lam_plus=args.lambda_plus,
        lam_minus=args.lambda_minus,
        n_max=args.n_max,
    )
    roots = interval_spectrum(problem)
    lines = ["n,k_n,omega_n"]
    for n, k in enumerate(roots, start=1):
        omega = float(np.sqrt(args.mass**2 + k**2))
        lines.append(f"{n},{FLOAT_FMT % k},{FLOAT_FMT % omega}")
    manifest = _manifest_text("spectrum", vars_of(args, ["mass", "half_length", "lambda_plus", "lambda_minus", "n_max"]))
    _emit(args.out, "spectrum.csv", "\n".join(lines) + "\n", manifest)
    return 0


def vars_of(args, names):
    return {n: getattr(args, n) for n in names}


# ---------------------------------------------------------------------------
# reflect


def _cmd_reflect(args) -> int:
    from .scattering import free_reflection, reflection_factor

    pole_flag = False
    pole_where = None
    value = None
    if args.kind == "free":
        inputs = {"kind": "free", "k": args.k, "lambda_b": args.lambda_b}
        try:
            value = free_reflection(args.k, args.lambda_b)
        except PoleError as exc:
            pole_flag, pole_where = True, exc.where
    else:
        inputs = {
            "kind": "sinh",
            "theta": args.theta,
            "a0": args.a0,
            "a1": args.a1,
            "bulk_beta": args.bulk_beta,
        }
        try:
            value = reflection_factor(args.theta, args.a0, args.a1, args.bulk_beta)
        except PoleError as exc:
            pole_flag, pole_where = True, exc.where
    payload = {
        "inputs": inputs,
        "value": None if value is None else {"re": value.real, "im": value.imag},
        "modulus": None if value is None else abs(value),
        "pole_flag": pole_flag,
    }
    if pole_where:
        payload["pole_where"] = pole_where
    manifest = _manifest_text("reflect", inputs)
    _emit(args.out, "reflect.json", json.dumps(payload, indent=2, sort_keys=True) + "\n", manifest)
    return 0


# ---------------------------------------------------------------------------
# derive-boundary


def _cmd_derive_boundary(args) -> int:
    from .algebra import build_root_system, to_json_dict
    from .laxboundary import adjacency_constraints, matrix_constraints, solve_k_expansion

    rs = build_root_system(args.family, args.rank)
    route = args.route
    if route == "auto":
        route = "both" if rs.family == "A" and rs.rank <= 5 else "adjacency"
    adj = adjacency_constraints(rs)
    payload = adj.to_json_dict()
    if route in ("matrix", "both"):
        mat = matrix_constraints(rs)
        exp = solve_k_expansion(rs)
        payload["matrix_route"] = mat.to_json_dict()
        payload["routes_agree"] = mat.fixed == adj.fixed and mat.free == adj.free
        payload["k_series"] = {
            "k1": [[str(p) for p in row] for row in exp.k1],
            "k2": "0 (central factor scaled out)" if exp.k2_is_zero else "nonzero",
            "k3": [[str(p) for p in row] for row in exp.k3],
            "obstructions": [str(p) for p in exp.obstructions],
        }
    payload["route"] = route
    if args.dump_roots:
        payload["root_system"] = to_json_dict(rs)
    manifest = _manifest_text(
        "derive-boundary",
        {"family": args.family, "rank": args.rank, "route": args.route},
    )
    _emit(args.out, "boundary.json", json.dumps(payload, indent=2, sort_keys=True) + "\n", manifest)
    return 0


# ---------------------------------------------------------------------------
# lax-check


def _cmd_lax_check(args) -> int:
    from .laxboundary import curvature_residual, monodromy_charge, toda_frame_for

    lambdas = [float(v) for v in args.lambdas.split(",") if v.strip()]
    if not lambdas:
        raise ValidationError("no spectral parameters given")

    def run_at(cfg: RunConfig):
        result = run_experiment(cfg)
        if result.history is None:
            raise ValidationError("lax-check needs snapshot_every > 0 in [grid]")
        frame, m_t, beta_t = toda_frame_for(result.model)
        report = {}
        for lam in lambdas:
            res = curvature_residual(result.history, frame, lam, m=m_t, beta=beta_t)
            qs = [
                monodromy_charge(
                    result.history.x,
                    result.history.phi[i],
                    result.history.pi[i],
                    frame,
                    lam,
                    m=m_t,
                    beta=beta_t,
                    geometry=result.geometry.kind if result.geometry.kind == "periodic" else "line",
                )
                for i in range(len(result.history.times))
            ]
            qs = np.asarray(qs)
            drift = float(np.max(np.abs(qs - qs[0])) / max(1e-30, abs(qs[0])))
            report[FLOAT_FMT % lam] = {"curvature_rms": res, "monodromy_drift": drift}
        return report

    cfg = load_config(args.config)
    if cfg.getint("grid", "snapshot_every") <= 0:
        raise ValidationError("lax-check needs snapshot_every > 0 in [grid]")
    payload = {"base": run_at(cfg)}
    if args.refine:
        raw = {sec: dict(items) for sec, items in cfg.sections.items()}
        raw["grid"]["n_cells"] = str(2 * cfg.getint("grid", "n_cells"))
        fine = resolve_config(raw)
        payload["refined"] = run_at(fine)
        payload["ratios"] = {
            lam: {
                "curvature": payload["base"][lam]["curvature_rms"]
                / max(1e-300, payload["refined"][lam]["curvature_rms"]),
                "monodromy": payload["base"][lam]["monodromy_drift"]
                / max(1e-300, payload["refined"][lam]["monodromy_drift"]),
            }
            for lam in payload["base"]
        }
    manifest = _manifest_text(
        "lax-check",
        {"config": args.config, "lambdas": args.lambdas, "refine": args.refine},
    )
    _emit(args.out, "lax_check.json", json.dumps(payload, indent=2, sort_keys=True) + "\n", manifest)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="todalab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a configured field evolution")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="output directory (overrides config)")
    p.add_argument("--sweep", action="append", help="section.key=v1,v2,... fan-out")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("spectrum", help="two-boundary interval frequencies")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--half-length", type=float, required=True)
    p.add_argument("--lambda-plus", type=float, default=0.0)
    p.add_argument("--lambda-minus", type=float, default=0.0)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("reflect", help="reflection factors")
    p.add_argument("--kind", choices=["free", "sinh"], required=True)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--lambda-b", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--a0", type=float, default=0.0)
    p.add_argument("--a1", type=float, default=0.0)
    p.add_argument("--bulk-beta", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_reflect)

    p = sub.add_parser("derive-boundary", help="boundary-coefficient constraints")
    p.add_argument("--family", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--route", choices=["auto", "matrix", "adjacency", "both"], default="auto")
    p.add_argument("--dump-roots", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_derive_boundary)

    p = sub.add_parser("lax-check", help="zero-curvature and monodromy diagnostics")
    p.add_argument("--config", required=True)
    p.add_argument("--lambdas", default="0.7,1.0,1.6")
    p.add_argument("--refine", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_lax_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ValidationError as exc:
        print(f"todalab: validation error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"todalab: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
