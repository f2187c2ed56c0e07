"""Unified command-line front end.

Subcommands cover the density-inequality suites, zeta/torsion evaluation of
spectrum files, hyperbolic model-space quantities, the one-dimensional
heat-kernel comparisons, the boundary anomaly engine, manifest-based
3-manifold torsion, and the end-to-end selftest.  Reports are JSON with
sorted keys, so identical seed and configuration give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from .anomaly import (PRESET_FAMILIES, ConformalFamily, Jet,
                      anomaly_coefficients)
from .checks import SUITES, run_suite
from .config import RunConfig, seed_from_env
from .heattrace import HeatTraceModel, analytic_torsion, d_small, zeta_det
from .hyperbolic import (CuspEnd, cusp_volume, heat_density,
                         load_plancherel_table, torsion_constant)
from .jsj import ManifestError, is_graph_manifold, load_manifest, torsion_3manifold
from .kernels1d import Domain1D, boundary_insensitivity_check, sup_bound_check
from .mellin import resolve_dsmall_constant
from .selftest import run_selftest
from .spectrum import Spectrum

HEATCMP_PAIRS = {
    "halfline-line": (Domain1D.half_line_neumann, Domain1D.line),
    "interval-halfline": (lambda: Domain1D.interval_neumann(3.0),
                          Domain1D.half_line_neumann),
}


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2, default=float)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    raw_path = Path(path)
    if raw_path.suffix == ".toml":
        try:
            import tomllib
        except ImportError:
            raise SystemExit("TOML configs need Python 3.11+; use JSON")
        raw = tomllib.loads(raw_path.read_text())
    else:
        raw = json.loads(raw_path.read_text())
    return RunConfig(seed=raw.get("seed", seed_from_env()),
                     tolerances=raw.get("tolerances", {}),
                     output=raw.get("output"),
                     output_format=raw.get("output_format", "json"))


def _load_spectrum(path: str) -> tuple[Spectrum | None, dict[int, Spectrum] | None]:
    """Spectrum files: a JSON list of [eigenvalue, weight] pairs, or an
    object {"degrees": [{"p": int, "spectrum": [[eig, w], ...]}, ...]}."""
    raw = json.loads(Path(path).read_text())
    if isinstance(raw, list):
        return Spectrum.from_pairs(raw), None
    if isinstance(raw, dict) and "degrees" in raw:
        degrees = {int(entry["p"]): Spectrum.from_pairs(entry["spectrum"])
                   for entry in raw["degrees"]}
        return None, degrees
    raise SystemExit("spectrum file must be a JSON list of [eigenvalue, weight] "
                     "pairs or an object with a 'degrees' list")


# -- subcommand handlers ---------------------------------------------------------------


def _cmd_sdf_check(args, config: RunConfig) -> int:
    rep = run_suite(args.suite, seed=args.seed, instances=args.instances,
                    max_dim=args.max_dim)
    _emit(rep.to_dict(), args.output)
    return 0 if rep.ok else 1


def _cmd_zeta(args, config: RunConfig) -> int:
    if args.mode == "selftest-cim":
        res = resolve_dsmall_constant()
        _emit(res.to_dict(), args.output)
        return 0 if res.max_selected_residual < 1e-10 else 1
    if not args.spectrum:
        raise SystemExit("zeta needs --spectrum (or the selftest-cim mode)")
    single, degrees = _load_spectrum(args.spectrum)
    if args.op == "trace":
        if single is None:
            raise SystemExit("--op trace expects a flat spectrum file")
        value = single.heat_trace(args.t, include_kernel=args.include_kernel)
        _emit({"op": "trace", "t": args.t, "value": value, "errorEstimate": 0.0},
              args.output)
        return 0
    if args.op == "det":
        if single is None:
            raise SystemExit("--op det expects a flat spectrum file")
        value = zeta_det(single, m=args.m)
        _emit({"op": "det", "value": value, "errorEstimate": 1e-10}, args.output)
        return 0
    if args.op == "dsmall":
        if single is None:
            raise SystemExit("--op dsmall expects a flat spectrum file")
        res = d_small(HeatTraceModel.from_spectrum(single, m=args.m))
        _emit({"op": "dsmall", "value": res.value,
               "errorEstimate": res.quad_error}, args.output)
        return 0
    if args.op == "torsion":
        if degrees is None:
            degrees = {1: single}
        models = {p: HeatTraceModel.from_spectrum(s, m=args.m)
                  for p, s in degrees.items()}
        res = analytic_torsion(models)
        _emit({"op": "torsion", "value": res.total,
               "perDegree": [{"p": p, "small": sm, "large": lg}
                             for p, sm, lg in res.per_degree],
               "errorEstimate": res.diagnostics["quad_error"]}, args.output)
        return 0
    raise SystemExit(f"unknown zeta op {args.op!r}")


def _cmd_hyperbolic(args, config: RunConfig) -> int:
    if args.op == "constant":
        table = None if args.m % 2 == 0 else load_plancherel_table(args.table)
        value = torsion_constant(table, m=args.m)
        _emit({"op": "constant", "m": args.m, "value": value}, args.output)
        return 0
    if args.op == "density":
        table = load_plancherel_table(args.table)
        if args.m != table.m:
            raise SystemExit(f"table is for dimension {table.m}")
        value = heat_density(table, args.p, args.t)
        _emit({"op": "density", "m": args.m, "p": args.p, "t": args.t,
               "value": value}, args.output)
        return 0
    if args.op == "cusp":
        end = CuspEnd(args.cross_section)
        value = cusp_volume(end, args.m, height=args.height)
        _emit({"op": "cusp", "m": args.m, "crossSection": args.cross_section,
               "height": args.height, "value": value}, args.output)
        return 0
    raise SystemExit(f"unknown hyperbolic op {args.op!r}")


def _cmd_heatcmp(args, config: RunConfig) -> int:
    make_v, make_n = HEATCMP_PAIRS[args.pair]
    V, N = make_v(), make_n()
    ks = tuple(sorted({args.K, args.K * 2.0, args.K * 0.5}))
    rep = boundary_insensitivity_check(V, N, K_values=ks)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "x", "diff", "bound"])
            writer.writerows(rep.rows)
    sup = sup_bound_check(V, 1.0)
    verdict = {
        "pair": list(rep.pair),
        "fitted_c1": {str(c2): per_k for c2, per_k in rep.fitted_c1.items()},
        "best": list(rep.best),
        "closed_form_violations": rep.closed_form_violations[:10],
        "monotone_in_cutoff": rep.monotone_in_cutoff,
        "sup_bound": sup,
        "probes": rep.probes,
        "ok": not rep.closed_form_violations and rep.monotone_in_cutoff,
    }
    _emit(verdict, args.output)
    return 0 if verdict["ok"] else 1


def _family_from_args(args) -> ConformalFamily:
    if args.f:
        expr = args.f
        namespace = {"exp": lambda v: Jet.lift(v).exp(),
                     "log": lambda v: Jet.lift(v).log(),
                     "sqrt": lambda v: Jet.lift(v).sqrt(),
                     "pi": math.pi}

        def factor(x, u):
            return eval(expr, {"__builtins__": {}}, dict(namespace, x=x, u=u))

        return ConformalFamily(args.dim, factor, name=f"expr:{expr}")
    preset = args.family.split(":", 1)[-1] if args.family else "default"
    if preset in ("default", "paper"):
        return PRESET_FAMILIES[args.dim]
    raise SystemExit(f"unknown family preset {preset!r}")


def _cmd_anomaly(args, config: RunConfig) -> int:
    family = _family_from_args(args)
    if args.sweep:
        try:
            u0, u1, n = args.sweep.split(":")
            us = np.linspace(float(u0), float(u1), int(n))
        except ValueError:
            raise SystemExit("--sweep expects u0:u1:n")
        writer = csv.writer(sys.stdout)
        writer.writerow(["u", "sum"] + [f"d{p}" for p in range(family.dim + 1)])
        for u in us:
            out = anomaly_coefficients(family, float(u))
            writer.writerow([f"{u:.6g}", f"{out.alternating_sum:.12g}"]
                            + [f"{d:.12g}" for d in out.d_per_degree])
        return 0
    out = anomaly_coefficients(family, args.u)
    _emit({"dim": family.dim, "family": family.name, "u": args.u,
           "d": out.d_per_degree, "sum": out.alternating_sum,
           "psiTables": out.psi_tables, "diagnostics": out.diagnostics},
          args.output)
    return 0


def _cmd_jsj(args, config: RunConfig) -> int:
    try:
        manifest = load_manifest(args.input)
    except FileNotFoundError:
        print(f"error: no such manifest file: {args.input}", file=sys.stderr)
        return 2
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    torsion = torsion_3manifold(manifest)
    payload = {
        "name": manifest.name,
        "boundaryTori": manifest.boundary_tori,
        "pieces": len(manifest.pieces),
        "hyperbolicVolume": manifest.hyperbolic_volume,
        "graphManifold": is_graph_manifold(manifest),
        "torsion": torsion,
        "note": ("vanishing homology growth and positive spectral decay "
                 "rates are assumptions of the formula, not verified here"),
    }
    if args.report == "text":
        lines = [f"{manifest.name}:",
                 f"  pieces: {len(manifest.pieces)}",
                 f"  hyperbolic volume: {manifest.hyperbolic_volume:.12g}",
                 f"  graph manifold: {payload['graphManifold']}",
                 f"  torsion: {torsion:.12g}"]
        text = "\n".join(lines)
        if args.output:
            Path(args.output).write_text(text + "\n")
        else:
            print(text)
    else:
        _emit(payload, args.output)
    return 0


def _cmd_selftest(args, config: RunConfig) -> int:
    results = run_selftest(seed=args.seed, quick=args.quick)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name.ljust(width)}")
    ok = all(r.passed for r in results)
    if args.output:
        _emit({"results": [r.to_dict() for r in results], "ok": ok}, args.output)
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a value parsed before the subcommand intact
    p.add_argument("--config", default=argparse.SUPPRESS,
                   help="JSON (or TOML on 3.11+) config file")
    p.add_argument("--output", default=argparse.SUPPRESS,
                   help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2tor",
        description="spectral density suites, zeta-regularized torsion, and "
                    "model-space heat-trace checks")
    parser.add_argument("--config", help="JSON (or TOML on 3.11+) config file")
    parser.add_argument("--output", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("sdf-check", help="randomized density-inequality suites")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=seed_from_env())
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--max-dim", type=int, default=6)
    _add_common(p)
    p.set_defaults(handler=_cmd_sdf_check)

    p = sub.add_parser("zeta", help="determinants and torsion from spectrum files")
    p.add_argument("mode", nargs="?", choices=["selftest-cim"],
                   help="run the expansion-constant self-test")
    p.add_argument("--spectrum", help="JSON spectrum file")
    p.add_argument("--op", choices=["det", "trace", "torsion", "dsmall"],
                   default="det")
    p.add_argument("--t", type=float, default=1.0, help="time for --op trace")
    p.add_argument("--m", type=int, default=0, help="dimension parameter")
    p.add_argument("--include-kernel", action="store_true")
    _add_common(p)
    p.set_defaults(handler=_cmd_zeta)

    p = sub.add_parser("hyperbolic", help="model-space densities and constants")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--op", required=True, choices=["density", "constant", "cusp"])
    p.add_argument("--p", type=int, default=0, help="form degree for --op density")
    p.add_argument("--t", type=float, default=1.0, help="time for --op density")
    p.add_argument("--table", help="alternative density table (JSON)")
    p.add_argument("--cross-section", type=float, default=1.0)
    p.add_argument("--height", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(handler=_cmd_hyperbolic)

    p = sub.add_parser("heatcmp", help="one-dimensional kernel comparisons")
    p.add_argument("--pair", required=True, choices=sorted(HEATCMP_PAIRS))
    p.add_argument("--K", type=float, default=1.0, help="distance cutoff")
    p.add_argument("--csv", help="write (t, x, diff, bound) rows here")
    _add_common(p)
    p.set_defaults(handler=_cmd_heatcmp)

    p = sub.add_parser("anomaly", help="boundary metric-anomaly coefficients")
    p.add_argument("--dim", type=int, choices=[2, 3], required=True)
    p.add_argument("--family", default="preset:default")
    p.add_argument("--f", help="conformal factor expression in x and u")
    p.add_argument("--u", type=float, default=0.0)
    p.add_argument("--sweep", help="u0:u1:n emits CSV over the parameter range")
    _add_common(p)
    p.set_defaults(handler=_cmd_anomaly)

    p = sub.add_parser("jsj", help="3-manifold torsion from a manifest")
    p.add_argument("--input", required=True)
    p.add_argument("--report", choices=["json", "text"], default="json")
    _add_common(p)
    p.set_defaults(handler=_cmd_jsj)

    p = sub.add_parser("selftest", help="run the acceptance checks end to end")
    p.add_argument("--seed", type=int, default=seed_from_env())
    p.add_argument("--quick", action="store_true",
                   help="smaller instance counts for a smoke run")
    _add_common(p)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "handler", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        config = _load_config(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    if args.output is None and config.output:
        args.output = config.output
    return args.handler(args, config)


if __name__ == "__main__":
    sys.exit(main())
