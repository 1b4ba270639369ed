"""Command-line front end.

Subcommands: solve, limit-targets, sweep, simulate, compare, report.
Exit codes: 0 success, 1 internal error, 2 validation failure.  Outputs are
byte-deterministic: CSV cells carry 17 significant digits, JSON floats use
the shortest round-trip form.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import central, concentration, limit_system, riemann
from .formatting import dumps, fmt17
from .states import DomainError, State

# Defaults mirror the concentration experiment setup.
DEFAULT_LEFT = "1,1"
DEFAULT_RIGHT = "-1,1.5"
DEFAULT_EPS_GRID = [3e-1, 1.5e-1, 7e-2] + [10.0 ** (-k) for k in range(2, 11)]


class ValidationError(ValueError):
    pass


def _parse_pair(text: str, name: str) -> tuple[float, float]:
    parts = str(text).split(",")
    if len(parts) != 2:
        raise ValidationError(f"{name} must be two comma-separated numbers, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ValidationError(f"{name}: {exc}") from exc


def _parse_floats(text: str, name: str) -> list[float]:
    items = [p for p in str(text).split(",") if p.strip()]
    if not items:
        raise ValidationError(f"{name} must contain at least one number")
    try:
        return [float(p) for p in items]
    except ValueError as exc:
        raise ValidationError(f"{name}: {exc}") from exc


def _load_config(path) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError("config file must hold a JSON object")
    return cfg


def _resolve(args, config: dict, key: str, default):
    """Flag value if given, else config-file value, else the default."""
    cli_value = getattr(args, key, None)
    if cli_value is not None:
        return cli_value
    if key in config:
        return config[key]
    return default


def _state(text, name: str) -> State:
    u, v = _parse_pair(text, name)
    return State(u, v)


def _out_dir(args, config) -> Path:
    out = Path(_resolve(args, config, "out", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path: Path, text: str):
    path.write_text(text)
    print(f"wrote {path}")


# ---------------------------------------------------------------- solve


def _wave_record(wave) -> dict:
    if isinstance(wave, riemann.Shock):
        return {"type": "shock", "family": wave.family, "speed": wave.speed}
    return {
        "type": "fan",
        "family": wave.family,
        "xi_start": wave.xi_start,
        "xi_end": wave.xi_end,
        "invariant": wave.invariant,
    }


def _limit_wave_record(wave) -> dict:
    if isinstance(wave, limit_system.Contact):
        return {"type": "contact", "speed": wave.speed}
    if isinstance(wave, limit_system.LimitShock):
        return {"type": "shock", "speed": wave.speed}
    if isinstance(wave, limit_system.LimitFan):
        return {"type": "fan", "xi_start": wave.xi_start, "xi_end": wave.xi_end, "slope": wave.slope}
    ds = wave.delta
    return {"type": "delta", "sigma": ds.sigma, "u_delta": ds.u_delta, "weight_rate": ds.w1}


def _profile_csv_eps(sol, xi_lo, xi_hi, samples) -> str:
    lines = ["xi,u,v"]
    for k in range(samples):
        xi = xi_lo + (xi_hi - xi_lo) * k / (samples - 1)
        s = riemann.evaluate(sol, xi)
        lines.append(f"{fmt17(xi)},{fmt17(s.u)},{fmt17(s.v)}")
    return "\n".join(lines) + "\n"


def _profile_csv_limit(lsol, xi_lo, xi_hi, samples) -> str:
    lines = ["xi,u,v"]
    for k in range(samples):
        xi = xi_lo + (xi_hi - xi_lo) * k / (samples - 1)
        m = limit_system.evaluate_limit(lsol, xi, 1.0)
        lines.append(f"{fmt17(xi)},{fmt17(m.u)},{fmt17(m.v)}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    config = _load_config(args.config)
    left = _state(_resolve(args, config, "left", DEFAULT_LEFT), "--left")
    right = _state(_resolve(args, config, "right", DEFAULT_RIGHT), "--right")
    eps = _resolve(args, config, "eps", None)
    samples = int(_resolve(args, config, "samples", 1001))
    if samples < 2:
        raise ValidationError("--samples must be at least 2")
    out = _out_dir(args, config)

    xi_range = _resolve(args, config, "xi_range", None)

    if eps is not None:
        sol = riemann.solve_riemann(left, right, float(eps))
        rng = sol.speed_range()
        lo, hi = (rng[0] - 1.0, rng[1] + 1.0) if rng else (-1.0, 1.0)
        if xi_range is not None:
            lo, hi = _parse_pair(xi_range, "--xi-range")
        doc = {
            "system": "deposition",
            "eps": float(eps),
            "left": {"u": left.u, "v": left.v},
            "right": {"u": right.u, "v": right.v},
            "pattern": sol.pattern.value,
            "middle": {"u": sol.middle.u, "v": sol.middle.v},
            "waves": [_wave_record(w) for w in sol.waves],
        }
        _write(out / "solution.json", dumps(doc))
        _write(out / "profile.csv", _profile_csv_eps(sol, lo, hi, samples))
        print(f"pattern {sol.pattern.value}")
        return 0

    lsol = limit_system.solve_riemann_limit(left, right)
    kinks = concentration._limit_kinks(lsol)
    lo = min(kinks, default=0.0) - 1.0
    hi = max(kinks, default=0.0) + 1.0
    if xi_range is not None:
        lo, hi = _parse_pair(xi_range, "--xi-range")
    doc = {
        "system": "limit",
        "left": {"u": left.u, "v": left.v},
        "right": {"u": right.u, "v": right.v},
        "pattern": lsol.pattern.value,
        "middle": None if lsol.middle is None else {"u": lsol.middle.u, "v": lsol.middle.v},
        "waves": [_limit_wave_record(w) for w in lsol.waves],
    }
    if lsol.delta is not None:
        doc["sigma"] = lsol.delta.sigma
        doc["u_delta"] = lsol.delta.u_delta
        doc["weight_rate"] = lsol.delta.w1
    _write(out / "solution.json", dumps(doc))
    _write(out / "profile.csv", _profile_csv_limit(lsol, lo, hi, samples))
    print(f"pattern {lsol.pattern.value}")
    return 0


# ---------------------------------------------------------- limit-targets


def cmd_limit_targets(args) -> int:
    config = _load_config(args.config)
    left = _state(_resolve(args, config, "left", DEFAULT_LEFT), "--left")
    right = _state(_resolve(args, config, "right", DEFAULT_RIGHT), "--right")
    fmt = _resolve(args, config, "format", "json")
    out = _out_dir(args, config)

    threshold = concentration.epsilon_threshold(left, right)
    try:
        targets = concentration.limit_targets(left, right)
        target_doc = {
            "u_star": targets.u_star,
            "v_star": targets.v_star,
            "sigma1": targets.sigma1,
            "sigma2": targets.sigma2,
            "product": targets.product,
        }
    except concentration.NotCoveredError:
        target_doc = None

    doc = {
        "left": {"u": left.u, "v": left.v},
        "right": {"u": right.u, "v": right.v},
        "regime": threshold.regime.value,
        "threshold": {
            "eps0": threshold.value,
            "unbounded": threshold.is_unbounded,
            "closed_form": threshold.closed_form,
        },
        "targets": target_doc,
    }
    if fmt == "csv":
        lines = ["field,value", f"regime,{threshold.regime.value}", f"eps0,{fmt17(threshold.value)}"]
        if target_doc:
            for k in ("u_star", "v_star", "sigma1", "sigma2", "product"):
                val = target_doc[k]
                lines.append(f"{k},{'' if val is None else fmt17(val)}")
        _write(out / "targets.csv", "\n".join(lines) + "\n")
    else:
        _write(out / "targets.json", dumps(doc))
    print(f"regime {threshold.regime.value} eps0 {fmt17(threshold.value)}")
    return 0


# ----------------------------------------------------------------- sweep


def cmd_sweep(args) -> int:
    config = _load_config(args.config)
    left = _state(_resolve(args, config, "left", DEFAULT_LEFT), "--left")
    right = _state(_resolve(args, config, "right", DEFAULT_RIGHT), "--right")
    eps_text = _resolve(args, config, "eps_list", None)
    eps_list = DEFAULT_EPS_GRID if eps_text is None else _parse_floats(eps_text, "--eps-list")
    out = _out_dir(args, config)

    table = concentration.sweep(left, right, eps_list)
    _write(out / "sweep.csv", concentration.limit_table_csv(table))
    _write(out / "sweep.json", dumps(concentration.limit_table_dict(table)))
    last = table.rows[-1]
    print(f"rows {len(table.rows)} final_eps {fmt17(last.eps)} product {fmt17(last.product)}")
    return 0


# -------------------------------------------------------------- simulate


def _sim_config(args, config) -> central.SimConfig:
    eps = _resolve(args, config, "eps", None)
    if eps is None:
        raise ValidationError("--eps is required")
    domain = _parse_pair(_resolve(args, config, "domain", "-2,2"), "--domain")
    snap_text = _resolve(args, config, "snapshots", None)
    t_end = float(_resolve(args, config, "t_end", 0.4))
    snaps = tuple(_parse_floats(snap_text, "--snapshots")) if snap_text is not None else None
    return central.SimConfig(
        eps=float(eps),
        cfl=float(_resolve(args, config, "cfl", 0.475)),
        t_end=t_end,
        n_cells=int(_resolve(args, config, "cells", 500)),
        x_min=domain[0],
        x_max=domain[1],
        limiter_theta=float(_resolve(args, config, "theta", 1.0)),
        snapshot_times=snaps,
    )


def _snapshot_csv(snap: central.SimSnapshot) -> str:
    lines = ["x,u,v"]
    for x, u, v in zip(snap.grid.centers(), snap.u, snap.v):
        lines.append(f"{fmt17(x)},{fmt17(u)},{fmt17(v)}")
    return "\n".join(lines) + "\n"


def _two_column(snap: central.SimSnapshot, values) -> str:
    lines = [f"{fmt17(x)} {fmt17(y)}" for x, y in zip(snap.grid.centers(), values)]
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> int:
    config = _load_config(args.config)
    left = _state(_resolve(args, config, "left", DEFAULT_LEFT), "--left")
    right = _state(_resolve(args, config, "right", DEFAULT_RIGHT), "--right")
    sim = _sim_config(args, config)
    out = _out_dir(args, config)
    gnuplot = bool(_resolve(args, config, "gnuplot", False))

    snapshots = central.run(sim, left, right)
    for snap in snapshots:
        _write(out / f"sim_eps{sim.eps!r}_t{snap.t!r}.csv", _snapshot_csv(snap))
        if gnuplot:
            stem = f"sim_eps{sim.eps!r}_t{snap.t!r}"
            _write(out / f"{stem}_u.dat", _two_column(snap, snap.u))
            _write(out / f"{stem}_v.dat", _two_column(snap, snap.v))
    doc = {
        "eps": sim.eps,
        "cells": sim.n_cells,
        "cfl": sim.cfl,
        "t_end": sim.t_end,
        "domain": [sim.x_min, sim.x_max],
        "theta": sim.limiter_theta,
        "kernel": central.kernel_name,
        "left": {"u": left.u, "v": left.v},
        "right": {"u": right.u, "v": right.v},
        "snapshots": [{"t": s.t, **s.diagnostics} for s in snapshots],
    }
    _write(out / f"sim_eps{sim.eps!r}_diagnostics.json", dumps(doc))
    final = snapshots[-1]
    print(
        f"t {fmt17(final.t)} v_max {fmt17(final.diagnostics['v_max'])} "
        f"delta_weight {fmt17(final.diagnostics['delta_weight_estimate'])}"
    )
    return 0


# --------------------------------------------------------------- compare


def cmd_compare(args) -> int:
    config = _load_config(args.config)
    left = _state(_resolve(args, config, "left", DEFAULT_LEFT), "--left")
    right = _state(_resolve(args, config, "right", DEFAULT_RIGHT), "--right")
    if getattr(args, "t", None) is not None and getattr(args, "t_end", None) is None:
        args.t_end = args.t
    sim = _sim_config(args, config)
    out = _out_dir(args, config)

    snapshots = central.run(sim, left, right)
    snap = snapshots[-1]
    sol = riemann.solve_riemann(left, right, sim.eps)
    l1 = central.l1_distance(snap, sol)

    sigma = left.u + right.u
    exact_snapshot = central.SimSnapshot(
        snap.t, snap.grid,
        snap.u.copy(), snap.v.copy(), left, right, sim.eps,
    )
    x = snap.grid.centers()
    for i, xi in enumerate(x / snap.t):
        s = riemann.evaluate(sol, xi)
        exact_snapshot.u[i] = s.u
        exact_snapshot.v[i] = s.v
    import warnings as _warnings

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        dw_sim = central.delta_weight_estimate(snap, sigma, 0.2)
        dw_sim_2x = central.delta_weight_estimate(snap, sigma, 0.4)
        dw_exact = central.delta_weight_estimate(exact_snapshot, sigma, 0.2)

    doc = {
        "eps": sim.eps,
        "t": snap.t,
        "cells": sim.n_cells,
        "pattern": sol.pattern.value,
        "l1_u": l1["l1_u"],
        "l1_v": l1["l1_v"],
        "l1": l1["l1"],
        "v_star_exact": sol.middle.v,
        "v_max_sim": float(snap.diagnostics["v_max"]),
        "delta_weight": {
            "sim": dw_sim,
            "sim_2x": dw_sim_2x,
            "exact": dw_exact,
            "limit_rate_times_t": (left.u * right.v - right.u * left.v) * snap.t,
        },
    }
    _write(out / "compare.json", dumps(doc))
    print(f"l1 {fmt17(l1['l1'])} delta_weight_sim {fmt17(dw_sim)}")
    return 0


# ---------------------------------------------------------------- report


def cmd_report(args) -> int:
    config = _load_config(args.config)
    left = _state(_resolve(args, config, "left", DEFAULT_LEFT), "--left")
    right = _state(_resolve(args, config, "right", DEFAULT_RIGHT), "--right")
    eps_text = _resolve(args, config, "eps_list", None)
    eps_list = DEFAULT_EPS_GRID if eps_text is None else _parse_floats(eps_text, "--eps-list")
    out = _out_dir(args, config)

    threshold = concentration.epsilon_threshold(left, right)
    try:
        targets = concentration.limit_targets(left, right)
        target_doc = {
            "u_star": targets.u_star,
            "v_star": targets.v_star,
            "sigma1": targets.sigma1,
            "sigma2": targets.sigma2,
            "product": targets.product,
        }
    except concentration.NotCoveredError:
        target_doc = None
    report = concentration.verify_distributional_limit(left, right, eps_list)

    doc = {
        "left": {"u": left.u, "v": left.v},
        "right": {"u": right.u, "v": right.v},
        "regime": threshold.regime.value,
        "eps0": threshold.value,
        "targets": target_doc,
        "convergence": report.to_dict(),
    }
    _write(out / "report.json", dumps(doc))
    print(f"mode {report.mode} flags {json.dumps(report.flags, sort_keys=True)}")
    return 0


# ----------------------------------------------------------------- main


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--left", help="left state as u,v")
    p.add_argument("--right", help="right state as u,v")
    p.add_argument("--out", help="output directory (default .)")
    p.add_argument("--config", help="JSON file supplying any flag; flags override it")
    p.add_argument("--format", choices=("csv", "json"), help="format for single-file outputs")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depoflux",
        description="Riemann solvers, vanishing-flux limits, and concentration simulations "
        "for the two-equation deposition model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact solution at fixed eps, or the limit system without --eps")
    _add_common(p)
    p.add_argument("--eps", type=float, help="flux parameter; omit to solve the limit system")
    p.add_argument("--xi-range", dest="xi_range", help="profile sampling range a,b in xi = x/t")
    p.add_argument("--samples", type=int, help="profile sample count (default 1001)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("limit-targets", help="closed-form eps->0 limits and the pattern threshold")
    _add_common(p)
    p.set_defaults(func=cmd_limit_targets)

    p = sub.add_parser("sweep", help="tabulate the intermediate state and speeds over an eps grid")
    _add_common(p)
    p.add_argument("--eps-list", dest="eps_list", help="comma-separated eps values (default grid)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="central-scheme run with snapshot CSVs and diagnostics")
    _add_common(p)
    p.add_argument("--eps", type=float, help="flux parameter (required)")
    p.add_argument("--cells", type=int, help="cell count (default 500)")
    p.add_argument("--cfl", type=float, help="CFL number in (0, 0.5) (default 0.475)")
    p.add_argument("--t-end", dest="t_end", type=float, help="final time (default 0.4)")
    p.add_argument("--domain", help="domain a,b (default -2,2)")
    p.add_argument("--theta", type=float, help="limiter weight in [1, 2] (default 1)")
    p.add_argument("--snapshots", help="comma-separated snapshot times (default t_end)")
    p.add_argument("--gnuplot", action="store_const", const=True, default=None,
                   help="also write two-column x/u and x/v extracts")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="simulate, then measure L1 gap and delta weight versus exact")
    _add_common(p)
    p.add_argument("--eps", type=float, help="flux parameter (required)")
    p.add_argument("--t", type=float, help="alias for --t-end")
    p.add_argument("--cells", type=int)
    p.add_argument("--cfl", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--domain", help="domain a,b (default -2,2)")
    p.add_argument("--theta", type=float)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", help="distributional-convergence report over an eps grid")
    _add_common(p)
    p.add_argument("--eps-list", dest="eps_list", help="comma-separated eps values (default grid)")
    p.set_defaults(func=cmd_report)

    return parser


# Flags whose values may begin with a minus sign (argparse would otherwise
# read "-1,1.5" as an option string).
_VALUE_FLAGS = {
    "--left", "--right", "--domain", "--xi-range", "--eps-list",
    "--snapshots", "--eps", "--t", "--t-end", "--theta", "--cfl",
}


def _merge_negative_values(argv: list[str]) -> list[str]:
    merged = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            nxt = argv[i + 1]
            if len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
                merged.append(f"{tok}={nxt}")
                i += 2
                continue
        merged.append(tok)
        i += 1
    return merged


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValidationError, DomainError, concentration.NotCoveredError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def entry():  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
