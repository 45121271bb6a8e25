"""Experiment orchestration: validated TOML configs in, file artifacts out.

Subcommands
-----------
simulate     run a growth / particle model for R replicates, export CSVs
solve        build a random environment and run a path solver on it
tw-table     regenerate a Tracy-Widom table, optionally diff against a golden
estimate     run an estimator over a CSV produced by this tool
accept       run acceptance criteria; exit 0 iff all invoked criteria pass
report-data  re-emit the CSV inputs consumed by the figures component

Every run is a pure function of its config (randomness flows only from
master_seed), so rerunning a config reproduces identical bytes.  The
manifest.json records the config hash, package version and per-replicate
stream ids with fixed key order.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:                       # python 3.10
    import tomli as tomllib

from . import (__version__, acceptance, corner, deposition, gridio, paths,
               qsystems, stats, streams, tracywidom)
from .errors import ConfigError, GoldenMismatchError, KpzlabError

# ---------------------------------------------------------------------------
# Config validation (schema mirrored in configs/schema.json)
# ---------------------------------------------------------------------------

_COMMON_KEYS = {
    "model": str, "master_seed": int, "replicates": int,
    "t_max": (int, float), "snap_times": list, "params": dict,
}

_MODEL_PARAM_KEYS = {
    "deposition": {"kind": str, "width": int},
    "corner": {"init": str, "p": (int, float), "window_half": int, "ring": int},
    "qtasep": {"n": int, "q": (int, float)},
    "qpushasep": {"n": int, "q": (int, float), "left_rate": (int, float)},
}

_SOLVER_KEYS = {
    "solver": str, "master_seed": int, "replicates": int, "params": dict,
}

_SOLVER_PARAM_KEYS = {
    "lpp": {"nx": int, "ny": int, "kind": str, "rate": (int, float),
            "p": (int, float), "gamma_shape": (int, float)},
    "polymer": {"nx": int, "ny": int, "gamma_shape": (int, float)},
    "fpp": {"nx": int, "ny": int, "x": int, "y": int, "endpoint_mode": str},
    "lis": {"n": int},
    "rwre_max": {"t": int, "n_walkers": int},
}


def _validate(table: dict, schema: dict, path: str) -> None:
    for key, value in table.items():
        if key not in schema:
            raise ConfigError(f"{path}.{key}: unknown key")
        expected = schema[key]
        if not isinstance(expected, dict) and not isinstance(value, expected):
            raise ConfigError(f"{path}.{key}: expected {expected}, got {type(value).__name__}")


def load_config(path, seed_override=None) -> dict:
    with open(path, "rb") as fh:
        cfg = tomllib.load(fh)
    if "run" in cfg:
        run = cfg["run"]
        _validate(run, _COMMON_KEYS, "run")
        model = run.get("model")
        if model not in _MODEL_PARAM_KEYS:
            raise ConfigError(f"run.model: unknown model {model!r}")
        _validate(run.get("params", {}), _MODEL_PARAM_KEYS[model], "run.params")
    elif "solve" in cfg:
        block = cfg["solve"]
        _validate(block, _SOLVER_KEYS, "solve")
        solver = block.get("solver")
        if solver not in _SOLVER_PARAM_KEYS:
            raise ConfigError(f"solve.solver: unknown solver {solver!r}")
        _validate(block.get("params", {}), _SOLVER_PARAM_KEYS[solver], "solve.params")
    else:
        raise ConfigError("config needs a [run] or [solve] table")
    if seed_override is not None:
        (cfg.get("run") or cfg.get("solve"))["master_seed"] = int(seed_override)
    return cfg


def _config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()


def _write_manifest(out_dir: Path, cfg: dict, outputs, stream_ids) -> None:
    manifest = {
        "config": cfg,
        "config_sha256": _config_hash(cfg),
        "outputs": sorted(Path(p).name for p in outputs),
        "stream_ids": list(stream_ids),
        "version": __version__,
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _simulate_replicate(run: dict, rep: int):
    model = run["model"]
    params = run.get("params", {})
    t_max = float(run.get("t_max", 100.0))
    snaps = run.get("snap_times", [t_max])
    st = streams.make_stream(run["master_seed"], rep)
    if model == "deposition":
        traj = deposition.simulate_deposition(params.get("kind", "random"),
                                              params.get("width", 64), t_max, st, snaps)
        return traj.times, traj.heights
    if model == "corner":
        if params.get("init", "wedge") == "wedge":
            half = params.get("window_half", int(t_max) + 8 * int(np.sqrt(t_max)) + 4)
            init = corner.init_height("wedge", (-half, half))
        else:
            ring = params.get("ring", 256)
            init = corner.init_height("flat", (0, ring - 1))
        traj = corner.simulate_corner(init, corner.AsymmetryParams(params.get("p", 1.0)),
                                      t_max, st, snaps)
        return traj.times, traj.heights
    if model in ("qtasep", "qpushasep"):
        init = qsystems.step_initial(params.get("n", 100), params.get("q", 0.5),
                                     params.get("left_rate", 0.0))
        if model == "qtasep":
            traj = qsystems.simulate_qtasep(init, t_max, st, snaps)
        else:
            traj = qsystems.simulate_qpushasep(init, t_max, st, snaps)
        return traj.times, traj.positions
    raise ConfigError(f"unknown model {model!r}")


def cmd_simulate(args) -> int:
    cfg = load_config(args.config, args.seed)
    run = cfg["run"]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    reps = int(run.get("replicates", 1))
    particle_model = run["model"] in ("qtasep", "qpushasep")
    for rep in range(reps):                     # replicate = pure fn of (cfg, rep)
        times, values = _simulate_replicate(run, rep)
        path = out_dir / f"{run['model']}_rep{rep:04d}.csv"
        if particle_model:
            gridio.write_particles_csv(path, times, values)
        else:
            gridio.write_trajectory_csv(path, times, values)
        outputs.append(path)
    _write_manifest(out_dir, cfg, outputs, range(reps))
    print(f"wrote {len(outputs)} trajectories to {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    cfg = load_config(args.config, args.seed)
    block = cfg["solve"]
    params = block.get("params", {})
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    solver = block["solver"]
    outputs = []
    reps = int(block.get("replicates", 1))
    rows = []
    for rep in range(reps):
        st = streams.make_stream(block["master_seed"], rep)
        if solver in ("lpp", "polymer"):
            shape = (params.get("nx", 32), params.get("ny", 32))
            kind = "inverse_gamma" if solver == "polymer" else params.get("kind", "exponential")
            grid = paths.generate_weight_grid(
                kind, shape, st, rate=params.get("rate", 1.0),
                p=params.get("p", 0.5), gamma_shape=params.get("gamma_shape", 2.0))
            if rep == 0:
                gridio.write_grid_csv(out_dir / f"{solver}_weights.csv", grid.values)
                gridio.write_grid_binary(out_dir / f"{solver}_weights.bin", grid.values)
                outputs += [out_dir / f"{solver}_weights.csv", out_dir / f"{solver}_weights.bin"]
            sol = paths.lpp(grid) if solver == "lpp" else paths.polymer_log_z(grid)
            rows.append((rep, shape[0], float(sol[-1, -1])))
        elif solver == "fpp":
            env = paths.generate_stoplight_env(params.get("nx", 64), params.get("ny", 64), st)
            val = paths.fpp_stoplight(env, (params.get("x", 32), params.get("y", 32)),
                                      params.get("endpoint_mode", "vertical_line"))
            rows.append((rep, params.get("x", 32), float(val)))
        elif solver == "lis":
            perm = paths.random_permutation(params.get("n", 1000), st)
            rows.append((rep, params.get("n", 1000), float(paths.lis(perm))))
        elif solver == "rwre_max":
            t = params.get("t", 256)
            env = paths.generate_space_time_env(t, st)
            st2 = streams.make_stream(block["master_seed"], 100000 + rep)
            rows.append((rep, t, float(paths.rwre_max(env, t, params.get("n_walkers", 100), st2))))
        else:
            raise ConfigError(f"unknown solver {solver!r}")
    sample_path = out_dir / f"{solver}_values.csv"
    gridio.write_points_csv(sample_path, ["replicate", "N", "value"], rows)
    outputs.append(sample_path)
    _write_manifest(out_dir, cfg, outputs, range(reps))
    print(f"wrote {solver} outputs to {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# tw-table
# ---------------------------------------------------------------------------

def cmd_tw_table(args) -> int:
    table = tracywidom.tw_table(args.ensemble)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = f"tw_{args.ensemble.lower()}"
    csv_path = out_dir / f"{name}.csv"
    bin_path = out_dir / f"{name}.bin"
    gridio.write_tw_table_csv(csv_path, table)
    gridio.write_grid_binary(bin_path, np.column_stack(
        [table.s, table.cdf_values, table.pdf_values]))
    print(f"wrote {csv_path} and {bin_path}")
    if args.golden:
        golden = gridio.read_tw_table_csv(args.golden)
        fresh = np.column_stack([table.s, table.cdf_values, table.pdf_values])
        if golden.shape != fresh.shape:
            raise GoldenMismatchError(
                f"golden shape {golden.shape} != regenerated {fresh.shape}")
        worst = float(np.max(np.abs(golden - fresh)))
        print(f"max |regenerated - golden| = {worst:.3e} (tolerance {args.tolerance})")
        if worst > args.tolerance:
            raise GoldenMismatchError(
                f"table deviates from golden by {worst:.3e} > {args.tolerance}")
    return 0


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------

def cmd_estimate(args) -> int:
    if args.kind == "exponent":
        rows = gridio._read_rows(args.input, ["scale", "dispersion", "fit"]) \
            if args.fitted else gridio._read_rows(args.input, ["scale", "dispersion", "count"])
        pts = [stats.ScalePoint(float(r[0]), float(r[1]),
                                int(r[2]) if not args.fitted else 0) for r in rows]
        slope, intercept, resid = stats.estimate_exponent(pts)
        result = {"intercept": intercept, "kind": "exponent",
                  "residual_rms": resid, "slope": slope}
    elif args.kind == "ks":
        values = gridio.read_samples_csv(args.input)
        if args.reference == "normal":
            ref = stats.gaussian_cdf
        else:
            ref = tracywidom.tw_table(args.reference.upper()).standardized_cdf
        z = stats.standardize(values)
        result = {"kind": "ks", "n": int(values.size),
                  "reference": args.reference,
                  "statistic": stats.ks_distance(z, ref)}
    else:
        raise ConfigError(f"unknown estimator {args.kind!r}")
    text = json.dumps(result, indent=2, sort_keys=True)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return 0


# ---------------------------------------------------------------------------
# accept / report-data
# ---------------------------------------------------------------------------

def cmd_accept(args) -> int:
    which = set(args.criteria.split(",")) if args.criteria else None
    results = acceptance.run_criteria(which, args.out)
    all_ok = True
    for res in results:
        mark = "PASS" if res["passed"] else "FAIL"
        print(f"[{mark}] {res['id']}: {res['title']} ({res['seconds']}s)")
        for c in res["checks"]:
            sub = "pass" if c["passed"] else "FAIL"
            print(f"    {sub}  {c['name']} = {c['statistic']} ({c['op']} {c['threshold']})")
        all_ok &= res["passed"]
    return 0 if all_ok else 1


_REPORT_SETS = {
    "shape-overlay": ["c01_rost_shape"],
    "tw-density": ["c04_tw_fit", "c05_tw_moments"],
    "regressions": ["c03_lpp_exponent", "c07_crossover", "c10_qsystems", "c12_rwre"],
}


def cmd_report_data(args) -> int:
    if args.which not in _REPORT_SETS:
        raise ConfigError(f"--which must be one of {sorted(_REPORT_SETS)}")
    acceptance.run_criteria(_REPORT_SETS[args.which], args.out)
    print(f"wrote {args.which} figure inputs to {args.out}")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kpzlab",
                                 description="growth-model simulation workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a model from a TOML config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None, help="override master_seed")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("solve", help="run a lattice-path solver from a TOML config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("tw-table", help="regenerate a Tracy-Widom table")
    p.add_argument("--ensemble", choices=["GUE", "GOE"], required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--golden", default=None, help="CSV golden to diff against")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(fn=cmd_tw_table)

    p = sub.add_parser("estimate", help="run an estimator over a CSV")
    p.add_argument("--kind", choices=["exponent", "ks"], required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--reference", default="gue", help="ks reference: gue|goe|normal")
    p.add_argument("--fitted", action="store_true",
                   help="input carries a fit column instead of counts")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_estimate)

    p = sub.add_parser("accept", help="run acceptance criteria")
    p.add_argument("--criteria", default=None,
                   help="comma-separated ids (c01..c12); default all")
    p.add_argument("--out", default=None, help="write acceptance.json + artifacts here")
    p.set_defaults(fn=cmd_accept)

    p = sub.add_parser("report-data", help="emit figure-input CSVs")
    p.add_argument("--which", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_report_data)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except KpzlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
