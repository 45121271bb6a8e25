"""Render paper-style figures from the workbench's documented CSV outputs.

A figure spec is a TOML file:

    [figure]
    kind = "shape-overlay"        # interface | shape-overlay | density |
                                  # log-density | regression
    output = "overlay.svg"        # .svg or .png

    [figure.inputs]
    overlay = "shape_overlay.csv" # role -> CSV path, roles depend on kind

Input roles and their header schemas:

    interface      trajectory: time,site,height
    shape-overlay  overlay:    x_over_t,height_over_t,limit
    density        table:      s,F,f        samples (optional): replicate,N,value
    log-density    table:      s,F,f
    regression     points:     scale,dispersion,fit

Every plotted number comes straight from a CSV; nothing is recomputed here.
Output bytes are deterministic for identical inputs (fixed style, no
timestamps, pinned SVG hash salt).
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

try:
    import tomllib
except ModuleNotFoundError:                       # python 3.10
    import tomli as tomllib

plt.rcParams["svg.hashsalt"] = "kpzfigures"
plt.rcParams["figure.figsize"] = (7.0, 4.5)
plt.rcParams["figure.dpi"] = 110

_SCHEMAS = {
    "trajectory": ["time", "site", "height"],
    "overlay": ["x_over_t", "height_over_t", "limit"],
    "table": ["s", "F", "f"],
    "samples": ["replicate", "N", "value"],
    "points": ["scale", "dispersion", "fit"],
}

_REQUIRED = {
    "interface": ["trajectory"],
    "shape-overlay": ["overlay"],
    "density": ["table"],
    "log-density": ["table"],
    "regression": ["points"],
}

_OPTIONAL = {"density": ["samples"]}


class FigureSpecError(ValueError):
    """Spec or input CSV does not match the documented schemas."""


def _read_csv(path, role):
    expected = _SCHEMAS[role]
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise FigureSpecError(
                f"{path}: header mismatch for role {role!r}\n"
                f"  expected: {expected}\n  found:    {header}")
        rows = [r for r in reader if r]
    if not rows:
        raise FigureSpecError(f"{path}: no data rows")
    cols = {}
    for j, name in enumerate(expected):
        try:
            cols[name] = np.array([float(r[j]) for r in rows])
        except ValueError:
            cols[name] = np.array([r[j] for r in rows])
    return cols


def load_spec(path) -> dict:
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    fig = raw.get("figure")
    if not isinstance(fig, dict):
        raise FigureSpecError("spec needs a [figure] table")
    kind = fig.get("kind")
    if kind not in _REQUIRED:
        raise FigureSpecError(f"unknown figure kind {kind!r}; "
                              f"choose from {sorted(_REQUIRED)}")
    inputs = fig.get("inputs", {})
    missing = [r for r in _REQUIRED[kind] if r not in inputs]
    if missing:
        raise FigureSpecError(f"kind {kind!r} needs input roles {missing}")
    unknown = [r for r in inputs
               if r not in _REQUIRED[kind] + _OPTIONAL.get(kind, [])]
    if unknown:
        raise FigureSpecError(f"kind {kind!r} does not take inputs {unknown}")
    if "output" not in fig:
        raise FigureSpecError("spec needs figure.output")
    base = Path(path).parent
    return {
        "kind": kind,
        "output": str((base / fig["output"])),
        "inputs": {role: str(base / p) for role, p in inputs.items()},
    }


# ---------------------------------------------------------------------------
# renderers
# ---------------------------------------------------------------------------

def _render_interface(data, ax):
    t = data["trajectory"]
    for time in np.unique(t["time"]):
        sel = t["time"] == time
        ax.step(t["site"][sel], t["height"][sel], where="mid",
                label=f"t = {time:g}")
    ax.set_xlabel("site")
    ax.set_ylabel("height")
    ax.legend(frameon=False)


def _render_shape_overlay(data, ax):
    o = data["overlay"]
    ax.plot(o["x_over_t"], o["height_over_t"], color="tab:blue", lw=1.2,
            label="simulation h(t, x)/t")
    ax.plot(o["x_over_t"], o["limit"], color="tab:red", lw=1.5,
            label="limit shape")
    ax.set_xlabel("x / t")
    ax.set_ylabel("height / t")
    ax.legend(frameon=False)


def _render_density(data, ax):
    t = data["table"]
    if "samples" in data:
        ax.hist(data["samples"]["value"], bins=60, density=True,
                color="0.8", label="samples")
    ax.plot(t["s"], t["f"], color="tab:red", lw=1.5, label="density")
    ax.set_xlabel("s")
    ax.set_ylabel("density")
    ax.set_xlim(t["s"].min(), min(t["s"].max(), 6.0))
    ax.legend(frameon=False)


def _render_log_density(data, ax):
    t = data["table"]
    keep = t["f"] > 0
    ax.plot(t["s"][keep], np.log(t["f"][keep]), color="tab:red", lw=1.5)
    ax.set_xlabel("s")
    ax.set_ylabel("log density")


def _render_regression(data, ax):
    p = data["points"]
    ax.loglog(p["scale"], p["dispersion"], "o", color="tab:blue",
              label="measured dispersion")
    ax.loglog(p["scale"], p["fit"], "-", color="tab:red", label="power-law fit")
    ax.set_xlabel("scale")
    ax.set_ylabel("dispersion")
    ax.legend(frameon=False)


_RENDERERS = {
    "interface": _render_interface,
    "shape-overlay": _render_shape_overlay,
    "density": _render_density,
    "log-density": _render_log_density,
    "regression": _render_regression,
}


def render(spec: dict) -> str:
    """Render one figure spec; returns the output path."""
    data = {role: _read_csv(path, role) for role, path in spec["inputs"].items()}
    fig, ax = plt.subplots()
    try:
        _RENDERERS[spec["kind"]](data, ax)
        out = spec["output"]
        save_kwargs = {}
        if out.endswith(".svg"):
            save_kwargs["metadata"] = {"Date": None}
        fig.savefig(out, **save_kwargs)
    finally:
        plt.close(fig)
    return spec["output"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="kpzfigures",
                                 description="render figures from kpzlab CSVs")
    ap.add_argument("--spec", required=True, action="append",
                    help="figure spec TOML (repeatable)")
    args = ap.parse_args(argv)
    try:
        for spec_path in args.spec:
            out = render(load_spec(spec_path))
            print(f"rendered {out}")
    except FigureSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
