"""File formats: CSV schemas and the compact binary grid layout.

Binary grid layout (documented): 16-byte header of two little-endian
uint64 values (rows, cols), followed by rows*cols little-endian float64
values in row-major order.

CSV floats are written with repr (shortest round-trip), so identical data
always produces identical bytes.
"""

from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np

from .errors import SchemaError

_HEADER = struct.Struct("<QQ")


def _fmt(v) -> str:
    return repr(float(v))


def write_grid_binary(path, grid: np.ndarray) -> None:
    arr = np.ascontiguousarray(np.asarray(grid, dtype=np.float64))
    if arr.ndim != 2:
        raise SchemaError("binary grid layout holds 2D arrays")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(arr.shape[0], arr.shape[1]))
        fh.write(arr.astype("<f8").tobytes(order="C"))


def read_grid_binary(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise SchemaError(f"{path}: truncated header")
    rows, cols = _HEADER.unpack_from(raw)
    expect = _HEADER.size + rows * cols * 8
    if len(raw) != expect:
        raise SchemaError(f"{path}: expected {expect} bytes, found {len(raw)}")
    return np.frombuffer(raw, dtype="<f8", offset=_HEADER.size).reshape(rows, cols).copy()


def write_grid_csv(path, grid: np.ndarray) -> None:
    """Weight grid as rows (x, y, w) with 1-based lattice coordinates."""
    arr = np.asarray(grid, dtype=np.float64)
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["x", "y", "w"])
        for x in range(arr.shape[0]):
            for y in range(arr.shape[1]):
                out.writerow([x + 1, y + 1, _fmt(arr[x, y])])


def read_grid_csv(path) -> np.ndarray:
    rows = _read_rows(path, ["x", "y", "w"])
    xs = np.array([int(r[0]) for r in rows])
    ys = np.array([int(r[1]) for r in rows])
    ws = np.array([float(r[2]) for r in rows])
    grid = np.full((xs.max(), ys.max()), np.nan)
    grid[xs - 1, ys - 1] = ws
    if np.any(np.isnan(grid)):
        raise SchemaError(f"{path}: grid has missing cells")
    return grid


def write_trajectory_csv(path, times, heights) -> None:
    """Interface trajectory as rows (time, site, height)."""
    h = np.asarray(heights)
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["time", "site", "height"])
        for i, t in enumerate(times):
            for site in range(h.shape[1]):
                out.writerow([_fmt(t), site, int(h[i, site])])


def write_samples_csv(path, values, scale=None) -> None:
    """Scalar observations as rows (replicate, N, value)."""
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["replicate", "N", "value"])
        for i, v in enumerate(np.asarray(values, dtype=np.float64)):
            out.writerow([i, "" if scale is None else scale, _fmt(v)])


def read_samples_csv(path) -> np.ndarray:
    rows = _read_rows(path, ["replicate", "N", "value"])
    return np.array([float(r[2]) for r in rows])


def write_points_csv(path, header, rows) -> None:
    """Generic small table; floats via repr, everything else via str."""
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(header)
        for row in rows:
            out.writerow([_fmt(v) if isinstance(v, float) else v for v in row])


def write_particles_csv(path, times, positions) -> None:
    """Particle trajectory as rows (time, particle, position)."""
    pos = np.asarray(positions)
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["time", "particle", "position"])
        for i, t in enumerate(times):
            for j in range(pos.shape[1]):
                out.writerow([_fmt(t), j, int(pos[i, j])])


def write_events_csv(path, events) -> None:
    """Event log as rows (time, site, direction)."""
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["time", "site", "direction"])
        for t, site, direction in events:
            out.writerow([_fmt(t), int(site), int(direction)])


def write_tw_table_csv(path, table) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["s", "F", "f"])
        for s, big_f, small_f in zip(table.s, table.cdf_values, table.pdf_values):
            out.writerow([_fmt(s), _fmt(big_f), _fmt(small_f)])


def read_tw_table_csv(path) -> np.ndarray:
    rows = _read_rows(path, ["s", "F", "f"])
    return np.array([[float(v) for v in r] for r in rows])


def _read_rows(path, expected_header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected_header:
            raise SchemaError(
                f"{path}: header {header} does not match schema {expected_header}")
        return [r for r in reader if r]
