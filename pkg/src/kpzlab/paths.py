"""Deterministic solvers over random environments: last passage percolation,
longest increasing subsequence, stoplight first passage percolation, the
log-gamma polymer free energy, and random walks in a space-time environment.

Grids are stored as arrays indexed ``w[x-1, y-1]`` for lattice coordinates
(x, y) starting at (1, 1).  Solvers are pure functions of their grids; grid
generation is the only part that consumes a random stream.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from . import streams
from ._kernels import (fpp_kernel, lpp_corner_from_flat, lpp_grid_kernel,
                       polymer_logz_kernel, rwre_max_kernel)
from .errors import CoverageError, ParameterError

_SQRT = np.sqrt


# ---------------------------------------------------------------------------
# Weight grids
# ---------------------------------------------------------------------------

@dataclass
class WeightGrid:
    """2D array of path weights with its distribution tag."""

    values: np.ndarray
    kind: str = "fixed"            # exponential | geometric | inverse_gamma | fixed

    def __post_init__(self):
        w = np.asarray(self.values, dtype=np.float64)
        if w.ndim != 2 or w.size == 0:
            raise ParameterError("weight grid must be a non-empty 2D array")
        if self.kind == "inverse_gamma":
            if np.any(w <= 0.0):
                raise ParameterError("inverse-gamma weights must be strictly positive")
        elif np.any(w < 0.0):
            raise ParameterError("path weights must be non-negative")
        self.values = w

    @property
    def shape(self):
        return self.values.shape


def generate_weight_grid(kind: str, shape, stream: streams.RngStream,
                         rate: float = 1.0, p: float = 0.5,
                         gamma_shape: float = 2.0) -> WeightGrid:
    """Draw an iid weight grid; cells are filled in row-major (x-major) order."""
    nx, ny = shape
    n = nx * ny
    if kind == "exponential":
        w = streams.exponential(stream, rate, size=n)
    elif kind == "geometric":
        w = streams.geometric(stream, p, size=n).astype(np.float64)
    elif kind == "inverse_gamma":
        w = streams.inverse_gamma(stream, gamma_shape, size=n)
    else:
        raise ParameterError(f"unknown weight kind {kind!r}")
    return WeightGrid(np.asarray(w, dtype=np.float64).reshape(nx, ny), kind)


# ---------------------------------------------------------------------------
# Last passage percolation and the LIS cousin
# ---------------------------------------------------------------------------

def lpp(weights) -> np.ndarray:
    """Last passage times L(x, y) = max(L(x-1, y), L(x, y-1)) + w(x, y).

    Boundary L(x, 0) = L(0, y) = 0; equivalently L(x, y) is the max total
    weight over up/right lattice paths from (1, 1) to (x, y).
    """
    grid = weights if isinstance(weights, WeightGrid) else WeightGrid(weights)
    return lpp_grid_kernel(grid.values)


def lpp_shape(x: float, y: float) -> float:
    """Law-of-large-numbers limit of L(Nx, Ny)/N for exponential(1) weights."""
    if x <= 0 or y <= 0:
        raise ParameterError("lpp_shape needs positive coordinates")
    return (np.sqrt(x) + np.sqrt(y)) ** 2


def lpp_diagonal_samples(n: int, count: int, stream: streams.RngStream) -> np.ndarray:
    """iid samples of L(n, n) over fresh exponential(1) grids.

    Each sample consumes n*n uniforms in row-major cell order; the running
    passage-time row keeps memory at O(n) beyond the weight block.
    """
    if n < 1 or count < 1:
        raise ParameterError("need n >= 1 and count >= 1")
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        w = -np.log1p(-stream.uniform(n * n))
        out[i] = lpp_corner_from_flat(w, n)
    return out


def random_permutation(n: int, stream: streams.RngStream) -> np.ndarray:
    """Uniform permutation of 1..n (argsort of iid uniforms)."""
    u = stream.uniform(n)
    return np.argsort(u) + 1


def lis(permutation) -> int:
    """Length of the longest increasing subsequence, by patience sorting.

    Input must be a permutation of 1..n (distinct entries make strict
    increase unambiguous); anything else is rejected.
    """
    perm = np.asarray(permutation)
    n = perm.size
    if n == 0:
        raise ParameterError("empty permutation")
    if not np.issubdtype(perm.dtype, np.integer) or \
            not np.array_equal(np.sort(perm), np.arange(1, n + 1)):
        raise ParameterError("input is not a permutation of 1..n")
    piles: list[int] = []
    for v in perm:
        i = bisect_left(piles, v)
        if i == len(piles):
            piles.append(int(v))
        else:
            piles[i] = int(v)
    return len(piles)


# ---------------------------------------------------------------------------
# Stoplight first passage percolation
# ---------------------------------------------------------------------------

@dataclass
class StoplightEnv:
    """Per-vertex (rightward, upward) edge waiting times; exactly one is zero."""

    right_w: np.ndarray
    up_w: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.right_w, dtype=np.float64)
        u = np.asarray(self.up_w, dtype=np.float64)
        if r.shape != u.shape or r.ndim != 2:
            raise ParameterError("stoplight env needs two equal-shape 2D arrays")
        if np.any(r < 0.0) or np.any(u < 0.0):
            raise ParameterError("edge waiting times must be non-negative")
        # one edge per vertex is free; the paid edge is almost surely positive
        # but a zero draw is legal, so only the free side is enforced
        if not np.all((r == 0.0) | (u == 0.0)):
            raise ParameterError("each vertex needs a zero-cost outgoing edge")
        self.right_w = r
        self.up_w = u

    @property
    def shape(self):
        return self.right_w.shape


def generate_stoplight_env(nx: int, ny: int, stream: streams.RngStream) -> StoplightEnv:
    """Fair coin per vertex: one direction free, the other exponential(1)."""
    n = nx * ny
    coins = streams.bernoulli(stream, 0.5, size=n).reshape(nx, ny)
    waits = streams.exponential(stream, 1.0, size=n).reshape(nx, ny)
    right_w = np.where(coins == 1, 0.0, waits)
    up_w = np.where(coins == 1, waits, 0.0)
    return StoplightEnv(right_w, up_w)


def fpp_stoplight(env: StoplightEnv, target, endpoint_mode: str = "vertical_line") -> float:
    """Minimal passage time from (1,1) under the chosen endpoint convention.

    vertical_line: the path may stop anywhere on the vertical line at or
    above the target (the solvable convention); exact: the path must end at
    the target itself (the open-problem variant).
    """
    x, y = target
    nx, ny = env.shape
    if not (1 <= x <= nx and 1 <= y <= ny):
        raise IndexError(f"target {target} outside the {nx}x{ny} grid")
    passage = fpp_kernel(env.right_w, env.up_w)
    if endpoint_mode == "exact":
        return float(passage[x - 1, y - 1])
    if endpoint_mode == "vertical_line":
        return float(passage[x - 1, y - 1:].min())
    raise ParameterError(f"unknown endpoint_mode {endpoint_mode!r}")


# ---------------------------------------------------------------------------
# Log-gamma polymer
# ---------------------------------------------------------------------------

def polymer_log_z(weights) -> np.ndarray:
    """Free energy log Z(x, y) of the (+, x) detropicalization of LPP.

    Z(x, y) = (Z(x-1, y) + Z(x, y-1)) * w(x, y) with Z zero off-grid and
    Z(1, 1) = w(1, 1), accumulated in log space (two-term log-sum-exp with
    the max shift; plain Z overflows doubles near grid size 1e3).
    """
    grid = weights if isinstance(weights, WeightGrid) else WeightGrid(weights, "fixed")
    if np.any(grid.values <= 0.0):
        raise ParameterError("polymer weights must be strictly positive")
    return polymer_logz_kernel(np.log(grid.values))


# ---------------------------------------------------------------------------
# Random walk in a space-time random environment
# ---------------------------------------------------------------------------

@dataclass
class SpaceTimeEnv:
    """u[y + horizon, s]: probability of stepping left from position y at time s."""

    u: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.u, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != 2 * arr.shape[1] + 1:
            raise ParameterError("environment must have shape (2T+1, T)")
        if np.any((arr < 0.0) | (arr > 1.0)):
            raise ParameterError("environment entries must lie in [0, 1]")
        self.u = arr

    @property
    def horizon(self) -> int:
        return self.u.shape[1]


def generate_space_time_env(horizon: int, stream: streams.RngStream) -> SpaceTimeEnv:
    """iid uniform environment covering the light cone of `horizon` steps."""
    if horizon < 1:
        raise ParameterError("horizon must be >= 1")
    n_rows = 2 * horizon + 1
    u = stream.uniform(n_rows * horizon).reshape(n_rows, horizon)
    return SpaceTimeEnv(u)


def rwre_walk(env: SpaceTimeEnv, t_max: int, stream: streams.RngStream) -> np.ndarray:
    """One walk X(0..t_max): from (y, s) step to y-1 w.p. u[y, s], else y+1."""
    t_hor = env.horizon
    if t_max > t_hor:
        raise CoverageError(f"walk of {t_max} steps needs horizon >= {t_max}, have {t_hor}")
    path = np.zeros(t_max + 1, dtype=np.int64)
    pos = 0
    for s in range(t_max):
        if stream.uniform() < env.u[pos + t_hor, s]:
            pos -= 1
        else:
            pos += 1
        path[s + 1] = pos
    return path


def rwre_max(env: SpaceTimeEnv, t: int, n_walkers: int, stream: streams.RngStream) -> int:
    """M(t, N): max position at time t over N walks through the same environment.

    Walker k consumes the stream block [k*t, (k+1)*t), so walker sets are
    nested: rerunning with larger N extends, never reshuffles, the walks.
    """
    if n_walkers < 1:
        raise ParameterError("need at least one walker")
    if t > env.horizon:
        raise CoverageError(f"t={t} exceeds environment horizon {env.horizon}")
    best, counter = rwre_max_kernel(env.u, env.horizon, t, n_walkers,
                                    np.uint64(stream.key), np.uint64(stream.counter))
    stream.jump_to(int(counter))
    return int(best)
