"""(Partially asymmetric) corner growth on +-1-slope height functions.

Local minima flip up (+2) at rate p and local maxima flip down (-2) at rate
q = 1 - p.  Two window styles: a hard window (used with the wedge h(0,x) =
|x|, whose two edge sites never flip) and a periodic ring (used with the
flat 0,1,0,1 sawtooth).  The module also houses the hydrodynamic limit
shape, the KPZ 3:2:1 rescaling, the height <-> particle bijection, the
stationary reversed-wedge law for p < q, and a quenched-clock mode whose
box growth times couple exactly to last passage percolation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from . import streams
from ._kernels import corner_boxcount_kernel, corner_kernel
from .errors import (FrozenStateError, InvariantViolationError,
                     NotPositiveRecurrentError, ParameterError,
                     WindowTooSmallError)


# ---------------------------------------------------------------------------
# State types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymmetryParams:
    """Flip rates: p for minimum -> maximum, q = 1 - p for maximum -> minimum."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p must lie in [0, 1], got {self.p}")
        object.__setattr__(self, "q", 1.0 - self.p)


@dataclass(frozen=True)
class CornerHeight:
    """Integer heights over window [lo, lo + len - 1] with +-1 slope increments."""

    lo: int
    values: np.ndarray
    time: float = 0.0
    init_kind: str = "wedge"
    boundary: str = "window"         # window | ring

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.int64)
        object.__setattr__(self, "values", vals)
        steps = np.abs(np.diff(vals))
        if vals.size < 3 or np.any(steps != 1):
            raise InvariantViolationError("height increments must all be +-1")
        if self.boundary == "ring":
            if vals.size % 2 != 0:
                raise InvariantViolationError("ring window needs an even number of sites")
            if abs(int(vals[0]) - int(vals[-1])) != 1:
                raise InvariantViolationError("ring wrap increment must be +-1")
        elif self.boundary != "window":
            raise ParameterError(f"unknown boundary {self.boundary!r}")

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.lo, self.lo + self.values.size)

    def height(self, x: int) -> int:
        i = x - self.lo
        if not 0 <= i < self.values.size:
            raise IndexError(f"site {x} outside window")
        return int(self.values[i])


@dataclass(frozen=True)
class ParticleConfig:
    """Exclusion configuration on the slope lattice: at most one particle per site."""

    occupied: frozenset
    lo: int
    hi: int                          # sites lo..hi-1 carry one slope increment each


def init_height(kind: str, window) -> CornerHeight:
    """wedge: h(0, x) = |x|; flat: the 0,1 sawtooth h(0, x) = |x| mod 2."""
    lo, hi = int(window[0]), int(window[1])
    if hi <= lo:
        raise ParameterError("window must contain at least two sites")
    x = np.arange(lo, hi + 1)
    if kind == "wedge":
        vals = np.abs(x)
    elif kind == "flat":
        vals = np.abs(x) % 2
    else:
        raise ParameterError(f"unknown initial data {kind!r}")
    boundary = "ring" if kind == "flat" and vals.size % 2 == 0 else "window"
    return CornerHeight(lo, vals, 0.0, kind, boundary)


# ---------------------------------------------------------------------------
# Single-event dynamics (operation level)
# ---------------------------------------------------------------------------

def _extrema(state: CornerHeight):
    h = state.values
    n = h.size
    if state.boundary == "ring":
        left = np.roll(h, 1)
        right = np.roll(h, -1)
        idx = np.arange(n)
    else:
        left = h[:-2]
        right = h[2:]
        h = h[1:-1]
        idx = np.arange(1, n - 1)
    minima = idx[(left > h) & (right > h)]
    maxima = idx[(left < h) & (right < h)]
    return minima, maxima


def step_corner(state: CornerHeight, params: AsymmetryParams, stream: streams.RngStream):
    """One Gillespie event over {minima at rate p} union {maxima at rate q}.

    Returns (new state, event record).  Raises FrozenStateError when no
    eligible event has positive rate.
    """
    minima, maxima = _extrema(state)
    events = []
    if params.p > 0.0:
        events += [((int(i), +1), params.p) for i in minima]
    if params.q > 0.0:
        events += [((int(i), -1), params.q) for i in maxima]
    if not events:
        raise FrozenStateError("no eligible flip under these rates")
    (site_idx, direction), dt = streams.gillespie_step(streams.EventSet(events), stream)
    vals = state.values.copy()
    vals[site_idx] += 2 * direction
    new = CornerHeight(state.lo, vals, state.time + dt, state.init_kind, state.boundary)
    record = {"time": new.time, "site": int(state.lo + site_idx), "direction": direction}
    return new, record


# ---------------------------------------------------------------------------
# Trajectories (kernel-backed)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CornerTrajectory:
    times: np.ndarray
    heights: np.ndarray              # (snapshots, sites)
    lo: int
    init_kind: str
    boundary: str
    n_events: int
    frozen: bool

    def profile(self, i: int) -> np.ndarray:
        return self.heights[i]

    def height_fn(self, time: float, x):
        """Height at (time, site) for tabulated snapshot times and integer sites."""
        matches = np.nonzero(np.isclose(self.times, time))[0]
        if matches.size == 0:
            raise ParameterError(f"time {time} not among snapshot times")
        sites = np.asarray(x)
        if not np.all(sites == np.round(sites)):
            raise ParameterError("height lookups are at integer sites")
        idx = np.asarray(sites, dtype=np.int64) - self.lo
        return self.heights[matches[0]][idx]


def simulate_corner(init: CornerHeight, params: AsymmetryParams, t_max: float,
                    stream: streams.RngStream, snap_times=None) -> CornerTrajectory:
    """Run corner growth to t_max, recording snapshots (default: t_max only).

    Wedge runs demand a window wider than the horizon so the hard walls stay
    outside the growth cone.
    """
    if t_max < 0:
        raise ParameterError("t_max must be >= 0")
    if init.init_kind == "wedge":
        half = min(-init.lo, init.lo + init.values.size - 1)
        if half <= t_max:
            raise WindowTooSmallError(
                f"wedge window half-width {half} must exceed t_max={t_max}")
    if snap_times is None:
        snap_times = [t_max]
    snap = np.asarray(sorted(snap_times), dtype=np.float64)
    if snap.size == 0 or snap[0] < 0 or snap[-1] > t_max:
        raise ParameterError("snapshot times must lie in [0, t_max]")
    if snap[-1] < t_max:
        snap = np.append(snap, t_max)
        trim = True
    else:
        trim = False
    snaps, n_events, counter, frozen = corner_kernel(
        init.values, init.boundary == "ring", params.p, params.q,
        snap, np.uint64(stream.key), np.uint64(stream.counter))
    stream.jump_to(int(counter))
    if trim:
        snaps = snaps[:-1]
        snap = snap[:-1]
    return CornerTrajectory(snap, snaps, init.lo, init.init_kind,
                            init.boundary, int(n_events), bool(frozen))


def stationary_boxcount_samples(params: AsymmetryParams, window_half: int,
                                burn_in: float, interval: float, count: int,
                                stream: streams.RngStream) -> np.ndarray:
    """Box counts (boxes added over the empty wedge) sampled every `interval`
    after `burn_in`, for the reversible regime p < q."""
    if params.p >= params.q:
        raise NotPositiveRecurrentError("stationary sampling needs p < q")
    init = init_height("wedge", (-window_half, window_half))
    times = burn_in + interval * np.arange(1, count + 1)
    counts, _n, counter = corner_boxcount_kernel(
        init.values, False, params.p, params.q, times,
        np.uint64(stream.key), np.uint64(stream.counter))
    stream.jump_to(int(counter))
    return counts


def stationary_box_pmf(p: float, q: float, k: int) -> float:
    """P(k boxes above the empty wedge) = (1 - p/q)(p/q)^k for p < q."""
    if not (0.0 <= p and 0.0 < q):
        raise ParameterError("rates must be non-negative with q > 0")
    if p >= q:
        raise NotPositiveRecurrentError("no stationary law unless p < q")
    if k < 0 or int(k) != k:
        raise ParameterError("box count must be a non-negative integer")
    ratio = p / q
    return (1.0 - ratio) * ratio ** k


# ---------------------------------------------------------------------------
# Hydrodynamics and KPZ rescaling
# ---------------------------------------------------------------------------

def limit_shape(t: float, x):
    """Wedge-growth limit shape: t (1 + (x/t)^2) / 2 inside |x| < t, |x| outside.

    Satisfies d_t h = (1 - (d_x h)^2) / 2 and matches |x| continuously on
    the cone boundary.
    """
    if t <= 0:
        raise ParameterError("limit_shape needs t > 0")
    xa = np.asarray(x, dtype=np.float64)
    inside = np.abs(xa) < t
    vals = np.where(inside, t * (1.0 + (xa / t) ** 2) / 2.0, np.abs(xa))
    return vals if np.ndim(x) else float(vals)


def rescale_height(height_fn, t: float, x: float, eps: float,
                   z: float = 1.5, b: float = 0.5) -> float:
    """KPZ-rescaled height eps^b h(eps^-z t, eps^-1 x) - eps^-1 t / 2."""
    if not 0.0 < eps <= 1.0:
        raise ParameterError("eps must lie in (0, 1]")
    return eps ** b * float(height_fn(eps ** (-z) * t, eps ** (-1.0) * x)) \
        - eps ** (-1.0) * t / 2.0


# ---------------------------------------------------------------------------
# Height <-> particle bijection
# ---------------------------------------------------------------------------

def height_to_particles(state: CornerHeight) -> ParticleConfig:
    """A particle sits at x wherever the increment h(x+1) - h(x) is -1."""
    slopes = np.diff(state.values)
    occupied = frozenset(int(state.lo + i) for i, s in enumerate(slopes) if s == -1)
    return ParticleConfig(occupied, state.lo, state.lo + state.values.size - 1)


def particles_to_height(config: ParticleConfig, anchor: int,
                        time: float = 0.0, init_kind: str = "wedge",
                        boundary: str = "window") -> CornerHeight:
    """Rebuild heights from occupancy: h(lo) = anchor, slope -1 on particles."""
    n_sites = config.hi - config.lo + 1
    slopes = np.ones(n_sites - 1, dtype=np.int64)
    for x in config.occupied:
        i = int(x) - config.lo
        if not 0 <= i < n_sites - 1:
            raise InvariantViolationError(f"particle {x} outside slope window")
        slopes[i] = -1
    vals = anchor + np.concatenate(([0], np.cumsum(slopes)))
    return CornerHeight(config.lo, vals, time, init_kind, boundary)


# ---------------------------------------------------------------------------
# Quenched clocks: exact coupling with last passage percolation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuenchedGrowth:
    """Event-driven wedge growth (p=1, q=0) with pre-drawn waiting times."""

    growth_times: np.ndarray         # (X, Y); time box (x, y) grew
    events: list                     # (time, column, direction=+1) in order


def simulate_corner_quenched(weights) -> QuenchedGrowth:
    """Totally asymmetric wedge growth where each newly eligible minimum is
    armed once with its quenched waiting time (valid by memorylessness).

    weights[x-1, y-1] is the waiting time of box (x, y).  Box (x, y) sits
    over column u = x - y and is the min(x, y)-th box grown there.  The
    returned growth times satisfy, pathwise, the last-passage recursion
    max(parents) + w.
    """
    w = np.asarray(weights.values if hasattr(weights, "values") else weights,
                   dtype=np.float64)
    nx, ny = w.shape
    grown = np.zeros((nx + 1, ny + 1), dtype=bool)   # 1-based; row/col 0 = boundary
    grown[0, :] = True
    grown[:, 0] = True
    times = np.full((nx + 1, ny + 1), np.inf)
    times[0, :] = 0.0
    times[:, 0] = 0.0
    out = np.full((nx, ny), np.inf)
    events = []
    heap = [(w[0, 0], 1, 1)]
    while heap:
        t, x, y = heapq.heappop(heap)
        times[x, y] = t
        grown[x, y] = True
        out[x - 1, y - 1] = t
        events.append((t, x - y, +1))
        for nx_, ny_ in ((x + 1, y), (x, y + 1)):
            if nx_ <= nx and ny_ <= ny and not grown[nx_, ny_]:
                if grown[nx_ - 1, ny_] and grown[nx_, ny_ - 1]:
                    armed = max(times[nx_ - 1, ny_], times[nx_, ny_ - 1])
                    heapq.heappush(heap, (armed + w[nx_ - 1, ny_ - 1], nx_, ny_))
    return QuenchedGrowth(out, events)
