"""Random and ballistic deposition on a periodic ring.

Blocks rain on each of W sites after independent rate-1 exponential waiting
times.  Random deposition lands a block on top of its column; ballistic
deposition sticks it to the first edge it meets, i.e. the column jumps to
max(h[left], h[here] + 1, h[right]).  Only the top-of-column observable is
stored: internal holes under an overhang never matter for the height, so
they are not tracked.

Two runs built from streams with the same (seed, id) see the same falling
blocks, which is the coupling used to compare the models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import streams
from ._kernels import deposition_kernel
from .errors import ParameterError

KINDS = {"random": 0, "ballistic": 1}


@dataclass(frozen=True)
class DepositionState:
    """Heights over a width-W periodic window at a given time."""

    heights: np.ndarray
    time: float = 0.0
    boundary: str = "periodic"

    def __post_init__(self):
        h = np.asarray(self.heights, dtype=np.int64)
        if h.ndim != 1 or h.size < 1:
            raise ParameterError("heights must be a non-empty 1D array")
        if np.any(h < 0):
            raise ParameterError("heights must be non-negative")
        object.__setattr__(self, "heights", h)

    @property
    def width(self) -> int:
        return self.heights.size


def _check_site(state: DepositionState, site: int) -> int:
    if not 0 <= site < state.width:
        raise IndexError(f"site {site} outside width-{state.width} window")
    return int(site)


def deposit_random(state: DepositionState, site: int) -> DepositionState:
    """Drop one block on top of the column at `site`."""
    site = _check_site(state, site)
    h = state.heights.copy()
    h[site] += 1
    return DepositionState(h, state.time, state.boundary)


def deposit_ballistic(state: DepositionState, site: int) -> DepositionState:
    """Drop one sticky block above `site`: it stops at the first incident edge."""
    site = _check_site(state, site)
    h = state.heights.copy()
    w = state.width
    h[site] = max(h[(site - 1) % w], h[site] + 1, h[(site + 1) % w])
    return DepositionState(h, state.time, state.boundary)


@dataclass(frozen=True)
class DepositionTrajectory:
    times: np.ndarray
    heights: np.ndarray          # (snapshots, width)
    kind: str
    n_events: int

    def state(self, i: int) -> DepositionState:
        return DepositionState(self.heights[i], float(self.times[i]))


def simulate_deposition(kind: str, width: int, t_max: float,
                        stream: streams.RngStream, snap_times=None) -> DepositionTrajectory:
    """Continuous-time deposition with a rate-1 clock per site.

    Realized as Gillespie steps over W equal rates: per event one uniform
    fixes the exponential(W) holding time and one picks the site.  Snapshots
    are right-continuous (all events with time <= snapshot time applied).
    """
    if kind not in KINDS:
        raise ParameterError(f"kind must be one of {sorted(KINDS)}, got {kind!r}")
    if width < 3:
        raise ParameterError("width must be >= 3")
    if t_max <= 0:
        raise ParameterError("t_max must be > 0")
    if snap_times is None:
        snap_times = [t_max]
    snap = np.asarray(sorted(snap_times), dtype=np.float64)
    if snap[0] < 0 or snap[-1] > t_max:
        raise ParameterError("snapshot times must lie in [0, t_max]")
    if snap[-1] < t_max:
        snap = np.append(snap, t_max)
        trim = True
    else:
        trim = False
    snaps, n_events, counter = deposition_kernel(
        KINDS[kind], width, snap, np.uint64(stream.key), np.uint64(stream.counter))
    stream.jump_to(int(counter))
    if trim:
        snaps, snap = snaps[:-1], snap[:-1]
    return DepositionTrajectory(snap, snaps, kind, int(n_events))
