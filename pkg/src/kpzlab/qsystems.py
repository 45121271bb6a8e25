"""q-TASEP and q-pushASEP: gap-sensitive exclusion dynamics.

Particles live on Z with positions x_1 > x_2 > ... > x_N (label 1 is the
right-most).  In q-TASEP particle i jumps right at rate 1 - q^gap_i where
gap_i counts the empty sites to its right neighbor (the leader's gap is
infinite, so its rate is exactly 1).  q-pushASEP adds rate-L left jumps;
a realized left jump pushes the next particle left with probability q^gap
(gap measured before the jumps), cascading instantaneously until a push
fails.

Finite-N truncation: the infinite systems are run with N particles in step
position (-1, ..., -N); results are faithful while the deepest particle's
statistics are unaffected, which the current-observable runs monitor by
choosing N at least as large as the horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import streams
from ._kernels import qpush_kernel, qtasep_kernel
from .errors import InvariantViolationError, ParameterError


@dataclass(frozen=True)
class OrderedParticles:
    """Strictly decreasing particle positions plus the (q, L) rate parameters."""

    positions: np.ndarray
    q: float
    left_rate: float = 0.0

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.int64)
        if pos.ndim != 1 or pos.size == 0:
            raise ParameterError("need a non-empty 1D position array")
        if np.any(np.diff(pos) >= 0):
            raise InvariantViolationError("positions must be strictly decreasing")
        if not 0.0 <= self.q < 1.0:
            raise ParameterError(f"q must lie in [0, 1), got {self.q}")
        if self.left_rate < 0.0:
            raise ParameterError("left-jump rate must be >= 0")
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return self.positions.size

    def gap(self, i: int) -> float:
        """Empty sites between particle i (0-based) and its right neighbor."""
        if i == 0:
            return math.inf
        return float(self.positions[i - 1] - self.positions[i] - 1)


def step_initial(n: int, q: float, left_rate: float = 0.0) -> OrderedParticles:
    """Step initial data: particles at -1, -2, ..., -n."""
    if n < 1:
        raise ParameterError("need at least one particle")
    return OrderedParticles(-np.arange(1, n + 1), q, left_rate)


def qtasep_rate(q: float, gap) -> float:
    """Right-jump rate 1 - q^gap (gap = inf for the unimpeded leader)."""
    if not 0.0 <= q < 1.0:
        raise ParameterError(f"q must lie in [0, 1), got {q}")
    if gap != math.inf:
        if gap < 0 or int(gap) != gap:
            raise ParameterError("gap must be a non-negative integer or inf")
    return 1.0 - q ** gap


@dataclass(frozen=True)
class ParticleTrajectory:
    times: np.ndarray
    positions: np.ndarray        # (snapshots, N); empty if not recorded
    currents: np.ndarray         # particles at position >= 0 per snapshot
    n_events: int
    events: np.ndarray | None = None   # (time, particle, displacement) rows


def _snap_array(t_max: float, snap_times):
    if t_max <= 0:
        raise ParameterError("t_max must be > 0")
    if snap_times is None:
        snap_times = [t_max]
    snap = np.asarray(sorted(snap_times), dtype=np.float64)
    if snap.size == 0 or snap[0] < 0 or snap[-1] > t_max:
        raise ParameterError("snapshot times must lie in [0, t_max]")
    if snap[-1] < t_max:
        return np.append(snap, t_max), True
    return snap, False


def simulate_qtasep(init: OrderedParticles, t_max: float, stream: streams.RngStream,
                    snap_times=None, record_positions: bool = True) -> ParticleTrajectory:
    """Gillespie q-TASEP from `init` (exclusion checked after every jump)."""
    snap, trim = _snap_array(t_max, snap_times)
    snaps, currents, n_events, counter, ok = qtasep_kernel(
        init.positions, init.q, snap,
        np.uint64(stream.key), np.uint64(stream.counter), record_positions)
    stream.jump_to(int(counter))
    if not ok:
        raise InvariantViolationError("exclusion violated during q-TASEP run")
    if trim:
        snap = snap[:-1]
        currents = currents[:-1]
        snaps = snaps[:-1] if record_positions else snaps
    return ParticleTrajectory(snap, snaps, currents, int(n_events))


def _cascade(pos: np.ndarray, jumper: int, q: float, stream: streams.RngStream) -> None:
    """Push stages after particle `jumper` moved left: each stage shifts the
    next-left particle with probability q^gap (gap measured before the
    jumps) and consumes one uniform; mutates pos in place."""
    k = jumper
    while k + 1 < pos.size:
        gap_before = (pos[k] + 1) - pos[k + 1] - 1
        if stream.uniform() < q ** gap_before:
            pos[k + 1] -= 1
            k += 1
        else:
            break


def qpush_cascade(state: OrderedParticles, jumper: int,
                  stream: streams.RngStream) -> OrderedParticles:
    """Resolve the cascade in a state where `jumper` has just jumped left.

    No time passes.  (A post-jump state that transiently violates exclusion,
    i.e. an adjacent pair, cannot be represented; apply `left_jump` instead,
    which performs the jump and the cascade together.)
    """
    pos = state.positions.copy()
    _cascade(pos, jumper, state.q, stream)
    return OrderedParticles(pos, state.q, state.left_rate)


def left_jump(state: OrderedParticles, i: int, stream: streams.RngStream) -> OrderedParticles:
    """Apply one left jump of particle i and resolve its cascade.

    An adjacent left neighbor is pushed with probability q^0 = 1, so the
    result always satisfies exclusion.
    """
    pos = state.positions.copy()
    pos[i] -= 1
    _cascade(pos, i, state.q, stream)
    return OrderedParticles(pos, state.q, state.left_rate)


def simulate_qpushasep(init: OrderedParticles, t_max: float, stream: streams.RngStream,
                       snap_times=None, log_events: int = 0) -> ParticleTrajectory:
    """q-TASEP right jumps plus rate-L left jumps with instantaneous cascades.

    log_events > 0 records up to that many (time, particle, displacement)
    rows, with cascade pushes as sub-records at their trigger's timestamp.
    """
    snap, trim = _snap_array(t_max, snap_times)
    snaps, n_events, counter, ok, log, n_logged = qpush_kernel(
        init.positions, init.q, init.left_rate, snap,
        np.uint64(stream.key), np.uint64(stream.counter), int(log_events))
    stream.jump_to(int(counter))
    if not ok:
        raise InvariantViolationError("exclusion violated during q-pushASEP run")
    if trim:
        snap, snaps = snap[:-1], snaps[:-1]
    currents = (snaps >= 0).sum(axis=1).astype(np.int64)
    return ParticleTrajectory(snap, snaps, currents, int(n_events),
                              log if log_events else None)


def reference_tasep(init: OrderedParticles, t_max: float, stream: streams.RngStream,
                    snap_times=None) -> ParticleTrajectory:
    """Plain TASEP via the generic event engine, for coupled cross-checks.

    Jump rates are the exact integers 0/1, so event totals and cumulative
    sums match the q-TASEP kernel's Fenwick arithmetic bit for bit and a
    (seed, id)-coupled q=0 run must agree exactly.
    """
    snap, trim = _snap_array(t_max, snap_times)
    pos = init.positions.copy()
    n = pos.size
    t = 0.0
    out = np.zeros((snap.size, n), dtype=np.int64)
    idx = 0
    n_events = 0
    while True:
        movable = [i for i in range(n) if i == 0 or pos[i - 1] - pos[i] > 1]
        events = streams.EventSet([(i, 1.0) for i in movable])
        choice, dt = streams.gillespie_step(events, stream)
        t_next = t + dt
        while idx < snap.size and snap[idx] < t_next:
            out[idx] = pos
            idx += 1
        if t_next > t_max:
            break
        pos[choice] += 1
        t = t_next
        n_events += 1
    while idx < snap.size:
        out[idx] = pos
        idx += 1
    currents = (out >= 0).sum(axis=1).astype(np.int64)
    if trim:
        snap, out, currents = snap[:-1], out[:-1], currents[:-1]
    return ParticleTrajectory(snap, out, currents, n_events)
