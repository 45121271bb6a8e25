"""Deterministic stream-splittable randomness and the continuous-time event engine.

The generator is counter-based: draw ``i`` of a stream is

    out_i = avalanche(key + i * GOLDEN)          (uint64, wrapping)

where ``avalanche`` is the splitmix64 finalizer (two xor-shift/multiply
rounds plus a closing xor-shift) and ``GOLDEN`` is the 64-bit golden-ratio
increment 0x9E3779B97F4A7C15.  With ``key = 0`` this reproduces the
reference splitmix64 sequence (first output 0xE220A8397B1DCDAF).

Stream keys are derived by avalanche-mixing the pair (master_seed,
stream_id):

    key = avalanche(avalanche(master_seed + GOLDEN)
                    ^ avalanche(stream_id + STREAM_SALT))

so any two distinct (seed, id) pairs land in unrelated regions of the
counter space.  Everything is plain uint64 arithmetic, so the scalar
Python path, the vectorized numpy path and the numba kernels all produce
bit-identical values for the same (key, counter).

A stream is single-owner: one consumer advances its counter.  Experiments
parallelize by giving each replicate its own stream_id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NoActiveEventError, ParameterError

GOLDEN = 0x9E3779B97F4A7C15
MIX_A = 0xBF58476D1CE4E5B9
MIX_B = 0x94D049BB133111EB
STREAM_SALT = 0xD1B54A32D192ED03
_MASK = (1 << 64) - 1
_INV53 = 1.0 / (1 << 53)


def avalanche(z: int) -> int:
    """splitmix64 finalizer on a python int (wrapping uint64 semantics)."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * MIX_A) & _MASK
    z = ((z ^ (z >> 27)) * MIX_B) & _MASK
    return z ^ (z >> 31)


def derive_key(master_seed: int, stream_id: int) -> int:
    """Mix (master_seed, stream_id) into a stream key."""
    a = avalanche((master_seed + GOLDEN) & _MASK)
    b = avalanche((stream_id + STREAM_SALT) & _MASK)
    return avalanche(a ^ b)


def _raw_block(key: int, counter: int, n: int) -> np.ndarray:
    """Outputs for counters counter+1 .. counter+n, as uint64."""
    idx = np.arange(counter + 1, counter + n + 1, dtype=np.uint64)
    z = np.uint64(key) + idx * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX_B)
    return z ^ (z >> np.uint64(31))


@dataclass
class RngStream:
    """Seeded, stream-addressable deterministic random source.

    Same (master_seed, stream_id) gives a bit-identical sequence on every
    run and platform.  The counter records how many 64-bit draws have been
    consumed.
    """

    master_seed: int
    stream_id: int
    key: int = field(init=False)
    counter: int = field(default=0, init=False)

    def __post_init__(self):
        self.key = derive_key(self.master_seed, self.stream_id)

    def raw64(self, size: int | None = None):
        """Next raw uint64 output(s)."""
        if size is None:
            self.counter += 1
            return avalanche((self.key + self.counter * GOLDEN) & _MASK)
        out = _raw_block(self.key, self.counter, size)
        self.counter += size
        return out

    def uniform(self, size: int | None = None):
        """Uniform draws on [0, 1) with 53-bit resolution."""
        if size is None:
            return (self.raw64() >> 11) * _INV53
        return (self.raw64(size) >> np.uint64(11)).astype(np.float64) * _INV53

    def jump_to(self, counter: int) -> None:
        """Reposition the counter (used to hand a kernel's consumption back)."""
        self.counter = int(counter)


def make_stream(master_seed: int, stream_id: int) -> RngStream:
    """Build the deterministic stream for (master_seed, stream_id)."""
    return RngStream(int(master_seed), int(stream_id))


# ---------------------------------------------------------------------------
# Distribution samplers.  Scalar draws consume counter ticks one at a time;
# vectorized draws consume a contiguous counter block (rejection samplers
# consume a data-dependent but seed-deterministic number of ticks).
# ---------------------------------------------------------------------------

def uniform01(stream: RngStream, size: int | None = None):
    """U[0, 1)."""
    return stream.uniform(size)


def exponential(stream: RngStream, rate: float, size: int | None = None):
    """Exponential law with P(X > x) = exp(-rate * x), sampled as -log1p(-U)/rate.

    U lies in [0, 1), so 1-U is in (0, 1] and the log never sees zero.
    """
    if rate <= 0:
        raise ParameterError(f"exponential rate must be > 0, got {rate}")
    u = stream.uniform(size)
    return -np.log1p(-u) / rate if size is not None else -math.log1p(-u) / rate


def bernoulli(stream: RngStream, p: float, size: int | None = None):
    """0/1 draw(s) with success probability p."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"bernoulli p must be in [0, 1], got {p}")
    u = stream.uniform(size)
    if size is None:
        return 1 if u < p else 0
    return (u < p).astype(np.int64)


def geometric(stream: RngStream, p: float, size: int | None = None):
    """Number of failures before the first success: P(X = k) = p (1-p)^k, k >= 0.

    Sampled by inverting the CDF: floor(log(1-U) / log(1-p)).
    """
    if not 0.0 < p < 1.0:
        raise ParameterError(f"geometric p must be in (0, 1), got {p}")
    u = stream.uniform(size)
    denom = math.log1p(-p)
    if size is None:
        return int(math.log1p(-u) / denom)
    return np.floor(np.log1p(-u) / denom).astype(np.int64)


def _standard_normal_scalar(stream: RngStream) -> float:
    # Box-Muller, fresh pair per call (no caching so counter use is obvious).
    u1 = 1.0 - stream.uniform()            # (0, 1], log-safe
    u2 = stream.uniform()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def gamma(stream: RngStream, shape: float, size: int | None = None):
    """Gamma(shape, scale=1) via the Marsaglia-Tsang squeeze-rejection method.

    For shape < 1 the standard boost X = Gamma(shape+1) * U^(1/shape) is used.
    """
    if shape <= 0:
        raise ParameterError(f"gamma shape must be > 0, got {shape}")
    if size is None:
        return _gamma_scalar(stream, shape)
    out = np.empty(size, dtype=np.float64)
    for i in range(size):
        out[i] = _gamma_scalar(stream, shape)
    return out


def _gamma_scalar(stream: RngStream, shape: float) -> float:
    if shape < 1.0:
        # boost: one extra uniform after the shape+1 draw
        x = _gamma_scalar(stream, shape + 1.0)
        u = 1.0 - stream.uniform()
        return x * u ** (1.0 / shape)
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = _standard_normal_scalar(stream)
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = 1.0 - stream.uniform()
        if math.log(u) < 0.5 * x * x + d - d * v + d * math.log(v):
            return d * v


def inverse_gamma(stream: RngStream, shape: float, size: int | None = None):
    """Inverse-gamma(shape): X = 1 / Gamma(shape, 1)."""
    if shape <= 0:
        raise ParameterError(f"inverse_gamma shape must be > 0, got {shape}")
    g = gamma(stream, shape, size)
    return 1.0 / g


_SAMPLERS = {
    "exponential": exponential,
    "uniform01": lambda stream, size=None: uniform01(stream, size),
    "geometric": geometric,
    "inverse_gamma": inverse_gamma,
    "bernoulli": bernoulli,
}


def sample_distribution(kind: str, stream: RngStream, size: int | None = None, **params):
    """Dispatch a named law: exponential(rate), uniform01, geometric(p),
    inverse_gamma(shape), bernoulli(p)."""
    try:
        fn = _SAMPLERS[kind]
    except KeyError:
        raise ParameterError(f"unknown distribution kind {kind!r}") from None
    return fn(stream, size=size, **params)


# ---------------------------------------------------------------------------
# Event engine
# ---------------------------------------------------------------------------

@dataclass
class EventSet:
    """A finite list of (event_key, rate) pairs with strictly positive rates."""

    keys: list
    rates: np.ndarray

    def __init__(self, events):
        items = list(events.items()) if isinstance(events, dict) else list(events)
        self.keys = [k for k, _ in items]
        self.rates = np.asarray([r for _, r in items], dtype=np.float64)
        if np.any(self.rates <= 0.0):
            raise ParameterError("all event rates must be strictly positive")

    def __len__(self):
        return len(self.keys)

    @property
    def total_rate(self) -> float:
        return float(self.rates.sum())


def gillespie_step(events: EventSet, stream: RngStream):
    """One exact event-driven step: returns (chosen event_key, holding time).

    Consumes two uniforms, in this order: holding time first, selection
    second.  The holding time is exponential(total_rate); the event is
    chosen with probability rate_i / total_rate.  Under floating-point ties
    the lowest event index wins (searchsorted on the cumulative rates).
    """
    if len(events) == 0:
        raise NoActiveEventError("gillespie_step on an empty event set")
    total = events.total_rate
    dt = -math.log1p(-stream.uniform()) / total
    target = stream.uniform() * total
    cum = np.cumsum(events.rates)
    i = int(np.searchsorted(cum, target, side="right"))
    if i >= len(events.keys):       # guard against target == total after rounding
        i = len(events.keys) - 1
    return events.keys[i], dt
