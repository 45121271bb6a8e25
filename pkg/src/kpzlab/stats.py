"""Classical baseline (binomial / Stirling / Gaussian) and the estimators that
turn simulator output into acceptance verdicts.

Everything here is a pure function of its inputs, so any verdict can be
replayed from exported CSV alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateSampleError, InsufficientDataError,
                     ParameterError)

# ---------------------------------------------------------------------------
# Sample containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmpiricalSample:
    """Scalar observations with provenance (model, parameter record, seed range)."""

    values: np.ndarray
    model: str = ""
    params: tuple = ()
    seed_range: tuple = ()

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.size == 0:
            raise InsufficientDataError("empty sample")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class ScalePoint:
    """One (scale, dispersion) point of a fluctuation-growth curve."""

    scale: float
    dispersion: float
    count: int = 0


def _values(sample) -> np.ndarray:
    return np.asarray(getattr(sample, "values", sample), dtype=np.float64)


# ---------------------------------------------------------------------------
# Coin flipping, Stirling, Gaussian
# ---------------------------------------------------------------------------

def binomial_pmf(n_flips: int, n_heads: int) -> float:
    """Fair-coin law P(H = n) = 2^-N binom(N, n).

    Evaluated as an exact integer ratio, so the only error is the final
    rounding to double (well under the 1e-12 contract for N <= 1e6).
    """
    if not 0 <= n_heads <= n_flips:
        raise ParameterError(f"need 0 <= n <= N, got n={n_heads}, N={n_flips}")
    return math.comb(n_flips, n_heads) / (1 << n_flips)


def binomial_cdf_grid(n_flips: int) -> np.ndarray:
    """P(H <= k) for k = 0..N, via exact pmf terms and exact summation."""
    pmf = np.empty(n_flips + 1, dtype=np.float64)
    c = 1                      # running exact binom(N, k)
    shift = 1 << n_flips
    for k in range(n_flips + 1):
        pmf[k] = c / shift
        c = c * (n_flips - k) // (k + 1)
    cdf = np.cumsum(pmf)
    return np.minimum(cdf, 1.0)


def stirling_approx(n: int):
    """The expansion n! ~ n^(n+1) e^-n sqrt(2 pi / n) and its relative error.

    Exact comparison uses integer factorials up to n = 20 and the log-gamma
    value beyond; above n = 170 the returned approximation is inf but the
    relative error is still computed in the log domain.
    """
    if n < 1:
        raise ParameterError(f"stirling_approx needs n >= 1, got {n}")
    log_approx = (n + 1) * math.log(n) - n + 0.5 * math.log(2.0 * math.pi / n)
    approx = math.exp(log_approx) if log_approx < 709.0 else math.inf
    if n <= 20:
        exact = float(math.factorial(n))
        rel = (approx - exact) / exact
    else:
        rel = math.expm1(log_approx - math.lgamma(n + 1))
    return approx, rel


def gaussian_cdf(x):
    """Standard normal CDF via erfc (absolute error far below 1e-10)."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        return 0.5 * math.erfc(-float(arr) / math.sqrt(2.0))
    from scipy.special import ndtr
    return ndtr(arr)


def clt_binomial_sup_error(n_flips: int, x_grid=None) -> float:
    """sup over the grid of |P(H < N/2 + sqrt(N) x / 2) - Phi(x)|, exact binomial."""
    if x_grid is None:
        x_grid = np.linspace(-4.0, 4.0, 161)
    cdf = binomial_cdf_grid(n_flips)
    worst = 0.0
    for x in np.asarray(x_grid, dtype=np.float64):
        threshold = 0.5 * n_flips + 0.5 * math.sqrt(n_flips) * x
        k = math.ceil(threshold) - 1          # P(H < threshold) = P(H <= k)
        p = 0.0 if k < 0 else (1.0 if k >= n_flips else cdf[k])
        worst = max(worst, abs(p - gaussian_cdf(float(x))))
    return worst


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------

def estimate_exponent(points):
    """Least-squares slope of log(dispersion) against log(scale).

    Points with fewer than 30 underlying observations are dropped before the
    fit; at least 3 distinct scales must remain.  Returns (slope, intercept,
    residual rms).
    """
    usable = [p for p in points if p.count == 0 or p.count >= 30]
    scales = np.array([p.scale for p in usable], dtype=np.float64)
    disps = np.array([p.dispersion for p in usable], dtype=np.float64)
    if len(usable) < 3 or len(np.unique(scales)) < 3:
        raise InsufficientDataError(
            f"exponent fit needs >= 3 usable points at distinct scales, have {len(usable)}")
    if np.any(scales <= 0) or np.any(disps <= 0):
        raise ParameterError("scales and dispersions must be positive")
    lx = np.log(scales)
    ly = np.log(disps)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return float(slope), float(intercept), float(np.sqrt(np.mean(resid ** 2)))


def ks_distance(sample, reference_cdf) -> float:
    """Sup-norm distance between the empirical CDF and a reference CDF."""
    x = np.sort(_values(sample))
    n = x.size
    f = np.asarray(reference_cdf(x), dtype=np.float64)
    upper = np.arange(1, n + 1) / n - f
    lower = f - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def standardize(sample) -> np.ndarray:
    """Affine map of the sample to mean 0, population variance 1; order preserved."""
    x = _values(sample)
    if x.size < 2:
        raise DegenerateSampleError("need at least two observations")
    sd = x.std(ddof=0)
    if sd == 0.0 or not np.isfinite(sd):
        raise DegenerateSampleError("sample variance is zero")
    return (x - x.mean()) / sd


def skewness(sample) -> float:
    """Population skewness m3 / m2^(3/2)."""
    x = _values(sample)
    c = x - x.mean()
    m2 = np.mean(c ** 2)
    if m2 == 0.0:
        raise DegenerateSampleError("sample variance is zero")
    return float(np.mean(c ** 3) / m2 ** 1.5)


def spatial_correlation(profiles, lag: int) -> float:
    """Pearson correlation of heights at sites `lag` apart, at a fixed time.

    `profiles` has one row per replicate and one column per site (periodic
    window, so pairs wrap).  The correlation is computed across replicates
    for every site pair and averaged over pairs.
    """
    h = np.asarray(profiles, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] < 100:
        raise InsufficientDataError("need a (replicates, sites) array with >= 100 replicates")
    if lag == 0:
        return 1.0
    width = h.shape[1]
    c = h - h.mean(axis=0)
    sd = c.std(axis=0)
    if np.any(sd == 0.0):
        raise DegenerateSampleError("a site has zero variance across replicates")
    corr = np.empty(width)
    for x in range(width):
        y = (x + lag) % width
        corr[x] = np.mean(c[:, x] * c[:, y]) / (sd[x] * sd[y])
    return float(corr.mean())
