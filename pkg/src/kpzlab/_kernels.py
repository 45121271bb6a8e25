"""numba inner loops for the event-driven simulators.

All kernels draw randomness through the same counter-based generator as
`streams` (splitmix64 finalizer over key + i*GOLDEN) so a kernel run is a
pure function of (key, starting counter).  Kernels return the final counter
so the owning RngStream can be advanced.

Per Gillespie event the consumption order is: one uniform for the holding
time, one uniform for the event selection.  q-pushASEP cascades consume one
extra uniform per push decision.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
U64_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
U64_MIX_B = np.uint64(0x94D049BB133111EB)
_U64_30 = np.uint64(30)
_U64_27 = np.uint64(27)
_U64_31 = np.uint64(31)
_U64_11 = np.uint64(11)
_U64_1 = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0     # 2^-53


@njit(cache=True)
def _u01(key, counter):
    """Next uniform in [0,1) and the advanced counter."""
    counter = counter + _U64_1
    z = key + counter * U64_GOLDEN
    z = (z ^ (z >> _U64_30)) * U64_MIX_A
    z = (z ^ (z >> _U64_27)) * U64_MIX_B
    z = z ^ (z >> _U64_31)
    return np.float64(z >> _U64_11) * _INV53, counter


@njit(cache=True)
def _expo(key, counter, rate):
    u, counter = _u01(key, counter)
    return -np.log1p(-u) / rate, counter


# ---------------------------------------------------------------------------
# Deposition models (rate-1 clock per site, periodic ring)
# ---------------------------------------------------------------------------

@njit(cache=True)
def deposition_kernel(kind, width, snap_times, key, counter):
    """kind 0 = random (column +1), kind 1 = ballistic (stick to first edge).

    Returns (snapshots[S, width], n_events, counter).  Snapshot k holds the
    state at snap_times[k] (right-continuous piecewise-constant path).
    """
    n_snaps = snap_times.shape[0]
    t_max = snap_times[n_snaps - 1]
    h = np.zeros(width, dtype=np.int64)
    snaps = np.zeros((n_snaps, width), dtype=np.int64)
    t = 0.0
    snap_idx = 0
    n_events = 0
    total_rate = np.float64(width)
    while True:
        u, counter = _u01(key, counter)
        dt = -np.log1p(-u) / total_rate
        t_next = t + dt
        while snap_idx < n_snaps and snap_times[snap_idx] < t_next:
            snaps[snap_idx, :] = h
            snap_idx += 1
        if t_next > t_max:
            break
        u, counter = _u01(key, counter)
        site = int(u * width)
        if site >= width:
            site = width - 1
        if kind == 0:
            h[site] += 1
        else:
            left = h[(site - 1) % width]
            right = h[(site + 1) % width]
            new = h[site] + 1
            if left > new:
                new = left
            if right > new:
                new = right
            h[site] = new
        t = t_next
        n_events += 1
    return snaps, n_events, counter


# ---------------------------------------------------------------------------
# Corner growth (resampling Gillespie over local extrema)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _neighbor_tables(L, periodic):
    """left/right neighbor indices and flip eligibility per site.

    Hard-window edges point at themselves, which makes the extremum tests
    below evaluate false there (matching their ineligibility)."""
    left = np.empty(L, dtype=np.int64)
    right = np.empty(L, dtype=np.int64)
    eligible = np.ones(L, dtype=np.uint8)
    for i in range(L):
        left[i] = i - 1
        right[i] = i + 1
    if periodic:
        left[0] = L - 1
        right[L - 1] = 0
    else:
        left[0] = 0
        right[L - 1] = L - 1
        eligible[0] = 0
        eligible[L - 1] = 0
    return left, right, eligible


@njit(cache=True)
def _set_add(slots, index, count, site):
    slots[count] = site
    index[site] = count
    return count + 1


@njit(cache=True)
def _set_remove(slots, index, count, site):
    slot = index[site]
    last = count - 1
    moved = slots[last]
    slots[slot] = moved
    index[moved] = slot
    index[site] = -1
    return last


@njit(cache=True)
def _refresh_site(h, x, left, right, eligible, min_slots, min_index, n_min,
                  max_slots, max_index, n_max):
    hx = h[x]
    hl = h[left[x]]
    hr = h[right[x]]
    ok = eligible[x] == 1
    now_min = ok and hl > hx and hr > hx
    now_max = ok and hl < hx and hr < hx
    if min_index[x] >= 0:
        if not now_min:
            n_min = _set_remove(min_slots, min_index, n_min, x)
    elif now_min:
        n_min = _set_add(min_slots, min_index, n_min, x)
    if max_index[x] >= 0:
        if not now_max:
            n_max = _set_remove(max_slots, max_index, n_max, x)
    elif now_max:
        n_max = _set_add(max_slots, max_index, n_max, x)
    return n_min, n_max


@njit(cache=True)
def corner_kernel(h0, periodic, p, q, snap_times, key, counter):
    """Partially asymmetric corner growth on the window of h0.

    Local minima flip up (+2) at rate p, local maxima flip down (-2) at
    rate q.  Hard-window mode (periodic=False) never touches the two edge
    sites.  Returns (snapshots[S, L], n_events, counter, frozen) where
    frozen=1 means the event set emptied before the horizon.
    """
    L = h0.shape[0]
    n_snaps = snap_times.shape[0]
    t_max = snap_times[n_snaps - 1]
    h = h0.copy()
    snaps = np.zeros((n_snaps, L), dtype=np.int64)
    left, right, eligible = _neighbor_tables(L, periodic)
    min_slots = np.empty(L, dtype=np.int64)
    max_slots = np.empty(L, dtype=np.int64)
    min_index = np.full(L, -1, dtype=np.int64)
    max_index = np.full(L, -1, dtype=np.int64)
    n_min = 0
    n_max = 0
    for x in range(L):
        n_min, n_max = _refresh_site(h, x, left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
    t = 0.0
    snap_idx = 0
    n_events = 0
    frozen = 0
    while True:
        total = p * n_min + q * n_max
        if total <= 0.0:
            frozen = 1
            break
        u, counter = _u01(key, counter)
        t_next = t + (-np.log1p(-u) / total)
        while snap_idx < n_snaps and snap_times[snap_idx] < t_next:
            snaps[snap_idx, :] = h
            snap_idx += 1
        if t_next > t_max:
            t = t_next
            break
        u, counter = _u01(key, counter)
        r = u * total
        grow_mass = p * n_min
        if r < grow_mass:
            slot = int(r / p)
            if slot >= n_min:
                slot = n_min - 1
            site = min_slots[slot]
            h[site] += 2
        else:
            slot = int((r - grow_mass) / q)
            if slot >= n_max:
                slot = n_max - 1
            site = max_slots[slot]
            h[site] -= 2
        n_min, n_max = _refresh_site(h, left[site], left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
        n_min, n_max = _refresh_site(h, site, left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
        n_min, n_max = _refresh_site(h, right[site], left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
        t = t_next
        n_events += 1
    while snap_idx < n_snaps:
        snaps[snap_idx, :] = h
        snap_idx += 1
    return snaps, n_events, counter, frozen


@njit(cache=True)
def corner_boxcount_kernel(h0, periodic, p, q, sample_times, key, counter):
    """Corner growth recording only the box count sum((h - h0)/2) at sample times."""
    L = h0.shape[0]
    n_samp = sample_times.shape[0]
    t_max = sample_times[n_samp - 1]
    h = h0.copy()
    counts = np.zeros(n_samp, dtype=np.int64)
    left, right, eligible = _neighbor_tables(L, periodic)
    min_slots = np.empty(L, dtype=np.int64)
    max_slots = np.empty(L, dtype=np.int64)
    min_index = np.full(L, -1, dtype=np.int64)
    max_index = np.full(L, -1, dtype=np.int64)
    n_min = 0
    n_max = 0
    for x in range(L):
        n_min, n_max = _refresh_site(h, x, left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
    t = 0.0
    idx = 0
    boxes = 0
    n_events = 0
    while True:
        total = p * n_min + q * n_max
        if total <= 0.0:
            break
        u, counter = _u01(key, counter)
        t_next = t + (-np.log1p(-u) / total)
        while idx < n_samp and sample_times[idx] < t_next:
            counts[idx] = boxes
            idx += 1
        if t_next > t_max:
            break
        u, counter = _u01(key, counter)
        r = u * total
        grow_mass = p * n_min
        if r < grow_mass:
            slot = int(r / p)
            if slot >= n_min:
                slot = n_min - 1
            site = min_slots[slot]
            h[site] += 2
            boxes += 1
        else:
            slot = int((r - grow_mass) / q)
            if slot >= n_max:
                slot = n_max - 1
            site = max_slots[slot]
            h[site] -= 2
            boxes -= 1
        n_min, n_max = _refresh_site(h, left[site], left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
        n_min, n_max = _refresh_site(h, site, left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
        n_min, n_max = _refresh_site(h, right[site], left, right, eligible, min_slots,
                                     min_index, n_min, max_slots, max_index, n_max)
        t = t_next
        n_events += 1
    while idx < n_samp:
        counts[idx] = boxes
        idx += 1
    return counts, n_events, counter


# ---------------------------------------------------------------------------
# Fenwick tree over event rates (q-systems)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _bit_size(n_leaves):
    m = 1
    while m < n_leaves:
        m *= 2
    return m


@njit(cache=True)
def _bit_set(tree, leaves, i, value):
    """Set leaf i to value (1-indexed tree, 0-indexed leaf)."""
    delta = value - leaves[i]
    if delta == 0.0:
        return
    leaves[i] = value
    j = i + 1
    while j < tree.shape[0]:
        tree[j] += delta
        j += j & (-j)


@njit(cache=True)
def _bit_total(tree, m):
    """Sum of all leaves (prefix sum over the full power-of-two range)."""
    total = 0.0
    j = m
    while j > 0:
        total += tree[j]
        j -= j & (-j)
    return total


@njit(cache=True)
def _bit_pick(tree, m, r):
    """Smallest leaf index i with prefix(i+1) > r; zero-width leaves skipped."""
    pos = 0
    bit = m
    while bit > 0:
        nxt = pos + bit
        if nxt < tree.shape[0] and tree[nxt] < r:
            r -= tree[nxt]
            pos = nxt
        bit >>= 1
    return pos            # 0-indexed leaf


@njit(cache=True)
def _qt_rate(q, gap):
    if gap < 0:
        return 1.0        # leader: infinite gap, unimpeded
    return 1.0 - q ** gap


@njit(cache=True)
def _gap_of(x, i, n):
    """Gap to the right neighbor of particle i (0-indexed); -1 means infinite."""
    if i == 0:
        return np.int64(-1)
    return x[i - 1] - x[i] - 1


@njit(cache=True)
def qtasep_kernel(x0, q, snap_times, key, counter, record_positions):
    """q-TASEP: particle i jumps right at rate 1 - q^gap_i.

    Returns (position snapshots[S, N] or zeros, origin-crossing counts[S],
    n_events, counter, ok).  ok=0 flags an exclusion violation (never
    expected; checked after every jump).
    """
    n = x0.shape[0]
    n_snaps = snap_times.shape[0]
    t_max = snap_times[n_snaps - 1]
    x = x0.copy()
    snaps = np.zeros((n_snaps if record_positions else 0, n), dtype=np.int64)
    currents = np.zeros(n_snaps, dtype=np.int64)
    m = _bit_size(n)
    tree = np.zeros(m + 1, dtype=np.float64)
    leaves = np.zeros(m, dtype=np.float64)
    for i in range(n):
        _bit_set(tree, leaves, i, _qt_rate(q, _gap_of(x, i, n)))
    t = 0.0
    snap_idx = 0
    n_events = 0
    ok = 1
    crossed = 0
    for i in range(n):
        if x[i] >= 0:
            crossed += 1
    while True:
        total = _bit_total(tree, m)
        if total <= 0.0:
            break
        u, counter = _u01(key, counter)
        t_next = t + (-np.log1p(-u) / total)
        while snap_idx < n_snaps and snap_times[snap_idx] < t_next:
            if record_positions:
                snaps[snap_idx, :] = x
            currents[snap_idx] = crossed
            snap_idx += 1
        if t_next > t_max:
            break
        u, counter = _u01(key, counter)
        i = _bit_pick(tree, m, u * total)
        x[i] += 1
        if x[i] == 0:
            crossed += 1
        if i > 0 and x[i] >= x[i - 1]:
            ok = 0
            break
        _bit_set(tree, leaves, i, _qt_rate(q, _gap_of(x, i, n)))
        if i + 1 < n:
            _bit_set(tree, leaves, i + 1, _qt_rate(q, _gap_of(x, i + 1, n)))
        t = t_next
        n_events += 1
    while snap_idx < n_snaps:
        if record_positions:
            snaps[snap_idx, :] = x
        currents[snap_idx] = crossed
        snap_idx += 1
    return snaps, currents, n_events, counter, ok


@njit(cache=True)
def qpush_kernel(x0, q, l_rate, snap_times, key, counter, log_cap):
    """q-pushASEP: q-TASEP right jumps plus rate-L left jumps with push cascades.

    Rate leaves are laid out [right_0..right_{N-1}, left_0..left_{N-1}];
    left leaves hold the constant L.  A realized left jump of particle i
    consumes one uniform per cascade decision (push probability q^gap with
    the gap measured before the jump).  Returns (snapshots[S, N], n_events,
    counter, ok, event_log[:n_logged], n_logged); the log holds rows
    (time, particle, displacement) with cascade pushes as extra rows at the
    jump's timestamp, up to log_cap rows.
    """
    n = x0.shape[0]
    n_snaps = snap_times.shape[0]
    t_max = snap_times[n_snaps - 1]
    x = x0.copy()
    snaps = np.zeros((n_snaps, n), dtype=np.int64)
    log = np.zeros((log_cap, 3), dtype=np.float64)
    n_logged = 0
    m = _bit_size(2 * n)
    tree = np.zeros(m + 1, dtype=np.float64)
    leaves = np.zeros(m, dtype=np.float64)
    for i in range(n):
        _bit_set(tree, leaves, i, _qt_rate(q, _gap_of(x, i, n)))
        _bit_set(tree, leaves, n + i, l_rate)
    t = 0.0
    snap_idx = 0
    n_events = 0
    ok = 1
    while True:
        total = _bit_total(tree, m)
        if total <= 0.0:
            break
        u, counter = _u01(key, counter)
        t_next = t + (-np.log1p(-u) / total)
        while snap_idx < n_snaps and snap_times[snap_idx] < t_next:
            snaps[snap_idx, :] = x
            snap_idx += 1
        if t_next > t_max:
            break
        u, counter = _u01(key, counter)
        leaf = _bit_pick(tree, m, u * total)
        if leaf < n:
            i = leaf
            x[i] += 1
            if n_logged < log_cap:
                log[n_logged, 0] = t_next
                log[n_logged, 1] = i
                log[n_logged, 2] = 1.0
                n_logged += 1
            if i > 0 and x[i] >= x[i - 1]:
                ok = 0
                break
            _bit_set(tree, leaves, i, _qt_rate(q, _gap_of(x, i, n)))
            if i + 1 < n:
                _bit_set(tree, leaves, i + 1, _qt_rate(q, _gap_of(x, i + 1, n)))
        else:
            i = leaf - n
            x[i] -= 1
            if n_logged < log_cap:
                log[n_logged, 0] = t_next
                log[n_logged, 1] = i
                log[n_logged, 2] = -1.0
                n_logged += 1
            k = i
            while k + 1 < n:
                gap_before = x[k] + 1 - x[k + 1] - 1   # gap before this stage's jump
                u, counter = _u01(key, counter)
                if u < q ** gap_before:
                    x[k + 1] -= 1
                    if n_logged < log_cap:      # cascade sub-record, same timestamp
                        log[n_logged, 0] = t_next
                        log[n_logged, 1] = k + 1
                        log[n_logged, 2] = -1.0
                        n_logged += 1
                    k += 1
                else:
                    break
            if x[k] <= (x[k + 1] if k + 1 < n else x[k] - 1):
                ok = 0
                break
            _bit_set(tree, leaves, i, _qt_rate(q, _gap_of(x, i, n)))
            if k + 1 < n:
                _bit_set(tree, leaves, k + 1, _qt_rate(q, _gap_of(x, k + 1, n)))
        t = t_next
        n_events += 1
    while snap_idx < n_snaps:
        snaps[snap_idx, :] = x
        snap_idx += 1
    return snaps, n_events, counter, ok, log[:n_logged], n_logged


# ---------------------------------------------------------------------------
# Lattice-path solvers
# ---------------------------------------------------------------------------

@njit(cache=True)
def lpp_grid_kernel(w):
    """Last passage times by the literal recursion L = max(up, left) + w."""
    nx, ny = w.shape
    out = np.zeros((nx, ny), dtype=np.float64)
    for y in range(ny):
        for x in range(nx):
            up = out[x, y - 1] if y > 0 else 0.0
            left = out[x - 1, y] if x > 0 else 0.0
            best = up if up > left else left
            out[x, y] = best + w[x, y]
    return out


@njit(cache=True)
def lpp_corner_from_flat(w_flat, n):
    """L(n, n) from pre-drawn weights, laid out row by row (y outer, x inner).

    Only an O(n) rolling row of passage times is kept."""
    row = np.zeros(n, dtype=np.float64)
    k = 0
    for y in range(n):
        left = 0.0
        for x in range(n):
            best = row[x] if row[x] > left else left
            left = best + w_flat[k]
            row[x] = left
            k += 1
    return row[n - 1]


@njit(cache=True)
def fpp_kernel(right_w, up_w):
    """Min passage times T(x, y) over up/right edge paths from vertex (0, 0).

    right_w[x, y] is the cost of the edge (x, y) -> (x+1, y), up_w[x, y] of
    (x, y) -> (x, y+1).
    """
    nx, ny = right_w.shape
    out = np.empty((nx, ny), dtype=np.float64)
    for y in range(ny):
        for x in range(nx):
            if x == 0 and y == 0:
                out[0, 0] = 0.0
                continue
            best = np.inf
            if x > 0:
                best = out[x - 1, y] + right_w[x - 1, y]
            if y > 0:
                c = out[x, y - 1] + up_w[x, y - 1]
                if c < best:
                    best = c
            out[x, y] = best
    return out


@njit(cache=True)
def polymer_logz_kernel(log_w):
    """log Z by the detropicalized recursion Z = (Z_up + Z_left) * w in log space.

    Off-grid Z is 0, so interior cells combine via the two-term log-sum-exp
    with the max shift; edge cells add a single parent (Z(1,1) uses w alone).
    """
    nx, ny = log_w.shape
    out = np.zeros((nx, ny), dtype=np.float64)
    for y in range(ny):
        for x in range(nx):
            if x == 0 and y == 0:
                out[x, y] = log_w[x, y]
            elif x == 0:
                out[x, y] = out[x, y - 1] + log_w[x, y]
            elif y == 0:
                out[x, y] = out[x - 1, y] + log_w[x, y]
            else:
                a = out[x - 1, y]
                b = out[x, y - 1]
                hi = a if a > b else b
                lo = b if a > b else a
                out[x, y] = hi + np.log1p(np.exp(lo - hi)) + log_w[x, y]
    return out


@njit(cache=True)
def rwre_max_kernel(env, offset, t, n_walkers, key, counter):
    """Max over n walkers of X(t) in the shared environment env[y + offset, s].

    Each walker step consumes one uniform; walker w's draws are the stream
    block [w*t, (w+1)*t), so nested walker sets share their prefix walks.
    """
    best = np.int64(-t - 1)
    for _w in range(n_walkers):
        pos = np.int64(0)
        for s in range(t):
            u, counter = _u01(key, counter)
            if u < env[pos + offset, s]:
                pos -= 1
            else:
                pos += 1
        if pos > best:
            best = pos
    return best, counter
