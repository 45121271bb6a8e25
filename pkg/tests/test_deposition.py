import numpy as np
import pytest

from kpzlab import deposition, stats, streams
from kpzlab.errors import ParameterError


def test_deposit_random_increment():
    s0 = deposition.DepositionState([0, 0, 0])
    s1 = deposition.deposit_random(s0, 1)
    assert list(s1.heights) == [0, 1, 0]
    s2 = deposition.deposit_random(s1, 1)
    assert list(s2.heights) == [0, 2, 0]
    assert list(s0.heights) == [0, 0, 0]          # input untouched


def test_deposit_site_out_of_window():
    s0 = deposition.DepositionState([0, 0, 0])
    with pytest.raises(IndexError):
        deposition.deposit_random(s0, 7)
    with pytest.raises(IndexError):
        deposition.deposit_ballistic(s0, -1)


def test_deposit_ballistic_rules():
    flat = deposition.DepositionState([0, 0, 0])
    assert list(deposition.deposit_ballistic(flat, 1).heights) == [0, 1, 0]
    wall = deposition.DepositionState([5, 0, 0])
    assert list(deposition.deposit_ballistic(wall, 1).heights) == [5, 5, 0]
    mixed = deposition.DepositionState([3, 1, 2])
    assert list(deposition.deposit_ballistic(mixed, 1).heights) == [3, 3, 2]


def test_ballistic_monotone_coupling():
    lo = deposition.DepositionState([0, 0, 0, 0, 0, 0, 0, 0])
    hi = deposition.DepositionState([2, 0, 1, 3, 0, 0, 1, 2])
    st = streams.make_stream(70, 0)
    for _ in range(300):
        site = int(st.uniform() * 8)
        lo = deposition.deposit_ballistic(lo, site)
        hi = deposition.deposit_ballistic(hi, site)
        assert np.all(hi.heights >= lo.heights)
        assert np.all(np.diff(lo.heights) is not None)


def test_simulate_validation():
    st = streams.make_stream(71, 0)
    with pytest.raises(ParameterError):
        deposition.simulate_deposition("random", 2, 10.0, st)
    with pytest.raises(ParameterError):
        deposition.simulate_deposition("random", 8, 0.0, st)
    with pytest.raises(ParameterError):
        deposition.simulate_deposition("sticky", 8, 1.0, st)


def test_random_deposition_rate():
    st = streams.make_stream(72, 0)
    traj = deposition.simulate_deposition("random", 64, 500.0, st)
    assert abs(traj.heights[-1].mean() / 500.0 - 1.0) < 0.05
    assert traj.n_events == traj.heights[-1].sum()


def test_heights_nondecreasing_in_time():
    st = streams.make_stream(73, 0)
    traj = deposition.simulate_deposition("ballistic", 32, 50.0, st,
                                          snap_times=[10.0, 25.0, 50.0])
    assert np.all(np.diff(traj.heights, axis=0) >= 0)


def test_ballistic_beats_random_coupled():
    a = deposition.simulate_deposition("random", 128, 100.0,
                                       streams.make_stream(74, 0))
    b = deposition.simulate_deposition("ballistic", 128, 100.0,
                                       streams.make_stream(74, 0))
    assert a.n_events == b.n_events                # same falling blocks
    assert b.heights[-1].mean() > a.heights[-1].mean()


def test_random_deposition_half_exponent():
    pts = []
    for i, t in enumerate((100.0, 1000.0, 10000.0)):
        st = streams.make_stream(77, i)
        traj = deposition.simulate_deposition("random", 512, t, st)
        pts.append(stats.ScalePoint(t, float(traj.heights[-1].std(ddof=1)), 512))
    slope, _, _ = stats.estimate_exponent(pts)
    assert abs(slope - 0.5) < 0.03


def test_random_columns_weakly_correlated():
    reps, width = 400, 6
    profiles = np.empty((reps, width))
    for r in range(reps):
        st = streams.make_stream(75, r)
        profiles[r] = deposition.simulate_deposition("random", width, 200.0,
                                                     st).heights[-1]
    assert abs(stats.spatial_correlation(profiles, 1)) < 0.08


@pytest.mark.slow
def test_ballistic_transversal_correlation_decays():
    # overall interface height fluctuates strongly across replicates, which
    # would swamp the lag structure; removing each profile's spatial mean
    # exposes the shape correlations whose decay is under test
    reps, width, t_max = 150, 64, 1000.0
    profiles = np.empty((reps, width))
    for r in range(reps):
        st = streams.make_stream(76, r)
        profiles[r] = deposition.simulate_deposition("ballistic", width, t_max,
                                                     st).heights[-1]
    profiles -= profiles.mean(axis=1, keepdims=True)
    near = stats.spatial_correlation(profiles, 1)
    far = stats.spatial_correlation(profiles, 20)
    assert near > far + 0.1
    assert near > 0
