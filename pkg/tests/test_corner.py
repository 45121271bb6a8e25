import numpy as np
import pytest

from kpzlab import corner, paths, streams
from kpzlab.errors import (FrozenStateError, InvariantViolationError,
                           NotPositiveRecurrentError, ParameterError,
                           WindowTooSmallError)


def test_init_wedge_and_flat():
    wedge = corner.init_height("wedge", (-2, 2))
    assert np.array_equal(wedge.values, [2, 1, 0, 1, 2])
    flat = corner.init_height("flat", (-2, 2))
    assert np.array_equal(flat.values, [0, 1, 0, 1, 0])
    minima, maxima = corner._extrema(wedge)
    assert list(minima) == [2] and list(maxima) == []   # unique minimum at x=0


def test_height_invariant_enforced():
    with pytest.raises(InvariantViolationError):
        corner.CornerHeight(0, np.array([0, 2, 1]))


def test_step_corner_wedge_first_event():
    init = corner.init_height("wedge", (-4, 4))
    new, record = corner.step_corner(init, corner.AsymmetryParams(1.0),
                                     streams.make_stream(1, 0))
    assert record["site"] == 0 and record["direction"] == 1
    assert new.height(0) == 2
    assert all(new.height(x) == abs(x) for x in (-4, -3, -2, -1, 1, 2, 3, 4))
    assert new.time > 0


def test_step_corner_frozen():
    init = corner.init_height("wedge", (-3, 3))
    with pytest.raises(FrozenStateError):
        corner.step_corner(init, corner.AsymmetryParams(0.0), streams.make_stream(1, 1))


def test_two_minima_picked_evenly():
    init = corner.init_height("wedge", (-5, 5))
    first, _ = corner.step_corner(init, corner.AsymmetryParams(1.0),
                                  streams.make_stream(2, 0))
    st = streams.make_stream(2, 1)
    left = 0
    trials = 4000
    for _ in range(trials):
        _, rec = corner.step_corner(first, corner.AsymmetryParams(1.0), st)
        assert rec["site"] in (-1, 1)
        left += rec["site"] == -1
    assert abs(left / trials - 0.5) < 0.03


def test_slope_invariant_preserved_by_steps():
    state = corner.init_height("flat", (-6, 5))
    st = streams.make_stream(3, 0)
    pars = corner.AsymmetryParams(0.5)
    for _ in range(300):
        state, _ = corner.step_corner(state, pars, st)
        steps = np.abs(np.diff(state.values))
        assert np.all(steps == 1)
        assert abs(int(state.values[0]) - int(state.values[-1])) == 1


def test_simulate_corner_zero_time():
    init = corner.init_height("wedge", (-8, 8))
    traj = corner.simulate_corner(init, corner.AsymmetryParams(1.0), 0.0,
                                  streams.make_stream(4, 0), snap_times=[0.0])
    assert np.array_equal(traj.heights[0], init.values)


def test_simulate_corner_window_guard():
    init = corner.init_height("wedge", (-10, 10))
    with pytest.raises(WindowTooSmallError):
        corner.simulate_corner(init, corner.AsymmetryParams(1.0), 10.0,
                               streams.make_stream(4, 1))


def test_monotone_growth_and_cone():
    t_max = 36.0
    init = corner.init_height("wedge", (-120, 120))
    traj = corner.simulate_corner(init, corner.AsymmetryParams(1.0), t_max,
                                  streams.make_stream(5, 0),
                                  snap_times=[9.0, 18.0, 36.0])
    diffs = np.diff(traj.heights, axis=0)
    assert np.all(diffs >= 0)                      # p=1: heights never shrink
    # beyond the cone (with a sqrt-t fluctuation buffer) nothing has moved
    sites = np.arange(-120, 121)
    buffer = t_max + 6 * np.sqrt(t_max)
    outside = np.abs(sites) > buffer
    assert np.all(traj.heights[-1][outside] == np.abs(sites)[outside])
    assert np.all(traj.heights[-1] >= np.abs(sites))


def test_partial_asymmetry_speed():
    # h(t,0)/((p-q) t) -> 1/2 with t replaced by t/(p-q)
    p = 0.75
    t_max = 2000.0
    init = corner.init_height("wedge", (-2200, 2200))
    vals = []
    for r in range(20):
        st = streams.make_stream(6, r)
        traj = corner.simulate_corner(init, corner.AsymmetryParams(p), t_max, st)
        vals.append(traj.heights[-1][2200] / ((2 * p - 1.0) * t_max))
    assert abs(np.mean(vals) - 0.5) < 0.03


def test_limit_shape_values_and_errors():
    assert corner.limit_shape(1.0, 0.0) == 0.5
    assert corner.limit_shape(1.0, 1.0) == 1.0
    assert corner.limit_shape(2.0, 1.0) == 1.25
    assert corner.limit_shape(1.0, -3.0) == 3.0
    with pytest.raises(ParameterError):
        corner.limit_shape(0.0, 0.0)


def test_limit_shape_hj_residual():
    d = 1e-4
    for tt in (0.5, 1.0, 2.0):
        for xx in np.linspace(-0.7 * tt, 0.7 * tt, 11):
            dt_h = (corner.limit_shape(tt + d, xx) - corner.limit_shape(tt - d, xx)) / (2 * d)
            dx_h = (corner.limit_shape(tt, xx + d) - corner.limit_shape(tt, xx - d)) / (2 * d)
            assert abs(dt_h - 0.5 * (1.0 - dx_h ** 2)) <= 1e-6


def test_rescale_height_arithmetic():
    init = corner.init_height("wedge", (-40, 40))
    traj = corner.simulate_corner(init, corner.AsymmetryParams(1.0), 8.0,
                                  streams.make_stream(7, 0), snap_times=[1.0, 8.0])
    h = traj.height_fn
    assert corner.rescale_height(h, 1.0, 0.0, 1.0) == h(1.0, 0) - 0.5
    expected = 0.5 * h(8.0, 0) - 2.0
    assert corner.rescale_height(h, 1.0, 0.0, 0.25) == expected
    with pytest.raises(ParameterError):
        corner.rescale_height(h, 1.0, 0.0, 0.0)


def test_height_particle_bijection():
    wedge = corner.init_height("wedge", (-3, 3))
    config = corner.height_to_particles(wedge)
    assert config.occupied == frozenset({-3, -2, -1})
    back = corner.particles_to_height(config, wedge.height(-3))
    assert np.array_equal(back.values, wedge.values)

    # flat sawtooth [1,0,1,0,1,0,1]: -1 increments start at odd sites
    flat = corner.init_height("flat", (-3, 3))
    occ = corner.height_to_particles(flat).occupied
    assert occ == {-3, -1, 1}                               # alternating


def test_height_particle_commutation():
    # odd-width flat profile stays in hard-window mode: flips are interior,
    # so every growth is "particle at s-1 hops right", every shrink the reverse
    state = corner.init_height("flat", (-8, 8))
    assert state.boundary == "window"
    particles = set(corner.height_to_particles(state).occupied)
    st = streams.make_stream(8, 0)
    pars = corner.AsymmetryParams(0.5)
    for _ in range(200):
        state, rec = corner.step_corner(state, pars, st)
        s = rec["site"]
        if rec["direction"] == 1:
            assert s - 1 in particles and s not in particles
            particles.remove(s - 1)
            particles.add(s)
        else:
            assert s in particles and s - 1 not in particles
            particles.remove(s)
            particles.add(s - 1)
        assert particles == set(corner.height_to_particles(state).occupied)


def test_quenched_equals_lpp():
    st = streams.make_stream(9, 0)
    grid = paths.generate_weight_grid("exponential", (12, 12), st)
    growth = corner.simulate_corner_quenched(grid)
    assert np.array_equal(growth.growth_times, paths.lpp(grid))
    times = [e[0] for e in growth.events]
    assert times == sorted(times)


def test_stationary_box_pmf():
    assert corner.stationary_box_pmf(0.0, 1.0, 0) == 1.0
    assert corner.stationary_box_pmf(0.0, 1.0, 3) == 0.0
    assert abs(corner.stationary_box_pmf(0.25, 0.75, 0) - 2.0 / 3.0) < 1e-15
    assert abs(corner.stationary_box_pmf(0.25, 0.75, 1) - 2.0 / 9.0) < 1e-15
    with pytest.raises(NotPositiveRecurrentError):
        corner.stationary_box_pmf(0.5, 0.5, 0)
    with pytest.raises(ParameterError):
        corner.stationary_box_pmf(0.25, 0.75, -1)


def test_asymmetry_params():
    pars = corner.AsymmetryParams(0.3)
    assert pars.q == 0.7
    with pytest.raises(ParameterError):
        corner.AsymmetryParams(1.2)
