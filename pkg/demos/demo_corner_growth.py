"""Corner growth from the empty wedge: limit shape and 3:2:1 rescaling.

Runs the totally asymmetric dynamics, compares the rescaled interface to the
parabola t(1 + (x/t)^2)/2, and shows the partial-asymmetry slowdown t/(p-q).
"""

import numpy as np

from kpzlab import corner, streams

T_MAX = 300.0
HALF = 420

init = corner.init_height("wedge", (-HALF, HALF))
traj = corner.simulate_corner(init, corner.AsymmetryParams(1.0), T_MAX,
                              streams.make_stream(11, 0),
                              snap_times=[T_MAX / 4, T_MAX])

sites = np.arange(-HALF, HALF + 1)
sel = np.abs(sites) <= 0.9 * T_MAX
err = np.abs(traj.heights[-1][sel] / T_MAX - corner.limit_shape(1.0, sites[sel] / T_MAX))
print(f"wedge run to t = {T_MAX}: {traj.n_events} growth events")
print(f"sup |h(t,x)/t - parabola| over |x| <= 0.9t (single run): {err.max():.4f}")

print("\nheight at the origin vs the t/2 prediction:")
for i, t in enumerate(traj.times):
    print(f"  t = {t:6.1f}: h(t,0) = {traj.heights[i][HALF]:6d}   t/2 = {t/2:7.1f}")

h = traj.height_fn
print("\nKPZ-rescaled origin height eps^(1/2) h(eps^(-3/2) t, 0) - t/(2 eps):")
for eps in (1.0, 0.5, 0.25):
    t_scaled = eps ** 1.5 * T_MAX             # so the lookup lands on t = T_MAX
    val = corner.rescale_height(h, t_scaled, 0.0, eps)
    print(f"  eps = {eps:5.2f}: {val:8.3f}")

print("\npartial asymmetry p = 0.75: same law after speeding time up by 1/(p-q)")
init2 = corner.init_height("wedge", (-HALF, HALF))
traj2 = corner.simulate_corner(init2, corner.AsymmetryParams(0.75), T_MAX,
                               streams.make_stream(11, 1))
ratio = traj2.heights[-1][HALF] / (0.5 * T_MAX)
print(f"  h(t,0) / ((p-q) t) = {ratio:.3f}   (tends to the shape value 1/2)")
