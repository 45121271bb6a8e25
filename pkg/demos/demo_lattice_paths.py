"""Path solvers over random environments: LPP, LIS, stoplight FPP, polymer.

Shows the exact corner-growth coupling, the (sqrt x + sqrt y)^2 limit shape,
patience sorting at scale, the free diagonal of the stoplight model, and the
log-gamma polymer free energy.
"""

import numpy as np

from kpzlab import corner, paths, streams

# last passage percolation == corner growth box times, pathwise
grid = paths.generate_weight_grid("exponential", (40, 40), streams.make_stream(5, 0))
growth = corner.simulate_corner_quenched(grid)
passage = paths.lpp(grid)
print("corner growth times == LPP values:",
      bool(np.array_equal(growth.growth_times, passage)))
print(f"L(40,40) = {passage[-1, -1]:.2f};  shape limit 4N = {paths.lpp_shape(1, 1) * 40:.0f}")

mean_l = np.mean(paths.lpp_diagonal_samples(200, 40, streams.make_stream(5, 1)))
print(f"mean L(200,200)/200 over 40 grids = {mean_l / 200:.3f}  (-> 4)\n")

# longest increasing subsequence of a random permutation
st = streams.make_stream(5, 2)
for n in (100, 10_000):
    vals = [paths.lis(paths.random_permutation(n, st)) for _ in range(30)]
    print(f"E[LIS(n={n:6d})] / sqrt(n) = {np.mean(vals) / np.sqrt(n):.3f}  (-> 2)")

# stoplight first passage percolation
env = paths.generate_stoplight_env(300, 400, streams.make_stream(5, 3))
p_diag = paths.fpp_stoplight(env, (300, 300), "vertical_line")
print(f"\nstoplight FPP: passage time to the diagonal line above (300,300): {p_diag:.3f}")
env2 = paths.generate_stoplight_env(300, 150, streams.make_stream(5, 4))
p_off = paths.fpp_stoplight(env2, (300, 150), "exact")
print(f"exact passage time to the off-diagonal point (300,150): {p_off:.3f}")
print("(the diagonal is nearly free; leaving it costs linearly)\n")

# log-gamma polymer free energy: the (+, x) lift of the (max, +) passage time
wp = paths.generate_weight_grid("inverse_gamma", (64, 64), streams.make_stream(5, 5),
                                gamma_shape=2.0)
log_z = paths.polymer_log_z(wp)
print(f"log Z(64,64) of the inverse-gamma polymer = {log_z[-1, -1]:.2f}"
      f"  (free energy per site {log_z[-1, -1] / 127:.3f})")
