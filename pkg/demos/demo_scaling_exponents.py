"""Desk-scale reproduction of the 3:2:1 story (reduced sizes, ~1 minute).

Estimates the fluctuation exponents: 1/2 for random deposition (Gaussian
class), 1/3 for L(N,N) (KPZ class), and the 1/4 vs 1/3 contrast between the
symmetric and totally asymmetric corner growth.
"""

import numpy as np

from kpzlab import corner, deposition, paths, stats, streams

print("random deposition: sd of heights across sites ~ t^(1/2)")
pts = []
for i, t in enumerate((100.0, 1000.0, 10000.0)):
    traj = deposition.simulate_deposition("random", 512, t, streams.make_stream(31, i))
    pts.append(stats.ScalePoint(t, float(traj.heights[-1].std(ddof=1)), 512))
slope, _, _ = stats.estimate_exponent(pts)
print(f"  fitted exponent: {slope:.3f}  (Gaussian class: 1/2)\n")

print("last passage percolation: sd of L(N,N) ~ N^(1/3)")
pts = []
for i, n in enumerate((100, 200, 400, 800)):
    vals = paths.lpp_diagonal_samples(n, 200, streams.make_stream(32, i))
    pts.append(stats.ScalePoint(float(n), float(vals.std(ddof=1)), vals.size))
slope, _, _ = stats.estimate_exponent(pts)
print(f"  fitted exponent: {slope:.3f}  (KPZ class: 1/3)\n")

print("corner growth on a ring, sd of h(t,0) across replicates:")
for p, label in ((0.5, "p = q (EW class, 1/4)"), (1.0, "p = 1 (KPZ class, 1/3)")):
    init = corner.init_height("flat", (0, 255))
    disp = []
    times = [100.0, 1000.0, 10000.0]
    h0 = np.empty((48, 3))
    for r in range(48):
        st = streams.make_stream(33 + int(p * 2), r)
        h0[r] = corner.simulate_corner(init, corner.AsymmetryParams(p), times[-1],
                                       st, snap_times=times).heights[:, 0]
    pts = [stats.ScalePoint(t, float(h0[:, i].std(ddof=1)), 48)
           for i, t in enumerate(times)]
    slope, _, _ = stats.estimate_exponent(pts)
    print(f"  {label}: fitted exponent {slope:.3f}")
