"""The height/particle dictionary and the q-deformed traffic models.

Maps the wedge to step initial data, then runs q-TASEP (cars slow down when
the gap ahead closes) and q-pushASEP (left jumps trigger braking cascades).
"""

import numpy as np

from kpzlab import corner, qsystems, streams

wedge = corner.init_height("wedge", (-6, 6))
config = corner.height_to_particles(wedge)
print("wedge heights:    ", [int(v) for v in wedge.values])
print("particle sites:   ", sorted(config.occupied))
print("(everything left of the origin occupied = step initial data)\n")

N, Q, T = 60, 0.5, 120.0
snap = [30.0, 60.0, 120.0]
tasep = qsystems.simulate_qtasep(qsystems.step_initial(N, 0.0), T,
                                 streams.make_stream(3, 0), snap)
qtasep = qsystems.simulate_qtasep(qsystems.step_initial(N, Q), T,
                                  streams.make_stream(3, 0), snap)
print(f"{N} particles from step data, t = {T}:")
print("  time    TASEP current    q-TASEP current (q = 0.5)")
for i, t in enumerate(snap):
    print(f"  {t:5.0f}    {tasep.currents[i]:13d}    {qtasep.currents[i]:15d}")
print("(slowing down when gaps close reduces the flux)\n")

push = qsystems.simulate_qpushasep(qsystems.step_initial(N, Q, 0.4), T,
                                   streams.make_stream(3, 1), snap)
lead = [int(v) for v in push.positions[:, 0]]
print("q-pushASEP with left rate L = 0.4: leader position over time:", lead)

state = qsystems.OrderedParticles(np.array([5, 4, 3, 0]), Q)
shifted = qsystems.left_jump(state, 0, streams.make_stream(3, 2))
print("\nbraking cascade: a left jump of the leader in",
      [int(v) for v in state.positions],
      "shifts the whole adjacent block:", [int(v) for v in shifted.positions])
