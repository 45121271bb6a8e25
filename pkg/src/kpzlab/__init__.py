"""kpzlab: growth-model simulators, lattice-path solvers and Tracy-Widom numerics.

Submodules
----------
streams      deterministic stream-splittable randomness + Gillespie stepping
deposition   random and ballistic deposition on a ring
corner       (partially asymmetric) corner growth, limit shape, particle map
qsystems     q-TASEP and q-pushASEP traffic models
paths        LPP / LIS / stoplight FPP / log-gamma polymer / RWRE solvers
airy         Airy Ai and Ai' from series + asymptotics
tracywidom   GUE/GOE Tracy-Widom tables (Fredholm + Painleve II routes)
stats        binomial/Stirling/Gaussian baseline and acceptance estimators
acceptance   the committed desk-scale acceptance criteria
cli          experiment orchestration (simulate / solve / tw-table / accept / ...)
"""

__version__ = "0.1.0"

from . import (airy, corner, deposition, paths, qsystems, stats, streams,  # noqa: F401,E402
               tracywidom)
