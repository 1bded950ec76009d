"""The pinned system: metric density fails, F-density succeeds.

The first coordinate never moves, so a target off that line stays at
distance at least 1 from every sample.

Run with ``python demos/trivial_reachability.py``.
"""

import numpy as np

from topocontrol.reach import (
    TrivialGrid,
    attainable_cloud,
    check_eps_density,
    check_mu_controllability,
    trivial_system,
)

c = 1.0
system = trivial_system(c=c, segments=4, amplitude=2.0)
cloud = attainable_cloud(system, np.array([c, 0.0]), T=1.0, K=50, seed=0)

print("first coordinates:", sorted({float(s.terminal[0]) for s in cloud.samples}))
report = check_eps_density(cloud, [np.array([0.0, 0.0])], eps=0.5)
print(f"eps-dense at 0.5: {report.dense} (nearest sample {report.distances[0]:.3f} away)")

verdict = check_mu_controllability(cloud, TrivialGrid(-3.0, 3.0, 0.5, (c - 1.0, c, c + 1.0)))
print(f"occupied cells {verdict.f_size} of {verdict.universe_size}; "
      f"dense in the F-topology: {verdict.dense}; Hausdorff: {verdict.hausdorff}")
