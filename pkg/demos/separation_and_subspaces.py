"""Separation properties of mu-topologies and how subspaces compare.

Run with ``python demos/separation_and_subspaces.py``.
"""

import numpy as np

from topocontrol.setcore import Subset, Universe
from topocontrol.topology import (
    enumerate_topologies,
    is_coarser,
    mu_topology,
    random_topology,
    separation_profile,
    subspace,
)

X = Universe(5)
for members in ([0, 1, 2, 3], [0, 1]):
    F = Subset.of(X, members)
    p = separation_profile(mu_topology(X, F))
    print(f"F = {members}: T0={p.t0} T1={p.t1} Hausdorff={p.hausdorff}, "
          f"indistinguishable pair {p.t0_witness}")

print("labeled topologies:", [sum(1 for _ in enumerate_topologies(n)) for n in (1, 2, 3)])

# F sees itself as discrete, so any other topology restricted to F is coarser
rng = np.random.default_rng(3)
G = random_topology(X, rng)
F = Subset.of(X, [1, 2, 4])
G_F = subspace(G, F)
mu_F = subspace(mu_topology(X, F), F)
print("G restricted to F:", [o.members() for o in G_F.opens])
print("mu restricted to F has", len(mu_F), "opens; G_F coarser:", is_coarser(G_F, mu_F))
