"""Nets recover closures, and mu-convergence controls G-convergence on F.

Run with ``python demos/nets_and_closure.py``.
"""

from topocontrol.nets import DirectedSet, Net, check_final_lemma, converges_to, limits, witness_net
from topocontrol.setcore import Subset, Universe
from topocontrol.topology import closure_of, mu_topology

X = Universe(4)
t = mu_topology(X, Subset.of(X, [0, 1]))
A = Subset.of(X, [2])

print("closure of {2}:", closure_of(t, A).members())
for x in range(4):
    w = witness_net(t, A, x)
    if isinstance(w, Net):
        print(f"  x={x}: net with points {w.points} converges: {converges_to(w, x, t)}")
    else:
        print(f"  x={x}: not adherent, separated by {w.separating_open.members()}")

# a chain that settles on 3 converges to every point outside F as well
net = Net(DirectedSet.chain(5), (0, 1, 3, 3, 3), X)
print("limits of the settling chain:", limits(net, t).members())

G = mu_topology(X, Subset.of(X, [0]))
F = Subset.of(X, [1, 2, 3])
print("final lemma on 200 random nets:", check_final_lemma(G, F, trials=200, seed=11))
