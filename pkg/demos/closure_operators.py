"""Build the mu-operator on a small universe and check the closure axioms.

Run with ``python demos/closure_operators.py``.
"""

from topocontrol.closure import make_mu, table_operator, topology_from_closure, verify_kuratowski
from topocontrol.setcore import Subset, Universe

X = Universe(4)
F = Subset.of(X, [0, 1])
gamma = make_mu(X, F)

print("mu-operator with F = {0, 1} on 4 points")
for A in (X.empty(), Subset.of(X, [0]), Subset.of(X, [1, 3])):
    print(f"  gamma({A.members()}) = {gamma(A).members()}")

report = verify_kuratowski(gamma)
print("axioms hold:", report.passed)

# the induced topology is every subset of F plus X itself
opens = topology_from_closure(gamma)
print("opens:", [o.members() for o in opens.opens])

# a table that sends everything to the empty set is not extensive
bad = table_operator(Universe(2), {m: 0 for m in range(4)})
report = verify_kuratowski(bad)
print("all-empty table fails:", report.failed_axioms())
print("witness:", report.to_json()["extensive"])
