"""Finite closure operators, density topologies, nets and attainable sets."""

from .closure import (
    ClosureOperator,
    identity_operator,
    make_mu,
    table_operator,
    topology_from_closure,
    verify_kuratowski,
)
from .nets import (
    DirectedSet,
    Net,
    check_closure_net_theorem,
    check_final_lemma,
    converges_to,
    eventually_in,
    verify_directed,
    witness_net,
)
from .setcore import Subset, Universe, complement, enumerate_subsets, set_algebra
from .topology import (
    FiniteTopology,
    closure_of,
    enumerate_topologies,
    interior_of,
    is_coarser,
    is_dense,
    mu_topology,
    separation_profile,
    subspace,
    verify_topology,
)

__version__ = "0.1.0"
