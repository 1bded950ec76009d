import numpy as np
import pytest

from topocontrol.errors import FNotClosed, UniverseMismatch
from topocontrol.nets import (
    DirectedSet,
    Net,
    NotInClosure,
    check_closure_net_theorem,
    check_final_lemma,
    constant_net,
    converges_to,
    eventually_in,
    limits,
    neighbourhood_filter,
    random_closed_instance,
    random_net,
    verify_directed,
    witness_net,
)
from topocontrol.setcore import Subset, Universe, complement
from topocontrol.topology import (
    discrete_topology,
    enumerate_topologies,
    indiscrete_topology,
    is_coarser,
    mu_topology,
)

X3 = Universe(3)


def S(*members, universe=X3):
    return Subset.of(universe, members)


def chain_net(points, universe=X3):
    return Net(DirectedSet.chain(len(points)), tuple(points), universe)


class TestDirected:
    def test_chain_valid(self):
        assert verify_directed(DirectedSet.chain(3)).valid

    def test_two_incomparable(self):
        d = DirectedSet(2, frozenset({(0, 0), (1, 1)}))
        report = verify_directed(d)
        assert not report.valid and report["upper_bound"].witness == (0, 1)

    def test_partial_order_failures(self):
        assert not verify_directed(DirectedSet(2, frozenset({(0, 0)})))["reflexive"].passed
        cyc = DirectedSet(2, frozenset({(0, 0), (1, 1), (0, 1), (1, 0)}))
        assert not verify_directed(cyc)["antisymmetric"].passed
        gap = DirectedSet(3, frozenset({(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)}))
        assert verify_directed(gap)["transitive"].witness == (0, 1, 2)

    def test_from_pairs_closure(self):
        d = DirectedSet.from_pairs(3, [(0, 1), (1, 2)], close=True)
        assert d == DirectedSet.chain(3)

    def test_grid(self):
        assert verify_directed(DirectedSet.grid(2, 3)).valid

    def test_neighbourhood_filter_of_mu_topology(self):
        U = Universe(4)
        t = mu_topology(U, Subset.of(U, [0, 1, 2]))
        for x in range(4):
            d, nbhd = neighbourhood_filter(t, x)
            assert verify_directed(d).valid
            # upper bound of two neighbourhoods is their meet, still a neighbourhood
            for u in nbhd:
                for v in nbhd:
                    assert u & v in nbhd

    def test_json(self):
        d = DirectedSet.grid(2, 2)
        assert DirectedSet.from_json(d.to_json()) == d
        net = chain_net([0, 1, 2])
        assert Net.from_json(net.to_json()) == net


class TestEventually:
    def test_constant(self):
        net = constant_net(X3, 1, size=3)
        assert eventually_in(net, S(1, 2))
        assert not eventually_in(net, S(0, 2))

    def test_tail(self):
        U = Universe(2)
        net = chain_net([1, 1, 0, 0], U)  # y, y, x, x with x = 0
        assert eventually_in(net, S(0, universe=U))
        assert net.tail_masks[2] == 0b01 and net.tail_masks[1] != 0b01

    def test_strict_flag_at_maximum(self):
        # the strict tail past the top of a chain is empty
        net = chain_net([0, 0, 1])
        assert not eventually_in(net, S(0))
        assert eventually_in(net, S(0), strict=True)

    def test_mismatch(self):
        with pytest.raises(UniverseMismatch):
            eventually_in(constant_net(X3, 0), Subset.of(Universe(2), [0]))


class TestConvergence:
    def test_every_net_converges_outside_F(self):
        t = mu_topology(X3, S(0, 1))
        rng = np.random.default_rng(0)
        for _ in range(100):
            net = random_net(X3, rng)
            assert converges_to(net, 2, t)
            assert 2 in limits(net, t)

    def test_inside_F_iff_eventually_constant(self):
        t = mu_topology(X3, S(0, 1))
        rng = np.random.default_rng(1)
        for _ in range(200):
            net = random_net(X3, rng)
            for x in (0, 1):
                eventually_constant = eventually_in(net, S(x))
                assert converges_to(net, x, t) == eventually_constant

    def test_discrete_only_eventually_constant(self):
        d = discrete_topology(X3)
        assert converges_to(chain_net([0, 2, 2]), 2, d)
        assert not converges_to(chain_net([2, 2, 0]), 2, d)

    def test_limits_always_contain_complement_of_F(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            U = Universe(int(rng.integers(2, 6)))
            F = Subset(U, int(rng.integers(1, U.full_mask)))
            t = mu_topology(U, F)
            net = random_net(U, rng)
            assert complement(F) <= limits(net, t)

    def test_monotone_in_coarseness(self):
        rng = np.random.default_rng(3)
        tops = list(enumerate_topologies(3))
        nets = [random_net(X3, rng) for _ in range(10)]
        for t1 in tops:
            for t2 in tops:
                if not is_coarser(t1, t2):
                    continue
                for net in nets:
                    for x in range(3):
                        if converges_to(net, x, t2):
                            assert converges_to(net, x, t1)


class TestWitnessNet:
    def test_point_outside_F(self):
        t = mu_topology(X3, S(0, 1))
        net = witness_net(t, S(0), 2)
        assert isinstance(net, Net)
        assert net.points == (0,) and net.index.size == 1
        assert converges_to(net, 2, t)

    def test_member_gives_constant_net(self):
        for t in enumerate_topologies(3):
            for x in range(3):
                net = witness_net(t, S(x), x)
                assert set(net.points) == {x}

    def test_not_in_closure(self):
        t = mu_topology(X3, S(0, 1))
        out = witness_net(t, S(2), 0)
        assert isinstance(out, NotInClosure)
        assert out.closure == S(2)
        assert out.separating_open.mask & S(2).mask == 0

    def test_indiscrete(self):
        t = indiscrete_topology(X3)
        net = witness_net(t, S(1), 0)
        assert net.points == (1,)


class TestTheorems:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_closure_net_theorem_all_small(self, n):
        assert all(check_closure_net_theorem(t) for t in enumerate_topologies(n))

    def test_closure_net_theorem_mu_and_discrete(self):
        for n in range(2, 6):
            U = Universe(n)
            for f in range(1, U.full_mask):
                assert check_closure_net_theorem(mu_topology(U, Subset(U, f)))
        assert check_closure_net_theorem(discrete_topology(Universe(6)))

    def test_final_lemma_point_in_F(self):
        U = Universe(4)
        G = discrete_topology(U)
        F = Subset.of(U, [0, 1])
        assert check_final_lemma(G, F, trials=300, seed=5)

    def test_final_lemma_requires_closed_F(self):
        U = Universe(3)
        G = mu_topology(U, Subset.of(U, [0]))  # {0} open, {1,2} closed, {0,1} not closed
        with pytest.raises(FNotClosed):
            check_final_lemma(G, Subset.of(U, [0, 1]), trials=1)
        assert check_final_lemma(G, Subset.of(U, [1, 2]), trials=100)

    def test_final_lemma_random_instances(self):
        rng = np.random.default_rng(9)
        for i in range(200):
            U = Universe(int(rng.integers(2, 7)))
            G, F = random_closed_instance(U, rng)
            assert G.is_closed(F)
            assert check_final_lemma(G, F, trials=3, seed=i)
