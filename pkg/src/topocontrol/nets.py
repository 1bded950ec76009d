"""Finite directed sets, nets and convergence.

Eventually-in uses the reflexive tail ``{alpha : beta <= alpha}`` by
default. ``strict=True`` switches to ``beta < alpha``; on a finite directed
set with a greatest element the strict tail of that element is empty, so
every net is then eventually in every set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable

import numpy as np

from .errors import BoundExceeded, EmptyF, FNotClosed, FullF, UniverseMismatch
from .setcore import Subset, Universe
from .topology import (
    CheckResult,
    FiniteTopology,
    ValidityReport,
    closure_mask,
    embed_mask,
    mu_topology,
    random_topology,
    subspace,
)

NET_CHECK_BOUND = 8


@dataclass(frozen=True)
class DirectedSet:
    size: int
    leq: frozenset[tuple[int, int]]

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]], close: bool = False) -> DirectedSet:
        """Build from explicit ``(a, b)`` pairs meaning ``a <= b``.

        With ``close=True`` the reflexive-transitive closure is taken first.
        """
        rel = {(int(a), int(b)) for a, b in pairs}
        if close:
            rel |= {(i, i) for i in range(size)}
            reach = np.zeros((size, size), dtype=bool)
            for a, b in rel:
                reach[a, b] = True
            for k in range(size):
                reach |= reach[:, k, None] & reach[None, k, :]
            rel = {(int(a), int(b)) for a, b in zip(*np.nonzero(reach))}
        return cls(size, frozenset(rel))

    @classmethod
    def chain(cls, k: int) -> DirectedSet:
        return cls(k, frozenset((a, b) for a in range(k) for b in range(a, k)))

    @classmethod
    def grid(cls, rows: int, cols: int) -> DirectedSet:
        """Product order on ``rows x cols``; element ``r*cols + c``."""
        pairs = [
            (r1 * cols + c1, r2 * cols + c2)
            for r1, c1, r2, c2 in product(range(rows), range(cols), range(rows), range(cols))
            if r1 <= r2 and c1 <= c2
        ]
        return cls(rows * cols, frozenset(pairs))

    def le(self, a: int, b: int) -> bool:
        return (a, b) in self.leq

    @cached_property
    def upsets(self) -> tuple[tuple[int, ...], ...]:
        ups: list[list[int]] = [[] for _ in range(self.size)]
        for a, b in self.leq:
            ups[a].append(b)
        return tuple(tuple(sorted(u)) for u in ups)

    def to_json(self) -> dict:
        return {"size": self.size, "leq": [list(p) for p in sorted(self.leq)]}

    @classmethod
    def from_json(cls, data: dict) -> DirectedSet:
        return cls(int(data["size"]), frozenset((int(a), int(b)) for a, b in data["leq"]))


def verify_directed(d: DirectedSet) -> ValidityReport:
    """Partial-order axioms plus the common-upper-bound property."""
    k = d.size
    bad_range = next(((a, b) for a, b in d.leq if not (0 <= a < k and 0 <= b < k)), None)
    checks = {"in_range": CheckResult(bad_range is None, bad_range)}
    refl = next((a for a in range(k) if (a, a) not in d.leq), None)
    checks["reflexive"] = CheckResult(refl is None, None if refl is None else (refl, refl))
    anti = next(((a, b) for a, b in sorted(d.leq) if a != b and (b, a) in d.leq), None)
    checks["antisymmetric"] = CheckResult(anti is None, anti)
    trans = None
    ups = d.upsets
    for a, b in sorted(d.leq):
        for c in ups[b] if b < k else ():
            if (a, c) not in d.leq:
                trans = (a, b, c)
                break
        if trans:
            break
    checks["transitive"] = CheckResult(trans is None, trans)
    bound = None
    for a, b in combinations(range(k), 2):
        if not set(ups[a]) & set(ups[b]):
            bound = (a, b)
            break
    checks["upper_bound"] = CheckResult(bound is None, bound)
    return ValidityReport(checks)


@dataclass(frozen=True)
class Net:
    """Map from a directed index set into a finite universe."""

    index: DirectedSet
    points: tuple[int, ...]
    universe: Universe

    def __post_init__(self):
        if len(self.points) != self.index.size:
            raise ValueError("a net needs one point per index element")
        if any(not 0 <= p < self.universe.size for p in self.points):
            raise UniverseMismatch("net point outside the universe")

    @cached_property
    def tail_masks(self) -> tuple[int, ...]:
        """Points reached from each index on: ``{x_a : b <= a}`` per ``b``."""
        out = []
        for ups in self.index.upsets:
            m = 0
            for a in ups:
                m |= 1 << self.points[a]
            out.append(m)
        return tuple(out)

    @cached_property
    def strict_tail_masks(self) -> tuple[int, ...]:
        out = []
        for b, ups in enumerate(self.index.upsets):
            m = 0
            for a in ups:
                if a != b:
                    m |= 1 << self.points[a]
            out.append(m)
        return tuple(out)

    def to_json(self) -> dict:
        return {"index": self.index.to_json(), "points": list(self.points), "universe": self.universe.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> Net:
        return cls(DirectedSet.from_json(data["index"]), tuple(data["points"]), Universe.from_json(data["universe"]))


def constant_net(universe: Universe, x: int, size: int = 1) -> Net:
    return Net(DirectedSet.chain(size), (x,) * size, universe)


def eventually_in_mask(net: Net, a: int, strict: bool = False) -> bool:
    tails = net.strict_tail_masks if strict else net.tail_masks
    return any(t & ~a == 0 for t in tails)


def eventually_in(net: Net, a: Subset, strict: bool = False) -> bool:
    if a.universe.size != net.universe.size:
        raise UniverseMismatch("net and subset live in different universes")
    return eventually_in_mask(net, a.mask, strict)


def converges_to(net: Net, x: int, t: FiniteTopology, strict: bool = False) -> bool:
    """Eventually in every open neighbourhood of ``x``."""
    if net.universe.size != t.universe.size:
        raise UniverseMismatch("net and topology live in different universes")
    return all(eventually_in_mask(net, u, strict) for u in t.neighbourhoods(x))


def limits(net: Net, t: FiniteTopology) -> Subset:
    return t.universe.subset(x for x in range(t.universe.size) if converges_to(net, x, t))


@dataclass(frozen=True)
class NotInClosure:
    """Outcome of :func:`witness_net` when ``x`` is not adherent to ``A``."""

    x: int
    closure: Subset
    separating_open: Subset


def neighbourhood_filter(t: FiniteTopology, x: int) -> tuple[DirectedSet, list[int]]:
    """Open neighbourhoods of ``x`` directed by reverse inclusion."""
    nbhd = t.neighbourhoods(x)
    pairs = [(i, j) for i, u in enumerate(nbhd) for j, v in enumerate(nbhd) if v & ~u == 0]
    return DirectedSet(len(nbhd), frozenset(pairs)), nbhd


def witness_net(t: FiniteTopology, a: Subset, x: int) -> Net | NotInClosure:
    """A net in ``a`` converging to ``x``, or the reason none exists.

    Indexed by the neighbourhood filter of ``x``; each neighbourhood picks
    ``x`` itself when ``x`` is in ``a`` and otherwise the smallest index in
    its intersection with ``a``.
    """
    if a.universe.size != t.universe.size:
        raise UniverseMismatch("subset and topology live in different universes")
    cl = closure_mask(t, a.mask)
    if not cl >> x & 1:
        sep = next(u for u in t.neighbourhoods(x) if u & a.mask == 0)
        return NotInClosure(x, Subset(t.universe, cl), Subset(t.universe, sep))
    index, nbhd = neighbourhood_filter(t, x)
    if x in a:
        points = (x,) * len(nbhd)
    else:
        points = tuple((u & a.mask & -(u & a.mask)).bit_length() - 1 for u in nbhd)
    return Net(index, points, t.universe)


def check_closure_net_theorem(t: FiniteTopology) -> bool:
    """Closure equals the set of limits of nets, checked over every ``(A, x)``.

    For adherent ``x`` the witness net must be directed, lie in ``A`` and
    converge to ``x``; otherwise the returned separating neighbourhood must
    really be open, contain ``x`` and miss ``A``.
    """
    n = t.universe.size
    if n > NET_CHECK_BOUND:
        raise BoundExceeded(f"net theorem check is limited to n <= {NET_CHECK_BOUND}")
    opens = set(t.masks)
    for mask in range(1 << n):
        a = Subset(t.universe, mask)
        cl = closure_mask(t, mask)
        for x in range(n):
            w = witness_net(t, a, x)
            adherent = bool(cl >> x & 1)
            if isinstance(w, Net):
                if not adherent or not verify_directed(w.index).valid:
                    return False
                if any(not mask >> p & 1 for p in w.points):
                    return False
                if not converges_to(w, x, t):
                    return False
            else:
                u = w.separating_open.mask
                if adherent or u not in opens or not u >> x & 1 or u & mask:
                    return False
    return True


def random_net(universe: Universe, rng: np.random.Generator, max_size: int = 8) -> Net:
    """Chain or grid indexed net with uniformly drawn points."""
    if rng.random() < 0.5:
        index = DirectedSet.chain(int(rng.integers(1, max_size + 1)))
    else:
        rows = int(rng.integers(1, 3))
        cols = int(rng.integers(1, max_size // rows + 1))
        index = DirectedSet.grid(rows, cols)
    points = tuple(int(p) for p in rng.integers(0, universe.size, size=index.size))
    return Net(index, points, universe)


def check_final_lemma(g: FiniteTopology, F: Subset, trials: int, seed: int = 0) -> bool:
    """Nets converging in the F-dense topology stay eventually in G_F opens.

    ``F`` must be closed in ``g``. Random nets are drawn; for each point
    ``x`` they converge to (in ``mu_topology(F)``), every open of the
    subspace ``g`` on ``F`` that contains ``x`` is embedded back into X and
    the net must be eventually in it.
    """
    U = g.universe
    if F.universe.size != U.size:
        raise UniverseMismatch("F lives in a different universe")
    if F.mask == 0:
        raise EmptyF("F must be nonempty")
    if F.mask == U.full_mask:
        raise FullF("F must be a strict subset of X")
    if not g.is_closed(F):
        raise FNotClosed("F is not closed in the given topology")
    mu = mu_topology(U, F)
    sub = subspace(g, F)
    traces = [embed_mask(m, sub.embedding) for m in sub.masks]
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        net = random_net(U, rng)
        for x in range(U.size):
            if not converges_to(net, x, mu):
                continue
            for theta in traces:
                if theta >> x & 1 and not eventually_in_mask(net, theta):
                    return False
    return True


def random_closed_instance(
    universe: Universe, rng: np.random.Generator
) -> tuple[FiniteTopology, Subset]:
    """Random topology with a strict nonempty closed set in it."""
    full = universe.full_mask
    while True:
        g = random_topology(universe, rng)
        closed = [full & ~m for m in g.masks if 0 < m < full]
        if closed:
            pick = closed[int(rng.integers(0, len(closed)))]
            return g, Subset(universe, pick)
