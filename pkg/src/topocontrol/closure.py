"""Closure operators on finite power sets.

An operator is either the identity, the density-forcing rule built from a
strict nonempty ``F`` (``A -> A | F^c`` for nonempty ``A``, empty stays
empty), or an explicit table over every subset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import (
    BoundExceeded,
    EmptyF,
    FullF,
    InvalidOperator,
    NotAClosureOperator,
    ParseError,
    UniverseMismatch,
)
from .setcore import Subset, Universe, check_enumerable, mask_members, mask_of

EXHAUSTIVE_BOUND = 12
TABLE_BOUND = 16
DEFAULT_TRIALS = 10_000

AXIOMS = ("empty", "extensive", "idempotent", "additive")


@dataclass(frozen=True)
class MuRule:
    F: Subset


@dataclass(frozen=True)
class IdentityRule:
    pass


@dataclass(frozen=True)
class Table:
    # entries[A] is the image of mask A
    entries: tuple[int, ...]


@dataclass(frozen=True)
class ClosureOperator:
    universe: Universe
    rule: MuRule | IdentityRule | Table

    def __call__(self, a: Subset) -> Subset:
        return apply(self, a)

    def apply_mask(self, a: int) -> int:
        rule = self.rule
        if isinstance(rule, MuRule):
            if a == 0:
                return 0
            return a | (self.universe.full_mask & ~rule.F.mask)
        if isinstance(rule, IdentityRule):
            return a
        return rule.entries[a]

    def tabulate(self) -> np.ndarray:
        """Images of every mask ``0..2^n-1`` as an int64 array."""
        n = self.universe.size
        check_enumerable(n)
        masks = np.arange(1 << n, dtype=np.int64)
        rule = self.rule
        if isinstance(rule, MuRule):
            fc = self.universe.full_mask & ~rule.F.mask
            return np.where(masks == 0, 0, masks | fc)
        if isinstance(rule, IdentityRule):
            return masks
        return np.asarray(rule.entries, dtype=np.int64)

    def to_json(self) -> dict:
        rule = self.rule
        out: dict = {"n": self.universe.size}
        if isinstance(rule, MuRule):
            out.update(rule="mu", F=rule.F.to_json())
        elif isinstance(rule, IdentityRule):
            out.update(rule="identity")
        else:
            out.update(
                rule="table",
                entries=[[list(mask_members(a)), list(mask_members(g))] for a, g in enumerate(rule.entries)],
            )
        return out

    @classmethod
    def from_json(cls, data: Mapping, n: int | None = None) -> ClosureOperator:
        if not isinstance(data, Mapping) or "rule" not in data:
            raise ParseError('operator JSON needs a "rule" key')
        size = data.get("n", n)
        if size is None:
            raise ParseError("operator JSON needs a universe size (\"n\" key or --n)")
        universe = Universe(int(size))
        kind = data["rule"]
        if kind == "mu":
            return make_mu(universe, Subset.of(universe, data.get("F", [])))
        if kind == "identity":
            return identity_operator(universe)
        if kind == "table":
            mapping = {}
            for entry in data.get("entries", []):
                if len(entry) != 2:
                    raise ParseError("table entries are [[A...], [gamma(A)...]] pairs")
                mapping[Subset.of(universe, entry[0]).mask] = Subset.of(universe, entry[1]).mask
            return table_operator(universe, mapping)
        raise ParseError(f"unknown operator rule {kind!r}")


def make_mu(universe: Universe, F: Subset) -> ClosureOperator:
    if F.universe.size != universe.size:
        raise InvalidOperator("F lives in a different universe")
    if F.mask == 0:
        raise EmptyF("F must be nonempty")
    if F.mask == universe.full_mask:
        raise FullF("F must be a strict subset of X")
    return ClosureOperator(universe, MuRule(Subset(universe, F.mask)))


def identity_operator(universe: Universe) -> ClosureOperator:
    return ClosureOperator(universe, IdentityRule())


def table_operator(universe: Universe, mapping: Mapping) -> ClosureOperator:
    """Tabulated operator from a total map ``subset -> subset``.

    Keys and values may be :class:`Subset` instances or raw masks.
    """
    n = universe.size
    if n > TABLE_BOUND:
        raise BoundExceeded(f"tables are limited to n <= {TABLE_BOUND}")
    entries = [-1] * (1 << n)
    for key, value in mapping.items():
        a = key.mask if isinstance(key, Subset) else int(key)
        g = value.mask if isinstance(value, Subset) else int(value)
        if not 0 <= a <= universe.full_mask or not 0 <= g <= universe.full_mask:
            raise InvalidOperator("table entry outside the universe")
        entries[a] = g
    missing = [a for a, g in enumerate(entries) if g < 0]
    if missing:
        raise InvalidOperator(f"table is not total: {len(missing)} subsets have no image")
    return ClosureOperator(universe, Table(tuple(entries)))


def apply(gamma: ClosureOperator, a: Subset) -> Subset:
    if a.universe.size != gamma.universe.size:
        raise UniverseMismatch("subset and operator live in different universes")
    return Subset(gamma.universe, gamma.apply_mask(a.mask))


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness_a: Subset | None = None
    witness_b: Subset | None = None

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "witnessA": None if self.witness_a is None else self.witness_a.to_json(),
            "witnessB": None if self.witness_b is None else self.witness_b.to_json(),
        }


@dataclass(frozen=True)
class AxiomReport:
    results: dict[str, AxiomResult] = field(default_factory=dict)
    mode: str = "exhaustive"

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failed_axioms(self) -> list[str]:
        return [name for name, r in self.results.items() if not r.passed]

    def __getitem__(self, axiom: str) -> AxiomResult:
        return self.results[axiom]

    def to_json(self) -> dict:
        return {name: r.to_json() for name, r in self.results.items()}


def verify_kuratowski(
    gamma: ClosureOperator,
    mode: str = "exhaustive",
    *,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> AxiomReport:
    """Check the four closure axioms and report a witness for each failure.

    Axioms are keyed ``empty`` (gamma of the empty set is empty),
    ``extensive`` (A within gamma(A)), ``idempotent`` and ``additive``
    (gamma of a union is the union of gammas). Exhaustive mode covers
    every subset and every pair of subsets, so it is limited to n <= 12.
    Sampled mode draws ``trials`` uniform pairs from a seeded generator.
    """
    if mode == "exhaustive":
        if gamma.universe.size > EXHAUSTIVE_BOUND:
            raise BoundExceeded(f"exhaustive verification is limited to n <= {EXHAUSTIVE_BOUND}")
        return _verify_exhaustive(gamma)
    if mode == "sampled":
        return _verify_sampled(gamma, seed, trials)
    raise ValueError(f"unknown mode {mode!r}")


def _verify_exhaustive(gamma: ClosureOperator) -> AxiomReport:
    U = gamma.universe
    g = gamma.tabulate()
    masks = np.arange(g.size, dtype=np.int64)
    sub = lambda m: Subset(U, int(m))  # noqa: E731
    results = {}

    results["empty"] = AxiomResult(True) if g[0] == 0 else AxiomResult(False, sub(0))

    bad = np.flatnonzero(masks & ~g)
    results["extensive"] = AxiomResult(True) if bad.size == 0 else AxiomResult(False, sub(bad[0]))

    bad = np.flatnonzero(g[g] != g)
    results["idempotent"] = AxiomResult(True) if bad.size == 0 else AxiomResult(False, sub(bad[0]))

    results["additive"] = AxiomResult(True)
    # rows of A against all B, chunked to bound memory at n = 12
    chunk = max(1, (1 << 22) // g.size)
    for start in range(0, g.size, chunk):
        a = masks[start : start + chunk, None]
        lhs = g[a | masks[None, :]]
        rhs = g[a] | g[None, :]
        hit = np.argwhere(lhs != rhs)
        if hit.size:
            i, j = hit[0]
            results["additive"] = AxiomResult(False, sub(start + i), sub(j))
            break
    return AxiomReport({k: results[k] for k in AXIOMS}, mode="exhaustive")


def _verify_sampled(gamma: ClosureOperator, seed: int, trials: int) -> AxiomReport:
    U = gamma.universe
    n = U.size
    rng = np.random.default_rng(seed)
    f = gamma.apply_mask
    sub = lambda m: Subset(U, m)  # noqa: E731

    def draw() -> int:
        lo = int(rng.integers(0, 1 << min(n, 32)))
        if n <= 32:
            return lo
        return lo | int(rng.integers(0, 1 << (n - 32))) << 32

    found: dict[str, AxiomResult] = {}
    if f(0) != 0:
        found["empty"] = AxiomResult(False, sub(0))
    for _ in range(trials):
        a, b = draw(), draw()
        for x in (a, b):
            gx = f(x)
            if "extensive" not in found and x & ~gx:
                found["extensive"] = AxiomResult(False, sub(x))
            if "idempotent" not in found and f(gx) != gx:
                found["idempotent"] = AxiomResult(False, sub(x))
        if "additive" not in found and f(a | b) != f(a) | f(b):
            found["additive"] = AxiomResult(False, sub(a), sub(b))
    return AxiomReport({k: found.get(k, AxiomResult(True)) for k in AXIOMS}, mode="sampled")


def topology_from_closure(gamma: ClosureOperator):
    """Topology whose opens are the complements of all images of ``gamma``.

    The operator is verified first and rejected with
    :class:`NotAClosureOperator` if any axiom fails.
    """
    from .topology import FiniteTopology

    report = verify_kuratowski(gamma, "exhaustive")
    if not report.passed:
        raise NotAClosureOperator(report)
    full = gamma.universe.full_mask
    g = gamma.tabulate()
    opens = np.unique(full & ~g)
    return FiniteTopology(gamma.universe, tuple(int(m) for m in opens))


def mu_image(topology, F: Subset) -> list[Subset]:
    """The family ``{mu(theta)^c : theta open}`` for inspection only.

    No claim is made about whether it is a topology or how it compares to
    the input.
    """
    gamma = make_mu(topology.universe, F)
    full = topology.universe.full_mask
    masks = sorted({full & ~gamma.apply_mask(m) for m in topology.masks})
    return [Subset(topology.universe, m) for m in masks]


def operator_from_members(universe: Universe, images: Mapping) -> ClosureOperator:
    """Table operator from ``{tuple_of_members: tuple_of_members}``."""
    return table_operator(universe, {mask_of(k): mask_of(v) for k, v in images.items()})
