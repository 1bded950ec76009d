"""Finite topologies stored as sorted tuples of open-set masks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BoundExceeded, EmptyF, EmptySubspace, FullF, NotATopology, UniverseMismatch
from .setcore import MAX_ENUMERATION, Subset, Universe, mask_members, submasks

ENUMERATION_BOUND = 4


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: tuple | None = None

    def to_json(self) -> dict:
        return {"pass": self.passed, "witness": None if self.witness is None else list(self.witness)}


@dataclass(frozen=True)
class ValidityReport:
    checks: dict[str, CheckResult]

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed_checks(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        return self.checks[name]

    def to_json(self) -> dict:
        return {"valid": self.valid, "checks": {k: c.to_json() for k, c in self.checks.items()}}


@dataclass(frozen=True, eq=False)
class FiniteTopology:
    """Open sets over ``universe`` as a canonical sorted tuple of masks.

    Construction does not validate; use :meth:`from_family` for untrusted
    input. ``embedding`` maps local indices to parent indices when the
    topology came from :func:`subspace`.
    """

    universe: Universe
    masks: tuple[int, ...]
    embedding: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "masks", tuple(sorted(set(int(m) for m in self.masks))))

    @classmethod
    def from_family(cls, universe: Universe, family: Iterable) -> FiniteTopology:
        masks = [_as_mask(universe, s) for s in family]
        report = verify_topology(masks, universe)
        if not report.valid:
            raise NotATopology(report)
        return cls(universe, tuple(masks))

    def __eq__(self, other):
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return self.universe.size == other.universe.size and self.masks == other.masks

    def __hash__(self):
        return hash((self.universe.size, self.masks))

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def opens(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.universe, m) for m in self.masks)

    @property
    def closed_masks(self) -> tuple[int, ...]:
        full = self.universe.full_mask
        return tuple(sorted(full & ~m for m in self.masks))

    def is_open(self, s: Subset | int) -> bool:
        return _as_mask(self.universe, s) in set(self.masks)

    def is_closed(self, s: Subset | int) -> bool:
        return (self.universe.full_mask & ~_as_mask(self.universe, s)) in set(self.masks)

    def neighbourhoods(self, x: int) -> list[int]:
        """Open masks containing point ``x``."""
        bit = 1 << x
        return [m for m in self.masks if m & bit]

    def to_json(self) -> dict:
        return {"universe": self.universe.to_json(), "opens": [list(mask_members(m)) for m in self.masks]}

    @classmethod
    def from_json(cls, data: dict) -> FiniteTopology:
        universe = Universe.from_json(data["universe"])
        return cls.from_family(universe, [Subset.of(universe, o) for o in data["opens"]])

    def __repr__(self) -> str:
        shown = ", ".join(repr(o) for o in self.opens)
        return f"FiniteTopology(n={self.universe.size}, opens=[{shown}])"


def _as_mask(universe: Universe, s) -> int:
    if isinstance(s, Subset):
        if s.universe.size != universe.size:
            raise UniverseMismatch("subset from a different universe")
        return s.mask
    return int(s)


def _check_universe(t: FiniteTopology, a: Subset) -> None:
    if a.universe.size != t.universe.size:
        raise UniverseMismatch(
            f"subset over size {a.universe.size}, topology over size {t.universe.size}"
        )


def verify_topology(family: Iterable, universe: Universe) -> ValidityReport:
    """Check a family of subsets against the open-set axioms.

    Pairwise union and intersection closure suffice on a finite universe.
    Each failed check carries the first offending pair in mask order.
    """
    masks = sorted({_as_mask(universe, s) for s in family})
    present = set(masks)
    full = universe.full_mask
    checks = {
        "has_empty": CheckResult(0 in present),
        "has_full": CheckResult(full in present),
    }
    union_bad = inter_bad = None
    for a, b in combinations(masks, 2):
        if union_bad is None and (a | b) not in present:
            union_bad = (list(mask_members(a)), list(mask_members(b)))
        if inter_bad is None and (a & b) not in present:
            inter_bad = (list(mask_members(a)), list(mask_members(b)))
        if union_bad is not None and inter_bad is not None:
            break
    checks["union_closed"] = CheckResult(union_bad is None, union_bad)
    checks["intersection_closed"] = CheckResult(inter_bad is None, inter_bad)
    return ValidityReport(checks)


def mu_topology(universe: Universe, F: Subset) -> FiniteTopology:
    """Every subset of ``F`` together with the whole space."""
    _check_strict(universe, F)
    if len(F) > MAX_ENUMERATION:
        raise BoundExceeded(f"|F| = {len(F)} gives too many opens to list")
    masks = list(submasks(F.mask))
    masks.append(universe.full_mask)
    return FiniteTopology(universe, tuple(masks))


def _check_strict(universe: Universe, F: Subset) -> None:
    if F.universe.size != universe.size:
        raise UniverseMismatch("F lives in a different universe")
    if F.mask == 0:
        raise EmptyF("F must be nonempty")
    if F.mask == universe.full_mask:
        raise FullF("F must be a strict subset of X")


def discrete_topology(universe: Universe) -> FiniteTopology:
    if universe.size > MAX_ENUMERATION:
        raise BoundExceeded("discrete topology too large to list")
    return FiniteTopology(universe, tuple(range(1 << universe.size)))


def indiscrete_topology(universe: Universe) -> FiniteTopology:
    return FiniteTopology(universe, (0, universe.full_mask))


def closure_mask(t: FiniteTopology, a: int) -> int:
    full = t.universe.full_mask
    out = full
    for m in t.masks:
        # complement of m is a closed superset of a
        if a & m == 0:
            out &= full & ~m
    return out


def interior_mask(t: FiniteTopology, a: int) -> int:
    out = 0
    for m in t.masks:
        if m & ~a == 0:
            out |= m
    return out


def closure_of(t: FiniteTopology, a: Subset) -> Subset:
    _check_universe(t, a)
    return Subset(t.universe, closure_mask(t, a.mask))


def interior_of(t: FiniteTopology, a: Subset) -> Subset:
    _check_universe(t, a)
    return Subset(t.universe, interior_mask(t, a.mask))


def is_dense(t: FiniteTopology, a: Subset) -> bool:
    return closure_of(t, a).mask == t.universe.full_mask


def subspace(t: FiniteTopology, y: Subset) -> FiniteTopology:
    """Induced topology on ``y``, re-indexed to ``0..|y|-1``.

    The result records ``embedding[i]`` = parent index of local element i.
    """
    _check_universe(t, y)
    if y.mask == 0:
        raise EmptySubspace("subspace needs a nonempty set")
    members = y.members()
    labels = None
    if t.universe.labels is not None:
        labels = tuple(t.universe.labels[i] for i in members)
    local = Universe(len(members), labels)
    traces = {_restrict(m & y.mask, members) for m in t.masks}
    return FiniteTopology(local, tuple(traces), embedding=members)


def _restrict(mask: int, members: Sequence[int]) -> int:
    out = 0
    for local, parent in enumerate(members):
        if mask >> parent & 1:
            out |= 1 << local
    return out


def embed_mask(mask: int, embedding: Sequence[int]) -> int:
    """Map a local subspace mask back into the parent universe."""
    out = 0
    for local, parent in enumerate(embedding):
        if mask >> local & 1:
            out |= 1 << parent
    return out


def is_coarser(t1: FiniteTopology, t2: FiniteTopology) -> bool:
    """True when every open of ``t1`` is open in ``t2``."""
    if t1.universe.size != t2.universe.size:
        raise UniverseMismatch("topologies over different universes")
    return set(t1.masks) <= set(t2.masks)


@dataclass(frozen=True)
class SeparationProfile:
    t0: bool
    t1: bool
    hausdorff: bool
    t0_witness: tuple[int, int] | None = None
    t1_witness: int | None = None
    hausdorff_witness: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "t0": self.t0,
            "t1": self.t1,
            "hausdorff": self.hausdorff,
            "t0_witness": None if self.t0_witness is None else list(self.t0_witness),
            "t1_witness": self.t1_witness,
            "hausdorff_witness": None if self.hausdorff_witness is None else list(self.hausdorff_witness),
        }


def separation_profile(t: FiniteTopology) -> SeparationProfile:
    """T0, T1 and Hausdorff flags by exhaustive scan over point pairs.

    A failing flag comes with a witness: the indistinguishable pair for
    T0, a non-closed singleton for T1, and a pair without disjoint
    neighbourhoods for Hausdorff.
    """
    n = t.universe.size
    nbhd = [t.neighbourhoods(x) for x in range(n)]
    t0_witness = None
    haus_witness = None
    for x, y in combinations(range(n), 2):
        bx, by = 1 << x, 1 << y
        if t0_witness is None and not any(bool(m & bx) != bool(m & by) for m in t.masks):
            t0_witness = (x, y)
        if haus_witness is None and not any(u & v == 0 for u in nbhd[x] for v in nbhd[y]):
            haus_witness = (x, y)
    t1_witness = None
    for x in range(n):
        if not t.is_closed(1 << x):
            t1_witness = x
            break
    return SeparationProfile(
        t0=t0_witness is None,
        t1=t1_witness is None,
        hausdorff=haus_witness is None,
        t0_witness=t0_witness,
        t1_witness=t1_witness,
        hausdorff_witness=haus_witness,
    )


def enumerate_topologies(n: int) -> Iterator[FiniteTopology]:
    """Every labeled topology on ``n`` points by filtering all families.

    All ``2^(2^n)`` families of subsets are pushed through
    :func:`verify_topology`; nothing order-theoretic is used, so the
    result can serve as an oracle for the rest of the package.
    """
    if not 1 <= n <= ENUMERATION_BOUND:
        raise BoundExceeded(f"enumeration is limited to 1 <= n <= {ENUMERATION_BOUND}")
    universe = Universe(n)
    nsets = 1 << n
    for family in range(1 << nsets):
        members = [s for s in range(nsets) if family >> s & 1]
        if verify_topology(members, universe).valid:
            yield FiniteTopology(universe, tuple(members))


def generated_topology(universe: Universe, family: Iterable[int]) -> FiniteTopology:
    """Smallest topology containing ``family`` (closure under unions and meets)."""
    opens = {0, universe.full_mask} | {int(m) for m in family}
    changed = True
    while changed:
        changed = False
        current = list(opens)
        for a, b in combinations(current, 2):
            for c in (a | b, a & b):
                if c not in opens:
                    opens.add(c)
                    changed = True
    return FiniteTopology(universe, tuple(opens))


def random_topology(universe: Universe, rng: np.random.Generator, generators: int = 3) -> FiniteTopology:
    """Topology generated by a few uniformly drawn subsets."""
    family = [int(rng.integers(0, 1 << universe.size)) for _ in range(generators)]
    return generated_topology(universe, family)
