"""Finite ground sets and word-mask subsets.

A :class:`Universe` is the index range ``0..size-1``; a :class:`Subset` is
an integer bit mask over it. Element identity is the index, labels are for
display only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded, InvalidUniverse, UniverseMismatch

MAX_UNIVERSE = 64
MAX_ENUMERATION = 20


@dataclass(frozen=True)
class Universe:
    size: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.size, int) or isinstance(self.size, bool):
            raise InvalidUniverse(f"size must be an int, got {self.size!r}")
        if not 1 <= self.size <= MAX_UNIVERSE:
            raise InvalidUniverse(f"size must be in [1, {MAX_UNIVERSE}], got {self.size}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise InvalidUniverse("need exactly one label per element")
            if len(set(labels)) != len(labels):
                raise InvalidUniverse("labels must be unique")
            object.__setattr__(self, "labels", labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def empty(self) -> Subset:
        return Subset(self, 0)

    def full(self) -> Subset:
        return Subset(self, self.full_mask)

    def subset(self, members: Iterable[int]) -> Subset:
        return Subset.of(self, members)

    def to_json(self) -> dict:
        out: dict = {"size": self.size}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> Universe:
        labels = data.get("labels")
        return cls(int(data["size"]), tuple(labels) if labels is not None else None)


@dataclass(frozen=True, eq=False)
class Subset:
    """Immutable subset of a universe stored as a bit mask."""

    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe.size:
            raise UniverseMismatch(
                f"mask {self.mask:#x} references indices outside a universe of size {self.universe.size}"
            )

    @classmethod
    def of(cls, universe: Universe, members: Iterable[int]) -> Subset:
        mask = 0
        for i in members:
            i = int(i)
            if not 0 <= i < universe.size:
                raise UniverseMismatch(f"index {i} not in universe of size {universe.size}")
            mask |= 1 << i
        return cls(universe, mask)

    def __eq__(self, other):
        if not isinstance(other, Subset):
            return NotImplemented
        return self.universe.size == other.universe.size and self.mask == other.mask

    def __hash__(self):
        return hash((self.universe.size, self.mask))

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.universe.size and bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(mask_members(self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: Subset) -> Subset:
        return union(self, other)

    def __and__(self, other: Subset) -> Subset:
        return intersect(self, other)

    def __sub__(self, other: Subset) -> Subset:
        return difference(self, other)

    def __invert__(self) -> Subset:
        return complement(self)

    def __le__(self, other: Subset) -> bool:
        _check_same(self, other)
        return self.mask & ~other.mask == 0

    def __ge__(self, other: Subset) -> bool:
        return other <= self

    def __lt__(self, other: Subset) -> bool:
        return self <= other and self.mask != other.mask

    def __gt__(self, other: Subset) -> bool:
        return other < self

    def members(self) -> tuple[int, ...]:
        return mask_members(self.mask)

    def to_json(self) -> list[int]:
        return list(self.members())

    def __repr__(self) -> str:
        inner = ", ".join(self.universe.label(i) for i in self.members())
        return "{" + inner + "}"


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        mask |= 1 << int(i)
    return mask


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing order, ``0`` first."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        # next submask in increasing order
        sub = (sub - mask) & mask


def _check_same(a: Subset, b: Subset) -> None:
    if a.universe.size != b.universe.size:
        raise UniverseMismatch(
            f"subsets over universes of size {a.universe.size} and {b.universe.size}"
        )


def complement(s: Subset) -> Subset:
    return Subset(s.universe, s.universe.full_mask & ~s.mask)


def union(a: Subset, b: Subset) -> Subset:
    _check_same(a, b)
    return Subset(a.universe, a.mask | b.mask)


def intersect(a: Subset, b: Subset) -> Subset:
    _check_same(a, b)
    return Subset(a.universe, a.mask & b.mask)


def difference(a: Subset, b: Subset) -> Subset:
    _check_same(a, b)
    return Subset(a.universe, a.mask & ~b.mask)


_ALGEBRA = {"union": union, "intersect": intersect, "difference": difference}


def set_algebra(op: str, a: Subset, b: Subset) -> Subset:
    """Dispatch ``op`` in {"union", "intersect", "difference"}."""
    try:
        fn = _ALGEBRA[op]
    except KeyError:
        raise ValueError(f"unknown set operation {op!r}") from None
    return fn(a, b)


def check_enumerable(size: int, bound: int = MAX_ENUMERATION) -> None:
    if size > bound:
        raise BoundExceeded(f"exhaustive scan over 2^{size} subsets exceeds bound n <= {bound}")


def enumerate_subsets(universe: Universe) -> Iterator[Subset]:
    """Yield every subset once, in increasing mask order (empty set first)."""
    check_enumerable(universe.size)
    for mask in range(1 << universe.size):
        yield Subset(universe, mask)


def subset_from_json(universe: Universe, members: Sequence[int]) -> Subset:
    return Subset.of(universe, members)
