import pytest
from hypothesis import given
from hypothesis import strategies as st

from topocontrol.errors import BoundExceeded, InvalidUniverse, UniverseMismatch
from topocontrol.setcore import (
    Subset,
    Universe,
    complement,
    difference,
    enumerate_subsets,
    intersect,
    set_algebra,
    submasks,
    union,
)

X3 = Universe(3)


def S(*members, universe=X3):
    return Subset.of(universe, members)


@pytest.mark.parametrize(
    "members, expected",
    [((0, 1), (2,)), ((), (0, 1, 2)), ((0, 1, 2), ())],
)
def test_complement(members, expected):
    assert complement(S(*members)) == S(*expected)
    assert complement(complement(S(*members))) == S(*members)


def test_set_algebra_examples():
    assert set_algebra("union", S(0), S(1)) == S(0, 1)
    assert set_algebra("intersect", S(0, 1), S(1, 2)) == S(1)
    assert set_algebra("difference", S(0, 1, 2), S(1)) == S(0, 2)
    with pytest.raises(ValueError):
        set_algebra("xor", S(0), S(1))


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        union(S(0), Subset.of(Universe(4), [0]))
    with pytest.raises(UniverseMismatch):
        Subset.of(X3, [3])


def test_universe_invariants():
    with pytest.raises(InvalidUniverse):
        Universe(0)
    with pytest.raises(InvalidUniverse):
        Universe(65)
    with pytest.raises(InvalidUniverse):
        Universe(2, ("a", "a"))
    assert Universe(64).full_mask == 2**64 - 1
    assert repr(Subset.of(Universe(2, ("a", "b")), [1])) == "{b}"


def test_enumerate_subsets_order():
    assert [s.members() for s in enumerate_subsets(Universe(1))] == [(), (0,)]
    assert [s.members() for s in enumerate_subsets(Universe(2))] == [(), (0,), (1,), (0, 1)]
    subs = list(enumerate_subsets(Universe(3)))
    assert len(subs) == 8 and len(set(subs)) == 8
    assert subs[0] == X3.empty() and subs[-1] == X3.full()


def test_enumerate_bound():
    with pytest.raises(BoundExceeded):
        next(enumerate_subsets(Universe(21)))


def test_submasks_increasing():
    assert list(submasks(0b1011)) == [0, 1, 2, 3, 8, 9, 10, 11]


def test_extensional_equality():
    assert S(2, 0, 0, 1) == S(0, 1, 2)
    assert hash(S(1, 0)) == hash(S(0, 1))
    # labels are presentation only
    assert Subset.of(Universe(3, ("a", "b", "c")), [1]) == S(1)


masks8 = st.integers(min_value=0, max_value=255)


@given(masks8, masks8)
def test_de_morgan(a, b):
    U = Universe(8)
    A, B = Subset(U, a), Subset(U, b)
    assert complement(union(A, B)) == intersect(complement(A), complement(B))
    assert complement(intersect(A, B)) == union(complement(A), complement(B))
    assert difference(A, B) == intersect(A, complement(B))


@given(st.lists(st.integers(0, 7)))
def test_members_roundtrip(xs):
    U = Universe(8)
    s = Subset.of(U, xs)
    assert s.members() == tuple(sorted(set(xs)))
    assert Subset.of(U, s.to_json()) == s
    assert len(s) == len(set(xs))
