"""Brute-force reference computations on plain frozensets.

Nothing here imports the package's mask machinery; these functions spell
out the textbook definitions directly so they can check it.
"""

from itertools import chain, combinations


def powerset(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))]


def mu(A, F, X):
    A = frozenset(A)
    return frozenset() if not A else A | (frozenset(X) - frozenset(F))


def mu_opens_by_trace(F, X):
    """{A^c & F : A nonempty} plus {X}."""
    X, F = frozenset(X), frozenset(F)
    return {(X - A) & F for A in powerset(X) if A} | {X}


def opens_from_closure(gamma, X):
    X = frozenset(X)
    return {X - gamma(A) for A in powerset(X)}


def is_topology(family, X):
    X = frozenset(X)
    fam = set(family)
    if frozenset() not in fam or X not in fam:
        return False
    # all unions of subfamilies and pairwise intersections
    for r in range(2, len(fam) + 1):
        for sub in combinations(fam, r):
            if frozenset().union(*sub) not in fam:
                return False
    return all(a & b in fam for a in fam for b in fam)


def closure(A, opens, X):
    X = frozenset(X)
    closed = [X - U for U in opens]
    out = X
    for C in closed:
        if frozenset(A) <= C:
            out = out & C
    return out


def interior(A, opens):
    out = frozenset()
    for U in opens:
        if U <= frozenset(A):
            out |= U
    return out


def t0(opens, X):
    return all(any((x in U) != (y in U) for U in opens) for x, y in combinations(X, 2))


def t1(opens, X):
    X = frozenset(X)
    return all((X - {x}) in opens for x in X)


def hausdorff(opens, X):
    return all(
        any(x in U and y in V and not (U & V) for U in opens for V in opens) for x, y in combinations(X, 2)
    )


def count_topologies(n):
    X = frozenset(range(n))
    subsets = powerset(X)
    count = 0
    for r in range(len(subsets) + 1):
        for fam in combinations(subsets, r):
            if is_topology(fam, X):
                count += 1
    return count
