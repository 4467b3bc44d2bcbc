"""Shared helpers: cached ring construction and slow, independent oracles.

The oracles are deliberately naive Python loops written from the
definitions, sharing no code with the library beyond the raw tables.
"""

from functools import lru_cache

import numpy as np
import pytest

from finring import dsl
from finring.core import FiniteRing


@lru_cache(maxsize=None)
def ring(text: str) -> FiniteRing:
    return dsl.evaluate(dsl.parse_ring_expr(text))


@pytest.fixture
def build():
    return ring


def naive_units(R):
    n, one = R.order, R.one
    out = set()
    for a in range(n):
        for b in range(n):
            if R.mul[a, b] == one and R.mul[b, a] == one:
                out.add(a)
                break
    return out


def naive_one_minus(R, x):
    return int(R.add[R.one, R.neg[x]])


def naive_delta(R):
    U = naive_units(R)
    return {x for x in range(R.order) if all(int(R.add[x, u]) in U for u in U)}


def naive_powers_hit(R, x, target):
    p = x
    for _ in range(R.order + 1):
        if p in target:
            return True
        p = int(R.mul[p, x])
    return False


def naive_span(R, gens):
    """Additive subgroup generated by ``gens``, by fixed point."""
    S = {R.zero} | set(gens)
    while True:
        new = {int(R.add[a, b]) for a in S for b in S} | S
        if new == S:
            return frozenset(S)
        S = new


def naive_left_ideal(R, gens):
    S = set(naive_span(R, gens))
    while True:
        new = set(naive_span(R, S | {int(R.mul[r, a]) for r in range(R.order) for a in S}))
        if new == S:
            return frozenset(S)
        S = new


def naive_ideal(R, gens):
    S = set(naive_span(R, gens))
    while True:
        prods = {int(R.mul[r, a]) for r in range(R.order) for a in S}
        prods |= {int(R.mul[a, r]) for r in range(R.order) for a in S}
        new = set(naive_span(R, S | prods))
        if new == S:
            return frozenset(S)
        S = new


def _close_under_sums(R, family):
    family = set(family)
    while True:
        new = {naive_span(R, a | b) for a in family for b in family} | family
        if new == family:
            return family
        family = new


def naive_all_ideals(R):
    return _close_under_sums(R, {naive_ideal(R, [x]) for x in range(R.order)})


def naive_jacobson(R):
    """Intersection of the maximal left ideals."""
    lefts = _close_under_sums(R, {naive_left_ideal(R, [x]) for x in range(R.order)})
    proper = [L for L in lefts if len(L) < R.order]
    maximal = [L for L in proper if not any(L < M for M in proper)]
    J = set(range(R.order))
    for M in maximal:
        J &= M
    return J


def relabel(R: FiniteRing, perm: np.ndarray, label: str = "relabelled") -> FiniteRing:
    """The same ring with element ``i`` renamed ``perm[i]``."""
    inv = np.argsort(perm)
    add = perm[R.add[np.ix_(inv, inv)]]
    mul = perm[R.mul[np.ix_(inv, inv)]]
    return FiniteRing(add, mul, int(perm[R.zero]), int(perm[R.one]), label)
