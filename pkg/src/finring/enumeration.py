"""Exhaustive search for unital rings of order at most 4, up to isomorphism."""

from __future__ import annotations

import itertools

import numpy as np

from .core import FiniteRing, UnsupportedSizeError, are_isomorphic, check_axioms
from .tables import bilinear_table, positional_add_table

MAX_ENUM_ORDER = 4

# additive groups Z_m^d of each order, cyclic first
ADDITIVE_GROUPS = {1: [], 2: [(2, 1)], 3: [(3, 1)], 4: [(4, 1), (2, 2)]}

# expressions tried, in order, when naming a class
KNOWN = ("Z1", "Z2", "Z3", "Z4", "F4", "Triv(Z2)", "Prod(Z2,Z2)")


def _identity(mul: np.ndarray) -> int | None:
    ar = np.arange(mul.shape[0])
    for e in ar:
        if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar):
            return int(e)
    return None


def unital_candidates(order: int):
    """Every unital ring structure on each additive group of ``order``.

    A product is biadditive, so it is fixed by the products of the ``d``
    coordinate generators: ``m^(d^3)`` choices of structure constants.
    """
    if order == 1:
        yield FiniteRing(np.zeros((1, 1), int), np.zeros((1, 1), int), 0, 0, "Z1")
        return
    for m, d in ADDITIVE_GROUPS[order]:
        add = positional_add_table(m, d)
        for consts in itertools.product(range(m), repeat=d**3):
            gamma = np.array(consts, dtype=np.float64).reshape(d, d, d)
            mul = bilinear_table(m, d, gamma)
            one = _identity(mul)
            if one is None:
                continue
            R = FiniteRing(add, mul, 0, one, "?")
            if check_axioms(R).passed:
                yield R


def enumerate_unital_rings(order: int) -> list[FiniteRing]:
    """One representative per isomorphism class, labelled by a matching expression."""
    if not 1 <= order <= MAX_ENUM_ORDER:
        raise UnsupportedSizeError(order, MAX_ENUM_ORDER, "ring enumeration")
    from .dsl import evaluate

    reps: list[FiniteRing] = []
    for R in unital_candidates(order):
        if not any(are_isomorphic(R, S) for S in reps):
            reps.append(R)
    named = [evaluate(k) for k in KNOWN]
    out = []
    for R in reps:
        label = next((K.label for K in named if K.order == R.order and are_isomorphic(R, K)), None)
        out.append(FiniteRing(R.add, R.mul, R.zero, R.one, label or f"R{order}.{len(out)}"))
    return out
