"""Element classes of a finite ring: units, radicals, nilpotents and friends.

Everything is a dense scan over the operation tables.  Results are
memoised on the ring, which is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import wraps

import numpy as np

from .core import ElemSet, FiniteRing, RingError, RingMap, ideal_closure, subring_closure


def _cached(fn):
    key = fn.__name__

    @wraps(fn)
    def wrapper(R: FiniteRing):
        hit = R._cache.get(key)
        if hit is None:
            hit = R._cache[key] = fn(R)
        return hit

    return wrapper


@_cached
def units(R: FiniteRing) -> ElemSet:
    is_one = R.mul == R.one
    return ElemSet(R, (is_one & is_one.T).any(axis=1))


@_cached
def unit_inverse(R: FiniteRing) -> np.ndarray:
    """``inv[u]`` for units ``u``; -1 elsewhere."""
    is_one = (R.mul == R.one) & (R.mul == R.one).T
    inv = np.argmax(is_one, axis=1).astype(np.int64)
    inv[~is_one.any(axis=1)] = -1
    return inv


def _one_minus(R: FiniteRing) -> np.ndarray:
    """``x -> 1 - x`` as an index map."""
    return R.add[R.one][R.neg].astype(np.int64)


@_cached
def jacobson(R: FiniteRing) -> ElemSet:
    """``{x : 1 - r·x is a unit for every r}``."""
    good = units(R).mask[_one_minus(R)]
    J = ElemSet(R, good[R.mul].all(axis=0))
    if ideal_closure(R, J) != J:
        raise RingError(f"quasi-regular elements of {R.label} do not form an ideal; tables are corrupt")
    return J


@dataclass(frozen=True)
class DeltaForms:
    shifted: ElemSet  # x + u is a unit for all units u
    left: ElemSet  # 1 - x·u is a unit for all units u
    right: ElemSet  # 1 - u·x is a unit for all units u


@_cached
def delta_forms(R: FiniteRing) -> DeltaForms:
    U = units(R)
    uidx = U.indices
    good = U.mask[_one_minus(R)]
    return DeltaForms(
        ElemSet(R, U.mask[R.add[:, uidx]].all(axis=1)),
        ElemSet(R, good[R.mul[:, uidx]].all(axis=1)),
        ElemSet(R, good[R.mul[uidx, :]].all(axis=0)),
    )


@_cached
def delta(R: FiniteRing) -> ElemSet:
    """``{x : x + u is a unit for every unit u}``."""
    f = delta_forms(R)
    if not (f.shifted == f.left == f.right):
        raise RingError(f"the three descriptions of Δ disagree on {R.label}; tables are corrupt")
    return f.shifted


def power_radical(R: FiniteRing, base: ElemSet) -> ElemSet:
    """Elements some positive power of which lies in ``base``.

    Powers are walked in lockstep for all elements.  An element drops out
    once it hits ``base`` or once its power sequence has gone all the way
    around its cycle (detected against a snapshot taken at power-of-two
    steps), at which point every one of its powers has been seen.
    """
    if base.ring is not R:
        raise ValueError("base set must live in R")
    n = R.order
    flat = R.mul.ravel().astype(np.int64)
    hit = base.mask.copy()
    todo = np.flatnonzero(~hit)
    p = todo.copy()
    snap = p.copy()
    step, mark = 1, 1
    while todo.size and step <= 2 * n:
        p = flat[p * n + todo]
        step += 1
        found = base.mask[p]
        hit[todo[found]] = True
        keep = ~found & (p != snap)
        todo, p, snap = todo[keep], p[keep], snap[keep]
        if step == 2 * mark:
            mark = step
            snap = p.copy()
    return ElemSet(R, hit)


@_cached
def sqrt_delta(R: FiniteRing) -> ElemSet:
    return power_radical(R, delta(R))


@_cached
def sqrt_jacobson(R: FiniteRing) -> ElemSet:
    return power_radical(R, jacobson(R))


@_cached
def nilpotents(R: FiniteRing) -> ElemSet:
    return power_radical(R, ElemSet.from_indices(R, [R.zero]))


@_cached
def idempotents(R: FiniteRing) -> ElemSet:
    ar = np.arange(R.order)
    return ElemSet(R, R.mul[ar, ar] == ar)


@_cached
def center(R: FiniteRing) -> ElemSet:
    return ElemSet(R, (R.mul == R.mul.T).all(axis=1))


@_cached
def quasi_regulars(R: FiniteRing) -> ElemSet:
    """``{a : 1 + a is a unit}``."""
    return ElemSet(R, units(R).mask[R.add[R.one]])


@dataclass(frozen=True)
class ElementClasses:
    nilpotents: ElemSet
    idempotents: ElemSet
    center: ElemSet
    quasi_regulars: ElemSet


def element_classes(R: FiniteRing) -> ElementClasses:
    return ElementClasses(nilpotents(R), idempotents(R), center(R), quasi_regulars(R))


def product_set(R: FiniteRing, A: ElemSet, B: ElemSet) -> ElemSet:
    """``{a·b : a in A, b in B}``."""
    mask = np.zeros(R.order, dtype=bool)
    bidx = B.indices
    if bidx.size:
        for chunk in np.array_split(A.indices, max(1, A.indices.size * bidx.size // (1 << 22))):
            mask[R.mul[np.ix_(chunk, bidx)].ravel()] = True
    return ElemSet(R, mask)


@dataclass(frozen=True)
class DecompositionSets:
    un_set: ElemSet  # unit · nilpotent
    usqrtj_set: ElemSet  # unit · element of √J
    usqrtdelta_set: ElemSet  # unit · element of √Δ
    uq_set: ElemSet  # unit · quasi-regular


@_cached
def decomposition_sets(R: FiniteRing) -> DecompositionSets:
    U = units(R)
    return DecompositionSets(
        product_set(R, U, nilpotents(R)),
        product_set(R, U, sqrt_jacobson(R)),
        product_set(R, U, sqrt_delta(R)),
        product_set(R, U, quasi_regulars(R)),
    )


def unit_generated_subring(R: FiniteRing) -> tuple[FiniteRing, RingMap]:
    """The subring generated by the units of ``R``, with its embedding."""
    hit = R._cache.get("unit_generated_subring")
    if hit is None:
        hit = R._cache["unit_generated_subring"] = subring_closure(R, units(R), f"<U({R.label})>")
    return hit


ELEMENT_SETS = (
    "units",
    "jacobson",
    "delta",
    "sqrt_delta",
    "sqrt_jacobson",
    "nilpotents",
    "idempotents",
    "center",
    "quasi_regulars",
)


def named_sets(R: FiniteRing) -> dict[str, ElemSet]:
    """All element classes by name, plus the decomposition sets."""
    out = {name: globals()[name](R) for name in ELEMENT_SETS}
    d = decomposition_sets(R)
    out.update(
        un_set=d.un_set,
        usqrtj_set=d.usqrtj_set,
        usqrtdelta_set=d.usqrtdelta_set,
        uq_set=d.uq_set,
    )
    return out
