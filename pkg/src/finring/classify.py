"""Ring-class predicates and the per-ring profile."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .core import ElemSet, FiniteRing
from .radicals import (
    center,
    decomposition_sets,
    delta,
    idempotents,
    jacobson,
    nilpotents,
    sqrt_delta,
    sqrt_jacobson,
    unit_inverse,
    units,
)

FLAGS = (
    "is_usqrtdelta",
    "is_un",
    "is_usqrtj",
    "is_uq",
    "is_local",
    "is_boolean",
    "is_division",
    "is_field",
    "is_dedekind_finite",
    "is_indecomposable",
    "is_abelian",
    "is_2good",
    "has_2good_identity",
    "is_strongly_usqrtdelta",
    "is_uniquely_usqrtdelta",
    "has_trivial_idempotents",
)

COUNTS = ("units", "jacobson", "delta", "sqrt_delta", "sqrt_j", "nilpotents", "idempotents", "center")


@dataclass(frozen=True)
class RingProfile:
    label: str
    order: int
    characteristic: int
    counts: dict
    is_usqrtdelta: bool
    is_un: bool
    is_usqrtj: bool
    is_uq: bool
    is_local: bool
    is_boolean: bool
    is_division: bool
    is_field: bool
    is_dedekind_finite: bool
    is_indecomposable: bool
    is_abelian: bool
    is_2good: bool
    has_2good_identity: bool
    is_strongly_usqrtdelta: bool
    is_uniquely_usqrtdelta: bool
    has_trivial_idempotents: bool

    def flags(self) -> dict[str, bool]:
        return {f: getattr(self, f) for f in FLAGS}

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "label": d.pop("label"),
            "order": d.pop("order"),
            "characteristic": d.pop("characteristic"),
            "counts": d.pop("counts"),
            "flags": d,
        }


def non_units(R: FiniteRing) -> ElemSet:
    return ~units(R)


def is_usqrtdelta(R: FiniteRing) -> bool:
    return non_units(R) <= decomposition_sets(R).usqrtdelta_set


def is_un(R: FiniteRing) -> bool:
    return non_units(R) <= decomposition_sets(R).un_set


def is_usqrtj(R: FiniteRing) -> bool:
    return non_units(R) <= decomposition_sets(R).usqrtj_set


def is_uq(R: FiniteRing) -> bool:
    return non_units(R) <= decomposition_sets(R).uq_set


def is_local(R: FiniteRing) -> bool:
    """Every non-unit lies in J, so the non-units form the unique maximal ideal.

    The zero ring has no non-units and counts as local.
    """
    return non_units(R) <= jacobson(R)


def is_division(R: FiniteRing) -> bool:
    return R.order > 1 and non_units(R).tolist() == [R.zero]


def is_boolean(R: FiniteRing) -> bool:
    return len(idempotents(R)) == R.order


def is_dedekind_finite(R: FiniteRing) -> bool:
    """``ab = 1`` forces ``ba = 1``."""
    is_one = R.mul == R.one
    return bool(np.array_equal(is_one, is_one.T))


def central_idempotents(R: FiniteRing) -> ElemSet:
    return idempotents(R) & center(R)


def is_indecomposable(R: FiniteRing) -> bool:
    return set(central_idempotents(R)) <= {R.zero, R.one}


def is_abelian(R: FiniteRing) -> bool:
    """Every idempotent is central."""
    return idempotents(R) <= center(R)


def sums_of_two_units(R: FiniteRing) -> ElemSet:
    U = units(R).indices
    mask = np.zeros(R.order, dtype=bool)
    for chunk in np.array_split(U, max(1, U.size * U.size // (1 << 22))):
        mask[R.add[np.ix_(chunk, U)].ravel()] = True
    return ElemSet(R, mask)


def is_2good(R: FiniteRing) -> bool:
    return len(sums_of_two_units(R)) == R.order


def has_2good_identity(R: FiniteRing) -> bool:
    return R.one in sums_of_two_units(R)


def _unit_root_pairs(R: FiniteRing):
    """All products ``u·d`` with their commutation flag, over ``U × √Δ``."""
    U, D = units(R).indices, sqrt_delta(R).indices
    left = R.mul[np.ix_(U, D)]
    right = R.mul[np.ix_(D, U)].T
    return left, left == right


def is_strongly_usqrtdelta(R: FiniteRing) -> bool:
    """Every non-unit is ``u·d = d·u`` with ``u`` a unit and ``d`` in √Δ."""
    prods, commute = _unit_root_pairs(R)
    reached = np.zeros(R.order, dtype=bool)
    reached[prods[commute]] = True
    return non_units(R) <= ElemSet(R, reached)


def is_uniquely_usqrtdelta(R: FiniteRing) -> bool:
    """Every nonzero non-unit has exactly one factorisation ``u·d``.

    Zero is left out: ``0 = u·0`` for every unit ``u``, so counting it would
    rule out every ring with more than one unit.
    """
    prods, _ = _unit_root_pairs(R)
    counts = np.bincount(prods.ravel(), minlength=R.order)
    targets = non_units(R).mask.copy()
    targets[R.zero] = False
    return bool((counts[targets] == 1).all())


def has_trivial_idempotents(R: FiniteRing) -> bool:
    return set(idempotents(R)) <= {R.zero, R.one}


def profile(R: FiniteRing) -> RingProfile:
    hit = R._cache.get("profile")
    if hit is not None:
        return hit
    counts = {
        "units": len(units(R)),
        "jacobson": len(jacobson(R)),
        "delta": len(delta(R)),
        "sqrt_delta": len(sqrt_delta(R)),
        "sqrt_j": len(sqrt_jacobson(R)),
        "nilpotents": len(nilpotents(R)),
        "idempotents": len(idempotents(R)),
        "center": len(center(R)),
    }
    division = is_division(R)
    p = RingProfile(
        label=R.label,
        order=R.order,
        characteristic=R.characteristic,
        counts=counts,
        is_usqrtdelta=is_usqrtdelta(R),
        is_un=is_un(R),
        is_usqrtj=is_usqrtj(R),
        is_uq=is_uq(R),
        is_local=is_local(R),
        is_boolean=is_boolean(R),
        is_division=division,
        is_field=division and R.is_commutative,
        is_dedekind_finite=is_dedekind_finite(R),
        is_indecomposable=is_indecomposable(R),
        is_abelian=is_abelian(R),
        is_2good=is_2good(R),
        has_2good_identity=has_2good_identity(R),
        is_strongly_usqrtdelta=is_strongly_usqrtdelta(R),
        is_uniquely_usqrtdelta=is_uniquely_usqrtdelta(R),
        has_trivial_idempotents=has_trivial_idempotents(R),
    )
    R._cache["profile"] = p
    return p


def usqrtdelta_failures(R: FiniteRing) -> ElemSet:
    """Non-units that are not a unit times an element of √Δ."""
    return non_units(R) - decomposition_sets(R).usqrtdelta_set


def usqrtdelta_witness(R: FiniteRing) -> int | None:
    """A non-unit with no ``unit · √Δ`` factorisation, or None.

    The highest-index failure is reported.  With the little-endian encodings
    used by the constructors, this is the failure whose most significant
    component is largest.
    """
    bad = usqrtdelta_failures(R).indices
    return int(bad[-1]) if bad.size else None


@dataclass(frozen=True)
class Attempt:
    unit: int
    cofactor: int  # u^{-1}·x, the only candidate for the √Δ factor
    cofactor_power_in_delta: bool


def decomposition_attempts(R: FiniteRing, x: int) -> list[Attempt]:
    """For each unit ``u``, the forced cofactor ``u^{-1}·x`` and whether it lies in √Δ."""
    inv = unit_inverse(R)
    root = sqrt_delta(R)
    out = []
    for u in units(R):
        c = int(R.mul[inv[u], x])
        out.append(Attempt(u, c, c in root))
    return out
