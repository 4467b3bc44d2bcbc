"""Registry of checkable ring-theoretic statements, run over a corpus of rings.

Each claim is a predicate on one ring (plus whatever auxiliary rings it
needs, such as a base ring or a quotient).  A check returns None on
success or a :class:`Failure` carrying element indices as a witness.
Reports are produced ring by ring and then ordered claim-major, so the
output is deterministic regardless of evaluation order or parallelism.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import constructors as C
from . import dsl
from .classify import (
    is_2good,
    is_abelian,
    is_boolean,
    is_dedekind_finite,
    is_division,
    is_indecomposable,
    is_local,
    is_strongly_usqrtdelta,
    is_un,
    is_uniquely_usqrtdelta,
    is_uq,
    is_usqrtdelta,
    is_usqrtj,
    has_2good_identity,
    non_units,
    profile,
    usqrtdelta_failures,
)
from .core import (
    ElemSet,
    FiniteRing,
    RingError,
    RingMap,
    are_isomorphic,
    check_axioms,
    enumerate_ideals,
    get_iso_cap,
    get_max_order,
    ideal_closure,
    induced_ring,
    quotient,
)
from .groups import group_props
from .radicals import (
    center,
    decomposition_sets,
    delta,
    delta_forms,
    idempotents,
    jacobson,
    nilpotents,
    product_set,
    sqrt_delta,
    unit_generated_subring,
    unit_inverse,
    units,
)
from .tables import positional_digits

# ideal-quantified claims stop enumerating past this many ideals
IDEAL_LIMIT = 2000

# base rings whose 2×2 matrix rings are added to the Artinian equivalence check
MATRIX_LIFT_MAX_BASE = 4


@dataclass(frozen=True)
class Failure:
    witness: tuple[int, ...]
    note: str = ""


class NotApplicable(Exception):
    """The claim says nothing about this ring."""


class Skip(Exception):
    """The instance is too large for the claim's budget."""

    def __init__(self, size: int, note: str):
        self.size = size
        super().__init__(note)


@dataclass
class Outcome:
    failure: Failure | None = None
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    universe: str
    formula: str
    check: Callable
    max_order: int | None = None


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    expr: object = None  # parsed expression, when the ring came from one
    ring: FiniteRing | None = None  # explicit ring, when it did not


@dataclass
class ClaimReport:
    claim_id: str
    ring: str
    status: str  # "pass", "fail" or "skipped"
    witness: tuple[int, ...] | None = None
    size: int | None = None
    note: str | None = None
    elapsed: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        d: dict = {"id": self.claim_id, "ring": self.ring, "status": self.status}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.size is not None:
            d["size"] = self.size
        if self.note:
            d["note"] = self.note
        if timings:
            d["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return d


# --- context ----------------------------------------------------------------


class Context:
    """One ring under test plus a cache for the auxiliary rings claims build."""

    def __init__(self, entry: CorpusEntry, cache: "RingCache"):
        self.entry = entry
        self.expr = entry.expr
        self.cache = cache
        self.R = entry.ring if entry.ring is not None else cache.get(entry.expr)

    def ring(self, expr) -> FiniteRing:
        return self.cache.get(expr)


class RingCache:
    def __init__(self):
        self._rings: dict[str, FiniteRing] = {}

    def get(self, expr) -> FiniteRing:
        key = str(expr)
        R = self._rings.get(key)
        if R is None:
            R = dsl.evaluate(expr, builder=self.get)
            self._rings[key] = R
        return R

    def release_large(self, keep_below: int = 1024) -> None:
        for k in [k for k, R in self._rings.items() if R.order >= keep_below]:
            del self._rings[k]


def _first(mask) -> int:
    return int(np.flatnonzero(mask)[0])


def _pair(rows: np.ndarray, cols: np.ndarray, bad: np.ndarray) -> tuple[int, int]:
    i, j = np.argwhere(bad)[0]
    return int(rows[i]), int(cols[j])


def _nonzero(R: FiniteRing) -> None:
    if R.order == 1:
        raise NotApplicable


def _diff_witness(A: ElemSet, B: ElemSet) -> Failure | None:
    d = (A.mask ^ B.mask)
    return Failure((_first(d),)) if d.any() else None


def _implies(p: bool, q: bool) -> bool:
    return (not p) or q


# --- claim checks -----------------------------------------------------------


def _axioms(R: FiniteRing):
    hit = R._cache.get("axioms")
    if hit is None:
        hit = R._cache["axioms"] = check_axioms(R)
    return hit


def c00(ctx: Context):
    rep = _axioms(ctx.R)
    if not rep.passed:
        name, w = rep.violations[0]
        return Failure(tuple(w), f"{name} fails")


def c01(ctx: Context):
    f = delta_forms(ctx.R)
    return _diff_witness(f.shifted, f.left) or _diff_witness(f.shifted, f.right)


def c02(ctx: Context):
    bad = jacobson(ctx.R) - delta(ctx.R)
    if len(bad):
        return Failure((bad.first(),))


def c03(ctx: Context):
    R = ctx.R
    T, emb = unit_generated_subring(R)
    image = emb.image_of(jacobson(T))
    return _diff_witness(delta(R), image)


def c04(ctx: Context):
    R = ctx.R
    D, J = delta(R), jacobson(R)
    closed = ideal_closure(R, D) == D
    if (D == J) != closed:
        w = (_first(D.mask ^ J.mask),) if D != J else ()
        return Failure(w, "Δ = J disagrees with Δ being an ideal")


def c05(ctx: Context):
    R = ctx.R
    A, U = sqrt_delta(R).indices, units(R).indices
    ab = R.mul[np.ix_(A, U)]
    commute = ab == R.mul[np.ix_(U, A)].T
    bad = commute & ~sqrt_delta(R).mask[ab]
    if bad.any():
        return Failure(_pair(A, U, bad))


def c06(ctx: Context):
    R = ctx.R
    A = sqrt_delta(R).indices
    one_minus = R.add[R.one][R.neg[A]]
    bad = ~units(R).mask[one_minus]
    if bad.any():
        return Failure((int(A[bad][0]),))


def c07(ctx: Context):
    R = ctx.R
    bad = (sqrt_delta(R) & center(R)) - delta(R)
    if len(bad):
        return Failure((bad.first(),))


def _ideals(R: FiniteRing) -> list[ElemSet]:
    hit = R._cache.get("all_ideals")
    if hit is None:
        hit = R._cache["all_ideals"] = enumerate_ideals(R, limit=IDEAL_LIMIT)
    if hit is None:
        raise Skip(R.order, f"more than {IDEAL_LIMIT} ideals")
    return hit


def _quotient(R: FiniteRing, I: ElemSet):
    """``(R/I, projection)``, shared between claims; ``R/0`` is R itself."""
    cache = R._cache.setdefault("quotients", {})
    key = I.mask.tobytes()
    if key not in cache:
        if len(I) == 1:
            cache[key] = (R, RingMap(R, R, np.arange(R.order), "automorphism"))
        else:
            cache[key] = quotient(R, I)
    return cache[key]


def c08(ctx: Context):
    R = ctx.R
    J = jacobson(R)
    root = sqrt_delta(R)
    for I in _ideals(R):
        if not I <= J:
            continue
        Q, pi = _quotient(R, I)
        if pi.image_of(root) != sqrt_delta(Q):
            x = _first(pi.image_of(root).mask ^ sqrt_delta(Q).mask)
            # report an ideal element and a preimage of the offending coset
            return Failure((I.tolist()[-1], int(np.flatnonzero(pi.image == x)[0])), f"ideal of size {len(I)}")


def c09(ctx: Context):
    e = ctx.expr
    if not isinstance(e, dsl.Prod) or len(e.factors) < 2:
        raise NotApplicable
    R = ctx.R
    factors = [ctx.ring(f) for f in e.factors]
    dig = positional_digits(np.arange(R.order), [F.order for F in factors])
    for fn in (sqrt_delta, delta, jacobson, units):
        expected = np.ones(R.order, dtype=bool)
        for k, F in enumerate(factors):
            expected &= fn(F).mask[dig[:, k]]
        if not np.array_equal(expected, fn(R).mask):
            return Failure((_first(expected ^ fn(R).mask),), f"{fn.__name__} is not componentwise")


def c10(ctx: Context):
    R = ctx.R
    A, D = sqrt_delta(R).indices, delta(R).indices
    bad = ~delta(R).mask[R.mul[np.ix_(A, D)]]
    if bad.any():
        return Failure(_pair(A, D, bad))


def c11(ctx: Context):
    R = ctx.R
    A, D = sqrt_delta(R).indices, delta(R).indices
    bad = ~sqrt_delta(R).mask[R.add[np.ix_(A, D)]]
    if bad.any():
        return Failure(_pair(A, D, bad))


def c12(ctx: Context):
    R = ctx.R
    A = (decomposition_sets(R).usqrtdelta_set & center(R)).indices
    bad = ~units(R).mask[R.add[R.one][R.neg[A]]]
    if bad.any():
        return Failure((int(A[bad][0]),))


def c13(ctx: Context):
    # closure under u·a·v for all units u, v is closure under each side separately
    R = ctx.R
    S = decomposition_sets(R).usqrtdelta_set
    A, U = S.indices, units(R).indices
    left = R.mul[np.ix_(U, A)]
    bad = ~S.mask[left]
    if bad.any():
        u, a = _pair(U, A, bad)
        return Failure((u, a, R.one))
    right = R.mul[np.ix_(A, U)]
    bad = ~S.mask[right]
    if bad.any():
        a, v = _pair(A, U, bad)
        return Failure((R.one, a, v))


def c14(ctx: Context):
    R = ctx.R
    A, U = sqrt_delta(R).indices, units(R).indices
    inv = unit_inverse(R)[U]
    conj = R.mul[R.mul[inv[:, None], A[None, :]], U[:, None]]
    bad = ~sqrt_delta(R).mask[conj]
    if bad.any():
        u, a = _pair(U, A, bad)
        return Failure((a, u))


def c15(ctx: Context):
    R = ctx.R
    Cu = (center(R) & units(R)).indices
    ac = R.mul[:, Cu]
    bad = sqrt_delta(R).mask[ac] & ~sqrt_delta(R).mask[:, None]
    if bad.any():
        return Failure(_pair(np.arange(R.order), Cu, bad))


def c16(ctx: Context):
    e = ctx.expr
    R = ctx.R
    if str(e) in ("M(2,Z2)", "M(2,F2)"):
        a = R.order - 1  # the all-ones matrix
    elif (
        isinstance(e, dsl.Prod)
        and len(e.factors) == 2
        and str(e.factors[0]) in ("M(2,Z2)", "M(2,F2)")
        and str(e.factors[1]) == "Z4"
    ):
        a = (ctx.ring(e.factors[0]).order - 1) + ctx.ring(e.factors[0]).order * 2  # (all-ones, 2)
    else:
        raise NotApplicable
    root = sqrt_delta(R)
    if not (a in root and a not in delta(R) and a not in jacobson(R)):
        return Failure((a,), "expected an element of √Δ outside Δ and J")
    if not delta(R) < root:
        return Failure((a,), "Δ is not strictly inside √Δ")
    strict = nilpotents(R) < root
    return Outcome(notes=[] if strict else ["Nil = √Δ here, as in every finite ring"])


def c17(ctx: Context):
    R = ctx.R
    bad = (sqrt_delta(R) & idempotents(R)) - ElemSet.from_indices(R, [R.zero])
    if len(bad):
        return Failure((bad.first(),))


def c18(ctx: Context):
    R = ctx.R
    covers = (units(R) | sqrt_delta(R)) == ElemSet.full(R)
    if is_local(R) != covers:
        missing = ~(units(R) | sqrt_delta(R))
        return Failure((missing.first(),) if len(missing) else (), "local flag disagrees with R = U ∪ √Δ")


def c19(ctx: Context):
    R = ctx.R
    bad = sqrt_delta(R) & units(R)
    if len(bad):
        return Failure((bad.first(),))


def c20(ctx: Context):
    R = ctx.R
    root = sqrt_delta(R).mask
    one_minus = R.add[R.one][R.neg]
    hyp = root[one_minus[R.mul]]  # [a, b]: 1 - ab in √Δ
    concl = root[one_minus[R.mul.T]]  # [a, b]: 1 - ba in √Δ
    unit = units(R).mask[:, None]
    bad = hyp & (concl != unit)
    if bad.any():
        a, b = np.argwhere(bad)[0]
        return Failure((int(a), int(b)))


def c21(ctx: Context):
    R = ctx.R
    covered = units(R) | sqrt_delta(R) | idempotents(R)
    if covered != ElemSet.full(R):
        raise NotApplicable
    options = {
        "local": is_local(R),
        "Boolean": is_boolean(R),
        "non-abelian of characteristic 2": (not is_abelian(R)) and R.characteristic == 2,
    }
    held = [k for k, v in options.items() if v]
    if not held:
        return Failure((), "none of the three alternatives holds")
    if len(held) > 1:
        return Outcome(notes=["exclusivity: " + " and ".join(held) + " both hold"])


def c22(ctx: Context):
    R = ctx.R
    if not is_usqrtdelta(R):
        raise NotApplicable
    ci = (idempotents(R) & center(R)) - ElemSet.from_indices(R, [R.zero, R.one])
    if len(ci):
        return Failure((ci.first(),), "non-trivial central idempotent")
    if not is_dedekind_finite(R):
        a, b = np.argwhere((R.mul == R.one) & (R.mul.T != R.one))[0]
        return Failure((int(a), int(b)), "ab = 1 but ba != 1")


def c23(ctx: Context):
    R = ctx.R
    good = is_usqrtdelta(R)
    J = jacobson(R)
    for I in _ideals(R):
        Q, _ = _quotient(R, I)
        q_good = is_usqrtdelta(Q)
        if good and not q_good:
            return Failure(tuple(I.tolist()[-1:]), "quotient by this ideal is not U√Δ")
        if I <= J and q_good and not good:
            return Failure(tuple(I.tolist()[-1:]), "quotient by an ideal inside J is U√Δ but R is not")


def _center_ring(R: FiniteRing) -> FiniteRing:
    hit = R._cache.get("center_ring")
    if hit is None:
        hit = R._cache["center_ring"] = induced_ring(R, center(R).mask, f"C({R.label})")
    return hit[0]


def c24(ctx: Context):
    R = ctx.R
    good = is_usqrtdelta(R)
    if good and not is_local(_center_ring(R)):
        return Failure((), "center is not local")
    if R.is_commutative and good != is_local(R):
        return Failure((), "commutative ring with U√Δ != local")


def _prime_power(n: int) -> bool:
    from .groups import prime_power_base

    return prime_power_base(n) is not None


def c25(ctx: Context):
    if not isinstance(ctx.expr, dsl.ZMod) or ctx.expr.n < 2:
        raise NotApplicable
    if is_usqrtdelta(ctx.R) != _prime_power(ctx.expr.n):
        w = usqrtdelta_failures(ctx.R).first()
        return Failure((w,) if w is not None else ())


def c26(ctx: Context):
    if str(ctx.expr) != "Prod(Z4,Z4)":
        raise NotApplicable
    target = 2 + 4 * 3  # (2, 3)
    if is_usqrtdelta(ctx.R) or target not in usqrtdelta_failures(ctx.R):
        return Failure((target,))


def c27(ctx: Context):
    label = str(ctx.expr)
    if label in ("T(2,Z2)", "T(2,F2)"):
        if is_usqrtdelta(ctx.R):
            return Failure((), "expected not U√Δ")
    elif label in ("M(2,Z2)", "M(2,F2)"):
        if not is_usqrtdelta(ctx.R):
            return Failure((usqrtdelta_failures(ctx.R).first(),))
    else:
        raise NotApplicable


def _extension_base(ctx: Context):
    """(base ring, component map) for trivial-extension shaped expressions."""
    e = ctx.expr
    if isinstance(e, dsl.Triv):
        base = ctx.ring(e.base)
        return base, np.arange(ctx.R.order) % base.order
    if isinstance(e, dsl.DT):
        # DT(R, R) = T(T(R, R), T(R, R)) with (a, m) as the first component
        inner = ctx.ring(dsl.Triv(e.base))
        return inner, np.arange(ctx.R.order) % inner.order
    raise NotApplicable


def c28(ctx: Context):
    base, comp = _extension_base(ctx)
    R = ctx.R
    for fn in (units, delta):
        expected = fn(base).mask[comp]
        if not np.array_equal(expected, fn(R).mask):
            return Failure((_first(expected ^ fn(R).mask),), f"{fn.__name__} is not T({fn.__name__}(R), M)")


def c29(ctx: Context):
    e = ctx.expr
    if isinstance(e, (dsl.Triv, dsl.Trunc, dsl.DT)):
        base = ctx.ring(e.base)
    else:
        raise NotApplicable
    if is_usqrtdelta(ctx.R) != is_usqrtdelta(base):
        return Failure((), f"extension {is_usqrtdelta(ctx.R)}, base {is_usqrtdelta(base)}")


def c30(ctx: Context):
    e = ctx.expr
    if not (isinstance(e, dsl.Trunc) and e.twist == "id"):
        raise NotApplicable
    return c29(ctx)


def c31(ctx: Context):
    if not isinstance(ctx.expr, dsl.DT):
        raise NotApplicable
    return c29(ctx)


def c32(ctx: Context):
    e = ctx.expr
    if not (isinstance(e, dsl.SN) and e.k >= 2):
        raise NotApplicable
    R, base = ctx.R, ctx.ring(e.base)
    T, phi = C.sn_splitting(e.k, base, R)
    if not (phi.is_homomorphism() and phi.is_injective() and phi.is_surjective()):
        return Failure((), "splitting map is not an isomorphism")
    notes = []
    if R.order <= get_iso_cap():
        if not are_isomorphic(R, T):
            return Failure((), "isomorphism search found no isomorphism")
    else:
        notes.append(f"search-based isomorphism check skipped above order {get_iso_cap()}; explicit map verified")
    if is_usqrtdelta(R) != is_usqrtdelta(base):
        return Failure((), f"S_n {is_usqrtdelta(R)}, base {is_usqrtdelta(base)}")
    return Outcome(notes=notes)


def c33(ctx: Context):
    R = ctx.R
    _nonzero(R)
    if is_uniquely_usqrtdelta(R) != is_division(R):
        return Failure((), "uniquely U√Δ differs from division")
    if is_strongly_usqrtdelta(R) != is_local(R):
        return Failure((), "strongly U√Δ differs from local")


def c34(ctx: Context):
    R = ctx.R
    U, A = units(R), sqrt_delta(R)
    return _diff_witness(product_set(R, U, A), product_set(R, A, U))


def _rationally_closed_check(R: FiniteRing, mask: np.ndarray, S: FiniteRing, emb) -> Failure | None:
    inside = sqrt_delta(R).mask & mask
    image = emb.image_of(sqrt_delta(S)).mask
    bad = inside & ~image
    if bad.any():
        return Failure((_first(bad),))


def c35(ctx: Context):
    R = ctx.R
    S, emb = induced_ring(R, center(R).mask, f"C({R.label})")
    f = _rationally_closed_check(R, center(R).mask, S, emb)
    if f:
        return Failure(f.witness, "subring: center")
    T, emb_t = unit_generated_subring(R)
    notes = []
    t_mask = emb_t.image_of(ElemSet.full(T)).mask
    if emb_t.image_of(units(T)) == ElemSet(R, units(R).mask & t_mask):
        f = _rationally_closed_check(R, t_mask, T, emb_t)
        if f:
            return Failure(f.witness, "subring: unit-generated")
    else:
        notes.append("unit-generated subring is not rationally closed; only the center checked")
    return Outcome(notes=notes)


def c36(ctx: Context):
    R = ctx.R
    if not is_usqrtdelta(R):
        raise NotApplicable
    Cr = _center_ring(R)
    if not is_usqrtdelta(Cr):
        return Failure((), "center is not U√Δ")


def c37(ctx: Context):
    R = ctx.R
    if not is_usqrtdelta(R):
        raise NotApplicable
    x = R.zero
    for n in range(R.characteristic):
        if x not in units(R) and x not in delta(R):
            return Failure((x,), f"{n}·1")
        x = int(R.add[x, R.one])


def _mod_j(R: FiniteRing) -> FiniteRing:
    return _quotient(R, jacobson(R))[0]


def c38(ctx: Context):
    R = ctx.R
    _nonzero(R)
    if is_un(_mod_j(R)) and not is_usqrtdelta(R):
        return Failure((usqrtdelta_failures(R).first(),))


def c39(ctx: Context):
    R = ctx.R
    _nonzero(R)
    if set(idempotents(R)) != {R.zero, R.one}:
        raise NotApplicable
    if not is_usqrtdelta(R):
        return Failure((usqrtdelta_failures(R).first(),))


def c40(ctx: Context):
    R = ctx.R
    if not (is_usqrtdelta(R) and has_2good_identity(R)):
        raise NotApplicable
    if not is_2good(R):
        from .classify import sums_of_two_units

        return Failure(((~sums_of_two_units(R)).first(),))


def c41(ctx: Context):
    R = ctx.R
    d = decomposition_sets(R)
    chain = [d.un_set, d.usqrtj_set, d.usqrtdelta_set, d.uq_set]
    for small, big in zip(chain, chain[1:]):
        if not small <= big:
            return Failure(((small - big).first(),), "set chain broken")
    p = profile(R)
    implications = [
        (p.is_un, p.is_usqrtj),
        (p.is_usqrtj, p.is_usqrtdelta),
        (p.is_usqrtdelta, p.is_uq),
        (p.is_field, p.is_division),
        (p.is_division, p.is_local),
    ]
    if not all(_implies(a, b) for a, b in implications):
        return Failure((), "flag implications broken")


def _matrix_base(ctx: Context):
    if not isinstance(ctx.expr, dsl.Matrix):
        raise NotApplicable
    return ctx.ring(ctx.expr.base)


def c42(ctx: Context):
    base = _matrix_base(ctx)
    if is_usqrtdelta(ctx.R) and not is_local(_center_ring(base)):
        return Failure((), "M_n(R) is U√Δ but C(R) is not local")


def c43(ctx: Context):
    base = _matrix_base(ctx)
    if not base.is_commutative:
        raise NotApplicable
    if is_usqrtdelta(ctx.R) != is_local(base):
        return Failure((), f"M_n(R) U√Δ {is_usqrtdelta(ctx.R)}, R local {is_local(base)}")


def c44(ctx: Context):
    R = ctx.R
    _nonzero(R)
    flags = {"R U√Δ": is_usqrtdelta(R), "R UN": is_un(R)}
    notes = []
    if isinstance(ctx.expr, dsl.Matrix):
        base = ctx.ring(ctx.expr.base)
        flags.update({"base U√Δ": is_usqrtdelta(base), "base UN": is_un(base)})
    if ctx.expr is not None and R.order <= MATRIX_LIFT_MAX_BASE:
        lift = dsl.Matrix(2, ctx.expr)
        M = ctx.ring(lift)
        flags.update({"M2 U√Δ": is_usqrtdelta(M), "M2 UN": is_un(M)})
        notes.append(f"checked with {lift}")
    if len(set(flags.values())) > 1:
        return Failure((), ", ".join(f"{k}={v}" for k, v in flags.items()))
    return Outcome(notes=notes)


def c45(ctx: Context):
    e = ctx.expr
    if not isinstance(e, dsl.KS):
        raise NotApplicable
    base = ctx.ring(e.base)
    if not base.is_commutative or e.s not in jacobson(base):
        raise NotApplicable
    if is_usqrtdelta(ctx.R) and not is_usqrtdelta(base):
        return Failure((), "K_s(R) is U√Δ but R is not")


def _group_ring_parts(ctx: Context):
    e = ctx.expr
    if not isinstance(e, dsl.GroupRing):
        raise NotApplicable
    G = dsl.evaluate_group(e.group)
    if G.order < 2:
        raise NotApplicable
    return ctx.ring(e.base), G


def _p_condition(base: FiniteRing, G) -> bool:
    """G is a p-group for a prime p with p·1 in J(R)."""
    p = group_props(G).p_group
    return p is not None and base.multiple(p) in jacobson(base)


def c46(ctx: Context):
    base, _ = _group_ring_parts(ctx)
    if not is_division(base) or not base.is_commutative:
        raise NotApplicable
    if is_usqrtdelta(ctx.R) != is_local(ctx.R):
        return Failure((), "FG U√Δ differs from FG local")


def c47(ctx: Context):
    base, G = _group_ring_parts(ctx)
    eps = C.augmentation(ctx.R, base, G)
    bad = eps.image_of(delta(ctx.R)) - delta(base)
    if len(bad):
        x = bad.first()
        return Failure((int(np.flatnonzero(delta(ctx.R).mask & (eps.image == x))[0]),))


def c48(ctx: Context):
    base, G = _group_ring_parts(ctx)
    if is_usqrtdelta(ctx.R) and not (is_usqrtdelta(base) and _p_condition(base, G)):
        return Failure((), "RG is U√Δ without the p-group condition")


def c49(ctx: Context):
    base, G = _group_ring_parts(ctx)
    if not (is_usqrtdelta(base) and _p_condition(base, G)):
        raise NotApplicable
    if not is_usqrtdelta(ctx.R):
        return Failure((usqrtdelta_failures(ctx.R).first(),))


def c50(ctx: Context):
    base, G = _group_ring_parts(ctx)
    if not group_props(G).is_solvable:
        raise NotApplicable
    predicted = is_usqrtdelta(base) and _p_condition(base, G)
    if is_usqrtdelta(ctx.R) != predicted:
        return Failure((), f"RG U√Δ {is_usqrtdelta(ctx.R)}, predicted {predicted}")


def c51(ctx: Context):
    base, G = _group_ring_parts(ctx)
    if len(jacobson(base)) == 1:
        return Outcome(notes=["J(R) = 0, so (R/J)G is RG itself"])
    RbarG = C.group_ring(_mod_j(base), G)
    if is_usqrtdelta(ctx.R) != is_usqrtdelta(RbarG):
        return Failure((), f"RG U√Δ {is_usqrtdelta(ctx.R)}, (R/J)G U√Δ {is_usqrtdelta(RbarG)}")


CLAIMS: list[Claim] = [
    Claim("C00", "ring axioms hold", "all rings", "axioms(R)", c00),
    Claim("C01", "the three descriptions of Δ agree", "all rings",
          "x+u ∈ U ∀u ⇔ 1-xu ∈ U ∀u ⇔ 1-ux ∈ U ∀u", c01),
    Claim("C02", "J is inside Δ", "all rings", "J ⊆ Δ", c02),
    Claim("C03", "Δ is the radical of the unit-generated subring", "all rings", "Δ(R) = J(<U(R)>)", c03),
    Claim("C04", "Δ equals J exactly when Δ is an ideal", "all rings", "Δ = J ⇔ RΔR = Δ", c04),
    Claim("C05", "√Δ is closed under multiplication by commuting units", "all rings",
          "a ∈ √Δ, b ∈ U, ab = ba ⇒ ab ∈ √Δ", c05),
    Claim("C06", "1 - a is a unit for a in √Δ", "all rings", "a ∈ √Δ ⇒ 1-a ∈ U", c06),
    Claim("C07", "central elements of √Δ lie in Δ", "all rings", "√Δ ∩ C ⊆ Δ", c07),
    Claim("C08", "√Δ passes to quotients by ideals inside J", "all rings, all ideals I ⊆ J",
          "√Δ(R/I) = √Δ(R)/I", c08),
    Claim("C09", "√Δ, Δ, J and U of a product are componentwise", "products",
          "√Δ(∏R_i) = ∏√Δ(R_i)", c09),
    Claim("C10", "√Δ times Δ lies in Δ", "all rings", "√Δ·Δ ⊆ Δ", c10),
    Claim("C11", "√Δ plus Δ lies in √Δ", "all rings", "√Δ + Δ ⊆ √Δ", c11),
    Claim("C12", "central U√Δ elements a have 1 - a a unit", "all rings", "a ∈ U√Δ ∩ C ⇒ 1-a ∈ U", c12),
    Claim("C13", "the U√Δ set is stable under two-sided unit multiplication", "all rings",
          "a ∈ U√Δ, u,v ∈ U ⇒ uav ∈ U√Δ", c13),
    Claim("C14", "√Δ is stable under unit conjugation", "all rings", "a ∈ √Δ, u ∈ U ⇒ u⁻¹au ∈ √Δ", c14),
    Claim("C15", "central units can be cancelled inside √Δ", "all rings",
          "c ∈ C ∩ U, ac ∈ √Δ ⇒ a ∈ √Δ", c15),
    Claim("C16", "the all-ones 2×2 matrix over F2 is in √Δ but not Δ", "M(2,F2) and (M(2,F2), Z4)",
          "A² = 0, A ∈ √Δ \\ Δ", c16),
    Claim("C17", "√Δ contains no non-zero idempotent", "all rings", "√Δ ∩ Id = {0}", c17),
    Claim("C18", "local exactly when every element is a unit or in √Δ", "all rings",
          "local ⇔ R = U ∪ √Δ", c18),
    Claim("C19", "√Δ contains no unit", "all rings", "√Δ ∩ U = ∅", c19),
    Claim("C20", "1 - ab in √Δ: 1 - ba in √Δ exactly when a is a unit", "all rings, all pairs a, b",
          "1-ab ∈ √Δ ⇒ (1-ba ∈ √Δ ⇔ a ∈ U)", c20),
    Claim("C21", "R = U ∪ √Δ ∪ Id forces local, Boolean, or non-abelian of characteristic 2",
          "rings with R = U ∪ √Δ ∪ Id", "at least one alternative", c21),
    Claim("C22", "U√Δ rings are indecomposable and Dedekind-finite", "U√Δ rings",
          "Id ∩ C = {0,1}, ab = 1 ⇒ ba = 1", c22),
    Claim("C23", "U√Δ passes to quotients, and lifts over ideals inside J", "all rings, all ideals",
          "R U√Δ ⇒ R/I U√Δ; I ⊆ J, R/I U√Δ ⇒ R U√Δ", c23),
    Claim("C24", "U√Δ rings have local center; commutative U√Δ is local", "all rings",
          "U√Δ ⇒ C(R) local; commutative: U√Δ ⇔ local", c24),
    Claim("C25", "Z_n is U√Δ exactly for prime powers", "Z_n", "Z_n U√Δ ⇔ n = p^k", c25),
    Claim("C26", "Z4 × Z4 is not U√Δ, witnessed by (2, 3)", "Prod(Z4,Z4)", "(2,3) ∉ U√Δ", c26),
    Claim("C27", "M(2,Z2) is U√Δ while its subring T(2,Z2) is not", "M(2,Z2), T(2,Z2)",
          "M_2(Z_2) U√Δ, T_2(Z_2) not", c27),
    Claim("C28", "units and Δ of a trivial extension come from the base", "trivial extensions",
          "U(T(R,M)) = T(U(R),M), Δ(T(R,M)) = T(Δ(R),M)", c28),
    Claim("C29", "trivial extensions and truncated skew polynomials preserve U√Δ both ways",
          "Triv, DT, Trunc", "T(R,M), R[x;α]/(xⁿ) U√Δ ⇔ R U√Δ", c29),
    Claim("C30", "truncated polynomial rings preserve U√Δ both ways", "Trunc with identity twist",
          "R[x]/(xⁿ) U√Δ ⇔ R U√Δ", c30),
    Claim("C31", "DT(R,R) is U√Δ exactly when R is", "DT", "DT(R,R) U√Δ ⇔ R U√Δ", c31),
    Claim("C32", "S_n(R) splits as a trivial extension and is U√Δ exactly when R is", "S(n,R)",
          "S_n(R) ≅ T(S_{n-1}(R), L_{n-1}(R))", c32),
    Claim("C33", "uniquely U√Δ means division; strongly U√Δ means local", "all rings",
          "uniquely ⇔ division, strongly ⇔ local", c33),
    Claim("C34", "unit times √Δ equals √Δ times unit", "all rings", "U·√Δ = √Δ·U", c34),
    Claim("C35", "√Δ restricts into √Δ of rationally closed subrings", "center and unit-generated subring",
          "√Δ(R) ∩ S ⊆ √Δ(S)", c35),
    Claim("C36", "the center of a U√Δ ring is U√Δ", "U√Δ rings", "C(R) U√Δ", c36),
    Claim("C37", "in a U√Δ ring each n·1 is a unit or in Δ", "U√Δ rings", "n·1 ∈ U ∪ Δ", c37),
    Claim("C38", "R/J UN implies R U√Δ", "all rings", "R/J UN ⇒ R U√Δ", c38),
    Claim("C39", "trivial idempotents imply U√Δ (finite rings are strongly π-regular)",
          "rings with Id = {0,1}", "Id = {0,1} ⇒ U√Δ", c39),
    Claim("C40", "U√Δ with a 2-good identity is 2-good", "U√Δ rings with 1 = u + v", "R 2-good", c40),
    Claim("C41", "UN ⊆ U√J ⊆ U√Δ ⊆ UQ setwise and as ring classes", "all rings",
          "UN ⊆ U√J ⊆ U√Δ ⊆ UQ", c41),
    Claim("C42", "M_n(R) U√Δ forces C(R) local", "matrix rings", "M_n(R) U√Δ ⇒ C(R) local", c42),
    Claim("C43", "for commutative R, M_n(R) is U√Δ exactly when R is local", "matrix rings, R commutative",
          "M_n(R) U√Δ ⇔ R local", c43),
    Claim("C44", "finite rings: U√Δ, UN, M_n UN and M_n U√Δ coincide", "all rings (+ M(2,R), |R| ≤ 4)",
          "U√Δ ⇔ UN ⇔ M_n(R) UN ⇔ M_n(R) U√Δ", c44),
    Claim("C45", "K_s(R) U√Δ implies R U√Δ for commutative R and s in J", "K(R,s), s ∈ J(R)",
          "K_s(R) U√Δ ⇒ R U√Δ", c45),
    Claim("C46", "FG is U√Δ exactly when local", "group rings over fields", "FG U√Δ ⇔ FG local", c46),
    Claim("C47", "augmentation maps Δ(RG) into Δ(R)", "group rings", "ε(Δ(RG)) ⊆ Δ(R)", c47),
    Claim("C48", "RG U√Δ forces R U√Δ and G a p-group with p in J(R)", "group rings",
          "RG U√Δ ⇒ R U√Δ ∧ G p-group, p·1 ∈ J(R)", c48),
    Claim("C49", "R U√Δ and G a p-group with p in J(R) give RG U√Δ",
          "group rings with R U√Δ, G p-group, p·1 ∈ J(R)", "RG U√Δ", c49),
    Claim("C50", "solvable G: RG U√Δ exactly under the p-group condition", "group rings, G solvable",
          "RG U√Δ ⇔ R U√Δ ∧ G p-group, p·1 ∈ J(R)", c50),
    Claim("C51", "RG is U√Δ exactly when (R/J)G is", "group rings", "RG U√Δ ⇔ (R/J(R))G U√Δ", c51),
]

CLAIM_IDS = [c.id for c in CLAIMS]
_BY_ID = {c.id: c for c in CLAIMS}


def get_claim(cid: str) -> Claim:
    try:
        return _BY_ID[cid.upper()]
    except KeyError:
        raise KeyError(f"unknown claim {cid!r}; known: {CLAIM_IDS[0]}..{CLAIM_IDS[-1]}") from None


# --- corpus -----------------------------------------------------------------

_GROUPS = ("C2", "C3", "C4", "C2xC2", "S3", "Q8", "D4")


def default_corpus() -> list[str]:
    """Deterministic list of ring expressions, restricted to the current order cap."""
    exprs = [f"Z{n}" for n in range(2, 17)]
    exprs += [f"F{q}" for q in C.GF_ORDERS]
    small = ("Z2", "Z3", "Z4", "F4")
    exprs += [f"Prod({a},{b})" for i, a in enumerate(small) for b in small[i:]]
    exprs += ["Prod(M(2,Z2),Z4)", "Prod(Z2,Z2,Z2)"]
    exprs += [f"M(2,{b})" for b in ("Z2", "Z3", "Z4", "Z6", "F4")]
    exprs += [f"{c}({k},{b})" for c in ("T", "S") for k in (2, 3) for b in ("Z2", "Z4")]
    exprs += [f"Triv({b})" for b in ("Z2", "Z3", "Z4", "F4", "Z6")] + ["Triv(Z2,2)"]
    exprs += ["DT(Z2)", "DT(Z3)"]
    exprs += ["Trunc(Z2,2)", "Trunc(Z2,3)", "Trunc(Z3,2)", "Trunc(Z4,3)", "Trunc(Z6,2)",
              "Trunc(F4,2,frob)", "Trunc(F9,2,frob)"]
    exprs += ["K(Z2,0)", "K(Z2,1)", "K(Z3,0)", "K(Z4,0)", "K(Z4,2)"]
    exprs += [f"GR({r},{g})" for r in ("F2", "F3", "Z4", "F4") for g in _GROUPS]
    cap = get_max_order()
    out = []
    for s in exprs:
        e = dsl.parse_ring_expr(s)
        if dsl.expr_order(e) <= cap:
            out.append(str(e))
    return out


def load_corpus(path: str) -> list[str]:
    """One expression per line; blank lines and ``#`` comments are ignored."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(str(dsl.parse_ring_expr(line)))
    return out


def _entries(corpus: Iterable) -> list[CorpusEntry]:
    out = []
    for item in corpus:
        if isinstance(item, CorpusEntry):
            out.append(item)
        elif isinstance(item, FiniteRing):
            out.append(CorpusEntry(item.label, None, item))
        else:
            e = dsl.parse_ring_expr(item) if isinstance(item, str) else item
            out.append(CorpusEntry(str(e), e, None))
    return out


# --- running ----------------------------------------------------------------


def _run_one(claim: Claim, ctx: Context, axioms_ok: bool) -> ClaimReport | None:
    label = ctx.entry.label
    t0 = time.perf_counter()
    if claim.id != "C00" and not axioms_ok:
        return ClaimReport(claim.id, label, "skipped", note="ring axioms fail")
    if claim.id != "C00" and ctx.R.order == 1:
        return None
    if claim.max_order is not None and ctx.R.order > claim.max_order:
        return ClaimReport(claim.id, label, "skipped", size=ctx.R.order, note=f"above order {claim.max_order}")
    try:
        res = claim.check(ctx)
    except NotApplicable:
        return None
    except Skip as s:
        return ClaimReport(claim.id, label, "skipped", size=s.size, note=str(s),
                           elapsed=time.perf_counter() - t0)
    elapsed = time.perf_counter() - t0
    if isinstance(res, Failure):
        return ClaimReport(claim.id, label, "fail", witness=tuple(int(x) for x in res.witness),
                           note=res.note or None, elapsed=elapsed)
    notes = res.notes if isinstance(res, Outcome) else []
    return ClaimReport(claim.id, label, "pass", note="; ".join(notes) or None, elapsed=elapsed)


def _run_entry(entry: CorpusEntry, claims: list[Claim], cache: RingCache | None = None) -> list[ClaimReport]:
    cache = cache or RingCache()
    reports: list[ClaimReport] = []
    try:
        ctx = Context(entry, cache)
    except RingError as exc:
        size = getattr(exc, "order", None)
        return [ClaimReport(c.id, entry.label, "skipped", size=size, note=str(exc)) for c in claims]
    axioms_ok = _axioms(ctx.R).passed
    for claim in claims:
        rep = _run_one(claim, ctx, axioms_ok)
        if rep is not None:
            reports.append(rep)
    return reports


def _worker(args):
    entry, ids = args
    return _run_entry(entry, [get_claim(i) for i in ids])


def run_claims(claim_ids: Iterable[str] | None, corpus: Iterable, jobs: int = 1) -> list[ClaimReport]:
    """Reports for every (claim, applicable ring) pair, ordered claim-major."""
    if claim_ids is None:
        claims = list(CLAIMS)
    else:
        # registry order, duplicates dropped
        claims = sorted({get_claim(c).id: get_claim(c) for c in claim_ids}.values(), key=lambda c: CLAIM_IDS.index(c.id))
    entries = _entries(corpus)
    if jobs > 1 and len(entries) > 1:
        ids = [c.id for c in claims]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_entry = list(pool.map(_worker, [(e, ids) for e in entries]))
    else:
        cache = RingCache()
        per_entry = []
        for e in entries:
            per_entry.append(_run_entry(e, claims, cache))
            cache.release_large()
    order = {c.id: i for i, c in enumerate(claims)}
    flat = [(order[r.claim_id], k, n, r) for k, reps in enumerate(per_entry) for n, r in enumerate(reps)]
    covered = {t[0] for t in flat}
    for c in claims:
        if order[c.id] not in covered:
            flat.append((order[c.id], -1, 0, ClaimReport(c.id, "-", "skipped", note="no applicable ring in corpus")))
    flat.sort(key=lambda t: t[:3])
    return [t[3] for t in flat]


def run_claim(claim_id: str, corpus: Iterable) -> list[ClaimReport]:
    return run_claims([claim_id], corpus)


@dataclass
class Summary:
    counts: dict[str, dict[str, int]]
    failures: list[ClaimReport]
    reports: list[ClaimReport]

    @property
    def ok(self) -> bool:
        return not self.failures


def summarize(reports: list[ClaimReport], claim_ids: Iterable[str] | None = None) -> Summary:
    ids = list(claim_ids) if claim_ids is not None else CLAIM_IDS
    counts = {cid: {"pass": 0, "fail": 0, "skipped": 0} for cid in ids}
    for r in reports:
        counts.setdefault(r.claim_id, {"pass": 0, "fail": 0, "skipped": 0})[r.status] += 1
    return Summary(counts, [r for r in reports if r.status == "fail"], reports)


def verify_all(corpus: Iterable | None = None, jobs: int = 1, claim_ids: Iterable[str] | None = None) -> Summary:
    corpus = default_corpus() if corpus is None else corpus
    ids = sorted({get_claim(c).id for c in claim_ids}, key=CLAIM_IDS.index) if claim_ids is not None else CLAIM_IDS
    return summarize(run_claims(ids, corpus, jobs), ids)
