"""Finite unital rings stored as dense operation tables.

Elements are the integers ``0..order-1``; all structure lives in the
``add`` and ``mul`` tables.  Everything here is brute force over those
tables, vectorised with numpy where the loops would otherwise be cubic.
"""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .tables import bilinear_table, index_dtype, positional_add_table, positional_digits

DEFAULT_MAX_ORDER = 10_000
DEFAULT_ISO_CAP = 16

# rings up to this order get the literal triple-loop axiom check
EXHAUSTIVE_AXIOM_LIMIT = 256

_limits = {"max_order": DEFAULT_MAX_ORDER, "iso_cap": DEFAULT_ISO_CAP}


class RingError(Exception):
    """Base class for errors raised by finring."""


class StructureError(RingError, ValueError):
    """Tables have the wrong shape or out-of-range entries."""


class SizeCapError(RingError):
    """A construction would exceed the configured order cap."""

    def __init__(self, order: int, cap: int, what: str = "ring"):
        self.order = order
        self.cap = cap
        super().__init__(f"{what} of order {order} exceeds the order cap {cap}")


class UnsupportedSizeError(RingError):
    """An operation is not supported at this size."""

    def __init__(self, order: int, cap: int, what: str):
        self.order = order
        self.cap = cap
        super().__init__(f"{what} is capped at order {cap}, got {order}")


class PreconditionError(RingError, ValueError):
    """An argument violates an operation's precondition."""

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        self.witness = tuple(witness)
        super().__init__(message)


def get_max_order() -> int:
    return _limits["max_order"]


def set_max_order(n: int) -> None:
    if n < 1:
        raise ValueError("order cap must be positive")
    _limits["max_order"] = int(n)


def get_iso_cap() -> int:
    return _limits["iso_cap"]


def set_iso_cap(n: int) -> None:
    _limits["iso_cap"] = int(n)


@contextmanager
def max_order(n: int):
    """Temporarily change the global order cap."""
    old = get_max_order()
    set_max_order(n)
    try:
        yield
    finally:
        set_max_order(old)


def require_order(order: int, what: str = "ring") -> None:
    cap = get_max_order()
    if order > cap:
        raise SizeCapError(order, cap, what)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite ring given by complete addition and multiplication tables.

    ``coord_base`` is an optional hint: when set to ``m``, the element index
    is the little-endian base-``m`` number of a coordinate vector and addition
    is coordinatewise mod ``m``.  Constructors use it to fill tables with
    matrix products instead of table lookups.
    """

    add: np.ndarray
    mul: np.ndarray
    zero: int = 0
    one: int = 1
    label: str = "?"
    coord_base: int | None = None
    neg: np.ndarray = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        add = np.asarray(self.add)
        mul = np.asarray(self.mul)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] == 0:
            raise StructureError(f"addition table must be square and non-empty, got shape {add.shape}")
        n = add.shape[0]
        if mul.shape != (n, n):
            raise StructureError(f"multiplication table has shape {mul.shape}, expected {(n, n)}")
        for name, t in (("addition", add), ("multiplication", mul)):
            if not np.issubdtype(t.dtype, np.integer):
                raise StructureError(f"{name} table must hold integers")
            if t.size and (t.min() < 0 or t.max() >= n):
                raise StructureError(f"{name} table has entries outside 0..{n - 1}")
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise StructureError("zero and one must be element indices")
        dt = index_dtype(n)
        object.__setattr__(self, "add", _frozen(add.astype(dt, copy=True)))
        object.__setattr__(self, "mul", _frozen(mul.astype(dt, copy=True)))
        object.__setattr__(self, "zero", int(self.zero))
        object.__setattr__(self, "one", int(self.one))
        is_zero = self.add == self.zero
        neg = np.argmax(is_zero, axis=1).astype(dt)
        object.__setattr__(self, "neg", _frozen(neg))

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteRing({self.label!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def multiple(self, k: int, x: int | None = None) -> int:
        """``k·x`` (default ``x = 1``) for an integer ``k``."""
        x = self.one if x is None else x
        if k < 0:
            k, x = -k, int(self.neg[x])
        acc = self.zero
        for _ in range(k):
            acc = int(self.add[acc, x])
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 1:
            raise ValueError("powers start at 1")
        acc = x
        for _ in range(k - 1):
            acc = int(self.mul[acc, x])
        return acc

    @property
    def characteristic(self) -> int:
        return additive_order(self, self.one)

    @property
    def is_commutative(self) -> bool:
        c = self._cache.get("commutative")
        if c is None:
            c = self._cache["commutative"] = bool((self.mul == self.mul.T).all())
        return c

    def positional_base(self) -> int | None:
        """Base ``m`` if the additive table is exactly the positional ``Z_m^d`` table."""
        if "coord_base" not in self._cache:
            self._cache["coord_base"] = _detect_positional(self)
        return self._cache["coord_base"]


def _detect_positional(R: FiniteRing) -> int | None:
    n = R.order
    if n < 2 or R.zero != 0:
        return None
    m = R.coord_base or additive_order(R, 1)
    d = _log_exact(n, m)
    if d is None:
        return None
    return m if np.array_equal(R.add, positional_add_table(m, d)) else None


def _log_exact(n: int, m: int) -> int | None:
    if m < 2:
        return None
    d, p = 0, 1
    while p < n:
        p *= m
        d += 1
    return d if p == n else None


def additive_order(R: FiniteRing, x: int) -> int:
    k, acc = 1, x
    while acc != R.zero:
        acc = int(R.add[acc, x])
        k += 1
        if k > R.order:
            raise RingError(f"element {x} has no finite additive order; tables are not a group")
    return k


class ElemSet:
    """A subset of a ring's elements, stored as a dense boolean mask."""

    __slots__ = ("ring", "mask")

    def __init__(self, ring: FiniteRing, mask):
        m = np.array(mask, dtype=bool)
        if m.shape != (ring.order,):
            raise ValueError(f"mask must have {ring.order} slots, got shape {m.shape}")
        m.setflags(write=False)
        self.ring = ring
        self.mask = m

    @classmethod
    def from_indices(cls, ring: FiniteRing, indices: Iterable[int]) -> ElemSet:
        m = np.zeros(ring.order, dtype=bool)
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= ring.order):
            raise ValueError("element index out of range")
        m[idx] = True
        return cls(ring, m)

    @classmethod
    def empty(cls, ring: FiniteRing) -> ElemSet:
        return cls(ring, np.zeros(ring.order, dtype=bool))

    @classmethod
    def full(cls, ring: FiniteRing) -> ElemSet:
        return cls(ring, np.ones(ring.order, dtype=bool))

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def tolist(self) -> list[int]:
        return [int(i) for i in self.indices]

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self) -> Iterator[int]:
        return (int(i) for i in self.indices)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def _check(self, other: ElemSet) -> None:
        if not isinstance(other, ElemSet):
            raise TypeError("expected an ElemSet")
        if other.ring is not self.ring:
            raise ValueError("element sets belong to different rings")

    def __or__(self, other: ElemSet) -> ElemSet:
        self._check(other)
        return ElemSet(self.ring, self.mask | other.mask)

    def __and__(self, other: ElemSet) -> ElemSet:
        self._check(other)
        return ElemSet(self.ring, self.mask & other.mask)

    def __sub__(self, other: ElemSet) -> ElemSet:
        self._check(other)
        return ElemSet(self.ring, self.mask & ~other.mask)

    def __invert__(self) -> ElemSet:
        return ElemSet(self.ring, ~self.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElemSet):
            return NotImplemented
        self._check(other)
        return bool(np.array_equal(self.mask, other.mask))

    __hash__ = None  # type: ignore[assignment]

    def __le__(self, other: ElemSet) -> bool:
        self._check(other)
        return not bool((self.mask & ~other.mask).any())

    def __lt__(self, other: ElemSet) -> bool:
        return self <= other and self != other

    def issubset(self, other: ElemSet) -> bool:
        return self <= other

    def first(self) -> int | None:
        idx = self.indices
        return int(idx[0]) if idx.size else None

    def __repr__(self) -> str:
        shown = self.tolist()
        if len(shown) > 12:
            shown = shown[:12] + ["..."]
        return f"ElemSet({self.ring.label}, {len(self)}: {shown})"


MAP_KINDS = ("embedding", "projection", "automorphism")


@dataclass(frozen=True, eq=False)
class RingMap:
    """A map between finite rings given by its image table."""

    domain: FiniteRing
    codomain: FiniteRing
    image: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise ValueError(f"kind must be one of {MAP_KINDS}")
        img = np.asarray(self.image, dtype=np.int64)
        if img.shape != (self.domain.order,):
            raise StructureError("image table must have one entry per domain element")
        if img.size and (img.min() < 0 or img.max() >= self.codomain.order):
            raise StructureError("image entries must be codomain indices")
        object.__setattr__(self, "image", _frozen(img))

    def __call__(self, x):
        return self.image[x]

    def is_injective(self) -> bool:
        return np.unique(self.image).size == self.domain.order

    def is_surjective(self) -> bool:
        return np.unique(self.image).size == self.codomain.order

    def is_homomorphism(self) -> bool:
        f, S = self.image, self.codomain
        if f[self.domain.one] != S.one:
            return False
        if not np.array_equal(f[self.domain.add], S.add[f[:, None], f[None, :]]):
            return False
        return bool(np.array_equal(f[self.domain.mul], S.mul[f[:, None], f[None, :]]))

    def is_valid(self) -> bool:
        if not self.is_homomorphism():
            return False
        if self.kind == "embedding":
            return self.is_injective()
        if self.kind == "projection":
            return self.is_surjective()
        return self.domain is self.codomain and self.is_injective()

    def image_of(self, s: ElemSet) -> ElemSet:
        if s.ring is not self.domain:
            raise ValueError("set does not live in the map's domain")
        m = np.zeros(self.codomain.order, dtype=bool)
        m[self.image[s.mask]] = True
        return ElemSet(self.codomain, m)

    def preimage(self, s: ElemSet) -> ElemSet:
        if s.ring is not self.codomain:
            raise ValueError("set does not live in the map's codomain")
        return ElemSet(self.domain, s.mask[self.image])


@dataclass
class AxiomReport:
    passed: bool
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray):
    bad = np.argwhere(lhs != rhs)
    return tuple(int(i) for i in bad[0]) if bad.size else None


def check_axioms(R: FiniteRing, exhaustive: bool | None = None) -> AxiomReport:
    """Check every ring axiom, returning one witness per failing axiom.

    Rings up to ``EXHAUSTIVE_AXIOM_LIMIT`` elements get the literal triple
    loop.  Larger rings use additive generators: Light's test for additive
    associativity, distributivity against generators, and multiplicative
    associativity on generator triples (enough once both operations are
    known to be biadditive).
    """
    n = R.add.shape[0]
    if R.add.shape != (n, n) or R.mul.shape != (n, n):
        raise StructureError("tables do not have the declared dimensions")
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_AXIOM_LIMIT
    add, mul, z, e = R.add.astype(np.int64), R.mul.astype(np.int64), R.zero, R.one
    v: list[tuple[str, tuple[int, ...]]] = []
    ar = np.arange(n)

    bad = np.flatnonzero((add[z] != ar) | (add[:, z] != ar))
    if bad.size:
        v.append(("additive identity", (int(bad[0]),)))
    w = _first_mismatch(add, add.T)
    if w:
        v.append(("additive commutativity", w))
    bad = np.flatnonzero(~(add == z).any(axis=1))
    if bad.size:
        v.append(("additive inverse", (int(bad[0]),)))
    bad = np.flatnonzero((mul[e] != ar) | (mul[:, e] != ar))
    if bad.size:
        v.append(("multiplicative identity", (int(bad[0]),)))
    if n > 1 and z == e:
        v.append(("zero distinct from one", (z,)))

    if exhaustive:
        checks = {
            "additive associativity": None,
            "multiplicative associativity": None,
            "left distributivity": None,
            "right distributivity": None,
        }
        for a in range(n):
            if checks["additive associativity"] is None:
                w = _first_mismatch(add[add[a]], add[a][add])
                if w:
                    checks["additive associativity"] = (a, *w)
            if checks["multiplicative associativity"] is None:
                w = _first_mismatch(mul[mul[a]], mul[a][mul])
                if w:
                    checks["multiplicative associativity"] = (a, *w)
            if checks["left distributivity"] is None:
                # a(b+c) = ab + ac
                w = _first_mismatch(mul[a][add], add[mul[a][:, None], mul[a][None, :]])
                if w:
                    checks["left distributivity"] = (a, *w)
            if checks["right distributivity"] is None:
                # (a+b)c = ac + bc
                w = _first_mismatch(mul[add[a]], add[mul[a][None, :], mul])
                if w:
                    checks["right distributivity"] = (a, *w)
            if all(c is not None for c in checks.values()):
                break
        v.extend((k, w) for k, w in checks.items() if w is not None)
        return AxiomReport(not v, v)

    m = R.positional_base()
    if m is not None:
        # (R, +) is Z_m^d by construction of the comparison table, and a
        # biadditive product is the bilinear extension of its basis products
        d = _log_exact(n, m)
        basis = m ** np.arange(d, dtype=np.int64)
        gamma = positional_digits(mul[basis[:, None], basis[None, :]], [m] * d).astype(np.float64)
        if np.array_equal(bilinear_table(m, d, gamma), R.mul):
            for a, b, c in itertools.product(basis, repeat=3):
                if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                    v.append(("multiplicative associativity", (int(a), int(b), int(c))))
                    break
            return AxiomReport(not v, v)

    gens = _magma_generators(add)
    for b in gens:
        # Light's test: (x+b)+y == x+(b+y)
        w = _first_mismatch(add[add[:, b]], add[:, add[b]])
        if w:
            v.append(("additive associativity", (w[0], b, w[1])))
            break
    if v:
        return AxiomReport(False, v)
    for b in gens:
        # (x+b)z == xz + bz
        w = _first_mismatch(mul[add[:, b]], add[mul, mul[b][None, :]])
        if w:
            v.append(("right distributivity", (w[0], b, w[1])))
            break
    for b in gens:
        # z(x+b) == zx + zb, rows z, columns x
        w = _first_mismatch(mul[:, add[:, b]], add[mul, mul[:, b][:, None]])
        if w:
            v.append(("left distributivity", (w[0], w[1], b)))
            break
    if not any(k.endswith("distributivity") for k, _ in v):
        for a, b, c in itertools.product(gens, repeat=3):
            if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                v.append(("multiplicative associativity", (a, b, c)))
                break
    return AxiomReport(not v, v)


def _magma_generators(add: np.ndarray) -> list[int]:
    """Greedy generating set of ``(R, +)`` as a magma, via left-normed sums."""
    n = add.shape[0]
    gens: list[int] = []
    reached = np.zeros(n, dtype=bool)
    while not reached.all():
        gens.append(int(np.flatnonzero(~reached)[0]))
        g = np.array(gens)
        reached = np.zeros(n, dtype=bool)
        reached[g] = True
        frontier = g
        while frontier.size:
            nxt = np.unique(add[np.ix_(frontier, g)])
            nxt = nxt[~reached[nxt]]
            reached[nxt] = True
            frontier = nxt
    return gens


def _cyclic_span(R: FiniteRing, s: int) -> np.ndarray:
    cyc = [R.zero]
    t = int(s)
    while t != R.zero:
        cyc.append(t)
        t = int(R.add[t, s])
    return np.array(cyc, dtype=np.int64)


def _span(R: FiniteRing, mask: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
    """Additive subgroup generated by ``mask``, and the cyclic pieces used to build it."""
    H = np.zeros(R.order, dtype=bool)
    H[R.zero] = True
    hidx = np.array([R.zero])
    pieces = []
    for s in np.flatnonzero(mask):
        if H[s]:
            continue
        cyc = _cyclic_span(R, s)
        pieces.append(cyc)
        H[R.add[np.ix_(hidx, cyc)].ravel()] = True
        hidx = np.flatnonzero(H)
    return H, pieces


def additive_closure(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    """Mask of the additive subgroup generated by ``mask``."""
    return _span(R, mask)[0]


def induced_ring(R: FiniteRing, mask: np.ndarray, label: str) -> tuple[FiniteRing, RingMap]:
    """Re-index a subset closed under the ring operations, in index order."""
    idx = np.flatnonzero(mask)
    if idx.size == R.order:
        S = FiniteRing(R.add, R.mul, R.zero, R.one, label)
        return S, RingMap(S, R, idx, "embedding")
    remap = np.full(R.order, -1, dtype=np.int64)
    remap[idx] = np.arange(idx.size)
    sub = np.ix_(idx, idx)
    S = FiniteRing(remap[R.add[sub]], remap[R.mul[sub]], int(remap[R.zero]), int(remap[R.one]), label)
    return S, RingMap(S, R, idx, "embedding")


def subring_closure(R: FiniteRing, gens: ElemSet, label: str | None = None) -> tuple[FiniteRing, RingMap]:
    """Smallest subring containing ``gens``, re-indexed, with its embedding.

    Grown as an additive span: products of spans are spanned by products of
    their cyclic generators, so only those need multiplying each round.
    """
    if gens.ring is not R:
        raise ValueError("generators must be elements of R")
    spanning = gens.mask.copy()
    spanning[R.one] = True
    while True:
        mask, pieces = _span(R, spanning)
        g = np.array([int(c[1]) for c in pieces], dtype=np.int64)
        prods = np.zeros(R.order, dtype=bool)
        prods[R.mul[np.ix_(g, g)].ravel()] = True
        if not (prods & ~mask).any():
            break
        spanning = mask | prods
    return induced_ring(R, mask, label or f"<{R.label}>")


def additive_generators(R: FiniteRing) -> np.ndarray:
    """A small generating set of ``(R, +)`` (cached)."""
    g = R._cache.get("additive_generators")
    if g is None:
        m = R.positional_base()
        if m is not None:
            g = m ** np.arange(_log_exact(R.order, m), dtype=np.int64)
        else:
            gens: list[int] = []
            H = np.zeros(R.order, dtype=bool)
            H[R.zero] = True
            for x in range(R.order):
                if not H[x]:
                    gens.append(x)
                    H = additive_closure(R, H | (np.arange(R.order) == x))
            g = np.array(gens, dtype=np.int64)
        R._cache["additive_generators"] = g
    return g


def ideal_closure(R: FiniteRing, seed: ElemSet) -> ElemSet:
    """Smallest two-sided ideal containing ``seed``.

    ``r·a·s`` is biadditive in ``r`` and ``s``, so the ideal is the additive
    span of ``g·a·h`` for ``g, h`` running over additive generators plus 1.
    """
    if seed.ring is not R:
        raise ValueError("seed must be a subset of R")
    g = np.unique(np.append(additive_generators(R), R.one))
    a = seed.indices
    if a.size == 0:
        return ElemSet.from_indices(R, [R.zero])
    left = R.mul[np.ix_(g, a)].ravel()
    both = R.mul[np.ix_(np.unique(left), g)].ravel()
    mask = np.zeros(R.order, dtype=bool)
    mask[both] = True
    return ElemSet(R, additive_closure(R, mask))


def ideal_witness(R: FiniteRing, I: ElemSet) -> tuple[int, ...] | None:
    """A sum or product escaping ``I``, or None when ``I`` is an ideal."""
    idx = I.indices
    if not I.mask[R.zero]:
        return (R.zero,)
    H, _ = _span(R, I.mask)
    if not np.array_equal(H, I.mask):
        for a in idx:
            bad = ~I.mask[R.add[a, idx]]
            if bad.any():
                return (int(a), int(idx[bad][0]))
    # once I is additive, products with additive generators of R suffice
    g = additive_generators(R)
    left = R.mul[np.ix_(g, idx)]
    bad = np.argwhere(~I.mask[left])
    if bad.size:
        return (int(g[bad[0][0]]), int(idx[bad[0][1]]))
    right = R.mul[np.ix_(idx, g)]
    bad = np.argwhere(~I.mask[right])
    if bad.size:
        return (int(idx[bad[0][0]]), int(g[bad[0][1]]))
    return None


def quotient(R: FiniteRing, I: ElemSet, label: str | None = None) -> tuple[FiniteRing, RingMap]:
    """The ring of cosets ``R/I`` and its projection."""
    if I.ring is not R:
        raise ValueError("ideal must be a subset of R")
    w = ideal_witness(R, I)
    if w is not None:
        raise PreconditionError(f"not a two-sided ideal: operation on {w} leaves the set", w)
    # smallest index in each coset, one cyclic piece of I at a time
    reps = np.arange(R.order, dtype=np.int64)
    for cyc in _span(R, I.mask)[1]:
        reps = reps[R.add[:, cyc]].min(axis=1)
    classes = np.unique(reps)
    cls_of = np.searchsorted(classes, reps)
    sub = np.ix_(classes, classes)
    Q = FiniteRing(
        cls_of[R.add[sub]],
        cls_of[R.mul[sub]],
        int(cls_of[R.zero]),
        int(cls_of[R.one]),
        label or f"{R.label}/I",
    )
    return Q, RingMap(R, Q, cls_of, "projection")


def _element_signatures(R: FiniteRing) -> np.ndarray:
    """Per-element invariants preserved by ring isomorphisms."""
    n = R.order
    ar = np.arange(n)
    add_ord = np.zeros(n, dtype=np.int64)
    acc = ar.copy()
    for k in range(1, n + 1):
        hit = (acc == R.zero) & (add_ord == 0)
        add_ord[hit] = k
        if (add_ord > 0).all():
            break
        acc = R.add[acc, ar]
    nil_idx = np.zeros(n, dtype=np.int64)
    acc = ar.copy()
    for k in range(1, n + 1):
        hit = (acc == R.zero) & (nil_idx == 0)
        nil_idx[hit] = k
        acc = R.mul[acc, ar]
    is_unit = (R.mul == R.one).any(axis=1) & (R.mul == R.one).any(axis=0)
    idem = R.mul[ar, ar] == ar
    central = (R.mul == R.mul.T).all(axis=1)
    sq_class = R.mul[ar, ar] == R.zero
    return np.stack([add_ord, nil_idx, is_unit, idem, central, sq_class], axis=1)


def are_isomorphic(R: FiniteRing, S: FiniteRing, cap: int | None = None) -> bool:
    """Decide ``R ≅ S`` by backtracking over images of additive generators."""
    cap = get_iso_cap() if cap is None else cap
    for T in (R, S):
        if T.order > cap:
            raise UnsupportedSizeError(T.order, cap, "isomorphism testing")
    return find_isomorphism(R, S) is not None


def find_isomorphism(R: FiniteRing, S: FiniteRing) -> np.ndarray | None:
    n = R.order
    if S.order != n:
        return None
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    if R.characteristic != S.characteristic or R.is_commutative != S.is_commutative:
        return None
    sig_r, sig_s = _element_signatures(R), _element_signatures(S)
    key = lambda sig: sorted(map(tuple, sig.tolist()))  # noqa: E731
    if key(sig_r) != key(sig_s):
        return None

    # additive generators of R, starting with 1
    gens: list[int] = []
    H = np.zeros(n, dtype=bool)
    H[R.zero] = True
    for x in [R.one, *range(n)]:
        if not H[x]:
            gens.append(x)
            H = additive_closure(R, H | (np.arange(n) == x))
    cands = [
        [y for y in range(S.order) if (sig_s[y] == sig_r[g]).all()] for g in gens
    ]
    cands[0] = [S.one] if (sig_s[S.one] == sig_r[R.one]).all() else []

    def multiples(T: FiniteRing, x: int) -> list[int]:
        out, t = [T.zero], x
        while t != T.zero:
            out.append(t)
            t = int(T.add[t, x])
        return out

    def extend(f: np.ndarray, k: int):
        if k == len(gens):
            full = RingMap(R, S, f, "embedding")
            return f if full.is_homomorphism() and full.is_injective() else None
        g = gens[k]
        mg = multiples(R, g)
        dom = np.flatnonzero(f >= 0)
        for c in cands[k]:
            mc = multiples(S, c)
            if len(mc) != len(mg):
                continue
            src = R.add[np.ix_(dom, mg)].ravel()
            dst = S.add[np.ix_(f[dom], mc)].ravel()
            g_map = np.full(n, -1, dtype=np.int64)
            g_map[src] = dst
            # well defined and injective on the enlarged subgroup
            if not np.array_equal(g_map[src], dst):
                continue
            defined = np.flatnonzero(g_map >= 0)
            if np.unique(g_map[defined]).size != defined.size:
                continue
            # multiplicativity where products stay inside the defined part
            prod = R.mul[np.ix_(defined, defined)]
            inside = g_map[prod] >= 0
            img = S.mul[np.ix_(g_map[defined], g_map[defined])]
            if not np.array_equal(g_map[prod][inside], img[inside]):
                continue
            res = extend(g_map, k + 1)
            if res is not None:
                return res
        return None

    f0 = np.full(n, -1, dtype=np.int64)
    f0[R.zero] = S.zero
    return extend(f0, 0)


def sum_of_ideals(R: FiniteRing, I: ElemSet, K: ElemSet) -> ElemSet:
    mask = np.zeros(R.order, dtype=bool)
    mask[R.add[np.ix_(I.indices, K.indices)].ravel()] = True
    return ElemSet(R, mask)


def enumerate_ideals(R: FiniteRing, within: ElemSet | None = None, limit: int | None = None) -> list[ElemSet] | None:
    """All two-sided ideals of ``R`` contained in ``within`` (default: all ideals).

    Every ideal is a finite sum of principal ones, so the principal ideals of
    the elements of ``within`` are closed under pairwise sums.  ``(x)`` only
    depends on the orbit ``U·x·U``, so one element per orbit is used.
    Returns None once more than ``limit`` ideals have turned up.
    """
    from .radicals import units  # radicals builds on this module

    seeds = within.indices if within is not None else np.arange(R.order)
    uidx = units(R).indices
    covered = np.zeros(R.order, dtype=bool)
    principals: dict[bytes, ElemSet] = {}
    zero = ElemSet.from_indices(R, [R.zero])
    for x in seeds:
        if covered[x] or x == R.zero:
            continue
        orbit = R.mul[np.ix_(uidx, R.mul[uidx, x])]
        covered[orbit.ravel()] = True
        P = ideal_closure(R, ElemSet.from_indices(R, [x]))
        principals.setdefault(P.mask.tobytes(), P)
        if limit is not None and len(principals) > limit:
            return None
    found = {zero.mask.tobytes(): zero}
    found.update(principals)
    frontier = list(principals.values())
    while frontier:
        nxt = []
        for I in frontier:
            for P in principals.values():
                if P <= I:
                    continue
                S = sum_of_ideals(R, I, P)
                key = S.mask.tobytes()
                if key not in found:
                    found[key] = S
                    nxt.append(S)
                    if limit is not None and len(found) > limit:
                        return None
        frontier = nxt
    return sorted(found.values(), key=lambda I: (len(I), I.tolist()))
