"""Finite groups as Cayley tables, with the few predicates group rings need."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import StructureError, index_dtype


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int = 0
    label: str = "?"
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        t = np.asarray(self.table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise StructureError(f"Cayley table must be square and non-empty, got {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise StructureError("Cayley table has out-of-range entries")
        t = t.astype(index_dtype(n))
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        inv = np.argmax(t == self.identity, axis=1)
        inv.setflags(write=False)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def is_valid(self) -> bool:
        t, e, n = self.table.astype(np.int64), self.identity, self.order
        ar = np.arange(n)
        if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
            return False
        if not ((t == e).any(axis=1)).all():
            return False
        # latin square plus associativity
        return all(np.array_equal(t[t[a]], t[a][t]) for a in range(n))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, 0, f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular ``n``-gon, order ``2n``; ``r^i s^j`` is ``i + n·j``."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    t = np.empty((2 * n, 2 * n), dtype=np.int64)
    for x in range(2 * n):
        i1, j1 = x % n, x // n
        for y in range(2 * n):
            i2, j2 = y % n, y // n
            # s r^i = r^-i s
            i = (i1 + (-i2 if j1 else i2)) % n
            t[x, y] = i + n * ((j1 + j2) % 2)
    return FiniteGroup(t, 0, f"D{n}")


def quaternion8() -> FiniteGroup:
    """Q8 with elements ordered 1, -1, i, -i, j, -j, k, -k."""
    # unit quaternions as (sign, axis) with axis 0 = 1
    basis = {(0, 0): (1, 0), (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
             (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
             (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)}
    for a in range(4):
        basis[(0, a)] = (1, a)
        basis[(a, 0)] = (1, a)
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    pos = {e: k for k, e in enumerate(elems)}
    t = np.empty((8, 8), dtype=np.int64)
    for x, (sx, ax) in enumerate(elems):
        for y, (sy, ay) in enumerate(elems):
            s, a = basis[(ax, ay)]
            t[x, y] = pos[(sx * sy * s, a)]
    return FiniteGroup(t, 0, "Q8")


def symmetric3() -> FiniteGroup:
    perms = list(itertools.permutations(range(3)))
    pos = {p: k for k, p in enumerate(perms)}
    t = np.empty((6, 6), dtype=np.int64)
    for x, p in enumerate(perms):
        for y, q in enumerate(perms):
            t[x, y] = pos[tuple(p[q[i]] for i in range(3))]
    return FiniteGroup(t, 0, "S3")


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Componentwise product; the first factor is the least significant digit."""
    if not groups:
        raise ValueError("need at least one factor")
    if len(groups) == 1:
        return groups[0]
    G = groups[0]
    for H in groups[1:]:
        n, m = G.order, H.order
        gt, ht = G.table.astype(np.int64), H.table.astype(np.int64)
        x = np.arange(n * m)
        g, h = x % n, x // n
        t = gt[g[:, None], g[None, :]] + n * ht[h[:, None], h[None, :]]
        G = FiniteGroup(t, G.identity + n * H.identity, f"{G.label}x{H.label}")
    return G


def make_group(text: str) -> FiniteGroup:
    """Build a group from its DSL spelling, e.g. ``"C2 x C2"`` or ``"Q8"``."""
    from .dsl import evaluate_group, parse_group_expr

    return evaluate_group(parse_group_expr(text))


@dataclass(frozen=True)
class GroupProps:
    order: int
    is_abelian: bool
    p_group: int | None
    is_solvable: bool


def prime_power_base(n: int) -> int | None:
    """``p`` when ``n = p^k`` with ``k >= 1``, else None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def subgroup_closure(G: FiniteGroup, gens) -> np.ndarray:
    """Mask of the subgroup generated by ``gens`` (finite, so products suffice)."""
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    mask[list(gens)] = True
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[G.table[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(grown, mask):
            return mask
        mask = grown


def commutator_subgroup(G: FiniteGroup, H: np.ndarray | None = None) -> np.ndarray:
    """Mask of ``[H, H]`` for the subgroup mask ``H`` (default all of ``G``)."""
    idx = np.arange(G.order) if H is None else np.flatnonzero(H)
    t, inv = G.table, G.inverse
    a, b = idx[:, None], idx[None, :]
    comm = t[t[inv[a], inv[b]], t[a, b]]
    return subgroup_closure(G, np.unique(comm))


def derived_series(G: FiniteGroup) -> list[int]:
    """Orders of ``G ⊵ G' ⊵ G'' ⊵ ...`` until the series stabilises."""
    H = np.ones(G.order, dtype=bool)
    sizes = [G.order]
    while True:
        K = commutator_subgroup(G, H)
        if K.sum() == H.sum():
            return sizes
        H = K
        sizes.append(int(H.sum()))


def group_props(G: FiniteGroup) -> GroupProps:
    return GroupProps(
        order=G.order,
        is_abelian=G.is_abelian(),
        p_group=prime_power_base(G.order),
        is_solvable=derived_series(G)[-1] == 1,
    )
