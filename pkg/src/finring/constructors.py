"""Constructors for the ring families used throughout the package.

Index encodings are fixed and little-endian: a ring whose elements are
tuples ``(d_0, ..., d_{k-1})`` of base-ring elements stores the tuple at
index ``d_0 + q·d_1 + q²·d_2 + ...`` where ``q`` is the base order.  The
digit order for each family:

* ``matrix_ring(k, R)``: entries row-major, ``(i, j)`` is digit ``i·k + j``.
* ``upper_triangular(k, R)``: entries with ``i <= j``, row-major.
* ``sn_ring(k, R)``: entries with ``i < j`` row-major, then the shared
  diagonal value as the most significant digit.
* ``trivial_extension(R, k)``: ``(r, m_1, ..., m_k)``.
* ``dt_ring(R)``: ``(a, m, b, n)``.
* ``group_ring(R, G)``: the coefficient of group element ``g`` is digit ``g``.
* ``trunc_poly(R, n)``: ``(a_0, ..., a_{n-1})``.
* ``ks_ring(R, s)``: ``(a, x, y, b)`` for the block ``[[a, x], [y, b]]``.
* ``product(R_1, ..., R_k)``: mixed radix, ``R_1`` least significant.

Each of these orderings agrees with the index order of the corresponding
elements inside a larger ring where that makes sense (so ``T_k`` and ``S_k``
are the re-indexed subrings of ``M_k``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import (
    FiniteRing,
    PreconditionError,
    RingMap,
    StructureError,
    require_order,
)
from .tables import (
    bilinear_table,
    index_dtype,
    positional_add_table,
    positional_digits,
    positional_index,
)
from .groups import FiniteGroup

# row chunks are sized so one chunk holds about this many table cells
CHUNK_CELLS = 1 << 22

# above this order, tuple rings over a positional base use structure constants
FAST_PATH_MIN_ORDER = 1024


# --- base families ---------------------------------------------------------


def zmod(n: int) -> FiniteRing:
    if n < 1:
        raise ValueError("zmod needs n >= 1")
    a = np.arange(n, dtype=np.int64)
    return FiniteRing(
        (a[:, None] + a[None, :]) % n,
        (a[:, None] * a[None, :]) % n,
        0,
        1 % n,
        f"Z{n}",
        coord_base=n if n > 1 else None,
    )


# lowest coefficients first, leading coefficient omitted
_IRREDUCIBLE = {(2, 2): (1, 1), (2, 3): (1, 1, 0), (3, 2): (1, 0)}

GF_ORDERS = (2, 3, 4, 5, 7, 8, 9)


def gf(p: int, k: int = 1) -> FiniteRing:
    """The field with ``p^k`` elements; ``Σ c_i x^i`` is stored at ``Σ c_i p^i``."""
    q = p**k
    if q not in GF_ORDERS or (k == 1 and p not in (2, 3, 5, 7)):
        raise ValueError(f"unsupported field order {q}; supported: {GF_ORDERS}")
    if k == 1:
        R = zmod(p)
        return FiniteRing(R.add, R.mul, 0, 1, f"F{p}", coord_base=p)
    low = _IRREDUCIBLE[(p, k)]
    coeffs = positional_digits(np.arange(q), [p] * k)
    add = positional_index((coeffs[:, None, :] + coeffs[None, :, :]) % p, [p] * k)
    # x^k = -(low) rewritten as a reduction table for powers k..2k-2
    reduce_rows = []
    cur = [(-c) % p for c in low]
    for _ in range(k - 1):
        reduce_rows.append(cur)
        top = cur[-1]
        shifted = [0] + cur[:-1]
        cur = [(s + top * (-c)) % p for s, c in zip(shifted, low)]
    reduce_rows.append(cur)
    red = np.array(reduce_rows, dtype=np.int64)
    prod = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[:, :, i + j] += coeffs[:, None, i] * coeffs[None, :, j]
    out = prod[:, :, :k] + np.einsum("xyt,tc->xyc", prod[:, :, k:], red[: k - 1])
    mul = positional_index(out % p, [p] * k)
    return FiniteRing(add, mul, 0, 1, f"F{q}", coord_base=p)


def frobenius(R: FiniteRing) -> RingMap:
    """``x -> x^p`` for ``p`` the characteristic; checked to be an automorphism."""
    p = R.characteristic
    img = np.arange(R.order)
    for _ in range(p - 1):
        img = R.mul[img, np.arange(R.order)]
    f = RingMap(R, R, img, "automorphism")
    if not f.is_valid():
        raise PreconditionError(f"x -> x^{p} is not an automorphism of {R.label}")
    return f


def identity_map(R: FiniteRing) -> RingMap:
    return RingMap(R, R, np.arange(R.order), "automorphism")


# --- table builders --------------------------------------------------------


def _chunks(n_rows: int, n_cols: int):
    step = max(1, CHUNK_CELLS // max(1, n_cols))
    for lo in range(0, n_rows, step):
        yield lo, min(n_rows, lo + step)


def _fill(n: int, fn: Callable[[np.ndarray], np.ndarray], width: int = 1) -> np.ndarray:
    """Build an ``n×n`` table whose row block ``rows`` is ``fn(rows)``.

    ``width`` is the per-cell working size of ``fn``, used to shrink chunks.
    """
    out = np.empty((n, n), dtype=index_dtype(n))
    for lo, hi in _chunks(n, n * width):
        out[lo:hi] = fn(np.arange(lo, hi))
    return out


@dataclass(frozen=True)
class Term:
    """``out += table[a_left, b_right]`` inside a tuple-ring product."""

    out: int
    left: int
    right: int
    table: np.ndarray


def _eval_terms(R: FiniteRing, ndig: int, terms: Sequence[Term], xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Product indices for all pairs in ``xs × ys`` by gathering through R's tables."""
    q = R.order
    orders = [q] * ndig
    dx, dy = positional_digits(xs, orders), positional_digits(ys, orders)
    radd = R.add
    res = np.zeros((xs.size, ys.size), dtype=np.int64)
    w = 1
    by_out: dict[int, list[Term]] = {}
    for t in terms:
        by_out.setdefault(t.out, []).append(t)
    for k in range(ndig):
        acc = None
        for t in by_out.get(k, ()):
            v = t.table[dx[:, t.left][:, None], dy[:, t.right][None, :]]
            acc = v if acc is None else radd[acc, v]
        if acc is not None:
            res += acc.astype(np.int64) * w
        elif R.zero:
            res += R.zero * w
        w *= q
    return res


def _structure_constants(R: FiniteRing, ndig: int, terms: Sequence[Term], m: int):
    e = round(np.log(R.order) / np.log(m))
    D = ndig * e
    basis = m ** np.arange(D, dtype=np.int64)
    prods = _eval_terms(R, ndig, terms, basis, basis)
    return positional_digits(prods, [m] * D).astype(np.float64), D


def tuple_ring(R: FiniteRing, ndig: int, terms: Sequence[Term], label: str, fast: bool | None = None) -> FiniteRing:
    """Ring on ``R^ndig`` with digitwise addition and the product given by ``terms``.

    ``fast`` selects structure-constant matrix products (requires R's additive
    group to be positional ``Z_m^e``); None decides by size.
    """
    q = R.order
    N = q**ndig
    require_order(N)
    one = _one_of(R, ndig, terms)
    m = R.positional_base()
    if fast is None:
        fast = m is not None and N >= FAST_PATH_MIN_ORDER
    if fast:
        if m is None:
            raise ValueError(f"{R.label} has no positional additive encoding")
        gamma, D = _structure_constants(R, ndig, terms, m)
        add = positional_add_table(m, D)
        mul = bilinear_table(m, D, gamma)
        return FiniteRing(add, mul, 0, one, label, coord_base=m)
    orders = [q] * ndig
    ar = np.arange(N)
    dig = positional_digits(ar, orders)
    weights = q ** np.arange(ndig, dtype=np.int64)

    def add_rows(xs):
        s = R.add[dig[xs][:, None, :], dig[None, :, :]]
        return s.astype(np.int64) @ weights

    zero = int(R.zero * weights.sum())
    add = _fill(N, add_rows)
    mul = _fill(N, lambda xs: _eval_terms(R, ndig, terms, xs, ar))
    return FiniteRing(add, mul, zero, one, label, coord_base=m)


def _one_of(R: FiniteRing, ndig: int, terms: Sequence[Term]) -> int:
    """Locate the identity of a tuple ring among tuples of 0s and 1s.

    Products are biadditive, so acting as identity on the single-digit
    elements (which generate the additive group) is enough.
    """
    q = R.order
    orders = [q] * ndig
    probes = np.array(
        [v * q**k for k in range(ndig) for v in range(q) if v != R.zero] or [0], dtype=np.int64
    ) + sum(R.zero * q**k for k in range(ndig))
    for bits in itertools.product((0, 1), repeat=ndig):
        digs = np.array([R.one if b else R.zero for b in bits])
        e = np.array([int(positional_index(digs, orders))])
        if np.array_equal(_eval_terms(R, ndig, terms, e, probes)[0], probes) and np.array_equal(
            _eval_terms(R, ndig, terms, probes, e)[:, 0], probes
        ):
            return int(e[0])
    raise StructureError("construction has no multiplicative identity")


# --- families built on tuple_ring -------------------------------------------


def product(*factors: FiniteRing) -> FiniteRing:
    """Direct product with componentwise operations."""
    if len(factors) == 1 and isinstance(factors[0], (list, tuple)):
        factors = tuple(factors[0])
    if not factors:
        raise ValueError("product needs at least one factor")
    orders = [F.order for F in factors]
    N = int(np.prod(orders))
    require_order(N)
    label = "Prod(" + ",".join(F.label for F in factors) + ")"
    if len(factors) == 1:
        F = factors[0]
        return FiniteRing(F.add, F.mul, F.zero, F.one, label, coord_base=F.coord_base)
    ar = np.arange(N)
    dig = positional_digits(ar, orders)
    weights = np.cumprod([1] + orders[:-1]).astype(np.int64)

    def table(which):
        def rows(xs):
            out = np.zeros((xs.size, N), dtype=np.int64)
            for k, F in enumerate(factors):
                t = getattr(F, which)
                out += t[dig[xs, k][:, None], dig[None, :, k]].astype(np.int64) * weights[k]
            return out

        return _fill(N, rows)

    zero = int(sum(F.zero * w for F, w in zip(factors, weights)))
    one = int(sum(F.one * w for F, w in zip(factors, weights)))
    bases = {F.positional_base() for F in factors}
    m = bases.pop() if len(bases) == 1 else None
    return FiniteRing(table("add"), table("mul"), zero, one, label, coord_base=m)


def matrix_terms(R: FiniteRing, k: int) -> list[Term]:
    return [Term(i * k + j, i * k + l, l * k + j, R.mul) for i in range(k) for j in range(k) for l in range(k)]


def matrix_ring(k: int, R: FiniteRing) -> FiniteRing:
    if k < 1:
        raise ValueError("matrix size must be >= 1")
    require_order(R.order ** (k * k))
    return tuple_ring(R, k * k, matrix_terms(R, k), f"M({k},{R.label})")


def upper_positions(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(i, k)]


def upper_triangular(k: int, R: FiniteRing) -> FiniteRing:
    if k < 1:
        raise ValueError("matrix size must be >= 1")
    pos = upper_positions(k)
    require_order(R.order ** len(pos))
    at = {p: n for n, p in enumerate(pos)}
    terms = [
        Term(at[(i, j)], at[(i, l)], at[(l, j)], R.mul)
        for (i, j) in pos
        for l in range(i, j + 1)
    ]
    return tuple_ring(R, len(pos), terms, f"T({k},{R.label})")


def sn_positions(k: int) -> list[tuple[int, int]]:
    """Digit layout of ``S_k``: strictly upper entries, then the diagonal."""
    return [(i, j) for i in range(k) for j in range(i + 1, k)] + [(0, 0)]


def sn_ring(k: int, R: FiniteRing) -> FiniteRing:
    """Upper triangular ``k×k`` matrices with a constant diagonal."""
    if k < 1:
        raise ValueError("matrix size must be >= 1")
    pos = sn_positions(k)
    require_order(R.order ** len(pos))
    d = len(pos) - 1
    at = {p: n for n, p in enumerate(pos[:-1])}

    def slot(i, j):
        return d if i == j else at[(i, j)]

    terms = [Term(d, d, d, R.mul)]
    for (i, j) in pos[:-1]:
        for l in range(i, j + 1):
            terms.append(Term(at[(i, j)], slot(i, l), slot(l, j), R.mul))
    return tuple_ring(R, len(pos), terms, f"S({k},{R.label})")


def trivial_extension_terms(R: FiniteRing, k: int) -> list[Term]:
    terms = [Term(0, 0, 0, R.mul)]
    for i in range(1, k + 1):
        terms += [Term(i, 0, i, R.mul), Term(i, i, 0, R.mul)]
    return terms


def dt_ring(R: FiniteRing) -> FiniteRing:
    """4-tuples ``(a, m, b, n)`` with the doubled trivial-extension product."""
    require_order(R.order**4)
    a, m, b, n = range(4)
    layout = {
        a: [(a, a)],
        m: [(a, m), (m, a)],
        b: [(a, b), (b, a)],
        n: [(a, n), (m, b), (b, m), (n, a)],
    }
    terms = [Term(o, i, j, R.mul) for o, pairs in layout.items() for i, j in pairs]
    return tuple_ring(R, 4, terms, f"DT({R.label})")


def group_ring(R: FiniteRing, G: FiniteGroup) -> FiniteRing:
    """Finite sums ``Σ a_g g`` with convolution product."""
    require_order(R.order**G.order)
    t = G.table
    terms = [Term(int(t[g, h]), g, h, R.mul) for g in range(G.order) for h in range(G.order)]
    return tuple_ring(R, G.order, terms, f"GR({R.label},{G.label})")


def augmentation(RG: FiniteRing, R: FiniteRing, G: FiniteGroup) -> RingMap:
    """``Σ a_g g -> Σ a_g`` from a group ring built by :func:`group_ring`."""
    dig = positional_digits(np.arange(RG.order), [R.order] * G.order)
    acc = np.full(RG.order, R.zero, dtype=np.int64)
    for g in range(G.order):
        acc = R.add[acc, dig[:, g]]
    return RingMap(RG, R, acc, "projection")


def _as_automorphism(R: FiniteRing, alpha) -> RingMap:
    if alpha is None:
        return identity_map(R)
    f = alpha if isinstance(alpha, RingMap) else RingMap(R, R, np.asarray(alpha), "automorphism")
    if f.domain is not R or f.codomain is not R or not f.is_valid():
        raise PreconditionError("twist is not an automorphism of the coefficient ring")
    return f


def trunc_poly(R: FiniteRing, n: int, alpha=None, label: str | None = None) -> FiniteRing:
    """``R[x; α]/(x^n)``: ``(a x^i)(b x^j) = a α^i(b) x^{i+j}``.

    ``alpha`` is a RingMap automorphism, a permutation table, or None for the
    identity.
    """
    if n < 2:
        raise ValueError("truncation degree must be >= 2")
    f = _as_automorphism(R, alpha)
    require_order(R.order**n)
    powers = [np.arange(R.order)]
    for _ in range(n - 1):
        powers.append(f.image[powers[-1]])
    twisted = [R.mul[:, p] for p in powers]
    terms = [Term(i + j, i, j, twisted[i]) for i in range(n) for j in range(n - i)]
    if label is None:
        is_id = np.array_equal(f.image, np.arange(R.order))
        label = f"Trunc({R.label},{n})" if is_id else f"Trunc({R.label},{n},?)"
    return tuple_ring(R, n, terms, label)


def ks_ring(R: FiniteRing, s: int) -> FiniteRing:
    """Blocks ``[[a, x], [y, b]]`` whose off-diagonal products pick up a central ``s``."""
    s = int(s)
    if not 0 <= s < R.order:
        raise ValueError("s must be an element index of R")
    bad = np.flatnonzero(R.mul[s] != R.mul[:, s])
    if bad.size:
        raise PreconditionError(f"s={s} is not central in {R.label}", (s, int(bad[0])))
    require_order(R.order**4)
    s_mul = R.mul[s][R.mul]
    a, x, y, b = range(4)
    terms = [
        Term(a, a, a, R.mul), Term(a, x, y, s_mul),
        Term(x, a, x, R.mul), Term(x, x, b, R.mul),
        Term(y, y, a, R.mul), Term(y, b, y, R.mul),
        Term(b, y, x, s_mul), Term(b, b, b, R.mul),
    ]
    return tuple_ring(R, 4, terms, f"K({R.label},{s})")


# --- bimodules and trivial extensions ---------------------------------------


@dataclass(frozen=True, eq=False)
class Bimodule:
    """An ``R``-bimodule given by its addition table and both actions."""

    ring: FiniteRing
    add: np.ndarray
    left_act: np.ndarray
    right_act: np.ndarray
    zero: int = 0
    label: str = "M"

    @property
    def order(self) -> int:
        return self.add.shape[0]


def regular_bimodule(R: FiniteRing, k: int = 1) -> Bimodule:
    """``R^k`` with left and right multiplication coordinatewise."""
    q = R.order
    N = q**k
    dig = positional_digits(np.arange(N), [q] * k)
    w = q ** np.arange(k, dtype=np.int64)
    add = (R.add[dig[:, None, :], dig[None, :, :]].astype(np.int64) @ w)
    left = (R.mul[np.arange(q)[:, None, None], dig[None, :, :]].astype(np.int64) @ w)
    right = (R.mul[dig[:, None, :], np.arange(q)[None, :, None]].astype(np.int64) @ w)
    return Bimodule(R, add, left, right, int(R.zero * w.sum()), f"{R.label}^{k}")


def last_column_bimodule(k: int, R: FiniteRing, S: FiniteRing | None = None) -> Bimodule:
    """Column vectors ``R^k`` as a bimodule over ``S_k(R)``.

    The left action is matrix times vector; the right action multiplies by the
    shared diagonal entry, which is how a last column transforms under right
    multiplication by an element of ``S_k``.
    """
    S = S if S is not None else sn_ring(k, R)
    q = R.order
    pos = sn_positions(k)
    d = len(pos) - 1
    sdig = positional_digits(np.arange(S.order), [q] * len(pos))
    N = q**k
    vdig = positional_digits(np.arange(N), [q] * k)
    w = q ** np.arange(k, dtype=np.int64)
    at = {p: n for n, p in enumerate(pos[:-1])}

    def entry(sd, i, j):
        if i == j:
            return sd[..., d]
        return sd[..., at[(i, j)]]

    add = R.add[vdig[:, None, :], vdig[None, :, :]].astype(np.int64) @ w
    sd = sdig[:, None, :]
    out = np.empty((S.order, N, k), dtype=np.int64)
    for i in range(k):
        acc = np.full((S.order, N), R.zero, dtype=np.int64)
        for j in range(i, k):
            acc = R.add[acc, R.mul[entry(sd, i, j), vdig[None, :, j]]]
        out[..., i] = acc
    left = out @ w
    diag = sdig[:, d]
    right = R.mul[vdig[:, None, :], diag[None, :, None]].astype(np.int64) @ w
    return Bimodule(S, add, left, right, int(R.zero * w.sum()), f"L({k},{R.label})")


def check_bimodule(M: Bimodule) -> list[str]:
    """Names of the unital bimodule axioms that fail (empty list when valid)."""
    R, a, L, Rt = M.ring, M.add, M.left_act, M.right_act
    n = M.order
    ar = np.arange(n)
    failed = []
    if not np.array_equal(L[R.one], ar) or not np.array_equal(Rt[:, R.one], ar):
        failed.append("unital")
    if not np.array_equal(a, a.T) or not np.array_equal(a[M.zero], ar):
        failed.append("additive group")
    if not all(np.array_equal(a[a[x]], a[x][a]) for x in range(n)):
        failed.append("additive associativity")
    rs = np.arange(R.order)
    if not np.array_equal(L[R.mul[:, :, None], ar[None, None, :]], L[rs[:, None, None], L[None, :, :]]):
        failed.append("left associativity")
    if not np.array_equal(Rt[ar[:, None, None], R.mul[None, :, :]], Rt[Rt[:, :, None], rs[None, None, :]]):
        failed.append("right associativity")
    if not np.array_equal(Rt[L[:, :, None], rs[None, None, :]], L[rs[:, None, None], Rt[None, :, :]]):
        failed.append("bimodule compatibility")
    if not np.array_equal(L[:, a], a[L[:, :, None], L[:, None, :]]):
        failed.append("left distributivity")
    if not np.array_equal(L[R.add[:, :, None], ar[None, None, :]], a[L[:, None, :], L[None, :, :]]):
        failed.append("left action additivity")
    if not np.array_equal(Rt[a][:, :, :], a[Rt[:, None, :], Rt[None, :, :]]):
        failed.append("right distributivity")
    if not np.array_equal(Rt[ar[:, None, None], R.add[None, :, :]], a[Rt[:, :, None], Rt[:, None, :]]):
        failed.append("right action additivity")
    return failed


def trivial_extension(R: FiniteRing, M: Bimodule | int = 1, label: str | None = None) -> FiniteRing:
    """``T(R, M)``: pairs ``(r, m)`` with ``(r, m)(s, n) = (rs, rn + ms)``.

    An integer ``M = k`` means the regular bimodule ``R^k``.
    """
    if isinstance(M, int):
        if M < 1:
            raise ValueError("module rank must be >= 1")
        require_order(R.order ** (M + 1))
        name = label or (f"Triv({R.label})" if M == 1 else f"Triv({R.label},{M})")
        return tuple_ring(R, M + 1, trivial_extension_terms(R, M), name)
    if M.ring is not R:
        raise PreconditionError("bimodule is over a different ring")
    failed = check_bimodule(M)
    if failed:
        raise PreconditionError(f"bimodule axioms fail: {', '.join(failed)}")
    q, n = R.order, M.order
    N = q * n
    require_order(N)
    ar = np.arange(N)
    r, m = ar % q, ar // q

    def add_rows(xs):
        return R.add[r[xs][:, None], r[None, :]] + q * M.add[m[xs][:, None], m[None, :]].astype(np.int64)

    def mul_rows(xs):
        rx, mx = r[xs][:, None], m[xs][:, None]
        top = R.mul[rx, r[None, :]].astype(np.int64)
        bot = M.add[M.left_act[rx, m[None, :]], M.right_act[mx, r[None, :]]]
        return top + q * bot.astype(np.int64)

    return FiniteRing(
        _fill(N, add_rows),
        _fill(N, mul_rows),
        int(R.zero + q * M.zero),
        int(R.one + q * M.zero),
        label or f"T({R.label},{M.label})",
    )


def sn_splitting(k: int, R: FiniteRing, S: FiniteRing | None = None) -> tuple[FiniteRing, RingMap]:
    """``S_k(R)`` as a trivial extension of ``S_{k-1}(R)`` by ``L_{k-1}(R)``.

    Returns ``T(S_{k-1}(R), L_{k-1}(R))`` and the map sending a matrix to
    (its upper-left block, its last column above the diagonal).
    """
    if k < 2:
        raise ValueError("splitting needs k >= 2")
    S = S if S is not None else sn_ring(k, R)
    small = sn_ring(k - 1, R)
    T = trivial_extension(small, last_column_bimodule(k - 1, R, small))
    q = R.order
    pos, spos = sn_positions(k), sn_positions(k - 1)
    dig = positional_digits(np.arange(S.order), [q] * len(pos))
    at = {p: n for n, p in enumerate(pos[:-1])}
    block = [dig[:, at[p]] for p in spos[:-1]] + [dig[:, -1]]
    s_idx = positional_index(np.stack(block, axis=1), [q] * len(spos))
    col = positional_index(np.stack([dig[:, at[(i, k - 1)]] for i in range(k - 1)], axis=1), [q] * (k - 1))
    return T, RingMap(S, T, s_idx + small.order * col, "embedding")
