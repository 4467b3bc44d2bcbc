import itertools

import numpy as np
import pytest

from conftest import ring
from finring import constructors as C
from finring import dsl
from finring.core import PreconditionError, RingMap, SizeCapError, check_axioms, induced_ring
from finring.groups import cyclic, make_group
from finring.tables import positional_index


def decode(expr, x):
    return dsl.decode_element(dsl.parse_ring_expr(expr), x)


def encode_matrix(mat, q):
    k = len(mat)
    return int(positional_index(np.array([v for row in mat for v in row]), [q] * (k * k)))


def test_zmod_tables():
    for n in (1, 2, 7, 12):
        R = C.zmod(n)
        a = np.arange(n)
        assert np.array_equal(R.add, (a[:, None] + a) % n)
        assert np.array_equal(R.mul, (a[:, None] * a) % n)
        assert R.label == f"Z{n}"
    with pytest.raises(ValueError):
        C.zmod(0)


def _poly_mul(a, b, p, modulus):
    """Multiply coefficient lists (low degree first) modulo a monic polynomial."""
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * modulus[t]) % p
    return prod[:k]


@pytest.mark.parametrize("p, k, modulus", [(2, 2, [1, 1, 1]), (2, 3, [1, 1, 0, 1]), (3, 2, [1, 0, 1])])
def test_extension_fields_match_polynomial_arithmetic(p, k, modulus):
    F = C.gf(p, k)
    q = p**k
    coeffs = [list(c) for c in itertools.product(range(p), repeat=k)]
    coeffs = [c[::-1] for c in coeffs]  # index = Σ c_i p^i
    index = {tuple(c): int(positional_index(np.array(c), [p] * k)) for c in coeffs}
    for a in coeffs:
        for b in coeffs:
            s = tuple((x + y) % p for x, y in zip(a, b))
            assert F.add[index[tuple(a)], index[tuple(b)]] == index[s]
            assert F.mul[index[tuple(a)], index[tuple(b)]] == index[tuple(_poly_mul(a, b, p, modulus))]
    nonzero = np.arange(1, q)
    assert all((F.mul[x, nonzero] == 1).any() for x in nonzero)
    assert F.label == f"F{q}"


def test_unsupported_field_orders():
    for p, k in [(2, 4), (6, 1), (3, 3)]:
        with pytest.raises(ValueError):
            C.gf(p, k)


def test_frobenius():
    F4 = ring("F4")
    f = C.frobenius(F4)
    assert f.is_valid() and not np.array_equal(f.image, np.arange(4))
    assert np.array_equal(f.image[f.image], np.arange(4))
    with pytest.raises(PreconditionError):
        C.frobenius(ring("Z4"))


@pytest.mark.parametrize("expr, n, k", [("M(2,Z4)", 4, 2), ("M(2,Z6)", 6, 2), ("M(3,Z2)", 2, 3)])
def test_matrix_ring_matches_integer_matrices(expr, n, k):
    R = ring(expr)
    rng = np.random.default_rng(1)
    for x, y in rng.integers(0, R.order, size=(300, 2)):
        A, B = np.array(decode(expr, x)), np.array(decode(expr, y))
        assert R.mul[x, y] == encode_matrix((A @ B) % n, n)
        assert R.add[x, y] == encode_matrix((A + B) % n, n)


def test_matrix_ring_identity_and_cap():
    R = ring("M(2,Z3)")
    assert decode("M(2,Z3)", R.one) == [[1, 0], [0, 1]]
    with pytest.raises(SizeCapError):
        C.matrix_ring(3, C.zmod(4))


def _matrix_embedding(expr, k, base_expr):
    """Map sending each element of a matrix-shaped ring to its index in M_k."""
    q = ring(base_expr).order
    R = ring(expr)
    M = ring(f"M({k},{base_expr})")
    img = np.array([encode_matrix(decode(expr, x), q) for x in range(R.order)])
    return RingMap(R, M, img, "embedding")


@pytest.mark.parametrize("family", ["T", "S"])
@pytest.mark.parametrize("k, base", [(2, "Z2"), (2, "Z4"), (3, "Z2"), (2, "Z3")])
def test_triangular_families_are_subrings_of_matrices(family, k, base):
    f = _matrix_embedding(f"{family}({k},{base})", k, base)
    assert f.is_valid()


def test_upper_triangular_matches_reindexed_subring():
    M = ring("M(3,Z2)")
    mask = np.array([all(decode("M(3,Z2)", x)[i][j] == 0 for i in range(3) for j in range(i)) for x in range(M.order)])
    T, _ = induced_ring(M, mask, "T")
    T3 = ring("T(3,Z2)")
    assert np.array_equal(T.add, T3.add) and np.array_equal(T.mul, T3.mul)


def test_sn_layout():
    assert C.sn_positions(3) == [(0, 1), (0, 2), (1, 2), (0, 0)]
    assert decode("S(3,Z2)", 8) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert ring("S(3,Z2)").one == 8


def test_product_is_componentwise():
    R = ring("Prod(Z4,Z3)")
    for x in range(12):
        for y in range(12):
            a, b = decode("Prod(Z4,Z3)", x), decode("Prod(Z4,Z3)", y)
            prod = (a[0] * b[0] % 4, a[1] * b[1] % 3)
            assert R.mul[x, y] == prod[0] + 4 * prod[1]
    assert R.one == 1 + 4 * 1 and R.label == "Prod(Z4,Z3)"


def _convolve(a, b, G, n):
    out = [0] * G.order
    for g in range(G.order):
        for h in range(G.order):
            k = int(G.table[g, h])
            out[k] = (out[k] + a[g] * b[h]) % n
    return out


@pytest.mark.parametrize("expr, n, group", [("GR(Z4,S3)", 4, "S3"), ("GR(Z2,Q8)", 2, "Q8"), ("GR(Z3,C2xC2)", 3, "C2xC2")])
def test_group_ring_is_convolution(expr, n, group):
    R, G = ring(expr), make_group(group)
    rng = np.random.default_rng(2)
    for x, y in rng.integers(0, R.order, size=(200, 2)):
        a, b = decode(expr, x), decode(expr, y)
        expected = _convolve(a, b, G, n)
        assert R.mul[x, y] == int(positional_index(np.array(expected), [n] * G.order))


def test_augmentation():
    R, base, G = ring("GR(Z4,C2)"), ring("Z4"), cyclic(2)
    eps = C.augmentation(R, base, G)
    assert eps.is_valid()
    assert eps.image[R.one] == base.one
    assert eps.image[2 + 4 * 3] == (2 + 3) % 4


def test_trivial_extension_product():
    R = ring("Triv(Z4)")
    for x in range(16):
        for y in range(16):
            (r, m), (s, n) = decode("Triv(Z4)", x), decode("Triv(Z4)", y)
            assert R.mul[x, y] == (r * s) % 4 + 4 * ((r * n + m * s) % 4)


def test_trivial_extension_with_explicit_bimodule_matches_rank_form():
    Z3 = ring("Z3")
    M = C.regular_bimodule(Z3, 2)
    assert C.check_bimodule(M) == []
    T = C.trivial_extension(Z3, M)
    T2 = ring("Triv(Z3,2)")
    # (r, m) with m in Z3^2 is stored as r + 3·(m0 + 3·m1) in both layouts
    assert np.array_equal(T.mul, T2.mul) and np.array_equal(T.add, T2.add)


def test_broken_bimodule_is_rejected():
    Z2 = ring("Z2")
    M = C.regular_bimodule(Z2)
    bad = C.Bimodule(Z2, M.add, M.left_act, np.zeros_like(M.right_act), 0, "bad")
    assert "unital" in C.check_bimodule(bad)
    with pytest.raises(PreconditionError):
        C.trivial_extension(Z2, bad)
    with pytest.raises(PreconditionError):
        C.trivial_extension(ring("Z3"), M)


def test_dt_product():
    R = ring("DT(Z3)")
    rng = np.random.default_rng(3)
    for x, y in rng.integers(0, R.order, size=(300, 2)):
        a, m, b, n = decode("DT(Z3)", x)
        c, p, d, t = decode("DT(Z3)", y)
        out = (a * c, a * p + m * c, a * d + b * c, a * t + m * d + b * p + n * c)
        assert R.mul[x, y] == int(positional_index(np.array(out) % 3, [3] * 4))


def test_ks_product():
    R = ring("K(Z4,2)")
    rng = np.random.default_rng(4)
    for x, y in rng.integers(0, R.order, size=(300, 2)):
        a, u, v, b = decode("K(Z4,2)", x)
        c, p, q, d = decode("K(Z4,2)", y)
        out = (a * c + 2 * u * q, a * p + u * d, v * c + b * q, 2 * v * p + b * d)
        assert R.mul[x, y] == int(positional_index(np.array(out) % 4, [4] * 4))


def test_ks_requires_central_element():
    M2 = ring("M(2,Z2)")
    with pytest.raises(PreconditionError) as ei:
        C.ks_ring(M2, 1)
    assert ei.value.witness[0] == 1
    with pytest.raises(ValueError):
        C.ks_ring(ring("Z2"), 5)


def test_truncated_polynomials():
    plain = ring("Trunc(F4,2)")
    twisted = ring("Trunc(F4,2,frob)")
    assert plain.is_commutative and not twisted.is_commutative
    F4 = ring("F4")
    f = C.frobenius(F4)
    # (a + b x)(c + d x) = ac + (a d + b α(c)) x
    for x in range(16):
        for y in range(16):
            a, b = x % 4, x // 4
            c, d = y % 4, y // 4
            lo = F4.mul[a, c]
            hi = F4.add[F4.mul[a, d], F4.mul[b, f.image[c]]]
            assert twisted.mul[x, y] == lo + 4 * hi
    T = ring("Trunc(Z2,3)")
    x = 2  # the variable
    assert T.mul[x, x] == 4 and T.mul[4, x] == 0
    with pytest.raises(ValueError):
        C.trunc_poly(ring("Z2"), 1)
    with pytest.raises(PreconditionError):
        C.trunc_poly(ring("Z4"), 2, alpha=np.zeros(4, dtype=int))


@pytest.mark.parametrize("expr", ["M(2,Z4)", "M(2,Z6)", "GR(F2,C4)", "GR(Z4,C2xC2)", "Triv(Z4,2)"])
def test_fast_and_generic_table_paths_agree(expr):
    e = dsl.parse_ring_expr(expr)
    R = ring(expr)
    base = ring(str(e.base))
    if isinstance(e, dsl.Matrix):
        terms, ndig = C.matrix_terms(base, e.k), e.k * e.k
    elif isinstance(e, dsl.GroupRing):
        G = dsl.evaluate_group(e.group)
        terms = [C.Term(int(G.table[g, h]), g, h, base.mul) for g in range(G.order) for h in range(G.order)]
        ndig = G.order
    else:
        terms, ndig = C.trivial_extension_terms(base, e.k), e.k + 1
    fast = C.tuple_ring(base, ndig, terms, "fast", fast=True)
    slow = C.tuple_ring(base, ndig, terms, "slow", fast=False)
    assert np.array_equal(fast.mul, slow.mul) and np.array_equal(fast.add, slow.add)
    assert np.array_equal(fast.mul, R.mul)


@pytest.mark.parametrize("k, base", [(2, "Z2"), (3, "Z2"), (3, "Z3"), (3, "Z4"), (4, "Z2")])
def test_sn_splitting_is_an_isomorphism(k, base):
    R = ring(base)
    S = C.sn_ring(k, R)
    T, phi = C.sn_splitting(k, R, S)
    assert phi.is_homomorphism() and phi.is_injective() and phi.is_surjective()
    assert check_axioms(T).passed


def test_last_column_bimodule_is_valid():
    for k, base in [(2, "Z2"), (3, "Z2"), (2, "Z4")]:
        assert C.check_bimodule(C.last_column_bimodule(k, ring(base))) == []
