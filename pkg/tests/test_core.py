import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_all_ideals, naive_ideal, relabel, ring
from finring.core import (
    ElemSet,
    FiniteRing,
    PreconditionError,
    RingMap,
    SizeCapError,
    StructureError,
    UnsupportedSizeError,
    additive_closure,
    are_isomorphic,
    check_axioms,
    enumerate_ideals,
    find_isomorphism,
    get_max_order,
    ideal_closure,
    ideal_witness,
    max_order,
    quotient,
    require_order,
    subring_closure,
)
from finring.radicals import units


def zn_tables(n):
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n, (a[:, None] * a[None, :]) % n


def test_ring_basics():
    add, mul = zn_tables(6)
    R = FiniteRing(add, mul, 0, 1, "Z6")
    assert R.order == 6 and len(R) == 6
    assert R.characteristic == 6
    assert R.is_commutative
    assert list(R.neg) == [0, 5, 4, 3, 2, 1]
    assert R.multiple(4) == 4 and R.multiple(-1) == 5
    assert R.power(2, 3) == 2
    assert R.sub(1, 3) == 4
    assert R.add.dtype == np.uint8
    with pytest.raises(ValueError):
        R.power(2, 0)


def test_tables_are_read_only():
    R = ring("Z5")
    with pytest.raises(ValueError):
        R.add[0, 0] = 1
    with pytest.raises(ValueError):
        R.mul[1, 1] = 0


def test_large_rings_use_wide_indices():
    assert ring("M(2,Z4)").add.dtype == np.uint8
    assert ring("M(2,Z6)").add.dtype == np.uint16


@pytest.mark.parametrize(
    "add, mul, zero, one",
    [
        (np.zeros((2, 3), int), np.zeros((2, 3), int), 0, 1),
        (np.zeros((2, 2), int), np.zeros((3, 3), int), 0, 1),
        (np.full((2, 2), 5), np.zeros((2, 2), int), 0, 1),
        (np.zeros((2, 2), float), np.zeros((2, 2), int), 0, 1),
        (np.zeros((2, 2), int), np.zeros((2, 2), int), 0, 7),
        (np.zeros((0, 0), int), np.zeros((0, 0), int), 0, 0),
    ],
)
def test_malformed_tables_rejected(add, mul, zero, one):
    with pytest.raises(StructureError):
        FiniteRing(add, mul, zero, one)


def test_structure_error_is_a_value_error():
    with pytest.raises(ValueError):
        FiniteRing(np.zeros((2, 3), int), np.zeros((2, 3), int))


def test_order_cap():
    assert get_max_order() == 10_000
    with max_order(20):
        assert get_max_order() == 20
        with pytest.raises(SizeCapError) as ei:
            require_order(21)
        assert ei.value.order == 21
    assert get_max_order() == 10_000


@pytest.mark.parametrize(
    "expr", ["Z1", "Z2", "Z12", "F4", "F8", "M(2,Z2)", "T(3,Z2)", "Triv(Z4)", "GR(F2,S3)", "Trunc(F4,2,frob)"]
)
def test_constructed_rings_satisfy_axioms(expr):
    rep = check_axioms(ring(expr))
    assert rep.passed and rep.violations == [] and bool(rep)


def test_zero_ring_is_a_ring():
    Z1 = ring("Z1")
    assert Z1.order == 1 and Z1.zero == Z1.one == 0
    assert check_axioms(Z1).passed


def _corrupt(R, table, cell, value):
    add, mul = R.add.astype(np.int64), R.mul.astype(np.int64)
    t = add if table == "add" else mul
    t[cell] = value
    return FiniteRing(add, mul, R.zero, R.one, "corrupt")


def test_axiom_failures_carry_witnesses():
    R = ring("Z4")
    bad = _corrupt(R, "mul", (2, 3), 1)
    rep = check_axioms(bad)
    assert not rep.passed
    names = {name for name, _ in rep.violations}
    assert "multiplicative associativity" in names or "left distributivity" in names
    for _, w in rep.violations:
        assert all(0 <= x < 4 for x in w)
    bad = _corrupt(R, "add", (1, 2), 0)
    names = {name for name, _ in check_axioms(bad).violations}
    assert "additive commutativity" in names


def test_left_distributivity_witness_is_genuine():
    R = ring("Z3")
    bad = _corrupt(R, "mul", (2, 2), 2)
    for name, w in check_axioms(bad).violations:
        if name == "left distributivity":
            a, b, c = w
            assert bad.mul[a, bad.add[b, c]] != bad.add[bad.mul[a, b], bad.mul[a, c]]


def test_zero_equal_to_one_flagged():
    add, mul = zn_tables(2)
    rep = check_axioms(FiniteRing(add, mul, 0, 0))
    assert ("zero distinct from one", (0,)) in rep.violations or not rep.passed


@pytest.mark.parametrize("expr", ["GR(F3,Q8)", "M(2,Z6)", "S(3,Z4)"])
def test_large_axiom_check_detects_corruption(expr):
    R = ring(expr)
    assert check_axioms(R).passed
    n = R.order
    bad = _corrupt(R, "mul", (n - 1, n - 2), int(R.mul[n - 1, n - 2]) ^ 1)
    assert not check_axioms(bad).passed


def test_large_checker_agrees_with_exhaustive_on_medium_ring():
    R = ring("M(2,Z3)")
    assert check_axioms(R, exhaustive=True).passed == check_axioms(R, exhaustive=False).passed
    bad = _corrupt(R, "mul", (5, 7), int(R.mul[5, 7]) ^ 1)
    assert not check_axioms(bad, exhaustive=True).passed
    assert not check_axioms(bad, exhaustive=False).passed


def test_elemset_algebra():
    R = ring("Z6")
    A = ElemSet.from_indices(R, [0, 2, 4])
    B = ElemSet.from_indices(R, [0, 3])
    assert (A | B).tolist() == [0, 2, 3, 4]
    assert (A & B).tolist() == [0]
    assert (A - B).tolist() == [2, 4]
    assert (~A).tolist() == [1, 3, 5]
    assert ElemSet.from_indices(R, [0]) < A
    assert not A <= B
    assert 2 in A and 3 not in A
    assert A.first() == 0 and ElemSet.empty(R).first() is None
    assert len(ElemSet.full(R)) == 6
    with pytest.raises(ValueError):
        ElemSet.from_indices(R, [6])
    with pytest.raises(ValueError):
        A | ElemSet.full(ring("Z3"))


def test_additive_closure():
    R = ring("Z12")
    mask = np.zeros(12, bool)
    mask[[8, 6]] = True
    assert np.flatnonzero(additive_closure(R, mask)).tolist() == [0, 2, 4, 6, 8, 10]


def test_ideal_closure_matches_naive():
    for expr in ["Z12", "M(2,Z2)", "T(2,Z4)", "Triv(Z4)", "GR(F2,C4)"]:
        R = ring(expr)
        for x in range(0, R.order, max(1, R.order // 9)):
            got = ideal_closure(R, ElemSet.from_indices(R, [x]))
            assert set(got) == naive_ideal(R, [x]), (expr, x)


@pytest.mark.parametrize("expr", ["Z12", "Prod(Z2,Z2,Z2)", "M(2,Z2)", "T(2,Z2)", "Triv(Z4)", "Prod(Z4,Z2)"])
def test_enumerate_ideals_matches_naive(expr):
    R = ring(expr)
    got = {frozenset(I) for I in enumerate_ideals(R)}
    assert got == naive_all_ideals(R)


def test_enumerate_ideals_limit_and_within():
    R = ring("Prod(Z2,Z2,Z2)")
    assert len(enumerate_ideals(R)) == 8
    assert enumerate_ideals(R, limit=3) is None
    assert ring("M(2,Z2)") and len(enumerate_ideals(ring("M(2,Z2)"))) == 2


def test_quotient_of_z12():
    R = ring("Z12")
    I = ElemSet.from_indices(R, [0, 4, 8])
    Q, pi = quotient(R, I)
    assert Q.order == 4
    assert pi.is_valid() and pi.kind == "projection"
    assert are_isomorphic(Q, ring("Z4"))


def test_quotient_rejects_non_ideals():
    R = ring("M(2,Z2)")
    upper = ElemSet.from_indices(R, [0, 1])  # {0, E11} is not closed under R·_·R
    with pytest.raises(PreconditionError) as ei:
        quotient(R, upper)
    assert ei.value.witness
    assert ideal_witness(R, upper) is not None
    with pytest.raises(PreconditionError):
        quotient(ring("Z6"), ElemSet.from_indices(ring("Z6"), [0, 1]))


def test_subring_closure_of_units():
    R = ring("T(2,Z2)")
    S, emb = subring_closure(R, units(R))
    assert emb.is_valid()
    assert check_axioms(S).passed
    assert S.order == 4


def test_ring_map_checks():
    R = ring("Z4")
    bad = RingMap(R, R, np.array([0, 1, 2, 0]), "automorphism")
    assert not bad.is_homomorphism()
    with pytest.raises(ValueError):
        RingMap(R, R, np.arange(4), "sideways")
    with pytest.raises(StructureError):
        RingMap(R, R, np.arange(3), "automorphism")


def test_isomorphism_search():
    assert are_isomorphic(ring("F2"), ring("Z2"))
    assert are_isomorphic(ring("Prod(Z2,Z3)"), ring("Z6"))
    assert not are_isomorphic(ring("Z4"), ring("F4"))
    assert not are_isomorphic(ring("Triv(Z2)"), ring("Prod(Z2,Z2)"))
    assert not are_isomorphic(ring("S(2,Z2)"), ring("F4"))
    assert are_isomorphic(ring("S(2,Z2)"), ring("Triv(Z2)"))
    assert are_isomorphic(ring("M(2,Z2)"), ring("M(2,F2)"))
    with pytest.raises(UnsupportedSizeError):
        are_isomorphic(ring("Z27"), ring("Prod(Z3,Z9)"))
    assert not are_isomorphic(ring("Z27"), ring("Prod(Z3,Z9)"), cap=27)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Z8", "F8", "Prod(Z2,Z4)", "Triv(Z2,2)", "T(2,Z2)", "Trunc(Z2,3)", "Prod(Z2,Z2,Z2)"]),
       st.randoms(use_true_random=False))
def test_relabelled_rings_are_isomorphic(expr, rnd):
    R = ring(expr)
    perm = np.array(rnd.sample(range(R.order), R.order))
    S = relabel(R, perm)
    assert check_axioms(S).passed
    f = find_isomorphism(R, S)
    assert f is not None
    assert RingMap(R, S, f, "embedding").is_valid()
