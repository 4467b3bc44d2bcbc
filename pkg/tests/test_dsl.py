import pytest
from hypothesis import given, settings, strategies as st

from conftest import ring
from finring import dsl
from finring.core import SizeCapError, max_order


def test_examples_parse():
    assert dsl.parse_ring_expr("M(2,Z4)") == dsl.Matrix(2, dsl.ZMod(4))
    assert dsl.parse_ring_expr("GR(F2, C2 x C2)") == dsl.GroupRing(
        dsl.GF(2), dsl.GroupProduct((dsl.Cyclic(2), dsl.Cyclic(2)))
    )
    assert dsl.parse_ring_expr("Triv(Z4)") == dsl.Triv(dsl.ZMod(4), 1)
    assert dsl.parse_ring_expr("Trunc(F4,2)").twist == "id"


def test_case_and_whitespace_insensitive():
    a = dsl.parse_ring_expr("  gr( f2 ,  q8 ) ")
    assert str(a) == "GR(F2,Q8)"
    assert dsl.parse_ring_expr("trunc(f9, 2, FROB)") == dsl.parse_ring_expr("Trunc(F9,2,frob)")


@pytest.mark.parametrize(
    "text, pos, fragment",
    [
        ("Q(2)", 0, "unknown ring constructor"),
        ("M(2)", 3, "expected ','"),
        ("M(2,Z4,Z4)", 6, "too many arguments"),
        ("F6", 0, "no field of order 6"),
        ("Trunc(F4,2,bogus)", 11, "twist"),
        ("GR(F2,C2 x X3)", 11, "unknown group"),
        ("Z", 1, "needs an order"),
        ("M(2,Z4", 6, ""),
        ("", 0, ""),
    ],
)
def test_parse_errors_carry_positions(text, pos, fragment):
    with pytest.raises(dsl.ParseError) as ei:
        dsl.parse_ring_expr(text)
    assert ei.value.pos == pos
    assert fragment in str(ei.value)
    assert "^" in str(ei.value) or not text


def test_orders_and_cap():
    assert dsl.expr_order(dsl.parse_ring_expr("K(Z4,2)")) == 256
    assert ring("Z8").order == 8
    with pytest.raises(SizeCapError) as ei:
        dsl.evaluate(dsl.parse_ring_expr("M(3,Z4)"))
    assert ei.value.order == 262144
    with max_order(8):
        with pytest.raises(SizeCapError):
            dsl.evaluate(dsl.parse_ring_expr("Triv(Z3)"))


def test_labels_are_canonical():
    R = dsl.evaluate(dsl.parse_ring_expr("gr(z4, s3)"))
    assert R.label == "GR(Z4,S3)"
    assert dsl.evaluate(dsl.parse_ring_expr("Trunc(F4,2,frob)")).label == "Trunc(F4,2,frob)"


def test_decode_element():
    assert dsl.format_element("Prod(Z4,Z4)", 14) == "(2,3)"
    assert dsl.decode_element("M(2,Z2)", 15) == [[1, 1], [1, 1]]
    assert dsl.decode_element("T(2,Z2)", 6) == [[0, 1], [0, 1]]
    assert dsl.decode_element("GR(Z3,C3)", 5) == (2, 1, 0)
    with pytest.raises(ValueError):
        dsl.decode_element("Z4", 4)


group_atoms = st.one_of(
    st.integers(1, 6).map(dsl.Cyclic),
    st.integers(1, 4).map(dsl.Dihedral),
    st.just(dsl.Quaternion8()),
    st.just(dsl.Symmetric3()),
)
# the group grammar has no parentheses, so products parse flat
groups = st.one_of(
    group_atoms,
    st.lists(group_atoms, min_size=2, max_size=3).map(lambda fs: dsl.GroupProduct(tuple(fs))),
)

leaves = st.one_of(
    st.integers(1, 30).map(dsl.ZMod),
    st.sampled_from([2, 3, 4, 5, 7, 8, 9]).map(dsl.GF),
)


def _extend(inner):
    k = st.integers(1, 4)
    return st.one_of(
        st.builds(dsl.Matrix, k, inner),
        st.builds(dsl.Upper, k, inner),
        st.builds(dsl.SN, k, inner),
        st.lists(inner, min_size=1, max_size=3).map(lambda fs: dsl.Prod(tuple(fs))),
        st.builds(dsl.Triv, inner, k),
        st.builds(dsl.DT, inner),
        st.builds(dsl.GroupRing, inner, groups),
        st.builds(dsl.Trunc, inner, st.integers(2, 4), st.sampled_from(["id", "frob"])),
        st.builds(dsl.KS, inner, st.integers(0, 3)),
    )


ring_exprs = st.recursive(leaves, _extend, max_leaves=4)


@settings(max_examples=300, deadline=None)
@given(ring_exprs)
def test_print_parse_round_trip(e):
    text = str(e)
    again = dsl.parse_ring_expr(text)
    assert again == e
    assert str(again) == text
    # lower-casing and padding do not change the tree
    assert dsl.parse_ring_expr(" " + text.lower().replace(",", " , ") + " ") == e


@settings(max_examples=200, deadline=None)
@given(groups)
def test_group_round_trip(g):
    assert dsl.parse_group_expr(str(g)) == g


def test_group_products_flatten():
    g = dsl.parse_group_expr("C2 x C3 x Q8")
    assert g == dsl.GroupProduct((dsl.Cyclic(2), dsl.Cyclic(3), dsl.Quaternion8()))
    assert dsl.group_order(g) == 48
