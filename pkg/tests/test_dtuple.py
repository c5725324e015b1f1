import json
import warnings

import pytest
from hypothesis import assume, given, strategies as st

from d4kit.dtuple import (
    DTuple,
    DuplicateElement,
    NonRealInput,
    NotADMinus4Triple,
    NotAPair,
    NotATriple,
    NotATuple,
    DegenerateInput,
    TwoConstants,
    ZeroElement,
    extend_pair_regular,
    extend_triple_regular,
    fourth_witnesses,
    is_regular_quadruple,
    lift_dminus4,
    pair_family,
    regular_splits,
    verify_dtuple,
)
from d4kit.gint import GaussianInt
from d4kit.gpoly import GPoly, poly_sqrt

from conftest import P, nonzero_polys, polys

D_PLUS = P("4X^3+24X^2+44X+24")


def test_verify_paper_triple(paper_triple):
    t = verify_dtuple(paper_triple)
    assert len(t) == 3
    assert [str(e) for e in t] == ["2i", "-2iX^2 - 4iX", "2iX^2 + 4iX + 4i"]
    assert t.witness(1, 2) == P("2X^2+4X+2")
    for (i, j), w in t.witnesses.items():
        assert w * w == t.elements[i] * t.elements[j] + 4


def test_verify_pair():
    t = verify_dtuple([P("X+4"), P("X")])
    assert t.elements == (P("X"), P("X+4"))
    assert t.witness(1, 0) == P("X+2")


@pytest.mark.parametrize("elements, exc", [
    (["X", "X"], DuplicateElement),
    (["X", "0"], ZeroElement),
    (["X", "X+1"], NotATuple),
    ([], Exception),
])
def test_verify_errors(elements, exc):
    with pytest.raises(exc):
        verify_dtuple([P(e) for e in elements])


def test_not_a_tuple_reports_indices():
    with pytest.raises(NotATuple) as info:
        verify_dtuple([P("X"), P("X+4"), P("X+5")])
    assert (info.value.i, info.value.j) in {(0, 2), (1, 2)}


def test_two_constants_is_a_warning():
    # two constants next to a nonconstant element are easiest to build over n = 0
    with pytest.warns(TwoConstants):
        t = verify_dtuple([P("1"), P("4"), P("X^2")], 0)
    assert t.witness(1, 2) == P("2X")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        verify_dtuple([P("1"), P("5"), P("40")], -4)


def test_other_n():
    t = verify_dtuple([P("1"), P("5"), P("8")], -4)
    assert t.n == GaussianInt(-4)
    assert t.witness(1, 2) == P("6")


def test_json_round_trip(paper_triple):
    t = verify_dtuple(paper_triple)
    doc = json.loads(t.dumps())
    assert DTuple.from_json(doc) == t
    assert DTuple.from_json(doc, verify=False).witnesses == t.witnesses
    assert doc["n"] == ["4", "0"]


def test_extend_pair_examples():
    cp, cm, r = extend_pair_regular(P("X"), P("X+4"))
    assert (cp, cm, r) == (P("4X+8"), GPoly(), P("X+2"))
    with pytest.raises(NotAPair):
        extend_pair_regular(P("X"), P("X+1"))


def test_remark_triple_is_irregular(paper_triple):
    # d_minus = 2i is nonzero, so no element is a + b +- 2r of the other two
    a, b, c = paper_triple
    for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
        cp, cm, _ = extend_pair_regular(x, y)
        assert z not in (cp, cm)


def test_extend_triple_examples(derived_triple, paper_triple):
    ext = extend_triple_regular(*derived_triple)
    assert ext.d_plus == D_PLUS
    assert ext.d_minus == GPoly()
    assert ext.plus_sign == 1
    r, s, t = ext.witnesses
    assert ext.d_plus == r * (r + P("X")) * (P("X+4") + r)
    ext = extend_triple_regular(*paper_triple)
    assert ext.d_minus == P("2i")
    with pytest.raises(NotATriple):
        extend_triple_regular(P("X"), P("X+4"), P("X+5"))


@given(nonzero_polys(2, 5), nonzero_polys(2, 5))
def test_regular_triple_has_zero_d_minus(p, q):
    try:
        a, b = pair_family(p, q)
    except DegenerateInput:
        assume(False)
    cp, cm, r = extend_pair_regular(a, b)
    assume(cp and cp not in (a, b))
    ext = extend_triple_regular(a, b, cp)
    assert not ext.d_minus


@given(nonzero_polys(2, 5), nonzero_polys(2, 5))
def test_fourth_witnesses_square(p, q):
    try:
        a, b = pair_family(p, q)
    except DegenerateInput:
        assume(False)
    c, _, _ = extend_pair_regular(a, b)
    assume(c and c not in (a, b))
    ext = extend_triple_regular(a, b, c)
    for sign, d in ((ext.plus_sign, ext.d_plus), (-ext.plus_sign, ext.d_minus)):
        u, v, w = fourth_witnesses(a, b, c, ext.witnesses, sign)
        assert u * u == a * d + 4
        assert v * v == b * d + 4
        assert w * w == c * d + 4


def test_regular_quadruple(derived_triple):
    quad = (*derived_triple, D_PLUS)
    assert is_regular_quadruple(*quad)
    assert is_regular_quadruple(*reversed(quad))
    assert not is_regular_quadruple(*derived_triple, D_PLUS + 1)
    assert regular_splits(*quad) & 1


def test_regular_quadruple_rejects_degenerate_sets():
    with pytest.raises(DuplicateElement):
        is_regular_quadruple(P("X"), P("X"), P("1"), P("2"))
    with pytest.raises(ZeroElement):
        regular_splits(P("X"), P("0"), P("1"), P("2"))


def test_pair_family_examples():
    assert pair_family(P("X"), P("1")) == (P("X"), P("X+4"))
    a, b = pair_family(P("2i"), P("X"))
    assert b == P("2iX^2+4X")
    assert poly_sqrt(a * b + 4) in (P("2iX+2"), -P("2iX+2"))
    with pytest.raises(DegenerateInput):
        pair_family(P("X"), GPoly())


@given(nonzero_polys(3, 10), nonzero_polys(3, 10))
def test_pair_family_witness(p, q):
    try:
        a, b = pair_family(p, q)
    except DegenerateInput:
        assume(False)
    w = p * q + 2
    assert w * w == a * b + 4


def test_lift_round_trip_of_constructed_instance(derived_triple):
    # multiplying a D(4)-triple by -i gives a D(-4)-triple whose lift is the original
    rotated = [e.times_i().times_i().times_i() for e in derived_triple]
    assert verify_dtuple(rotated, -4)
    with pytest.raises(NonRealInput):
        lift_dminus4(*rotated)


def test_lift_witnesses_are_i_times_real_roots():
    res = lift_dminus4(P("1"), P("5"), P("40"))
    r1, s1, t1 = res.witnesses
    assert (r1, s1, t1) == (P("1"), P("6"), P("14"))
    lifted = res.lifted
    assert lifted.elements == tuple(P(s) for s in ("i", "5i", "40i"))
    assert lifted.witness(0, 1) in (r1.times_i(), -r1.times_i())
    assert [e.status for e in res.extensions] == ["quadruple", "quadruple"]
    assert {e.d for e in res.extensions} == {P("96"), P("12")}


def test_lift_regular_polynomial_triple_has_degenerate_minus():
    res = lift_dminus4(P("1"), P("X^2+4"), P("X^2+2X+5"))
    status = {e.sign: e.status for e in res.extensions}
    assert status == {1: "quadruple", -1: "degenerate"}


def test_lift_errors():
    with pytest.raises(NotADMinus4Triple):
        lift_dminus4(P("1"), P("2"), P("3"))
