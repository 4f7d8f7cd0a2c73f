from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tanglekit import tangle as tg
from tanglekit.tangle import (
    ContinuedFraction,
    Encircle,
    Integer,
    Invert,
    NotRational,
    Sum,
    TangleFraction,
)


def F(p, q=1):
    return TangleFraction(p, q)


# -- oracle values --------------------------------------------------------


@pytest.mark.parametrize(
    "terms, value",
    [((2,), F(2)), ((2, 3, 4), F(30, 13)), ((-2, -3, -4), F(-30, 13)), ((0, 3), F(1, 3))],
)
def test_eval_fraction(terms, value):
    assert tg.eval_fraction(terms) == value


@pytest.mark.parametrize(
    "value, terms", [(F(30, 13), (2, 3, 4)), (F(3), (3,)), (F(-30, 13), (-2, -3, -4)), (F(2, 5), (0, 2, 2))]
)
def test_to_continued_fraction(value, terms):
    assert tg.to_continued_fraction(value).terms == terms


def test_infinity_has_no_continued_fraction():
    with pytest.raises(ValueError):
        tg.to_continued_fraction(tg.INFINITY)


def test_fraction_rules():
    cf = ContinuedFraction((2, 3, 4))
    assert tg.fraction_of(Invert(cf)) == F(13, 30)
    assert tg.fraction_of(Sum(cf, Integer(1))) == F(43, 13)
    assert tg.fraction_of(Sum(ContinuedFraction((1, 2)), ContinuedFraction((1, 2)))) is NotRational
    assert tg.fraction_of(Encircle(Integer(-1))) is NotRational


def test_product_with_vertical_unit():
    # -1 is 1/(-1), so a product with it stays rational
    assert tg.fraction_of(tg.Product(Integer(-1), Integer(-1))) == F(-1, 2)
    assert tg.fraction_of(tg.Product(Integer(-2), Integer(-3))) is NotRational


def test_parse_examples():
    assert tg.parse_expr("[2,3,4]") == ContinuedFraction((2, 3, 4))
    assert tg.parse_expr("tau(-3)") == Encircle(Integer(-3))
    assert tg.parse_expr("1/([1,2] + 2)") == Invert(Sum(ContinuedFraction((1, 2)), Integer(2)))
    assert tg.parse_expr(" [ 2 , 3 ]+1 ") == Sum(ContinuedFraction((2, 3)), Integer(1))


@pytest.mark.parametrize("text", ["[2,3", "tau(", "foo(1)", "1 +", "N(N(1))", "tau(N(1))", "2/x"])
def test_parse_errors(text):
    with pytest.raises(tg.ParseError):
        tg.parse_expr(text)


@pytest.mark.parametrize(
    "text",
    ["[2,3,4]", "tau(-3)", "1/([1,2] + 2)", "flipH(rotCW(-1)) * [0,-2]", "N(-1/2 + tau(-1))",
     "D([0,3])", "-(2 + 3)", "rotCCW(flipV(1/[1,2]))"],
)
def test_text_round_trip(text):
    e = tg.parse_expr(text)
    assert tg.parse_expr(tg.to_text(e)) == e


def test_fraction_normalization():
    assert F(2, -4) == F(-1, 2)
    assert F(-3, 0) == tg.INFINITY
    with pytest.raises(ValueError):
        F(0, 0)


# -- properties -----------------------------------------------------------

coprime = st.tuples(st.integers(-200, 200), st.integers(1, 200)).filter(lambda t: gcd(*t) == 1)


@given(coprime)
def test_continued_fraction_round_trip(pq):
    f = F(*pq)
    cf = tg.to_continued_fraction(f)
    assert tg.eval_fraction(cf) == f
    assert cf.is_canonical
    assert tg.fraction_of(cf) == tg.eval_fraction(cf)


@given(coprime)
def test_unary_fraction_rules(pq):
    f = F(*pq)
    t = tg.rational(f)
    assert tg.fraction_of(tg.Mirror(t)) == -f
    assert tg.fraction_of(tg.Invert(t)) == f.reciprocal()
    assert tg.fraction_of(tg.FlipH(t)) == f
    assert tg.fraction_of(tg.FlipV(t)) == f
    # the two rotations agree at the fraction level only
    assert tg.fraction_of(tg.RotateCW(t)) == tg.fraction_of(tg.RotateCCW(t)) == -f.reciprocal()


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6))
def test_eval_fraction_matches_nested_arithmetic(terms):
    from fractions import Fraction

    def nested(ts):
        if len(ts) == 1:
            return Fraction(ts[0])
        rest = nested(ts[1:])
        return None if rest is None or rest == 0 else ts[0] + 1 / rest

    value = nested(terms)
    assume(value is not None)
    assert tg.eval_fraction(terms) == F(value.numerator, value.denominator)
