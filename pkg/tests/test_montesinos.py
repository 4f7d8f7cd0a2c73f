from fractions import Fraction as Q
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglekit import invariants as inv
from tanglekit import montesinos as mo


def M(e, *tails):
    return mo.MontesinosForm(e, tuple(Q(t) for t in tails))


def test_helpers():
    assert mo.floor(Q(-1, 2)) == -1 and mo.frac(Q(-1, 2)) == Q(1, 2)
    assert mo.hat(-2) == 2 and mo.hat(Q(3, 2)) == Q(3, 2)
    assert mo.flipf(Q(3, 2)) == -3
    assert mo.flipf(Q(-2, 3)) == -2 and mo.flipf(Q(-2, 5)) == Q(-2, 3)
    with pytest.raises(mo.DomainError):
        mo.hat(1)
    with pytest.raises(mo.DomainError):
        mo.flipf(0)


def test_reduced_form_examples():
    assert mo.reduced_form(M(0, -2, 2, "3/2")) == M(-1, 2, 2, "3/2")
    assert mo.reduced_form(M(0, 2, 2)) == M(0, 2, 2)


def test_same_reduced():
    assert mo.same_reduced(M(0, -2, 2, "3/2"), M(-1, 2, 2, "3/2"))
    assert not mo.same_reduced(M(0, 2, 2), M(0, 2, 3))
    assert mo.same_reduced(M(0, 2, 3, "5/2"), M(0, "5/2", 2, 3))


def test_augmented_form_examples():
    assert mo.augmented_form(1, 1) == M(0, -2, 2, "3/2")
    assert mo.augmented_form(2, 1) == M(0, -2, 2, "5/3")


def test_augmented_form_determinants():
    for a in range(1, 13):
        for b in range(1, 13):
            if gcd(a, b) == 1:
                m = mo.augmented_form(a, b)
                assert inv.link_det(m.expr()) == m.determinant_formula() == 4 * (a + b)


def test_tails_validation_and_json():
    with pytest.raises(ValueError):
        M(0, 1)
    with pytest.raises(ValueError):
        mo.MontesinosForm(0, ())
    m = M(-1, 2, "-5/3")
    assert mo.MontesinosForm.from_json(m.to_json()) == m
    assert mo.parse_tails("-2, 2,3/2") == (Q(-2), Q(2), Q(3, 2))


tails = st.fractions(min_value=-6, max_value=6, max_denominator=7).filter(
    lambda t: t not in (0, 1, -1) and (1 / t).denominator != 1
)


@given(tails)
def test_hat_exceeds_one(t):
    assert mo.hat(t) > 1


@given(st.integers(-3, 3), st.lists(tails, min_size=1, max_size=4), st.randoms())
def test_reduced_form_idempotent_and_equivariant(e, ts, rnd):
    m = mo.MontesinosForm(e, tuple(ts))
    r = mo.reduced_form(m)
    assert mo.reduced_form(r) == r
    shuffled = list(ts)
    rnd.shuffle(shuffled)
    r2 = mo.reduced_form(mo.MontesinosForm(e, tuple(shuffled)))
    assert r2.e == r.e and sorted(r2.tails) == sorted(r.tails)


@given(st.integers(-2, 2), st.lists(tails, min_size=1, max_size=3))
def test_determinant_formula_matches_goeritz(e, ts):
    m = mo.MontesinosForm(e, tuple(ts))
    assert inv.link_det(m.expr()) == m.determinant_formula()
