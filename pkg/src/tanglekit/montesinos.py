"""Montesinos links M(e; t_1, ..., t_n) = N(e + 1/t_1 + ... + 1/t_n) and their reduced forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import diagram as dg
from . import invariants as inv
from . import tangle as tg


class DomainError(ValueError):
    """A helper was evaluated outside the set where it is defined."""


def _frac(value):
    if isinstance(value, tg.TangleFraction):
        if value.is_infinite:
            raise DomainError("infinite fraction")
        return Fraction(value.num, value.den)
    return Fraction(value)


def floor(t):
    return math.floor(_frac(t))


def frac(t):
    """Fractional part {t} = t - floor(t), in [0, 1)."""
    t = _frac(t)
    return t - math.floor(t)


def hat(t):
    """1/{1/t}; always greater than 1."""
    t = _frac(t)
    if t == 0:
        raise DomainError("hat(0) is undefined")
    part = frac(1 / t)
    if part == 0:
        raise DomainError(f"hat({t}) is undefined: 1/t is an integer")
    return 1 / part


def flipf(t):
    """alpha/(beta - alpha) for positive t = alpha/beta, alpha/(beta + alpha) for negative t."""
    t = _frac(t)
    a, b = t.numerator, t.denominator
    if t > 0:
        den = b - a
    elif t < 0:
        den = b + a
    else:
        raise DomainError("flipf(0) is undefined")
    if den == 0:
        raise DomainError(f"flipf({t}) is undefined")
    return Fraction(a, den)


@dataclass(frozen=True)
class MontesinosForm:
    e: int
    tails: tuple

    def __post_init__(self):
        tails = tuple(_frac(t) for t in self.tails)
        if not tails:
            raise ValueError("a Montesinos form needs at least one tail")
        if any(t in (0, 1, -1) for t in tails):
            raise ValueError("tails must avoid 0 and +-1")
        object.__setattr__(self, "tails", tails)
        object.__setattr__(self, "e", int(self.e))

    def __str__(self):
        return f"M({self.e}; {', '.join(str(t) for t in self.tails)})"

    def to_json(self):
        return {"e": self.e, "tails": [str(t) for t in self.tails]}

    @classmethod
    def from_json(cls, data):
        return cls(data["e"], tuple(Fraction(t) for t in data["tails"]))

    def expr(self):
        """The closed tangle expression N(e + 1/t_1 + ... + 1/t_n)."""
        parts = [tg.Integer(self.e)] if self.e else []
        parts += [tg.rational(tg.TangleFraction.of(1 / t)) for t in self.tails]
        return tg.Numerator(tg.sum_of(parts))

    def determinant_formula(self):
        """|prod(alpha_i) * (e + sum beta_i/alpha_i)| for t_i = alpha_i/beta_i."""
        prod = math.prod(t.numerator for t in self.tails)
        return abs(prod * (self.e + sum(1 / t for t in self.tails)))


def parse_tails(text):
    return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())


def reduced_form(m):
    """M(e + sum floor(1/t_i); hat(t_1), ..., hat(t_n))."""
    eps = m.e + sum(floor(1 / t) for t in m.tails)
    return MontesinosForm(eps, tuple(hat(t) for t in m.tails))


def same_reduced(a, b):
    """Reduced forms agree up to a permutation of tails (a conservative test)."""
    ra, rb = reduced_form(a), reduced_form(b)
    return ra.e == rb.e and sorted(ra.tails) == sorted(rb.tails)


def augmented_form(a, b):
    """
    Montesinos form of N(-1/2 + tau(-a/b)), namely M(0; -2, 2, (2a+b)/(a+b)).

    The determinant of the synthesized Montesinos diagram is checked against
    4(a + b), the encirclement value for T = -a/b.
    """
    if a < 1 or b < 1 or math.gcd(a, b) != 1:
        raise ValueError("need coprime positive a, b")
    m = MontesinosForm(0, (Fraction(-2), Fraction(2), Fraction(2 * a + b, a + b)))
    goeritz = inv.link_det(m.expr())
    want = 4 * (a + b)
    if goeritz != want or m.determinant_formula() != want:
        raise inv.IdentityViolation(
            "augmented form determinant mismatch",
            goeritz=goeritz,
            formula=m.determinant_formula(),
            expected=want,
        )
    return m


def diagram(m):
    return dg.synthesize(m.expr())
