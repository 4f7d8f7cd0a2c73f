"""
Rational tangle algebra: exact fractions, continued fractions and
expression trees over integer tangles.

Expressions are immutable trees.  The textual grammar accepted by
:func:`parse_expr` is::

    expr    := term ('+' term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | '1/' unary | atom
    atom    := INT | INT '/' INT | 'inf' | '[' INT (',' INT)* ']'
             | NAME '(' expr ')' | '(' expr ')'

with NAME one of ``flipH flipV rotCW rotCCW tau mirror N D``.
``N(t)`` and ``D(t)`` denote the numerator / denominator closures and may
only appear at the top of an expression.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class TangleFraction:
    """Reduced fraction ``num/den`` with ``den >= 0``; ``1/0`` is the infinity tangle."""

    num: int
    den: int

    def __post_init__(self):
        num, den = self.num, self.den
        if num == 0 and den == 0:
            raise ValueError("0/0 is not a tangle fraction")
        g = math.gcd(num, den)
        num, den = num // g, den // g
        if den < 0 or (den == 0 and num < 0):
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, value):
        if isinstance(value, TangleFraction):
            return value
        if isinstance(value, int):
            return cls(value, 1)
        if isinstance(value, str):
            text = value.strip()
            if text in ("inf", "1/0", "oo"):
                return cls(1, 0)
            if "/" in text:
                p, q = text.split("/")
                return cls(int(p), int(q))
            return cls(int(text), 1)
        # fractions.Fraction and friends
        return cls(value.numerator, value.denominator)

    @property
    def is_infinite(self):
        return self.den == 0

    @property
    def is_integer(self):
        return self.den == 1

    def __add__(self, other):
        other = TangleFraction.of(other)
        if self.is_infinite or other.is_infinite:
            if self.is_infinite and other.is_infinite:
                raise ZeroDivisionError("inf + inf is undefined")
            return TangleFraction(1, 0)
        return TangleFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return TangleFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-TangleFraction.of(other))

    def reciprocal(self):
        return TangleFraction(self.den, self.num)

    def __mul__(self, other):
        other = TangleFraction.of(other)
        return TangleFraction(self.num * other.num, self.den * other.den)

    def __lt__(self, other):
        other = TangleFraction.of(other)
        if self.is_infinite or other.is_infinite:
            raise ValueError("infinity is not ordered")
        return self.num * other.den < other.num * self.den

    def __le__(self, other):
        return self == TangleFraction.of(other) or self < other

    def __gt__(self, other):
        return TangleFraction.of(other) < self

    def __ge__(self, other):
        return TangleFraction.of(other) <= self

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"TangleFraction({self.num}, {self.den})"


INFINITY = TangleFraction(1, 0)


class _NotRational:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotRational"

    def __bool__(self):
        return False


NotRational = _NotRational()


# --------------------------------------------------------------------------
# Expression tree


class TangleExpr:
    """Base class of tangle expression nodes."""

    is_closed = False

    def __add__(self, other):
        return Sum(self, as_expr(other))

    def __radd__(self, other):
        return Sum(as_expr(other), self)

    def __mul__(self, other):
        return Product(self, as_expr(other))

    def __neg__(self):
        return Mirror(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Integer(TangleExpr):
    n: int

    def __repr__(self):
        return f"Integer({self.n})"


@dataclass(frozen=True, repr=False)
class Infinity(TangleExpr):
    def __repr__(self):
        return "Infinity()"


@dataclass(frozen=True, repr=False)
class ContinuedFraction(TangleExpr):
    """The standard rational tangle ``[a_1, ..., a_n]``."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(a) for a in self.terms))
        if not self.terms:
            raise ValueError("continued fraction needs at least one term")

    @property
    def is_canonical(self):
        if any(a == 0 for a in self.terms[1:]):
            return False
        signs = {a > 0 for a in self.terms if a != 0}
        return len(signs) <= 1

    def __repr__(self):
        return f"ContinuedFraction({list(self.terms)})"


@dataclass(frozen=True, repr=False)
class Sum(TangleExpr):
    left: TangleExpr
    right: TangleExpr

    def __repr__(self):
        return f"Sum({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Product(TangleExpr):
    left: TangleExpr
    right: TangleExpr

    def __repr__(self):
        return f"Product({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class _Unary(TangleExpr):
    arg: TangleExpr

    def __repr__(self):
        return f"{type(self).__name__}({self.arg!r})"


class Invert(_Unary):
    pass


class Mirror(_Unary):
    pass


class FlipH(_Unary):
    pass


class FlipV(_Unary):
    pass


class RotateCW(_Unary):
    pass


class RotateCCW(_Unary):
    pass


class Encircle(_Unary):
    pass


class Numerator(_Unary):
    is_closed = True


class Denominator(_Unary):
    is_closed = True


for _cls in (Invert, Mirror, FlipH, FlipV, RotateCW, RotateCCW, Encircle, Numerator, Denominator):
    dataclass(frozen=True, repr=False)(_cls)


def as_expr(value):
    if isinstance(value, TangleExpr):
        return value
    if isinstance(value, int):
        return Integer(value)
    if isinstance(value, (list, tuple)):
        return ContinuedFraction(tuple(value))
    return rational(TangleFraction.of(value))


def rational(f):
    """Expression of the standard diagram of the rational tangle with fraction ``f``."""
    f = TangleFraction.of(f)
    if f.is_infinite:
        return Infinity()
    if f.is_integer:
        return Integer(f.num)
    return to_continued_fraction(f)


def vertical(n):
    """The vertical twist tangle ``1/n``."""
    return ContinuedFraction((0, n))


# --------------------------------------------------------------------------
# Continued fractions


def eval_fraction(cf):
    """Value of ``a_1 + 1/(a_2 + ... + 1/a_n)`` in projective exact arithmetic."""
    terms = cf.terms if isinstance(cf, ContinuedFraction) else tuple(cf)
    if not terms:
        raise ValueError("empty continued fraction")
    p, q = terms[-1], 1
    for a in reversed(terms[:-1]):
        p, q = a * p + q, p
    return TangleFraction(p, q)


def to_continued_fraction(f):
    """Canonical same-sign continued fraction of ``f`` (Euclidean expansion)."""
    f = TangleFraction.of(f)
    if f.is_infinite:
        raise ValueError("the infinity tangle has no finite continued fraction")
    sign = -1 if f.num < 0 else 1
    p, q = abs(f.num), f.den
    terms = []
    while True:
        a, r = divmod(p, q)
        terms.append(a)
        if r == 0:
            break
        p, q = q, r
    return ContinuedFraction(tuple(sign * a for a in terms))


# --------------------------------------------------------------------------
# Fractions of expressions


def fraction_of(expr):
    """Conway fraction of ``expr`` or ``NotRational``."""
    if isinstance(expr, Integer):
        return TangleFraction(expr.n, 1)
    if isinstance(expr, Infinity):
        return INFINITY
    if isinstance(expr, ContinuedFraction):
        return eval_fraction(expr)
    if isinstance(expr, (Numerator, Denominator, Encircle)):
        return NotRational
    if isinstance(expr, _Unary):
        f = fraction_of(expr.arg)
        if f is NotRational:
            return NotRational
        if isinstance(expr, Invert):
            return f.reciprocal()
        if isinstance(expr, Mirror):
            return -f
        if isinstance(expr, (FlipH, FlipV)):
            return f
        if isinstance(expr, (RotateCW, RotateCCW)):
            return -f.reciprocal()
        raise TypeError(f"unknown node {expr!r}")
    if isinstance(expr, (Sum, Product)):
        a, b = fraction_of(expr.left), fraction_of(expr.right)
        if a is NotRational or b is NotRational:
            return NotRational
        if isinstance(expr, Sum):
            if a.is_integer or b.is_integer:
                return a + b
            return NotRational
        # t * 1/n  has  1/F = 1/F(t) + n
        if abs(a.num) == 1 or abs(b.num) == 1:
            return (a.reciprocal() + b.reciprocal()).reciprocal()
        return NotRational
    raise TypeError(f"not a tangle expression: {expr!r}")


def is_rational(expr):
    return fraction_of(expr) is not NotRational


def leaves(expr):
    """All leaf nodes of ``expr`` in left-to-right order."""
    if isinstance(expr, (Integer, Infinity, ContinuedFraction)):
        return [expr]
    if isinstance(expr, _Unary):
        return leaves(expr.arg)
    return leaves(expr.left) + leaves(expr.right)


# --------------------------------------------------------------------------
# Text form

_UNARY_NAMES = {
    "flipH": FlipH,
    "flipV": FlipV,
    "rotCW": RotateCW,
    "rotCCW": RotateCCW,
    "tau": Encircle,
    "mirror": Mirror,
    "N": Numerator,
    "D": Denominator,
}
_NAME_OF = {cls: name for name, cls in _UNARY_NAMES.items() if name != "mirror"}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] == "+":
            self.take()
            node = Sum(node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] == "*":
            self.take()
            node = Product(node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[1] == "-":
            self.take()
            nxt = self.peek()
            if nxt[0] == "int" and self.peek(1)[1] != "/":
                self.take()
                return Integer(-nxt[1])
            return Mirror(self.unary())
        if tok[0] == "int" and self.peek(1)[1] == "/":
            if tok[1] == 1:
                self.take()
                self.take()
                return Invert(self.unary())
            self.take()
            self.take()
            den = self.take()
            if den[0] != "int":
                raise ParseError("only 1/t may invert a non-literal", den[2])
            return rational(TangleFraction(tok[1], den[1]))
        return self.atom()

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return Integer(value)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "op" and value == "[":
            terms = [self.signed_int()]
            while self.peek()[1] == ",":
                self.take()
                terms.append(self.signed_int())
            self.expect("]")
            return ContinuedFraction(tuple(terms))
        if kind == "name":
            if value == "inf":
                return Infinity()
            if value not in _UNARY_NAMES:
                raise ParseError(f"unknown operator {value!r}", pos)
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return _UNARY_NAMES[value](node)
        raise ParseError(f"unexpected {value!r}", pos)

    def signed_int(self):
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "int":
            raise ParseError(f"expected integer, found {tok[1]!r}", tok[2])
        return sign * tok[1]


def parse_expr(text):
    """Parse the tangle grammar into an expression tree."""
    node = _Parser(text).parse()
    _check_closures(node, top=True)
    return node


def _check_closures(node, top):
    if isinstance(node, (Numerator, Denominator)):
        if not top:
            raise ParseError("closures N(...)/D(...) are only allowed at the top level", 0)
        _check_closures(node.arg, top=False)
    elif isinstance(node, _Unary):
        _check_closures(node.arg, top=False)
    elif isinstance(node, (Sum, Product)):
        _check_closures(node.left, False)
        _check_closures(node.right, False)


def to_text(expr):
    """Pretty-print ``expr`` in the grammar of :func:`parse_expr`."""
    return _fmt(expr, 0)


def _fmt(expr, prec):
    # prec: 0 = sum context, 1 = product context, 2 = unary operand
    if isinstance(expr, Integer):
        s = str(expr.n)
        return f"({s})" if expr.n < 0 and prec >= 1 else s
    if isinstance(expr, Infinity):
        return "inf"
    if isinstance(expr, ContinuedFraction):
        return "[" + ",".join(str(a) for a in expr.terms) + "]"
    if isinstance(expr, Sum):
        s = f"{_fmt(expr.left, 0)} + {_fmt(expr.right, 1)}"
        return f"({s})" if prec > 0 else s
    if isinstance(expr, Product):
        s = f"{_fmt(expr.left, 1)} * {_fmt(expr.right, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(expr, Invert):
        s = f"1/{_fmt(expr.arg, 2)}"
        return f"({s})" if prec >= 1 else s
    if isinstance(expr, Mirror):
        s = f"-{_fmt(expr.arg, 2)}"
        if isinstance(expr.arg, Integer) and expr.arg.n >= 0:
            s = f"mirror({expr.arg.n})"
        return f"({s})" if prec >= 1 else s
    if isinstance(expr, _Unary):
        return f"{_NAME_OF[type(expr)]}({_fmt(expr.arg, 0)})"
    raise TypeError(f"not a tangle expression: {expr!r}")


def flatten_sum(expr):
    if isinstance(expr, Sum):
        return flatten_sum(expr.left) + flatten_sum(expr.right)
    return [expr]


def sum_of(parts):
    return reduce(Sum, parts)
