"""Goeritz matrices, link determinants and the encirclement identities."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import conventions as cv
from . import diagram as dg
from . import tangle as tg


class IdentityViolation(AssertionError):
    """A determinant identity that must hold failed; carries the offending data."""

    def __init__(self, message, **data):
        super().__init__(message)
        self.data = data


class SplitDiagram(ValueError):
    pass


def bareiss_det(matrix):
    """Exact determinant of a square integer matrix by fraction-free elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class GoeritzMatrix:
    matrix: tuple
    white_faces: tuple
    deleted_face: int
    full: tuple = field(repr=False, default=())

    @property
    def size(self):
        return len(self.matrix)

    def tolist(self):
        return [list(r) for r in self.matrix]


def crossing_eta(d, c, color):
    """Checkerboard sign of crossing ``c`` and its two white faces."""
    faces = d.corner_faces(c)
    whites = [k for k in range(4) if color[faces[k]] == "white"]
    return cv.eta(whites), faces[whites[0]], faces[whites[1]]


def goeritz(d, coloring=None, delete=None, swap_colors=False):
    """Goeritz matrix of a closed connected diagram, unbounded white face deleted."""
    if not d.is_closed:
        raise ValueError("goeritz needs a closed diagram")
    if d.is_split():
        raise SplitDiagram("split diagram")
    if not d.crossings:
        return GoeritzMatrix((), (), -1, ())
    color = dict(coloring or d.coloring())
    if swap_colors:
        color = {f: ("black" if c == "white" else "white") for f, c in color.items()}
    whites = tuple(sorted(f for f, c in color.items() if c == "white"))
    index = {f: k for k, f in enumerate(whites)}
    n = len(whites)
    full = [[0] * n for _ in range(n)]
    for c in range(len(d.crossings)):
        e, fi, fj = crossing_eta(d, c, color)
        if fi == fj:
            continue
        i, j = index[fi], index[fj]
        full[i][j] -= e
        full[j][i] -= e
    for i in range(n):
        full[i][i] = -sum(full[i][j] for j in range(n) if j != i)
    if delete is None:
        delete = d.outer_face if d.outer_face in index else whites[0]
    k = index[delete]
    reduced = tuple(
        tuple(full[i][j] for j in range(n) if j != k) for i in range(n) if i != k
    )
    return GoeritzMatrix(reduced, whites, delete, tuple(map(tuple, full)))


def determinant(d):
    """|H_1| of the double branched cover; 0 for split diagrams."""
    if not d.is_closed:
        raise ValueError("determinant needs a closed diagram")
    if not d.crossings:
        return 1 if d.loops == 1 else 0
    if d.is_split():
        return 0
    return abs(bareiss_det(goeritz(d).matrix))


def link_det(expr, kind="N"):
    """Determinant of the closure of an expression (or of an already closed one)."""
    return determinant(dg.closed(expr, kind))


def crossing_count(d):
    return d.crossing_count


@dataclass(frozen=True)
class DetPair:
    N: int
    D: int


def det_pair(t):
    if isinstance(t, str):
        t = tg.parse_expr(t)
    d = dg.synthesize(t) if isinstance(t, tg.TangleExpr) else t
    return DetPair(determinant(dg.closure(d, "N")), determinant(dg.closure(d, "D")))


# --------------------------------------------------------------------------
# Determinant identities


@dataclass(frozen=True)
class EncirclementReport:
    N_T: int
    D_T: int
    N_tau: int
    D_tau: int
    D_T_times_minus_one: int

    @property
    def expected(self):
        return 4 * (self.N_T + self.D_T)

    @property
    def holds(self):
        return (
            self.N_tau == self.D_tau == self.expected
            and self.D_T_times_minus_one == self.N_T + self.D_T
        )


def verify_encirclement_identity(t):
    """Check N_tau(T) = D_tau(T) = 4(N_T + D_T) and D_{T*(-1)} = N_T + D_T."""
    if isinstance(t, str):
        t = tg.parse_expr(t)
    base = det_pair(t)
    enc = det_pair(tg.Encircle(t))
    star = det_pair(tg.Product(t, tg.Integer(-1)))
    report = EncirclementReport(base.N, base.D, enc.N, enc.D, star.D)
    if not report.holds:
        raise IdentityViolation(
            "encirclement identity failed", tangle=tg.to_text(t), report=report
        )
    return report


def family_link(t, p, q):
    """The expression N(-p/(p+q) + tau(t))."""
    return tg.Numerator(tg.Sum(tg.Mirror(tg.rational(tg.TangleFraction(p, p + q))), tg.Encircle(t)))


def family_det(t, p, q):
    """
    Determinant of N(-p/(p+q) + tau(t)) via Goeritz, checked against the
    closed form |(p+q) N_tau - p D_tau| = q * 4(N_T + D_T).
    """
    if isinstance(t, str):
        t = tg.parse_expr(t)
    f = tg.TangleFraction(p, q)
    if not (0 < f.num and f <= 1):
        raise ValueError("need 0 < p/q <= 1")
    p, q = f.num, f.den
    goeritz_value = link_det(family_link(t, p, q))
    base = det_pair(t)
    closed_form = q * 4 * (base.N + base.D)
    if goeritz_value != closed_form:
        raise IdentityViolation(
            "family determinant mismatch", goeritz=goeritz_value, closed_form=closed_form
        )
    return goeritz_value
