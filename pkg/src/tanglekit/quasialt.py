"""
Quasi-alternating certificates.

A certificate is a tree.  Internal nodes (:class:`QANode`) name a crossing
of their diagram and record ``(det D, det D_0, det D_inf)``; the children
certify the two smoothings.  Leaves (:class:`QALeaf`) carry one of three
justifications:

``unknot``
    a crossingless circle, or an alternating connected diagram of det 1;
``alt-base``
    a connected alternating diagram with positive determinant (non-split
    alternating links are quasi-alternating);
``rational-ext``
    the diagram obtained from a certified parent by replacing its
    quasi-alternating crossing with a rational tangle of the same sign.

A child may certify an isotopic alternating form of a raw smoothing instead
of the smoothing itself; only the determinants of the two are compared.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from . import conventions as cv
from . import diagram as dg
from . import invariants as inv
from . import tangle as tg


class SplitOrUnreduced(ValueError):
    pass


class SignMismatch(ValueError):
    pass


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class QALeaf:
    kind: str
    diagram: dg.PlanarDiagram
    det: int
    witness: int | None = None
    expr: str | None = None
    parent: "QANode | QALeaf | None" = None
    crossing: int | None = None
    rational: tg.TangleFraction | None = None


@dataclass(frozen=True)
class QANode:
    diagram: dg.PlanarDiagram
    crossing: int
    det: tuple
    zero: "QANode | QALeaf"
    inf: "QANode | QALeaf"
    expr: str | None = None


QACertificate = QANode | QALeaf


def smooth(d, c, kind):
    """Smoothing ``D^c_0`` (``kind='zero'``) or ``D^c_inf`` (``kind='inf'``) of ``d``."""
    if not 0 <= c < d.crossing_count:
        raise IndexError(f"no crossing {c}")
    return dg.smooth(d, c, kind)


def _is_unknot_diagram(d):
    return d.is_closed and not d.crossings and d.loops == 1


def leaf_for(d, expr=None):
    """Leaf justification for an alternating connected diagram."""
    det = inv.determinant(d)
    if _is_unknot_diagram(d):
        return QALeaf("unknot", d, 1, expr=expr)
    if not d.is_alternating() or d.is_split() or det == 0:
        raise SplitOrUnreduced("leaf diagram must be connected, alternating, det > 0")
    witness = next(iter(c for c in range(d.crossing_count) if c not in d.nugatory_crossings()), None)
    return QALeaf("alt-base", d, det, witness=witness, expr=expr)


def certify_alternating_base(d):
    """Certificate for a reduced non-split alternating diagram at its first crossing."""
    if isinstance(d, (str, tg.TangleExpr)):
        d = dg.closed(d)
    if _is_unknot_diagram(d):
        return QALeaf("unknot", d, 1)
    if d.is_split() or not d.is_reduced():
        raise SplitOrUnreduced("diagram is split or has a nugatory crossing")
    if not d.is_alternating():
        raise SplitOrUnreduced("diagram is not alternating")
    c = 0
    d0, dinf = smooth(d, c, cv.ZERO), smooth(d, c, cv.INFINITY)
    z, i = leaf_for(d0), leaf_for(dinf)
    total = inv.determinant(d)
    if total != z.det + i.det:
        raise inv.IdentityViolation("det additivity failed at a non-nugatory crossing", crossing=c)
    return QANode(d, c, (total, z.det, i.det), z, i)


# --------------------------------------------------------------------------
# Crossing <-> leaf bookkeeping for expressions


def _leaf_crossings(e):
    if isinstance(e, tg.Integer):
        return abs(e.n)
    if isinstance(e, tg.Infinity):
        return 0
    if isinstance(e, tg.ContinuedFraction):
        return sum(abs(a) for a in e.terms)
    raise TypeError(e)


def crossing_owner(expr, c):
    """Path to the leaf of ``expr`` whose synthesis produced crossing ``c``."""

    def walk(e, path, offset):
        if isinstance(e, (tg.Integer, tg.Infinity, tg.ContinuedFraction)):
            n = _leaf_crossings(e)
            return (path, e) if offset <= c < offset + n else None, offset + n
        if isinstance(e, (tg.Sum, tg.Product)):
            hit, offset = walk(e.left, path + ("left",), offset)
            if hit:
                return hit, offset
            return walk(e.right, path + ("right",), offset)
        hit, offset = walk(e.arg, path + ("arg",), offset)
        if isinstance(e, tg.Encircle):
            if hit is None and offset <= c < offset + 4:
                return (path, e), offset + 4
            offset += 4
        return hit, offset

    hit, _ = walk(expr, (), 0)
    return hit


def _replace_at(e, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    return replace(e, **{head: _replace_at(getattr(e, head), rest, new)})


def extend_by_rational(cert, c, r):
    """Replace the quasi-alternating crossing ``c`` of ``cert`` by the rational tangle ``r``."""
    r = tg.TangleFraction.of(r)
    if cert.expr is None:
        raise CertificateError("certificate carries no expression to extend")
    if not isinstance(cert, QANode) or cert.crossing != c:
        raise CertificateError(f"certificate is not quasi-alternating at crossing {c}")
    expr = tg.parse_expr(cert.expr)
    owner = crossing_owner(expr, c)
    if owner is None or not isinstance(owner[1], tg.Integer) or abs(owner[1].n) != 1:
        raise CertificateError(f"crossing {c} is not an elementary +-1 leaf")
    path, leaf = owner
    if r.is_infinite or r.num == 0 or (r.num > 0) != (leaf.n > 0):
        raise SignMismatch(f"{r} does not extend a {leaf.n:+d} crossing")
    if r == tg.TangleFraction(leaf.n, 1):
        return cert
    new_expr = _replace_at(expr, path, tg.rational(r))
    d = dg.synthesize(new_expr)
    return QALeaf(
        "rational-ext",
        d,
        inv.determinant(d),
        expr=tg.to_text(new_expr),
        parent=cert,
        crossing=c,
        rational=r,
    )


# --------------------------------------------------------------------------
# The family route


def column(k, t):
    """N((-1) * ... * (-1) + tau(t)) with a column of k crossings."""
    col = tg.Integer(-1)
    for _ in range(k - 1):
        col = tg.Product(col, tg.Integer(-1))
    return tg.Numerator(tg.Sum(col, tg.Encircle(t)))


def marked_crossing(d):
    """The SW encirclement crossing: the last crossing of n(col + tau(T))."""
    return d.crossing_count - 1


def _check_type2(t):
    d = dg.synthesize(t)
    if dg.classify_type(d) != cv.TYPE2:
        raise dg.EncircleTypeError("family needs a connected alternating type-2 tangle")
    return d


def certify_base(t):
    """Certificate for n(-1/2 + tau(t)) at the marked crossing."""
    _check_type2(t)
    pair = inv.det_pair(t)
    expr = column(2, t)
    d = dg.synthesize(expr)
    c = marked_crossing(d)
    total = inv.determinant(d)
    raw0 = inv.determinant(smooth(d, c, cv.ZERO))
    rawinf = inv.determinant(smooth(d, c, cv.INFINITY))
    expected = {
        "det(D)": (total, 4 * (pair.N + pair.D)),
        "det(D0)": (raw0, 4 * pair.N + 3 * pair.D),
        "det(Dinf)": (rawinf, pair.D),
    }
    bad = {k: v for k, v in expected.items() if v[0] != v[1]}
    if bad:
        raise inv.IdentityViolation("family determinant mismatch at marked crossing", diff=bad)
    # isotopic alternating forms of the two smoothings
    form0 = tg.Numerator(tg.Sum(tg.ContinuedFraction((1, 3)), tg.FlipV(tg.RotateCCW(t))))
    forminf = tg.Denominator(t)
    z = leaf_for(dg.synthesize(form0), expr=tg.to_text(form0))
    i = leaf_for(dg.synthesize(forminf), expr=tg.to_text(forminf))
    if (z.det, i.det) != (raw0, rawinf):
        raise inv.IdentityViolation("isotoped forms disagree with raw smoothings", forms=(z.det, i.det))
    return QANode(d, c, (total, raw0, rawinf), z, i, expr=tg.to_text(expr))


def certify_column3(t, base=None):
    """Certificate for n(-1/3 + tau(t)) at the top crossing of the column."""
    base = base or certify_base(t)
    expr = column(3, t)
    d = dg.synthesize(expr)
    c = 0
    total = inv.determinant(d)
    # At a -1 crossing the infinity smoothing deletes it from the column,
    # leaving the two-crossing base; the zero smoothing caps the column off.
    rest = tg.Numerator(tg.Encircle(t))
    children = {
        cv.INFINITY: base,
        cv.ZERO: leaf_for(dg.synthesize(rest), expr=tg.to_text(rest)),
    }
    for kind, child in children.items():
        got = inv.determinant(smooth(d, c, kind))
        if got != _det_of(child):
            raise inv.IdentityViolation("column smoothing mismatch", kind=kind, got=got, want=_det_of(child))
    node = QANode(
        d,
        c,
        (total, _det_of(children[cv.ZERO]), _det_of(children[cv.INFINITY])),
        children[cv.ZERO],
        children[cv.INFINITY],
        expr=tg.to_text(expr),
    )
    if total != node.det[1] + node.det[2]:
        raise inv.IdentityViolation("column additivity failed", det=node.det)
    return node


def _det_of(cert):
    return cert.det if isinstance(cert, QALeaf) else cert.det[0]


def certify_family(t, p, q):
    """Certificate for N(-p/(p+q) + tau(t)), 0 < p/q <= 1."""
    if isinstance(t, str):
        t = tg.parse_expr(t)
    f = tg.TangleFraction(p, q)
    if not (f.num > 0 and f <= 1):
        raise ValueError("need 0 < p/q <= 1")
    p, q = f.num, f.den
    base = certify_base(t)
    if p == q:
        return base
    mid = certify_column3(t, base)
    # top crossing of the -1/3 column extended by -p/(q-p)
    return extend_by_rational(mid, 0, tg.TangleFraction(-p, q - p))


def family_fraction_of(cert):
    """Fraction of the rational column in a family certificate's link."""
    expr = tg.parse_expr(cert.expr)
    return tg.fraction_of(expr.arg.left)


# --------------------------------------------------------------------------
# Checking


def check_certificate(cert, _path="root"):
    """Re-verify every node and leaf from scratch; returns a list of violations."""
    out = []
    if isinstance(cert, QALeaf):
        return _check_leaf(cert, _path)
    d = cert.diagram
    if not 0 <= cert.crossing < d.crossing_count:
        return [f"{_path}: crossing {cert.crossing} out of range"]
    total = inv.determinant(d)
    raw0 = inv.determinant(smooth(d, cert.crossing, cv.ZERO))
    rawinf = inv.determinant(smooth(d, cert.crossing, cv.INFINITY))
    if tuple(cert.det) != (total, raw0, rawinf):
        out.append(f"{_path}: recorded det {tuple(cert.det)} != computed {(total, raw0, rawinf)}")
    if total != raw0 + rawinf:
        out.append(f"{_path}: det {total} != {raw0} + {rawinf}")
    if raw0 == 0 or rawinf == 0:
        out.append(f"{_path}: a smoothing has determinant 0")
    for name, child, raw in (("zero", cert.zero, raw0), ("inf", cert.inf, rawinf)):
        child_det = inv.determinant(child.diagram)
        if child_det != raw:
            out.append(f"{_path}.{name}: child diagram det {child_det} != smoothing det {raw}")
        out.extend(check_certificate(child, f"{_path}.{name}"))
    return out


def _check_leaf(leaf, path):
    d = leaf.diagram
    det = inv.determinant(d)
    if det != leaf.det:
        return [f"{path}: recorded det {leaf.det} != computed {det}"]
    if leaf.kind == "unknot":
        if _is_unknot_diagram(d):
            return []
        if det == 1 and d.is_alternating() and not d.is_split():
            return []
        return [f"{path}: not an unknot diagram"]
    if leaf.kind == "alt-base":
        bad = []
        if not d.is_alternating():
            bad.append(f"{path}: leaf diagram is not alternating")
        if d.is_split():
            bad.append(f"{path}: leaf diagram is split")
        if det == 0:
            bad.append(f"{path}: leaf determinant is 0")
        return bad
    if leaf.kind == "rational-ext":
        bad = check_certificate(leaf.parent, f"{path}.parent")
        parent = leaf.parent
        if not isinstance(parent, QANode) or parent.crossing != leaf.crossing:
            bad.append(f"{path}: parent is not quasi-alternating at crossing {leaf.crossing}")
            return bad
        try:
            redo = extend_by_rational(parent, leaf.crossing, leaf.rational)
        except (SignMismatch, CertificateError) as err:
            return bad + [f"{path}: {err}"]
        if redo.diagram != d:
            bad.append(f"{path}: diagram is not the stated extension of its parent")
        if det == 0:
            bad.append(f"{path}: extended determinant is 0")
        return bad
    return [f"{path}: unknown leaf kind {leaf.kind!r}"]


def is_valid(cert):
    return not check_certificate(cert)


def non_qa_flag(d):
    """Informational: crossing count exceeds determinant (obstructs QA for reduced diagrams)."""
    return d.crossing_count > inv.determinant(d)


# --------------------------------------------------------------------------
# JSON


def to_json(cert):
    if isinstance(cert, QALeaf):
        data = {"leaf": cert.kind, "diagram": cert.diagram.to_json(), "det": cert.det}
        if cert.witness is not None:
            data["witness"] = cert.witness
        if cert.expr is not None:
            data["expr"] = cert.expr
        if cert.kind == "rational-ext":
            data["parent"] = to_json(cert.parent)
            data["crossing"] = cert.crossing
            data["rational"] = str(cert.rational)
        return data
    data = {
        "diagram": cert.diagram.to_json(),
        "crossing": cert.crossing,
        "det": list(cert.det),
        "zero": to_json(cert.zero),
        "inf": to_json(cert.inf),
    }
    if cert.expr is not None:
        data["expr"] = cert.expr
    return data


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    d = dg.PlanarDiagram.from_json(data["diagram"])
    if "leaf" in data:
        parent = from_json(data["parent"]) if "parent" in data else None
        rational = tg.TangleFraction.of(data["rational"]) if "rational" in data else None
        return QALeaf(
            data["leaf"],
            d,
            data["det"],
            witness=data.get("witness"),
            expr=data.get("expr"),
            parent=parent,
            crossing=data.get("crossing"),
            rational=rational,
        )
    return QANode(
        d,
        data["crossing"],
        tuple(data["det"]),
        from_json(data["zero"]),
        from_json(data["inf"]),
        expr=data.get("expr"),
    )
