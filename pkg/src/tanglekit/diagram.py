"""
Planar diagrams of tangles and links.

A diagram is a PD-style list of crossings, each a 4-tuple of edge labels in
counterclockwise order starting at an under-strand port (see
:mod:`tanglekit.conventions`).  Every label occurs exactly twice among the
crossing slots and the boundary slots.  Tangle diagrams carry four boundary
labels ``(NW, NE, SE, SW)``; closed diagrams have ``boundary=None``.
Crossingless closed circles are counted in ``loops``.

Faces are never stored: they are the orbits of the map that follows an
edge to its other end and turns counterclockwise there.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property

from . import conventions as cv
from . import tangle as tg

BOUNDARY_NAMES = ("NW", "NE", "SE", "SW")
# Rotation of the boundary vertex: the outside of the disk seen from the
# point at infinity reverses the interior order NW, SW, SE, NE.
_B_ROTATION = ("NW", "NE", "SE", "SW")


class DiagramError(ValueError):
    pass


class EncircleTypeError(DiagramError):
    pass


class NotAlternating(DiagramError):
    pass


class NotConnected(DiagramError):
    pass


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple
    boundary: tuple | None = None
    loops: int = 0

    # -- basic structure -------------------------------------------------

    @property
    def is_closed(self):
        return self.boundary is None

    @property
    def crossing_count(self):
        return len(self.crossings)

    def endpoint(self, name):
        return self.boundary[BOUNDARY_NAMES.index(name)]

    @cached_property
    def _occurrences(self):
        occ = defaultdict(list)
        for c, labels in enumerate(self.crossings):
            for i, e in enumerate(labels):
                occ[e].append((c, i))
        if self.boundary is not None:
            for name, e in zip(BOUNDARY_NAMES, self.boundary):
                occ[e].append(("B", name))
        return dict(occ)

    def mate(self, slot):
        """The other end of the edge leaving ``slot``."""
        e = self._label(slot)
        a, b = self._occurrences[e]
        return b if a == slot else a

    def _label(self, slot):
        c, i = slot
        if c == "B":
            return self.endpoint(i)
        return self.crossings[c][i]

    def validate(self):
        counts = Counter(e for x in self.crossings for e in x)
        if self.boundary is not None:
            counts.update(self.boundary)
        bad = {e: n for e, n in counts.items() if n != 2}
        if bad:
            raise DiagramError(f"edge labels not used exactly twice: {bad}")
        for comp in self._graph_components():
            faces = {self.face_of_dart[d] for c in comp if c != "B" for d in ((c, i) for i in range(4))}
            if "B" in comp:
                faces |= {self.face_of_dart[("B", n)] for n in BOUNDARY_NAMES}
            v = len(comp)
            e = sum(4 for c in comp if c != "B") + (4 if "B" in comp else 0)
            if v - e // 2 + len(faces) != 2:
                raise DiagramError("rotation system is not planar")
        return self

    # -- faces -----------------------------------------------------------

    def _rotate(self, slot):
        c, i = slot
        if c == "B":
            return ("B", _B_ROTATION[(_B_ROTATION.index(i) + 1) % 4])
        return (c, (i + 1) % 4)

    def _darts(self):
        out = [(c, i) for c in range(len(self.crossings)) for i in range(4)]
        if self.boundary is not None:
            out += [("B", n) for n in _B_ROTATION]
        return out

    @cached_property
    def faces(self):
        """Faces as lists of darts; a dart is an outgoing (vertex, port)."""
        seen = set()
        faces = []
        for d in self._darts():
            if d in seen:
                continue
            face = []
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = self._rotate(self.mate(d))
            faces.append(face)
        return faces

    @cached_property
    def face_of_dart(self):
        return {d: k for k, face in enumerate(self.faces) for d in face}

    def face_of_corner(self, c, k):
        """Face containing corner ``k`` (between ports k and k+1) of crossing ``c``."""
        return self.face_of_dart[(c, (k + 1) % 4)]

    def corner_faces(self, c):
        return tuple(self.face_of_corner(c, k) for k in range(4))

    @cached_property
    def outer_face(self):
        """Designated unbounded face: the largest face, lowest index on ties."""
        if not self.faces:
            return None
        if self.boundary is not None:
            return None
        return max(range(len(self.faces)), key=lambda k: (len(self.faces[k]), -k))

    def face_neighbors(self):
        adj = defaultdict(set)
        for d in self._darts():
            a, b = self.face_of_dart[d], self.face_of_dart[self.mate(d)]
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def coloring(self, outer=None):
        """Checkerboard coloring ``{face: 'white'|'black'}`` with the outer face white."""
        if outer is None:
            outer = self.outer_face
        adj = self.face_neighbors()
        color = {}
        order = [outer] + [k for k in range(len(self.faces)) if k != outer]
        for start in order:
            if start is None or start in color:
                continue
            color[start] = "white"
            stack = [start]
            while stack:
                f = stack.pop()
                for g in adj[f]:
                    want = "black" if color[f] == "white" else "white"
                    if g not in color:
                        color[g] = want
                        stack.append(g)
                    elif color[g] != want:
                        raise DiagramError("faces are not two-colorable")
        return color

    # -- strands ---------------------------------------------------------

    def _walk(self, slot):
        """Follow a strand entering crossing port ``slot``; yields entry ports."""
        start = slot
        while True:
            yield slot
            c, i = slot
            nxt = self.mate((c, (i + 2) % 4))
            if nxt[0] == "B" or nxt == start:
                return
            slot = nxt

    def strands(self):
        """Strands as lists of crossing entry ports: arcs first, then closed cycles."""
        used = set()
        out = []
        if self.boundary is not None:
            for name in BOUNDARY_NAMES:
                if ("B", name) in used:
                    continue
                used.add(("B", name))
                first = self.mate(("B", name))
                path = []
                if first[0] != "B":
                    path = list(self._walk(first))
                    last = path[-1]
                    end = self.mate((last[0], (last[1] + 2) % 4))
                else:
                    end = first
                used.add(end)
                for c, i in path:
                    used.add((c, i))
                    used.add((c, (i + 2) % 4))
                out.append(("arc", name, end[1], path))
        for c in range(len(self.crossings)):
            for i in range(4):
                if (c, i) in used:
                    continue
                path = list(self._walk((c, i)))
                for cc, ii in path:
                    used.add((cc, ii))
                    used.add((cc, (ii + 2) % 4))
                out.append(("cycle", None, None, path))
        return out

    def components(self):
        """Number of link components of a closed diagram."""
        if not self.is_closed:
            raise DiagramError("components() needs a closed diagram")
        return len(self.strands()) + self.loops

    def is_alternating(self):
        for kind, _, _, path in self.strands():
            status = [cv.is_over(i) for _, i in path]
            n = len(status)
            pairs = range(n) if kind == "cycle" else range(n - 1)
            for k in pairs:
                if status[k] == status[(k + 1) % n]:
                    if kind == "cycle" and n == 1:
                        continue
                    return False
        return True

    def _graph_components(self):
        """Connected components of the projection graph (crossings, plus 'B')."""
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        nodes = list(range(len(self.crossings)))
        if self.boundary is not None:
            nodes.append("B")
        for n in nodes:
            parent[n] = n
        for occ in self._occurrences.values():
            a, b = occ[0][0], occ[1][0]
            parent[find(a)] = find(b)
        groups = defaultdict(list)
        for n in nodes:
            groups[find(n)].append(n)
        return list(groups.values())

    def projection_pieces(self):
        """Number of pieces of the projection, ignoring the boundary circle."""
        parent = {c: c for c in range(len(self.crossings))}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        arcs = 0
        for occ in self._occurrences.values():
            a, b = occ[0][0], occ[1][0]
            if a == "B" and b == "B":
                arcs += 1
            elif a != "B" and b != "B":
                parent[find(a)] = find(b)
        roots = {find(c) for c in parent}
        return len(roots) + arcs + self.loops

    def nugatory_crossings(self):
        out = []
        for c in range(len(self.crossings)):
            f = self.corner_faces(c)
            if f[0] == f[2] or f[1] == f[3]:
                out.append(c)
        return out

    def is_reduced(self):
        return not self.nugatory_crossings()

    def is_split(self):
        return self.projection_pieces() > 1

    # -- serialization ---------------------------------------------------

    def crossing_signs(self):
        """Writhe signs under the traversal orientation of :meth:`strands`."""
        signs = {}
        incoming = {}
        for _, _, _, path in self.strands():
            for c, i in path:
                incoming.setdefault(c, []).append(i)
        for c, ports in incoming.items():
            under = next(i for i in ports if i % 2 == 0)
            over = next(i for i in ports if i % 2 == 1)
            signs[c] = 1 if over == (under + 3) % 4 else -1
        return [signs[c] for c in range(len(self.crossings))]

    def to_json(self):
        def ref(slot):
            c, i = slot
            return i if c == "B" else [c, i]

        pairings = []
        for e in sorted(self._occurrences):
            a, b = self._occurrences[e]
            pairings.append(sorted([ref(a), ref(b)], key=json.dumps))
        pairings.sort(key=json.dumps)
        signs = self.crossing_signs()
        data = {
            "crossings": [
                {"id": c, "sign": signs[c], "ports": list(x)} for c, x in enumerate(self.crossings)
            ],
            "pairings": pairings,
            "boundary": "closed"
            if self.boundary is None
            else dict(zip(BOUNDARY_NAMES, self.boundary)),
        }
        if self.loops:
            data["loops"] = self.loops
        return data

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        crossings = [None] * len(data["crossings"])
        for rec in data["crossings"]:
            crossings[rec["id"]] = tuple(rec["ports"])
        b = data["boundary"]
        boundary = None if b == "closed" else tuple(b[n] for n in BOUNDARY_NAMES)
        return cls(tuple(crossings), boundary, data.get("loops", 0)).validate()

    def ascii(self):
        lines = [f"{'closed' if self.is_closed else 'tangle'} diagram, {self.crossing_count} crossings"]
        for c, x in enumerate(self.crossings):
            lines.append(f"  X{c}{list(x)}")
        if self.boundary is not None:
            lines.append("  boundary " + " ".join(f"{n}={e}" for n, e in zip(BOUNDARY_NAMES, self.boundary)))
        if self.loops:
            lines.append(f"  + {self.loops} free loop(s)")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# Assembly


def _assemble(crossings, boundary, merges=(), loops=0):
    """Identify labels pairwise, count vanished circles, renumber labels."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    labels = {e for x in crossings for e in x}
    if boundary is not None:
        labels |= set(boundary)
    for a, b in merges:
        labels |= {a, b}
        parent[find(a)] = find(b)
    for e in labels:
        find(e)
    used = {find(e) for x in crossings for e in x}
    if boundary is not None:
        used |= {find(e) for e in boundary}
    loops += len({find(e) for e in labels} - used)

    rename = {}

    def new(e):
        r = find(e)
        if r not in rename:
            rename[r] = len(rename)
        return rename[r]

    xs = tuple(tuple(new(e) for e in x) for x in crossings)
    bd = None if boundary is None else tuple(new(e) for e in boundary)
    return PlanarDiagram(xs, bd, loops)


def _shift(d, offset):
    xs = [tuple(e + offset for e in x) for x in d.crossings]
    bd = None if d.boundary is None else tuple(e + offset for e in d.boundary)
    return xs, bd


def _width(d):
    labels = [e for x in d.crossings for e in x] + list(d.boundary or ())
    return max(labels, default=-1) + 1


PLUS_ONE = PlanarDiagram(((0, 3, 2, 1),), (0, 1, 2, 3))
MINUS_ONE = PlanarDiagram(((3, 2, 1, 0),), (0, 1, 2, 3))
ZERO_TANGLE = PlanarDiagram((), (0, 0, 1, 1))
INFINITY_TANGLE = PlanarDiagram((), (0, 1, 1, 0))


def tangle_sum(a, b):
    xa, (anw, ane, ase, asw) = _shift(a, 0)
    xb, (bnw, bne, bse, bsw) = _shift(b, _width(a))
    return _assemble(xa + xb, (anw, bne, bse, asw), [(ane, bnw), (ase, bsw)], a.loops + b.loops)


def tangle_product(a, b):
    xa, (anw, ane, ase, asw) = _shift(a, 0)
    xb, (bnw, bne, bse, bsw) = _shift(b, _width(a))
    return _assemble(xa + xb, (anw, ane, bse, bsw), [(asw, bnw), (ase, bne)], a.loops + b.loops)


def mirror(d):
    xs = tuple(x[1:] + x[:1] for x in d.crossings)
    return PlanarDiagram(xs, d.boundary, d.loops)


def rotate_ccw(d):
    nw, ne, se, sw = d.boundary
    return PlanarDiagram(d.crossings, (ne, se, sw, nw), d.loops)


def rotate_cw(d):
    nw, ne, se, sw = d.boundary
    return PlanarDiagram(d.crossings, (sw, nw, ne, se), d.loops)


def _reflect(d, boundary):
    xs = tuple((x[1], x[0], x[3], x[2]) for x in d.crossings)
    return PlanarDiagram(xs, boundary, d.loops)


def flip_h(d):
    nw, ne, se, sw = d.boundary
    return _reflect(d, (sw, se, ne, nw))


def flip_v(d):
    nw, ne, se, sw = d.boundary
    return _reflect(d, (ne, nw, sw, se))


def invert(d):
    return mirror(rotate_ccw(d))


def integer_tangle(n):
    if n == 0:
        return ZERO_TANGLE
    unit = PLUS_ONE if n > 0 else MINUS_ONE
    d = unit
    for _ in range(abs(n) - 1):
        d = tangle_sum(d, unit)
    return d


def standard_rational(terms):
    """Standard alternating diagram of ``[a_1, ..., a_n]``."""
    terms = list(terms)
    d = integer_tangle(terms[-1])
    for a in reversed(terms[:-1]):
        d = tangle_sum(integer_tangle(a), invert(d))
    return d


def first_crossing_status(d, name):
    """True when the strand from endpoint ``name`` passes over at its first crossing."""
    c, i = d.mate(("B", name))
    if c == "B":
        raise NotConnected(f"endpoint {name} meets no crossing")
    return cv.is_over(i)


def encircle(d):
    """Alternating encirclement: four new crossings around a type-2 tangle."""
    if classify_type(d) != cv.TYPE2:
        raise EncircleTypeError("alternating encirclement is defined here for type-2 tangles")
    w = _width(d)
    xs, (inw, ine, ise, isw) = _shift(d, 0)
    onw, one, ose, osw, l_top, l_right, l_bot, l_left = range(w, w + 8)
    over = {n: not first_crossing_status(d, n) for n in BOUNDARY_NAMES}
    # port orders counterclockwise; strand over <=> strand on ports 1, 3
    cnw = [l_top, onw, l_left, inw] if over["NW"] else [onw, l_left, inw, l_top]
    cne = [l_top, ine, l_right, one] if over["NE"] else [one, l_top, ine, l_right]
    cse = [l_right, ise, l_bot, ose] if over["SE"] else [ise, l_bot, ose, l_right]
    csw = [l_bot, isw, l_left, osw] if over["SW"] else [isw, l_left, osw, l_bot]
    new = xs + [tuple(cnw), tuple(cne), tuple(cse), tuple(csw)]
    out = _assemble(new, (onw, one, ose, osw), (), d.loops)
    if not out.is_alternating():
        raise NotAlternating("encirclement failed to alternate")
    return out


def closure(d, kind):
    """Numerator ('N') or denominator ('D') closure of a tangle diagram."""
    nw, ne, se, sw = d.boundary
    kind = {"numerator": "N", "denominator": "D"}.get(str(kind).lower(), kind)
    if kind == "N":
        merges = [(nw, ne), (sw, se)]
    elif kind == "D":
        merges = [(nw, sw), (ne, se)]
    else:
        raise ValueError(f"unknown closure {kind!r}")
    return _assemble(list(d.crossings), None, merges, d.loops)


def smooth(d, c, kind):
    """Replace crossing ``c`` by its ZERO or INFINITY smoothing."""
    x = d.crossings[c]
    (i, j), (k, l) = cv.SMOOTHING_PAIRS[kind]
    rest = [y for n, y in enumerate(d.crossings) if n != c]
    return _assemble(rest, d.boundary, [(x[i], x[j]), (x[k], x[l])], d.loops)


# --------------------------------------------------------------------------
# Classification and predicates


def classify_type(d):
    if d.is_closed:
        raise DiagramError("classify_type needs a tangle diagram")
    if d.projection_pieces() != 1:
        raise NotConnected("tangle diagram is not connected")
    if not d.is_alternating():
        raise NotAlternating("tangle diagram is not alternating")
    s = {n: first_crossing_status(d, n) for n in BOUNDARY_NAMES}
    if not (s["NW"] == s["SE"] != s["NE"] == s["SW"]):
        raise DiagramError(f"inconsistent endpoint pattern {s}")
    return cv.TYPE2 if s["NW"] else cv.TYPE1


@dataclass(frozen=True)
class Predicates:
    is_alternating: bool
    is_connected_tangle: bool | None
    is_split: bool
    is_reduced: bool
    is_strongly_alternating: bool | None


def predicates(d):
    if d.is_closed:
        return Predicates(d.is_alternating(), None, d.is_split(), d.is_reduced(), None)
    connected = d.projection_pieces() == 1
    alternating = d.is_alternating()
    strong = False
    if connected and alternating:
        n, dd = closure(d, "N"), closure(d, "D")
        strong = all(not x.is_split() and x.is_reduced() for x in (n, dd))
    return Predicates(alternating, connected, d.is_split(), d.is_reduced(), strong)


def locally_unknotted(expr, d=None):
    """'Guaranteed' for +/* compositions of reduced alternating rational pieces, else 'Unknown'."""

    def structural(e):
        if isinstance(e, (tg.Sum, tg.Product)):
            return structural(e.left) and structural(e.right)
        return tg.is_rational(e)

    if not structural(expr):
        return "Unknown"
    d = synthesize(expr) if d is None else d
    if d.is_alternating() and d.is_reduced() and d.projection_pieces() == 1:
        return "Guaranteed"
    return "Unknown"


# --------------------------------------------------------------------------
# Synthesis


def synthesize(expr):
    """Concrete planar diagram of a tangle expression (or of its closure)."""
    if isinstance(expr, str):
        expr = tg.parse_expr(expr)
    return _synth(expr)


def _synth(e):
    if isinstance(e, tg.Integer):
        return integer_tangle(e.n)
    if isinstance(e, tg.Infinity):
        return INFINITY_TANGLE
    if isinstance(e, tg.ContinuedFraction):
        return standard_rational(e.terms)
    if isinstance(e, tg.Sum):
        return tangle_sum(_synth(e.left), _synth(e.right))
    if isinstance(e, tg.Product):
        return tangle_product(_synth(e.left), _synth(e.right))
    inner = _synth(e.arg)
    if isinstance(e, (tg.Numerator, tg.Denominator)):
        return closure(inner, "N" if isinstance(e, tg.Numerator) else "D")
    if inner.is_closed:
        raise DiagramError("tangle operation applied to a closed diagram")
    ops = {
        tg.Invert: invert,
        tg.Mirror: mirror,
        tg.FlipH: flip_h,
        tg.FlipV: flip_v,
        tg.RotateCW: rotate_cw,
        tg.RotateCCW: rotate_ccw,
        tg.Encircle: encircle,
    }
    return ops[type(e)](inner)


def closed(expr, kind="N"):
    """Diagram of the numerator or denominator closure of ``expr``."""
    d = synthesize(expr)
    return d if d.is_closed else closure(d, kind)


# --------------------------------------------------------------------------
# The tangles T_n

EVEN, ODD = "Even", "Odd"


def tn_box(n, box):
    """The vertical box -1/(2n) (Even) or -1/(2n-1) (Odd)."""
    if n < 1:
        raise ValueError("n must be positive")
    k = 2 * n if box == EVEN else 2 * n - 1
    return tg.ContinuedFraction((0, -k))


def build_Tn(n, box=ODD):
    """
    Transcription of the tangle T_n: two copies of the box, each summed with
    a fixed negative rational piece, stacked vertically::

        T_n = (box + (-2)) * (box + [-1,-3])

    Each factor has odd numerator determinant for every box width, so N(T_n)
    is a knot; neither factor is a vertical integer tangle, so T_n is not
    rational.
    """
    b = tn_box(n, box)
    return tg.Product(tg.Sum(b, tg.Integer(-2)), tg.Sum(b, tg.ContinuedFraction((-1, -3))))
