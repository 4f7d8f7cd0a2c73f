"""
Disk-band decompositions and Brunner presentations of double branched covers.

The checkerboard surface used is the black one; the unbounded face is white.
Black faces that are bigons between two distinct crossings are absorbed into
twisted bands, so each band is a maximal chain of crossings and its label is
the sum of the crossing signs ``eta``.  The remaining black faces are the
disks.

Naming is canonical: disks follow black-face order, ``R0`` is the unbounded
region and ``R1, R2, ...`` follow white-face order, and edge generators
``W1, W2, ...`` follow the sorted (tail, head) pairs of the connectivity
graph, which is oriented from the lower to the higher disk index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import permutations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from . import diagram as dg
from . import invariants as inv
from .words import Word

# --------------------------------------------------------------------------
# Disk-band decomposition


@dataclass(frozen=True)
class Band:
    """A maximal twisted band; ``chain`` lists (crossing, black corner) from ``tail``."""

    chain: tuple
    tail: int
    head: int
    label: int
    left: int
    right: int

    @property
    def crossings(self):
        return tuple(c for c, _ in self.chain)

    @property
    def is_loop(self):
        return self.tail == self.head


@dataclass(frozen=True)
class DiskBandDecomposition:
    disks: tuple
    bands: tuple
    regions: tuple
    unbounded: int
    rotation: dict = field(repr=False, default_factory=dict)
    diagram: object = field(repr=False, default=None)

    def disk_index(self, face):
        return self.disks.index(face)

    def parallel_classes(self):
        """Bands grouped into connectivity-graph edges; loops stay separate."""
        groups = {}
        for k, b in enumerate(self.bands):
            if b.is_loop:
                key = ("loop", k)
            else:
                key = tuple(sorted((self.disk_index(b.tail), self.disk_index(b.head))))
            groups.setdefault(key, []).append(k)
        return groups

    def is_maximal(self):
        """No remaining disk is a bigon that could be absorbed into a band."""
        d = self.diagram
        for face in self.disks:
            corners = _black_corners(d, face)
            if len(corners) == 2 and corners[0][0] != corners[1][0] and len(self.disks) > 1:
                return False
        return True


def _black_corners(d, face):
    """Corners (crossing, k) of a face, in the order its boundary walk meets them."""
    return [(c, (i - 1) % 4) for c, i in d.faces[face]]


def disk_band(d, coloring=None, outer=None):
    """Maximal disk-band decomposition of the black checkerboard surface of ``d``."""
    if not d.is_closed:
        raise ValueError("disk_band needs a closed diagram")
    if d.is_split():
        raise inv.SplitDiagram("split diagram")
    if not d.crossings:
        return DiskBandDecomposition((0,), (), (), -1, {0: ()}, d)
    outer = d.outer_face if outer is None else outer
    color = coloring or d.coloring(outer)
    black = sorted(f for f, c in color.items() if c == "black")
    white = [outer] + sorted(f for f, c in color.items() if c == "white" and f != outer)

    corners = {f: _black_corners(d, f) for f in black}
    absorbable = {
        f for f, cs in corners.items() if len(cs) == 2 and cs[0][0] != cs[1][0]
    }
    kept = [f for f in black if f not in absorbable]
    # a closed ring of bigons (a two-strand twist) keeps one of its faces as a disk
    def neighbours(g):
        return [d.face_of_corner(c, (k + 2) % 4) for c, k in corners[g]]

    seen = set()
    for f in sorted(absorbable):
        if f in seen:
            continue
        ring, stack = {f}, [f]
        while stack:
            g = stack.pop()
            for h in neighbours(g):
                if h in absorbable and h not in ring:
                    ring.add(h)
                    stack.append(h)
        seen |= ring
        if all(h in absorbable for g in ring for h in neighbours(g)):
            kept.append(min(ring))
    kept.sort()
    kept_set = set(kept)

    def crossing_eta(c):
        whites = [k for k in range(4) if color[d.face_of_corner(c, k)] == "white"]
        return 1 if whites[0] % 2 == 0 else -1

    bands = []
    claimed = set()
    end_of_corner = {}
    for u in kept:
        for c, k in corners[u]:
            if (c, k) in claimed:
                continue
            chain = [(c, k)]
            m = d.face_of_corner(c, (k + 2) % 4)
            while m not in kept_set:
                last = (chain[-1][0], (chain[-1][1] + 2) % 4)
                other = [x for x in corners[m] if x != last]
                chain.append(other[0])
                cc, kk = other[0]
                m = d.face_of_corner(cc, (kk + 2) % 4)
            claimed.add(chain[0])
            claimed.add((chain[-1][0], (chain[-1][1] + 2) % 4))
            c0, k0 = chain[0]
            left = d.face_of_corner(c0, (k0 - 1) % 4)
            right = d.face_of_corner(c0, (k0 + 1) % 4)
            for ci, ki in chain:
                if (d.face_of_corner(ci, (ki - 1) % 4), d.face_of_corner(ci, (ki + 1) % 4)) != (left, right):
                    raise dg.DiagramError("twist chain with inconsistent sides")
            label = sum(crossing_eta(ci) for ci, _ in chain)
            idx = len(bands)
            bands.append(Band(tuple(chain), u, m, label, left, right))
            end_of_corner[chain[0]] = (idx, 0)
            end_of_corner[(chain[-1][0], (chain[-1][1] + 2) % 4)] = (idx, 1)

    rotation = {
        u: tuple(end_of_corner[x] for x in corners[u] if x in end_of_corner) for u in kept
    }
    return DiskBandDecomposition(tuple(kept), tuple(bands), tuple(white), outer, rotation, d)


# --------------------------------------------------------------------------
# Connectivity graph


@dataclass(frozen=True)
class ConnectivityGraph:
    """Edges are (representative band, tail disk, head disk); faces are dart walks."""

    edges: tuple
    members: tuple
    faces: tuple
    unbounded_face: int
    region_class: dict = field(repr=False, default_factory=dict)

    @property
    def bounded_faces(self):
        return [f for k, f in enumerate(self.faces) if k != self.unbounded_face]


def connectivity_graph(dbd):
    classes = dbd.parallel_classes()
    keys = sorted(classes, key=lambda key: (key[0] == "loop", key if key[0] != "loop" else (key[1],)))
    edges, members = [], []
    band_class = {}
    for g, key in enumerate(keys):
        ks = classes[key]
        rep = ks[0]
        b = dbd.bands[rep]
        if b.is_loop:
            tail = head = dbd.disk_index(b.tail)
        else:
            tail, head = key
        edges.append((rep, tail, head))
        members.append(tuple(ks))
        for k in ks:
            band_class[k] = g

    # union white regions across deleted parallel bands
    parent = {r: r for r in dbd.regions}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    reps = {e[0] for e in edges}
    for k, b in enumerate(dbd.bands):
        if k not in reps:
            parent[find(b.left)] = find(b.right)

    # darts: (edge index, +1 along orientation, -1 against); rotation is clockwise
    def dart_of_end(band_idx, end):
        g = band_class[band_idx]
        rep, tail, head = edges[g]
        b = dbd.bands[band_idx]
        along = dbd.disk_index(b.tail) == tail if not b.is_loop else True
        outgoing_along = (end == 0) == along
        return (g, 1 if outgoing_along else -1)

    rot = {}
    for u, ends in dbd.rotation.items():
        x = dbd.disk_index(u)
        rot[x] = [dart_of_end(bi, e) for bi, e in ends if bi in reps]

    def origin(dart):
        g, s = dart
        _, tail, head = edges[g]
        return tail if s == 1 else head

    def left_region(dart):
        g, s = dart
        b = dbd.bands[edges[g][0]]
        return b.left if s == 1 else b.right

    faces, seen = [], set()
    all_darts = [(g, s) for g in range(len(edges)) for s in (1, -1)]
    for start in all_darts:
        if start in seen:
            continue
        walk, d0 = [], start
        while d0 not in seen:
            seen.add(d0)
            walk.append(d0)
            rev = (d0[0], -d0[1])
            at = rot[origin(rev)]
            d0 = at[(at.index(rev) + 1) % len(at)]
        faces.append(tuple(walk))
    if not edges:
        faces = [()]
    unbounded = 0
    region_class = {}
    for k, walk in enumerate(faces):
        cls = {find(left_region(x)) for x in walk}
        if len(cls) > 1:
            raise dg.DiagramError("face walk crosses several regions")
        region_class[k] = cls.pop() if cls else find(dbd.unbounded) if dbd.regions else None
        if region_class[k] == (find(dbd.unbounded) if dbd.regions else None):
            unbounded = k
    return ConnectivityGraph(tuple(edges), tuple(members), tuple(faces), unbounded, region_class)


# --------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class LocalEdge:
    """``W^power = (R_l^-1 R_r)^exponent``."""

    id: str
    edge: str
    left: str
    right: str
    exponent: int
    power: int = 1
    band: tuple = ()

    @property
    def lhs(self):
        return Word.gen(self.edge, self.power)

    @property
    def rhs(self):
        return (Word.gen(self.left, -1) * Word.gen(self.right)) ** self.exponent

    def relator(self):
        return self.lhs.inverse() * self.rhs

    def display(self, vanish=()):
        lhs = str(self.lhs)
        if self.left in vanish or self.right in vanish:
            kill = {r: Word() for r in vanish}
            return f"{lhs} = {self.rhs.substitute(kill).reduced()}"
        l, r, a = self.left, self.right, self.exponent
        if a < 0:
            l, r, a = r, l, -a
        base = f"{l}^-1 {r}"
        return f"{lhs} = {base}" if a == 1 else f"{lhs} = ({base})^{a}"


@dataclass(frozen=True)
class LocalCoarse:
    """Inert universal-range record ``W in [[P, Q]]`` with commuting element ``h``."""

    id: str
    edge: str
    P: str
    Q: str
    commuting: Word

    def relator(self):
        return None

    def display(self, vanish=()):
        return f"{self.edge} in [[{self.P}, {self.Q}]]_({self.commuting})"


@dataclass(frozen=True)
class GlobalCycle:
    id: str
    word: Word

    def relator(self):
        return self.word

    def display(self, vanish=()):
        return f"{self.word} = 1"


@dataclass(frozen=True)
class Vanishing:
    id: str
    region: str

    def relator(self):
        return Word.gen(self.region)

    def display(self, vanish=()):
        return f"{self.region} = 1"


_KINDS = {"local": LocalEdge, "coarse": LocalCoarse, "cycle": GlobalCycle, "vanishing": Vanishing}


@dataclass(frozen=True)
class GroupPresentation:
    edge_generators: tuple
    region_generators: tuple
    relations: tuple
    commuting_pairs: tuple = ()

    @property
    def generators(self):
        return self.edge_generators + self.region_generators

    @property
    def vanishing_regions(self):
        return tuple(r.region for r in self.relations if isinstance(r, Vanishing))

    def of_kind(self, kind):
        return [r for r in self.relations if isinstance(r, kind)]

    def relation(self, rid):
        for r in self.relations:
            if r.id == rid:
                return r
        raise KeyError(rid)

    def relators(self, include_vanishing=True):
        out = []
        for r in self.relations:
            w = r.relator()
            if w is None or (isinstance(r, Vanishing) and not include_vanishing):
                continue
            out.append(w)
        return out

    def eliminated_relators(self):
        """Relators with vanishing regions set to 1 (the vanishing relations dropped)."""
        kill = {r: Word() for r in self.vanishing_regions}
        return {
            r.id: r.relator().substitute(kill).reduced()
            for r in self.relations
            if r.relator() is not None and not isinstance(r, Vanishing)
        }

    # -- formats ---------------------------------------------------------

    def to_text(self):
        vanish = set(self.vanishing_regions)
        lines = [
            "generators: " + ", ".join(self.edge_generators) + " ; " + ", ".join(self.region_generators),
        ]
        groups = {}
        for r in self.of_kind(LocalEdge):
            groups.setdefault(r.edge, []).append(r)
        local = []
        for rs in groups.values():
            sides = [r.display(vanish).split(" = ", 1) for r in rs]
            if all(s[0] == sides[0][0] for s in sides):
                local.append(sides[0][0] + " = " + " = ".join(s[1] for s in sides))
            else:
                local.extend(" = ".join(s) for s in sides)
        lines.append("local: " + ", ".join(local))
        coarse = self.of_kind(LocalCoarse)
        if coarse:
            lines.append("coarse: " + ", ".join(r.display() for r in coarse))
        cycles = self.of_kind(GlobalCycle)
        lines.append(
            "cycles: " + (" = ".join(str(r.word) for r in cycles) + " = 1" if cycles else "none")
        )
        lines.append("vanishing: " + ", ".join(f"{v} = 1" for v in self.vanishing_regions))
        return "\n".join(lines)

    def to_gap(self):
        gens = ", ".join(f'"{g}"' for g in self.generators)
        rels = []
        for w in self.relators():
            w = w.reduced()
            if not w.letters:
                continue
            rels.append("*".join(s if e == 1 else f"{s}^-1" for s, e in w.letters))
        body = ",\n  ".join(rels)
        return (
            f"F := FreeGroup({gens});;\n"
            "AssignGeneratorVariables(F);;\n"
            f"G := F / [\n  {body}\n];;"
        )

    def to_json(self):
        rels = []
        for r in self.relations:
            if isinstance(r, LocalEdge):
                rels.append(
                    {"kind": "local", "id": r.id, "edge": r.edge, "left": r.left, "right": r.right,
                     "exponent": r.exponent, "power": r.power, "band": list(r.band)}
                )
            elif isinstance(r, LocalCoarse):
                rels.append(
                    {"kind": "coarse", "id": r.id, "edge": r.edge, "P": r.P, "Q": r.Q,
                     "commuting": str(r.commuting)}
                )
            elif isinstance(r, GlobalCycle):
                rels.append({"kind": "cycle", "id": r.id, "word": str(r.word)})
            else:
                rels.append({"kind": "vanishing", "id": r.id, "region": r.region})
        return {
            "edge_generators": list(self.edge_generators),
            "region_generators": list(self.region_generators),
            "relations": rels,
            "commuting_pairs": [list(p) for p in self.commuting_pairs],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        rels = []
        for r in data["relations"]:
            kind = r["kind"]
            if kind == "local":
                rels.append(LocalEdge(r["id"], r["edge"], r["left"], r["right"], r["exponent"],
                                      r.get("power", 1), tuple(r.get("band", ()))))
            elif kind == "coarse":
                rels.append(LocalCoarse(r["id"], r["edge"], r["P"], r["Q"], Word.parse(r["commuting"])))
            elif kind == "cycle":
                rels.append(GlobalCycle(r["id"], Word.parse(r["word"])))
            elif kind == "vanishing":
                rels.append(Vanishing(r["id"], r["region"]))
            else:
                raise ValueError(f"unknown relation kind {kind!r}")
        return cls(
            tuple(data["edge_generators"]),
            tuple(data["region_generators"]),
            tuple(rels),
            tuple(tuple(p) for p in data.get("commuting_pairs", ())),
        )


def brunner_presentation(d, outer=None):
    """Brunner's presentation of pi_1 of the double branched cover of ``d``."""
    dbd = disk_band(d, outer=outer)
    if not dbd.bands:
        return GroupPresentation((), ("R0",), (Vanishing("vanishing", "R0"),))
    graph = connectivity_graph(dbd)
    rname = {f: f"R{k}" for k, f in enumerate(dbd.regions)}
    wname = [f"W{g + 1}" for g in range(len(graph.edges))]
    rels = []
    for g, (_, tail, _) in enumerate(graph.edges):
        for bi in graph.members[g]:
            b = dbd.bands[bi]
            along = b.is_loop or dbd.disk_index(b.tail) == tail
            left, right = (b.left, b.right) if along else (b.right, b.left)
            rels.append(
                LocalEdge(f"local:{len(rels) + 1}", wname[g], rname[left], rname[right], b.label,
                          band=b.crossings)
            )
    for k, walk in enumerate(graph.bounded_faces):
        w = Word()
        for g, s in walk:  # travelled first = rightmost letter
            w = Word(((wname[g], s),)) * w
        rels.append(GlobalCycle(f"cycle:{k + 1}", w))
    rels.append(Vanishing("vanishing", "R0"))
    return GroupPresentation(tuple(wname), tuple(rname[f] for f in dbd.regions), tuple(rels))


def abelianization_order(pres):
    """Order of the abelianized group (0 when infinite); coarse records are ignored."""
    gens = pres.generators
    if not gens:
        return 1
    index = {g: k for k, g in enumerate(gens)}
    rows = []
    for w in pres.relators():
        row = [0] * len(gens)
        for s, e in w.exponent_sums().items():
            row[index[s]] += e
        rows.append(row)
    if not rows:
        return 0
    factors = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ)]
    if len(factors) < len(gens) or any(f == 0 for f in factors):
        return 0
    return math.prod(factors)


# --------------------------------------------------------------------------
# Comparison up to relabeling


def parse_relations(lines):
    """
    Parse displayed relations such as ``W6 = (R3^-1 R2)^2 = (R4^-1 R2)^2`` or
    ``W1^-1 W2 W3 = W2^-1 W4 W6 = 1`` into (kind, lhs, rhs) triples.
    """
    out = []
    for line in lines:
        for part in (p.strip() for p in line.split(",")):
            if not part:
                continue
            sides = [Word.parse(s) for s in part.split("=")]
            if len(sides[-1]) == 0:
                for s in sides[:-1]:
                    out.append(("cycle", s, Word()))
            else:
                for s in sides[1:]:
                    out.append(("local", sides[0], s))
    return out


def _structure(pres):
    """(locals, cycles) of a presentation with vanishing regions removed."""
    kill = {r: Word() for r in pres.vanishing_regions}
    locals_ = [(r.edge, r.rhs.substitute(kill).reduced()) for r in pres.of_kind(LocalEdge) if r.power == 1]
    cycles = [r.word.substitute(kill) for r in pres.of_kind(GlobalCycle)]
    return locals_, cycles


def match_relabeling(pres, displayed, edge_inversion=True):
    """
    A relabeling (edges -> edges^{+-1}, regions -> regions) that carries the
    relations of ``pres`` onto ``displayed``; None when there is none.
    ``displayed`` is the output of :func:`parse_relations`.
    """
    mine_local, mine_cycles = _structure(pres)
    their_local = [(lhs.letters[0][0], rhs) for kind, lhs, rhs in displayed if kind == "local"]
    their_cycles = [lhs for kind, lhs, _ in displayed if kind == "cycle"]
    if len(mine_local) != len(their_local) or len(mine_cycles) != len(their_cycles):
        return None
    my_edges = sorted({e for e, _ in mine_local})
    their_edges = sorted({e for e, _ in their_local})
    my_regions = sorted({s for _, w in mine_local for s in w.symbols()} - set(pres.vanishing_regions))
    their_regions = sorted({s for _, w in their_local for s in w.symbols()})
    if len(my_edges) != len(their_edges) or len(my_regions) != len(their_regions):
        return None

    def canon_set(words):
        return sorted(w.canonical().letters for w in words)

    target_cycles = canon_set(their_cycles)
    for perm in permutations(their_regions):
        rmap = {m: Word.gen(t) for m, t in zip(my_regions, perm)}
        sig_mine = {}
        for e, w in mine_local:
            sig_mine.setdefault(e, []).append(w.substitute(rmap).reduced())
        sig_their = {}
        for e, w in their_local:
            sig_their.setdefault(e, []).append(w.reduced())
        options = {}
        for e, ws in sig_mine.items():
            opts = []
            for t, ts in sig_their.items():
                if sorted(x.letters for x in ws) == sorted(x.letters for x in ts):
                    opts.append((t, 1))
                if edge_inversion and sorted(x.inverse().letters for x in ws) == sorted(x.letters for x in ts):
                    opts.append((t, -1))
            if not opts:
                break
            options[e] = opts
        else:
            for choice in _assignments(my_edges, options):
                emap = {e: Word.gen(t, s) for e, (t, s) in choice.items()}
                mapped = [w.substitute(emap) for w in mine_cycles]
                if canon_set(mapped) == target_cycles:
                    return {"regions": {m: str(v) for m, v in rmap.items()},
                            "edges": {e: str(v) for e, v in emap.items()}}
    return None


def _assignments(keys, options, used=None, acc=None):
    used = used or set()
    acc = acc or {}
    if len(acc) == len(keys):
        yield dict(acc)
        return
    k = keys[len(acc)]
    for t, s in options[k]:
        if t in used:
            continue
        acc[k] = (t, s)
        used.add(t)
        yield from _assignments(keys, options, used, acc)
        used.discard(t)
        del acc[k]


# --------------------------------------------------------------------------
# Diagrams from plane Tait graphs


def diagram_from_tait(positions, edges, signs):
    """
    Link diagram whose black faces are the vertices of a plane graph.

    ``positions`` maps vertex -> (x, y); ``edges`` is a list of (u, v) with
    straight-line embedding; ``signs[i]`` is the eta sign of edge i's
    crossing.  Each edge becomes one crossing.
    """
    darts = {}
    for i, (u, v) in enumerate(edges):
        for end, (a, b) in ((0, (u, v)), (1, (v, u))):
            (x0, y0), (x1, y1) = positions[a], positions[b]
            darts.setdefault(a, []).append((math.atan2(y1 - y0, x1 - x0), i, end))
    cw = {a: [(i, end) for _, i, end in sorted(ds, reverse=True)] for a, ds in darts.items()}
    # ports of edge i in counterclockwise order: uR, Rv, vL, Lu
    def port_right(i, end):
        return (i, 0) if end == 0 else (i, 2)

    def port_left(i, end):
        return (i, 3) if end == 0 else (i, 1)

    label = {}
    n = 0
    for ring in cw.values():
        for k, (i, end) in enumerate(ring):
            j, end2 = ring[(k + 1) % len(ring)]
            label[port_right(i, end)] = n
            label[port_left(j, end2)] = n
            n += 1
    crossings = []
    for i in range(len(edges)):
        ports = [label[(i, p)] for p in range(4)]
        if signs[i] > 0:
            crossings.append(tuple(ports))
        else:
            crossings.append(tuple(ports[1:] + ports[:1]))
    return dg.PlanarDiagram(tuple(crossings)).validate()


# --------------------------------------------------------------------------
# The worked example


BPE_DISPLAYED = (
    "W_1 = R_1^3, W_2 = R_2^{-1}R_1, W_3 = R_4^{-1}R_1, W_4 = R_2, W_5 = R_4",
    "W_6 = (R_3^{-1}R_2)^{2} = (R_4^{-1}R_2)^{2}",
    "W_1^{-1}W_2W_3 = W_2^{-1}W_4W_6 = W_5^{-1}W_6W_3 = 1",
)

# One index differs: the second band of W_6 borders the digon region (R_3)
# and R_4, so no planar diagram yields the region R_2 there.
BPE_CORRECTED = (
    "W_1 = R_1^3, W_2 = R_2^{-1}R_1, W_3 = R_4^{-1}R_1, W_4 = R_2, W_5 = R_4",
    "W_6 = (R_3^{-1}R_2)^{2} = (R_4^{-1}R_3)^{2}",
    "W_1^{-1}W_2W_3 = W_2^{-1}W_4W_6 = W_5^{-1}W_6W_3 = 1",
)


def bpe_diagram():
    """
    Transcription of the worked example: four disks a, b, c, d joined as K4,
    a three-crossing band a-d, single crossings on a-b, b-d, a-c, c-d and two
    parallel two-crossing bands b-c.  Returns (diagram, outer face).
    """
    pos = {
        "a": (0.0, 0.0), "c": (4.0, 0.0), "d": (2.0, 4.0), "b": (2.0, 1.5),
        "x1": (0.67, 1.33), "x2": (1.33, 2.67),
        "y1": (3.2, 1.3), "y2": (2.8, 0.5),
    }
    edges = [
        ("a", "x1"), ("x1", "x2"), ("x2", "d"),  # W1, three crossings
        ("b", "d"),                               # W2
        ("a", "b"),                               # W3
        ("c", "d"),                               # W4
        ("a", "c"),                               # W5
        ("b", "y1"), ("y1", "c"),                 # W6, first band
        ("b", "y2"), ("y2", "c"),                 # W6, second band
    ]
    signs = [1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1]
    d = diagram_from_tait(pos, edges, signs)
    # the outer region is the white face bounded by the a-d, c-d and a-c bands
    outer = _face_between(d, [0, 5, 6])
    return d, outer


def _face_between(d, crossings):
    """The unique face touching all the given crossings on the outside."""
    common = None
    for c in crossings:
        fs = set(d.corner_faces(c))
        common = fs if common is None else common & fs
    candidates = sorted(common or ())
    if not candidates:
        raise dg.DiagramError("no common face")
    return max(candidates, key=lambda f: len(d.faces[f]))


# --------------------------------------------------------------------------
# The coarse presentation of the family and its rewriting chain


def coarse_family_presentation(t, p, q):
    """
    Coarse presentation for the filling p/(p+q) of the encirclement of ``t``.

    Tangle generators W1..W5 and region generators R1..R3 (R0 unbounded).
    The edges E1..Ek of the tangle's own sub-graph are kept as inert
    universal-range records; k counts the summands of ``t`` along its top.
    """
    from fractions import Fraction

    from . import tangle as tg

    f = Fraction(p, q)
    if not 0 < f <= 1:
        raise ValueError("need 0 < p/q <= 1")
    p, q = f.numerator, f.denominator
    if isinstance(t, str):
        t = tg.parse_expr(t)
    k = len(tg.flatten_sum(t))
    ratio = str(Fraction(p + q, p))
    es = tuple(f"E{i}" for i in range(1, k + 1))
    rels = [
        LocalEdge("local:W1", "W1", "R0", "R1", p + q, power=p),
        LocalEdge("local:W2", "W2", "R2", "R1", 1),
        LocalEdge("local:W3", "W3", "R3", "R1", 1),
        LocalEdge("local:W4", "W4", "R0", "R2", 1),
        LocalEdge("local:W5", "W5", "R0", "R3", 1),
        LocalCoarse("coarse:W1", "W1", ratio, ratio, Word.gen("R1")),
    ]
    rels += [LocalCoarse(f"coarse:{e}", e, "-inf", "+inf", Word.parse("R3^-1 R2")) for e in es]
    rels += [
        GlobalCycle("cycle:1", Word.parse("W1^-1 W2 W3")),
        GlobalCycle("cycle:2", Word.parse("W5^-1 W4^-1 W2 W3")),
        GlobalCycle("cycle:3", Word.parse("W1^-1 W4 W5")),
        Vanishing("vanishing", "R0"),
    ]
    return GroupPresentation(
        ("W1", "W2", "W3", "W4", "W5") + es,
        ("R0", "R1", "R2", "R3"),
        tuple(rels),
        commuting_pairs=(("W1", "R1"),),
    )


@dataclass(frozen=True)
class Step:
    """One rewriting step; ``by`` is 'relation:<id>', 'commute:X,Y' or 'free'."""

    source: Word
    target: Word
    by: str

    def to_json(self):
        return {"from": str(self.source), "to": str(self.target), "by": self.by}

    @classmethod
    def from_json(cls, data):
        return cls(Word.parse(data["from"]), Word.parse(data["to"]), data["by"])


@dataclass(frozen=True)
class ChainFailure:
    index: int
    reason: str
    subword: str = ""

    def __bool__(self):
        return False


class _ValidType:
    def __bool__(self):
        return True

    def __repr__(self):
        return "Valid"


Valid = _ValidType()


def _split_middle(a, b):
    x, y = a.letters, b.letters
    i = 0
    while i < len(x) and i < len(y) and x[i] == y[i]:
        i += 1
    j = 0
    while j < len(x) - i and j < len(y) - i and x[len(x) - 1 - j] == y[len(y) - 1 - j]:
        j += 1
    return Word(x[i:len(x) - j]), Word(y[i:len(y) - j])


def _one_pair_removed(longer, shorter):
    x = longer.letters
    for k in range(len(x) - 1):
        if x[k][0] == x[k + 1][0] and x[k][1] == -x[k + 1][1]:
            if x[:k] + x[k + 2:] == shorter.letters:
                return True
    return False


def check_step(pres, step):
    """None when the step is a single licensed move, else a reason string."""
    a, b = step.source, step.target
    if step.by == "free":
        if b == a.reduced() and a != b:
            return None
        if _one_pair_removed(a, b) or _one_pair_removed(b, a):
            return None
        return "not a free reduction"
    if step.by.startswith("commute:"):
        pair = tuple(step.by.split(":", 1)[1].split(","))
        licensed = {frozenset(x) for x in pres.commuting_pairs}
        if frozenset(pair) not in licensed:
            return f"commutation {pair} is not licensed"
        x, y = a.letters, b.letters
        if len(x) != len(y):
            return "commutation changes the length"
        diff = [k for k in range(len(x)) if x[k] != y[k]]
        if (
            len(diff) == 2
            and diff[1] == diff[0] + 1
            and x[diff[0]] == y[diff[1]]
            and x[diff[1]] == y[diff[0]]
            and {x[diff[0]][0], x[diff[1]][0]} == set(pair)
        ):
            return None
        return "not a single licensed swap"
    if step.by.startswith("relation:"):
        rid = step.by.split(":", 1)[1]
        relators = pres.eliminated_relators()
        if rid not in relators:
            return f"unknown relation {rid}"
        u, v = _split_middle(a, b)
        moved = (u * v.inverse()).canonical()
        if not moved.letters:
            return "substitution is a free move, not a relation"
        if moved != relators[rid].canonical():
            return f"{u} -> {v} is not an instance of {rid}"
        return None
    return f"unknown justification {step.by!r}"


def rewrite_verify(pres, chain):
    """Valid, or the first failing step (index, reason, offending subword)."""
    for k, step in enumerate(chain):
        if k and step.source != chain[k - 1].target:
            return ChainFailure(k, "step does not start where the previous one ended", str(step.source))
        reason = check_step(pres, step)
        if reason is not None:
            u, v = _split_middle(step.source, step.target)
            return ChainFailure(k, reason, f"{u} -> {v}")
    return Valid


class _Builder:
    def __init__(self, start):
        self.word = start
        self.steps = []

    def _emit(self, letters, by):
        nxt = Word(tuple(letters))
        self.steps.append(Step(self.word, nxt, by))
        self.word = nxt

    def substitute(self, pos, length, replacement, rid):
        x = list(self.word.letters)
        self._emit(x[:pos] + list(replacement.letters) + x[pos + length:], f"relation:{rid}")

    def swap(self, pos, pair):
        x = list(self.word.letters)
        x[pos], x[pos + 1] = x[pos + 1], x[pos]
        self._emit(x, f"commute:{pair}")

    def reduce_once(self):
        x = list(self.word.letters)
        for k in range(len(x) - 1):
            if x[k][0] == x[k + 1][0] and x[k][1] == -x[k + 1][1]:
                self._emit(x[:k] + x[k + 2:], "free")
                return True
        return False

    def find(self, pattern, start=0, stop=None):
        x = self.word.letters
        stop = len(x) if stop is None else stop
        n = len(pattern.letters)
        for k in range(start, stop - n + 1):
            if x[k:k + n] == pattern.letters:
                return k
        return -1


def column_relator(p, q):
    n = p + q
    return Word.parse("R3 R1^-1 R2") ** n * Word.parse("R1 W1^-1") ** (-n)


def collapsed_relator(p, q):
    return Word.parse("R3") * Word.gen("W1", q - 1) * Word.parse("R2") * Word.gen("W1", q)


def collapse_chain(p, q):
    """
    Rewriting chain from (R3 R1^-1 R2)^(p+q) = (R1 W1^-1)^(p+q) to
    R3 W1^(q-1) R2 = W1^-q, both written as relators.
    """
    n = p + q
    b = _Builder(column_relator(p, q))
    r2r3 = Word.parse("R2 R3")
    # every inner R2 R3 becomes W4 W5 and then W1
    while True:
        k = b.find(r2r3)
        if k < 0:
            break
        b.substitute(k, 1, Word.gen("W4"), "local:W4")
        b.substitute(k + 1, 1, Word.gen("W5"), "local:W5")
        b.substitute(k, 2, Word.gen("W1"), "cycle:3")
    # gather R1^-1 to the left of W1 before R2, and W1 to the left after it
    split = b.find(Word.gen("R2"))
    pat = Word.parse("W1 R1^-1")
    while (k := b.find(pat, 0, split)) >= 0:
        b.swap(k, "W1,R1")
    pat = Word.parse("R1^-1 W1")
    while (k := b.find(pat, split)) >= 0:
        b.swap(k, "W1,R1")
    # R1^-(p+q) -> W1^-p twice, via W1^p = R1^(p+q)
    block = Word.gen("R1", -n)
    for _ in range(2):
        k = b.find(block)
        b.substitute(k, n, Word.gen("W1", -p), "local:W1")
    while b.reduce_once():
        pass
    return b.steps


def consequence_chain():
    """W1 -> W2 W3 -> W4 W5 by the first two cycle relations."""
    b = _Builder(Word.gen("W1"))
    b.substitute(0, 1, Word.parse("W2 W3"), "cycle:1")
    b.substitute(0, 2, Word.parse("W4 W5"), "cycle:2")
    return b.steps


def square_chain():
    """(R3 R1^-1 R2)^2 -> R3 R1^-2 W1 R2: W1 := R2 R3 and one commutation."""
    b = _Builder(Word.parse("R3 R1^-1 R2") ** 2)
    k = b.find(Word.parse("R2 R3"))
    b.substitute(k, 1, Word.gen("W4"), "local:W4")
    b.substitute(k + 1, 1, Word.gen("W5"), "local:W5")
    b.substitute(k, 2, Word.gen("W1"), "cycle:3")
    b.swap(b.find(Word.parse("W1 R1^-1")), "W1,R1")
    return b.steps


def verify_collapse(p, q):
    """Chain validity plus the two endpoints."""
    pres = coarse_family_presentation("-1", p, q)
    steps = collapse_chain(p, q)
    result = rewrite_verify(pres, steps)
    if not result:
        return result
    if steps[0].source != column_relator(p, q):
        return ChainFailure(0, "chain does not start at the column relator")
    if steps[-1].target != collapsed_relator(p, q):
        return ChainFailure(len(steps) - 1, "chain does not end at the collapsed relator", str(steps[-1].target))
    return Valid


def chain_to_json(pres, steps):
    return {"presentation": pres.to_json(), "steps": [s.to_json() for s in steps]}


def chain_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    return GroupPresentation.from_json(data["presentation"]), [Step.from_json(s) for s in data["steps"]]
