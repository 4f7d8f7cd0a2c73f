"""
Acceptance suite: ten exact checks, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py`` (the lines are printed in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import time
from math import gcd

from tanglekit import brunner as br
from tanglekit import conventions as cv
from tanglekit import corpus as co
from tanglekit import dehn
from tanglekit import diagram as dg
from tanglekit import invariants as inv
from tanglekit import montesinos as mo
from tanglekit import quasialt as qa
from tanglekit import tangle as tg

RESULTS: dict[int, tuple[bool, str]] = {}

FAMILY_SLOPES = [(1, 1), (1, 2), (2, 3), (3, 5)]


def _record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    assert ok, detail


def _corpus():
    return co.default_corpus(6)


def _tn_all():
    return [dg.build_Tn(n, box) for n in (1, 2, 3) for box in (dg.EVEN, dg.ODD)]


# --------------------------------------------------------------------------


def check_fraction_theorem():
    start = time.perf_counter()
    bad = []
    count = 0
    for p in range(-40, 41):
        for q in range(1, 41):
            if gcd(p, q) != 1:
                continue
            t = tg.rational(tg.TangleFraction(p, q))
            count += 1
            if inv.link_det(t, "N") != abs(p) or inv.link_det(t, "D") != q:
                bad.append((p, q))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    return ok, f"{count} fractions, {len(bad)} mismatches, {elapsed:.2f}s (limit 10s)"


def check_torus_links():
    bad = []
    for k in range(2, 10):
        d = dg.closed(tg.ContinuedFraction((0, k)), "D")
        if not (inv.determinant(d) == d.crossing_count == k):
            bad.append(k)
    return not bad, f"k=2..9, mismatches {bad}"


def check_encirclement_identity():
    items = _corpus() + _tn_all()
    bad = []
    for t in items:
        try:
            inv.verify_encirclement_identity(t)
        except inv.IdentityViolation:
            bad.append(tg.to_text(t))
    ok = not bad and len(items) >= 50
    return ok, f"{len(items)} tangles (corpus <= 6 crossings plus T_1..T_3), failures {bad[:3]}"


def _find_base(cert, want_expr):
    stack = [cert]
    while stack:
        c = stack.pop()
        if isinstance(c, qa.QANode):
            if c.expr == want_expr:
                return c
            stack += [c.zero, c.inf]
        elif c.parent is not None:
            stack.append(c.parent)
    return None


def check_family_replay():
    bad = []
    runs = 0
    for t in _corpus():
        pair = inv.det_pair(t)
        base_expr = tg.to_text(qa.column(2, t))
        for p, q in FAMILY_SLOPES:
            runs += 1
            cert = qa.certify_family(t, p, q)
            problems = qa.check_certificate(cert)
            base = _find_base(cert, base_expr)
            d = base.diagram if base else None
            ok = (
                not problems
                and base is not None
                and base.crossing == qa.marked_crossing(d)
                and base.det[0] == base.det[1] + base.det[2]
                and base.det[1] == 4 * pair.N + 3 * pair.D
                and base.det[2] == pair.D
                and inv.determinant(d) == 4 * (pair.N + pair.D)
                and inv.determinant(qa.smooth(d, base.crossing, cv.ZERO)) == base.det[1]
                and inv.determinant(qa.smooth(d, base.crossing, cv.INFINITY)) == base.det[2]
            )
            if not ok:
                bad.append((tg.to_text(t), p, q))
    return not bad, f"{runs} certificates over {len(_corpus())} tangles x {len(FAMILY_SLOPES)} slopes, failures {bad[:3]}"


def check_brunner_abelianization():
    start = time.perf_counter()
    links = []
    for t in _corpus():
        links += [tg.Numerator(tg.Encircle(t)), tg.Denominator(t)]
    diagrams = [dg.synthesize(x) for x in links]
    diagrams = [d for d in diagrams if not d.is_split()]
    bad = [
        k for k, d in enumerate(diagrams)
        if br.abelianization_order(br.brunner_presentation(d)) != inv.determinant(d)
    ]
    elapsed = time.perf_counter() - start
    ok = not bad and len(diagrams) >= 100 and elapsed < 30
    return ok, f"{len(diagrams)} link diagrams, {len(bad)} mismatches, {elapsed:.2f}s (limit 30s)"


def check_bpe_example():
    d, outer = br.bpe_diagram()
    pres = br.brunner_presentation(d, outer)
    displayed = br.match_relabeling(pres, br.parse_relations(br.BPE_DISPLAYED))
    corrected = br.match_relabeling(pres, br.parse_relations(br.BPE_CORRECTED))
    detail = (
        f"displayed relations: {'matched' if displayed else 'no relabeling'}; "
        f"one-index corrected relations: {'matched' if corrected else 'no relabeling'}"
    )
    return displayed is not None, detail


def check_montesinos_surgery():
    bad = []
    for m in range(1, 7):
        form = mo.augmented_form(m, 1)
        target = mo.MontesinosForm(0, (-2, 2, tg.TangleFraction(2 * m + 1, m + 1)))
        desc = dehn.prop1_description(m)
        link = dehn.montesinos_trick(tg.Encircle(tg.Integer(-m)), dehn.Slope(1, 2))
        ok = (
            mo.reduced_form(form) == mo.reduced_form(target)
            and inv.link_det(link) == 4 * (m + 1)
            and desc.knot == f"T(2,{-2 * m - 1})"
            and desc.coefficient_magnitude == 4 * (m + 1)
        )
        if not ok:
            bad.append(m)
    return not bad, f"m=1..6, failures {bad}"


def check_component_parity():
    bad = []
    for p in range(-20, 21):
        for q in range(1, 21):
            if gcd(p, q) != 1:
                continue
            comps = dg.closed(tg.rational(tg.TangleFraction(p, q)), "N").components()
            if (comps == 2) != (p % 2 == 0):
                bad.append((p, q))
    family = 0
    for t in _tn_all():
        for p, q in [(2, 1), (2, 3), (4, 1), (4, 3), (2, 5), (4, 5)]:
            family += 1
            if dg.synthesize(inv.family_link(t, p, q)).components() != 2:
                bad.append((tg.to_text(t), p, q))
    return not bad, f"rational closures |p|,q <= 20 and {family} T_n family links, failures {bad[:3]}"


def check_coarse_family():
    from tanglekit.words import Word

    bad = []
    for p, q in [(1, 1), (1, 2), (2, 3)]:
        pres = br.coarse_family_presentation("-1", p, q)
        kill = {"R0": Word()}
        locals_ = {r.id: r for r in pres.of_kind(br.LocalEdge)}
        w1 = locals_.get("local:W1")
        expected_local = {
            "local:W2": ("W2", Word.parse("R2^-1 R1")),
            "local:W3": ("W3", Word.parse("R3^-1 R1")),
            "local:W4": ("W4", Word.parse("R2")),
            "local:W5": ("W5", Word.parse("R3")),
        }
        cycles = sorted(str(r.word) for r in pres.of_kind(br.GlobalCycle))
        ok = (
            w1 is not None
            and w1.lhs == Word.gen("W1", p)
            and w1.rhs.substitute(kill).reduced() == Word.gen("R1", p + q)
            and len(locals_) == 5
            and all(
                k in locals_
                and locals_[k].lhs == Word.gen(e)
                and locals_[k].rhs.substitute(kill).reduced() == w
                for k, (e, w) in expected_local.items()
            )
            and cycles == sorted(["W1^-1 W2 W3", "W5^-1 W4^-1 W2 W3", "W1^-1 W4 W5"])
            and bool(br.verify_collapse(p, q))
        )
        if not ok:
            bad.append((p, q))
    return not bad, f"(p,q) in (1,1),(1,2),(2,3); failures {bad}"


def _dets_all_ways(d):
    out = set()
    for swap in (False, True):
        for face in inv.goeritz(d, swap_colors=swap).white_faces:
            g = inv.goeritz(d, delete=face, swap_colors=swap)
            out.add(abs(inv.bareiss_det(g.matrix)))
    return out


def check_goeritz_well_defined():
    bad = []
    count = 0
    for t in _corpus():
        for link in (tg.Numerator(tg.Encircle(t)), tg.Denominator(tg.Encircle(t)),
                     tg.Numerator(t), tg.Denominator(t)):
            d = dg.synthesize(link)
            if d.is_split() or not d.crossings:
                continue
            count += 1
            if _dets_all_ways(d) != {inv.determinant(d)}:
                bad.append(tg.to_text(link))
    return not bad, f"{count} diagrams, every white face deleted under both colorings, failures {bad[:3]}"


CRITERIA = {
    1: ("fraction theorem", check_fraction_theorem),
    2: ("torus-link line", check_torus_links),
    3: ("encirclement identity", check_encirclement_identity),
    4: ("family certificate replay", check_family_replay),
    5: ("Brunner abelianization", check_brunner_abelianization),
    6: ("worked Brunner example", check_bpe_example),
    7: ("Montesinos/surgery replay", check_montesinos_surgery),
    8: ("component parity", check_component_parity),
    9: ("coarse presentation family", check_coarse_family),
    10: ("Goeritz well-definedness", check_goeritz_well_defined),
}


def _run(n):
    ok, detail = CRITERIA[n][1]()
    _record(n, ok, detail)


def test_criterion_01_fraction_theorem():
    _run(1)


def test_criterion_02_torus_links():
    _run(2)


def test_criterion_03_encirclement_identity():
    _run(3)


def test_criterion_04_family_certificates():
    _run(4)


def test_criterion_05_brunner_abelianization():
    _run(5)


def test_criterion_06_worked_brunner_example():
    _run(6)


def test_criterion_07_montesinos_surgery():
    _run(7)


def test_criterion_08_component_parity():
    _run(8)


def test_criterion_09_coarse_family():
    _run(9)


def test_criterion_10_goeritz_well_defined():
    _run(10)


def summary_lines():
    lines = []
    for n, (name, _) in CRITERIA.items():
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}")
        else:
            lines.append(f"criterion {n:2d} SKIP  {name}: not run")
    return lines


if __name__ == "__main__":
    import sys

    failed = 0
    for n, (name, fn) in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
