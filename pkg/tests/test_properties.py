"""Cross-module invariants checked on random draws from the corpus."""

from math import gcd

from hypothesis import given
from hypothesis import strategies as st

from tanglekit import brunner as br
from tanglekit import corpus as co
from tanglekit import dehn
from tanglekit import diagram as dg
from tanglekit import invariants as inv
from tanglekit import quasialt as qa
from tanglekit import tangle as tg

CORPUS = co.default_corpus(5) + list(
    e for e in co.corpus(co.CorpusSpec(6, tau=True, sums=False, products=False)) if "tau" in tg.to_text(e)
)
tangles = st.sampled_from(CORPUS)
slopes = st.tuples(st.integers(1, 12), st.integers(1, 12)).filter(
    lambda pq: gcd(*pq) == 1 and pq[0] <= pq[1]
)


@given(tangles, slopes)
def test_emitted_certificates_check(t, pq):
    cert = qa.certify_family(t, *pq)
    assert qa.check_certificate(cert) == []


@given(tangles, slopes)
def test_family_determinant_is_q_times_encirclement_value(t, pq):
    p, q = pq
    pair = inv.det_pair(t)
    assert inv.family_det(t, p, q) == q * 4 * (pair.N + pair.D)


@given(tangles, slopes)
def test_direct_and_reciprocal_presentations_agree(t, pq):
    p, q = pq
    tau = tg.Encircle(t)
    s = dehn.Slope(p, p + q)
    other, s2 = dehn.reciprocal_equivalence(tau, s)
    assert inv.link_det(dehn.montesinos_trick(tau, s)) == inv.link_det(dehn.montesinos_trick(other, s2))


@given(tangles)
def test_encirclement_identity(t):
    r = inv.verify_encirclement_identity(t)
    assert r.N_tau == r.D_tau == 4 * (r.N_T + r.D_T)


@given(tangles, st.sampled_from(["N", "D"]))
def test_abelianization_equals_determinant(t, kind):
    d = dg.closed(tg.Encircle(t), kind)
    assert br.abelianization_order(br.brunner_presentation(d)) == inv.determinant(d)


@given(tangles)
def test_crossing_count_stable_under_json(t):
    d = dg.synthesize(tg.Encircle(t))
    again = dg.PlanarDiagram.from_json(d.to_json())
    assert again.crossing_count == d.crossing_count
    assert inv.det_pair(again) == inv.det_pair(d)


@given(tangles)
def test_presentation_json_round_trip(t):
    pres = br.brunner_presentation(dg.closed(tg.Encircle(t)))
    assert br.GroupPresentation.from_json(pres.to_json()) == pres


@given(tangles, slopes)
def test_certificate_json_round_trip(t, pq):
    cert = qa.certify_family(t, *pq)
    assert qa.from_json(qa.to_json(cert)) == cert


@given(tangles)
def test_rotation_of_encirclement_stays_in_type2(t):
    d = dg.synthesize(tg.RotateCW(tg.Encircle(t)))
    assert d.is_alternating() and dg.classify_type(d) == "Type2"
