import json

import pytest

from tanglekit import brunner as br
from tanglekit import diagram as dg
from tanglekit import invariants as inv
from tanglekit import tangle as tg
from tanglekit.words import Word


def closed(text):
    return dg.closed(tg.parse_expr(text))


# -- decompositions -------------------------------------------------------


def test_twist_region_merges_into_one_band():
    dbd = br.disk_band(closed("D([0,3])"))
    assert len(dbd.bands) == 1 and abs(dbd.bands[0].label) == 3


def test_one_crossing_unknot():
    dbd = br.disk_band(closed("D(-1)"))
    assert [abs(b.label) for b in dbd.bands] == [1]


def test_bpe_decomposition():
    d, outer = br.bpe_diagram()
    dbd = br.disk_band(d, outer=outer)
    graph = br.connectivity_graph(dbd)
    assert len(dbd.disks) == 4
    assert len(graph.edges) == 6 and len(dbd.bands) == 7
    assert sorted(b.label for b in dbd.bands) == [-2, -2, -1, -1, -1, -1, 3]
    assert dbd.is_maximal()


@pytest.mark.parametrize("text", ["D([0,3])", "N([-2,-3,-4])", "N(tau(-1))", "N(tau([-1,-2]))", "N(-1/2 + tau(-3))"])
def test_graph_sanity(text):
    d = closed(text)
    dbd = br.disk_band(d)
    graph = br.connectivity_graph(dbd)
    pres = br.brunner_presentation(d)
    assert len(pres.of_kind(br.LocalEdge)) == len(dbd.bands)
    assert len(pres.of_kind(br.GlobalCycle)) == len(graph.bounded_faces)
    assert dbd.is_maximal()


# -- presentations --------------------------------------------------------


@pytest.mark.parametrize(
    "text, order",
    [("D([0,3])", 3), ("D([0,5])", 5), ("N(2/5)", 2), ("N([2,3,4])", 30), ("N(tau(-1))", 8),
     ("N(-1/2 + tau(-3))", 16), ("N(tau([-1,-2]))", 20), ("D(1/4)", 4), ("D(0)", 1)],
)
def test_abelianization_matches_determinant(text, order):
    d = closed(text)
    assert inv.determinant(d) == order
    assert br.abelianization_order(br.brunner_presentation(d)) == order


def test_unknot_presentation_is_trivial():
    pres = br.brunner_presentation(closed("D(0)"))
    assert br.abelianization_order(pres) == 1


def test_bpe_matches_corrected_relations():
    d, outer = br.bpe_diagram()
    pres = br.brunner_presentation(d, outer)
    assert inv.determinant(d) == br.abelianization_order(pres) == 64
    assert br.match_relabeling(pres, br.parse_relations(br.BPE_CORRECTED)) is not None


def test_bpe_displayed_relations_have_no_planar_realization():
    d, outer = br.bpe_diagram()
    pres = br.brunner_presentation(d, outer)
    assert br.match_relabeling(pres, br.parse_relations(br.BPE_DISPLAYED)) is None


def test_relabeling_detects_mismatch():
    pres = br.brunner_presentation(closed("N(tau(-1))"))
    assert br.match_relabeling(pres, br.parse_relations(br.BPE_CORRECTED)) is None


def test_presentation_json_round_trip():
    pres = br.brunner_presentation(closed("N(tau([-1,-2]))"))
    data = json.loads(json.dumps(pres.to_json()))
    again = br.GroupPresentation.from_json(data)
    assert again.to_json() == data
    assert br.abelianization_order(again) == 20


def test_text_and_gap_formats():
    pres = br.brunner_presentation(closed("D([0,3])"))
    text = pres.to_text()
    assert text.startswith("generators:") and "vanishing: R0 = 1" in text
    gap = pres.to_gap()
    assert gap.startswith("F := FreeGroup(") and "R0" in gap


# -- coarse presentation and rewriting ------------------------------------


@pytest.mark.parametrize("p, q", [(1, 1), (1, 2), (2, 3)])
def test_coarse_relations(p, q):
    pres = br.coarse_family_presentation("-1", p, q)
    kill = {"R0": Word()}
    w1 = pres.relation("local:W1")
    assert w1.lhs == Word.gen("W1", p)
    assert w1.rhs.substitute(kill).reduced() == Word.gen("R1", p + q)
    assert len(pres.of_kind(br.LocalEdge)) == 5
    assert len(pres.of_kind(br.GlobalCycle)) == 3
    assert pres.vanishing_regions == ("R0",)
    coarse = pres.relation("coarse:W1")
    assert coarse.P == coarse.Q == str(tg.TangleFraction(p + q, p))


def test_coarse_edges_follow_summands():
    pres = br.coarse_family_presentation("[-1,-2] + -1 + -2", 1, 2)
    assert [r.edge for r in pres.of_kind(br.LocalCoarse)] == ["W1", "E1", "E2", "E3"]
    assert pres.relators()  # coarse records contribute no relators
    assert all(r.relator() is None for r in pres.of_kind(br.LocalCoarse))


def test_coarse_rejects_out_of_range():
    with pytest.raises(ValueError):
        br.coarse_family_presentation("-1", 3, 2)


def test_consequence_chain():
    pres = br.coarse_family_presentation("-1", 1, 1)
    steps = br.consequence_chain()
    assert br.rewrite_verify(pres, steps)
    assert steps[-1].target == Word.parse("W4 W5")


def test_square_chain():
    pres = br.coarse_family_presentation("-1", 1, 1)
    steps = br.square_chain()
    assert br.rewrite_verify(pres, steps)
    assert steps[0].source == Word.parse("(R3 R1^-1 R2)^2")
    assert steps[-1].target == Word.parse("R3 R1^-1 R1^-1 W1 R2")


@pytest.mark.parametrize("p, q", [(1, 1), (1, 2), (2, 3), (3, 5)])
def test_collapse_chain(p, q):
    assert br.verify_collapse(p, q)


def test_free_reduction_step():
    pres = br.coarse_family_presentation("-1", 1, 1)
    assert br.rewrite_verify(pres, [br.Step(Word.parse("W W^-1"), Word(), "free")])


def test_unlicensed_commutation_fails():
    pres = br.coarse_family_presentation("-1", 1, 1)
    bad = [br.Step(Word.parse("W2 W3"), Word.parse("W3 W2"), "commute:W2,W3")]
    result = br.rewrite_verify(pres, bad)
    assert not result and result.index == 0 and "not licensed" in result.reason


def test_mutation_locates_failing_step():
    pres = br.coarse_family_presentation("-1", 2, 3)
    steps = br.collapse_chain(2, 3)
    k = len(steps) // 2
    s = steps[k]
    broken = steps[:k] + [br.Step(s.source, s.target * Word.gen("R1"), s.by)] + steps[k + 1:]
    result = br.rewrite_verify(pres, broken)
    assert not result and result.index in (k, k + 1)


def test_chain_json_round_trip():
    pres = br.coarse_family_presentation("-1", 1, 2)
    steps = br.collapse_chain(1, 2)
    data = json.loads(json.dumps(br.chain_to_json(pres, steps)))
    pres2, steps2 = br.chain_from_json(data)
    assert steps2 == steps and br.rewrite_verify(pres2, steps2)


def test_abelianization_on_corpus(small_corpus):
    for t in small_corpus:
        for link in (tg.Numerator(tg.Encircle(t)), tg.Denominator(t), tg.Numerator(t)):
            d = dg.synthesize(link)
            if d.is_split():
                continue
            assert br.abelianization_order(br.brunner_presentation(d)) == inv.determinant(d)
