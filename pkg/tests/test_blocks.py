import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symblob.blocks import (
    UnsupportedRegime, _UF, c_value, classify, classify_bnx, congruent, critical_theta,
    decomposition_graph, endpoint_hom, figure_arrows, figure_block, functor_map, functor_params,
    hom_exists, localise, master_solutions, nohom_pair,
    plot_weights, pm_congruent, refines_alpha, regime, threshold, wb_submodule_labels,
)
from symblob.exact import RootSpec
from symblob.oracle import linkage_blocks
from symblob.params import DN, BLabel, ParameterError, WeightParams, dn_labels

LOW = {(1, 1): 0, (-1, 1): 1, (1, -1): 1, (-1, -1): 2}


def P(w1, w2, ell=0, theta=None):
    return WeightParams(w1, w2, theta=theta, spec=RootSpec.root(ell) if ell else RootSpec.generic())


def test_congruences():
    assert congruent(Fraction(7, 2), Fraction(-5, 2), 3)
    assert not congruent(1, 2, 0)
    assert pm_congruent(Fraction(-3, 4), Fraction(21, 4), 3)
    assert pm_congruent(2, -2, 0) and not pm_congruent(2, 3, 0)


def test_master_solutions():
    ids = {s.eq for s in master_solutions(3, 1, 1, 1, 1, 1, Fraction(1, 2), Fraction(3, 2))}
    assert ids == {"w1w2pos"}
    assert {s.eq for s in master_solutions(2, 1, 1, 2, 1, 1, Fraction(1, 3), Fraction(2, 5))} == {"trivial"}
    ids = {s.eq for s in master_solutions(3, 1, 1, 1, -1, 1, 1, Fraction(2, 5))}
    assert ids == {"w1neg"}
    # at a root of unity the same pair can satisfy an equation up to a period
    ids = {s.eq for s in master_solutions(7, 1, 1, 1, 1, 1, Fraction(1, 3), Fraction(2, 5), ell=3)}
    assert ids == {"trivial"}


def test_hom_exists_rules():
    n = 5
    assert hom_exists(DN(n, 4, 1, 1), DN(n, 2, -1, 1), P(1, Fraction(3, 4))) == (True, "w1hom")
    assert hom_exists(DN(n, 4, 1, 1), DN(n, 2, 1, -1), P(Fraction(1, 3), 1)) == (True, "w2hom")
    assert hom_exists(DN(n, 4, 1, 1), DN(n, 0, 1, 1), P(Fraction(1, 4), Fraction(7, 4))) == (True, "w1w2hom")
    assert hom_exists(DN(n, 4, 1, 1), DN(n, 0, 1, 1), P(Fraction(1, 3), Fraction(2, 5), ell=2)) == (True, "qhom")
    assert hom_exists(DN(n, 4, 1, 1), DN(n, 2, 1, 1), P(Fraction(1, 3), Fraction(2, 5))) == (False, None)
    assert hom_exists(DN(4, 3, 1, 1), DN(5, 2, 1, 1), P(1, 1))[0] is False


def test_nohom_pair_shape():
    assert nohom_pair(1, 3) == ((1, 1, 1), (5, -1, 1))


@given(st.integers(1, 8).flatmap(lambda n: st.sampled_from(dn_labels(n))),
       st.fractions(Fraction(-3), Fraction(3), max_denominator=4),
       st.fractions(Fraction(-3), Fraction(3), max_denominator=4))
def test_functors(L, w1, w2):
    p = WeightParams(w1, w2)
    G = functor_map("G", L)
    assert functor_map("F", G) == L
    Gp = functor_map("G'", L)
    assert functor_map("F'", Gp) == L
    # the central parameter c is preserved along with the weight change
    assert c_value(G, *(lambda q: (q.w1, q.w2))(functor_params("G", p))) == c_value(L, w1, w2)
    assert c_value(Gp, *(lambda q: (q.w1, q.w2))(functor_params("G'", p))) == c_value(L, w1, w2)


def test_functor_examples():
    for n in range(1, 8):
        for m in range(0, n, 1):
            if (n - m) % 2:
                assert functor_map("G'", DN(n, m, 1, 1)) == DN(n + 1, m + 1, 1, -1)
    assert functor_map("F", DN(4, 3, 1, 1)) is None
    with pytest.raises(ParameterError):
        functor_map("H", DN(1, 0, 1, 1))


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 3), (3, 1), (2, 2), (1, 4), (4, 2)])
def test_figure_arrows_are_hom_arrows(a, b):
    p = WeightParams(a, b)
    M = 14
    ok = lambda v: v[0] >= LOW[v[1], v[2]]
    trip = [(m, e1, e2) for m in range(M + 1) for e1 in (1, -1) for e2 in (1, -1) if ok((m, e1, e2))]
    homs = set()
    for s in trip:
        for t in trip:
            if s != t and (s[0] - t[0]) % 2 == 0:
                n = 31 if s[0] % 2 == 0 else 30
                if hom_exists(DN(n, *s), DN(n, *t), p)[0]:
                    homs.add((s, t))
    figs = {(s, t) for s, t in figure_arrows(a, b, 40) if s[0] <= M and t[0] <= M and ok(s) and ok(t)}
    assert homs == figs


def test_figure_block_shapes():
    assert figure_block(0, 1, 2).shape == "m=w1+w2"
    assert figure_block(9, 1, 2).shape == "stable"
    assert figure_block(2, 1, 2).shape == "m<2w1"
    assert figure_block(1, 1, 2).shape == "m=2w1"
    assert figure_block(1, 1, 3).shape == "m>2w1"
    with pytest.raises(ParameterError):
        figure_block(1, 2, 1)


@pytest.mark.parametrize("w1,w2", [(1, 2), (2, 3), (-2, 1), (-2, -3), (2, -2), (1, 1)])
def test_localise_matches_eigenvalue_rule_above_threshold(w1, w2):
    p = P(w1, w2)
    n0 = int(threshold(Fraction(w1), Fraction(w2))) + 1
    for n in (n0, n0 + 1):
        classes, _, _ = localise(n, p)
        assert regime(p, n) == "both-integral"
        assert frozenset(map(frozenset, classes)) == classify(n, p).canonical()


def test_regimes():
    assert regime(P(Fraction(1, 3), Fraction(2, 5))) == "semisimple"
    assert regime(P(Fraction(1, 3), Fraction(2, 5), 3)) == "root-of-unity"
    assert regime(P(1, Fraction(3, 4))) == "w1-integral"
    assert regime(P(Fraction(-1, 4), 1)) == "w2-integral"
    assert regime(P(Fraction(1, 4), Fraction(11, 4))) == "w1+w2-integral"
    assert regime(P(Fraction(1, 4), Fraction(-7, 4))) == "w1-w2-integral"
    assert regime(P(Fraction(5, 2), Fraction(-1, 2))) == "half-integral"
    assert regime(P(3, 1), 13) == "both-integral"
    assert regime(P(3, 1), 5) == "both-integral-localised"
    assert regime(P(1, 4, 3)) == "both-integral-root"
    assert regime(P(1, 4, 3), 11) == "both-integral-root-localised"
    assert regime(P(1, 4, 3), 12) == "both-integral-root"


def test_endpoint_hom():
    # (4,+,-) -> (0,+,+) at w2 = 3, ell = 5: the r = 1 map of the w2 family with t = 0
    p = P(2, 3, 5)
    assert hom_exists(DN(5, 4, 1, -1), DN(5, 0, 1, 1), p)[0] is False
    assert endpoint_hom(DN(5, 4, 1, -1), DN(5, 0, 1, 1), p)
    assert not endpoint_hom(DN(5, 4, 1, 1), DN(5, 0, 1, 1), p)
    assert not endpoint_hom(DN(5, 2, 1, -1), DN(5, 0, 1, 1), p)


def test_root_localised_matches_oracle():
    p = P(2, 3, 5)
    mine = classify(5, p)
    assert mine.regime == "both-integral-root-localised"
    assert mine.canonical() == linkage_blocks(5, p).canonical()
    assert {DN(5, 0, 1, 1), DN(5, 4, 1, -1)} in [set(c) for c in mine.classes]


@pytest.mark.parametrize("w1,w2,ell", [(1, 4, 3), (1, 1, 3), (2, -3, 4), (-2, 1, 4)])
def test_root_hom_graph_meets_eigenvalue_rule(w1, w2, ell):
    p = P(w1, w2, ell)
    for n in range(4 * ell, 4 * ell + 3):
        assert regime(p, n) == "both-integral-root"
        uf = _UF(dn_labels(n))
        for s, t in decomposition_graph(n, p, endpoints=True).arrows:
            uf.union(s, t)
        assert frozenset(map(frozenset, uf.classes())) == classify(n, p).canonical()


def test_unsupported_regime():
    with pytest.raises(UnsupportedRegime):
        classify(4, P(3, Fraction(1, 2), 3))


def test_semisimple_partition_is_discrete():
    bp = classify(6, P(Fraction(1, 3), Fraction(2, 5)))
    assert all(len(c) == 1 for c in bp.classes)


weights = st.fractions(Fraction(-3), Fraction(3), max_denominator=4)


@given(st.integers(1, 7), weights, weights, st.sampled_from([0, 3, 4, 5]))
@settings(max_examples=40)
def test_partitions_refine_alpha(n, w1, w2, ell):
    p = P(w1, w2, ell)
    try:
        bp = classify(n, p)
    except UnsupportedRegime:
        return
    assert sorted(x for c in bp.classes for x in c) == sorted(dn_labels(n))
    assert refines_alpha(bp, p)


def test_json_round_trip():
    bp = classify(5, P(1, Fraction(3, 4)))
    doc = bp.to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert set(doc) == {"n", "params", "regime", "classes", "provenance"}
    assert sorted(s for c in doc["classes"] for s in c) == sorted(str(L) for L in dn_labels(5))


def test_svg_is_deterministic_and_well_formed():
    p = P(Fraction(1, 2), Fraction(3, 4), 3)
    a = plot_weights(8, p, classify(8, p))
    b = plot_weights(8, p, classify(8, p))
    assert a == b
    root = ET.fromstring(a)
    assert root.tag.endswith("svg")


def test_classify_bnx():
    p = P(Fraction(1, 3), Fraction(2, 5))
    with pytest.raises(ParameterError):
        classify_bnx(3, p)
    bp = classify_bnx(4, p.with_(theta=Fraction(1, 7)))
    assert [BLabel(4)] in bp.classes
    # theta critical for W^(5,2)_--
    th = -2 - p.w1 - p.w2
    pc = p.with_(theta=th)
    assert DN(5, 2, -1, -1) in wb_submodule_labels(5, pc)
    assert DN(5, 2, -1, -1) in classify_bnx(5, pc).class_of(BLabel(5))
    w = critical_theta(th, p, 5)
    assert (w.m, w.e1, w.e2) == (2, -1, -1)
    assert critical_theta(Fraction(1, 7), p, 5) is None
