from fractions import Fraction

import pytest

from symblob.blocks import hom_exists, nohom_pair
from symblob.exact import RootSpec
from symblob.oracle import (
    Specialization, backend, check_intertwiner, gram_rank_semisimple, hom_between, hom_space,
    linkage_blocks, representation, specializations,
)
from symblob.params import DN, BLabel, ParameterError, WeightParams, all_labels, dn_labels


def P(w1, w2, ell=0, theta=None):
    return WeightParams(w1, w2, theta=theta, spec=RootSpec.root(ell) if ell else RootSpec.generic())


def test_specializations_are_independent():
    sp = specializations(P(Fraction(1, 3), Fraction(2, 5), 3), 2)
    assert len({s.prime for s in sp}) == 2
    for s in sp:
        assert (s.prime - 1) % (2 * 3 * 30) == 0


def test_endomorphisms_are_scalars():
    p = P(Fraction(1, 3), Fraction(2, 5))
    for L in dn_labels(4):
        assert hom_space(L, L, p).dimension == 1


def test_w1_hom_is_an_intertwiner():
    p = P(1, Fraction(3, 4))
    h = hom_space(DN(5, 4, 1, 1), DN(5, 2, -1, 1), p)
    assert h.dimension == 1
    assert check_intertwiner(h, p)
    assert hom_space(DN(5, 2, -1, 1), DN(5, 4, 1, 1), p).dimension == 0


def test_exact_and_modular_backends_agree():
    p = WeightParams(1, Fraction(3, 4), spec=RootSpec.point(Fraction(7, 3)))
    exact = p.field()
    modular = specializations(p, 1)[0].field()
    for L1 in dn_labels(4):
        for L2 in dn_labels(4):
            dims = []
            for f in (exact, modular):
                be = backend(f)
                dims.append(hom_between(representation(L1, p, f, be), representation(L2, p, f, be), be).dimension)
            assert dims[0] == dims[1]


@pytest.mark.parametrize("params", [P(1, Fraction(3, 4)), P(Fraction(1, 4), Fraction(7, 4)),
                                    P(Fraction(1, 3), 2), P(Fraction(1, 3), Fraction(2, 5), 2)])
def test_predicted_homs_exist(params):
    for n in (3, 4):
        for s in dn_labels(n):
            for t in dn_labels(n):
                if s != t and hom_exists(s, t, params)[0]:
                    assert hom_space(s, t, params, basis=False).dimension >= 1


def test_generic_blocks_are_singletons():
    p = P(Fraction(1, 3), Fraction(2, 5))
    bp = linkage_blocks(4, p)
    assert all(len(c) == 1 for c in bp.classes)
    assert gram_rank_semisimple(4, p)


def test_wb_included_with_theta():
    p = P(Fraction(1, 3), Fraction(2, 5), theta=Fraction(1, 7))
    bp = linkage_blocks(3, p)
    assert {x for c in bp.classes for x in c} == set(all_labels(3))


def test_guard():
    with pytest.raises(ParameterError):
        linkage_blocks(7, P(Fraction(1, 3), Fraction(2, 5)))
