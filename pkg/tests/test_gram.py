from fractions import Fraction

import pytest

from symblob.cellmod import build
from symblob.exact import RootSpec, box
from symblob.gram import (
    alpha_exponent, closed_form_det, closed_form_ratio, critical_theta, diagram_path_ratio,
    gram_det, gram_matrix, inner_exps, is_simple, path_eigenvalues, wb_unit_ratio,
)
from symblob.params import DN, BLabel, ParameterError, WeightParams, dn_labels
from symblob.reference import GRAM_52MM, format_monomial, parse_monomial

P = WeightParams(Fraction(1, 3), Fraction(2, 5))
L52 = DN(5, 2, -1, -1)


def test_golden_matrix_symbols():
    mod = build(L52)
    got = [[inner_exps(mod, i, j) for j in range(6)] for i in range(6)]
    assert got == [[parse_monomial(s) for s in row] for row in GRAM_52MM]


def test_monomial_format_round_trip():
    for row in GRAM_52MM:
        for s in row:
            assert parse_monomial(format_monomial(parse_monomial(s))) == parse_monomial(s)


def test_golden_determinant():
    D = P.D
    want = (box(P.w1, 0, D) ** 6 * box(P.w2, 0, D) ** 6 * box(P.w1, 1, D) ** -8 * box(P.w2, 1, D) ** -8
            * box(P.w1, -1, D) * box(P.w2, -1, D) * box(P.w1 + P.w2, 3, D))
    assert gram_det(L52, P) == want
    assert closed_form_det(L52).value(P, P.field()) == want


def test_path_determinant_value():
    D = P.D
    want = (box(P.w1, 0, D) ** 2 * box(P.w1, 1, D) ** -4 * box(P.w2, 1, D) ** -2
            * box(P.w1, -1, D) * box(P.w2, -1, D) * box(P.w1 + P.w2, 3, D))
    assert gram_det(L52, P, "path") == want
    assert critical_theta(L52, P) == -2 - P.w1 - P.w2


def test_diagram_path_ratio_is_monomial():
    assert diagram_path_ratio(L52, P) == (1, (4, 6))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_closed_form_ratio_trivial(n):
    for L in dn_labels(n):
        sign, ex = closed_form_ratio(L, P)
        assert sign in (1, -1) and ex == (0, 0)


@pytest.mark.parametrize("n,e", [(1, -2), (2, -4), (3, -12)])
def test_wb_determinant_units(n, e):
    p = P.with_(theta=Fraction(1, 7))
    sign, ex = wb_unit_ratio(n, p)
    assert ex == (e, 0, 0, e)
    sign, ex = wb_unit_ratio(n, p, "direct")
    assert ex == (0, e, 0, e, 0)


def test_alpha_exponents_as_printed():
    assert [alpha_exponent(n) for n in range(1, 6)] == [-2, -8, -24, -64, -160]


def test_simplicity_at_generic_and_critical_points():
    assert all(is_simple(L, P) for L in dn_labels(4))
    # [w1 - 1] vanishes at w1 = 1
    p = WeightParams(1, Fraction(2, 5))
    assert not is_simple(L52, p)
    assert gram_det(L52, p).is_zero()


def test_gram_at_root_of_unity():
    # [w1+w2+3] vanishes when w1 + w2 + 3 = 0 mod ell
    p = WeightParams(Fraction(1, 2), Fraction(1, 2), spec=RootSpec.root(4))
    f = p.field()
    assert f.is_zero(gram_det(L52, p, field=f))
    assert gram_matrix(L52, p, field=f).rank() < 6


def test_path_eigenvalue_count():
    assert len(path_eigenvalues(L52, P)) == 6
    assert len(path_eigenvalues(BLabel(3), P.with_(theta=Fraction(1, 7)))) == 8


def test_unknown_method():
    with pytest.raises(ParameterError):
        gram_det(L52, P, "bogus")
